#pragma once

// Interpolants of Wu's published rows, shared by the interpolation experiment
// and custom grids.

#include "chenbound/chen.hpp"

namespace chenbound::chen::detail {

struct PublishedFit {
    LocalCubic psi1;      // rows 5–9
    LocalCubic psi2;      // rows 1–4
    LocalCubic s_prime;   // rows 1–9
    LocalCubic k1, k2, k3;  // rows 1–4
    double crossing = 0.0;  // root of psi1 - psi2 near 2.55

    double psi_b(double s) const;

    /// Interpolated tuple at s. Ψ₂ tuples that break a constraint are replaced by
    /// the nearest published Ψ₂ row's (s', k's); *fallback is set when that happens.
    wu::WuParams params(double s, RowKind kind, bool* fallback) const;
};

const PublishedFit& published_fit();

} // namespace chenbound::chen::detail
