#pragma once

#include "chenbound/buchstab.hpp"
#include "chenbound/quadrature.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace chenbound::wu {

/// Parameter tuple (s, s', k1, k2, k3). The k's are only needed for Ψ₂ rows.
struct WuParams {
    double s = 0.0;
    double s_prime = 0.0;
    std::optional<double> k1;
    std::optional<double> k2;
    std::optional<double> k3;

    static WuParams psi1(double s, double s_prime) { return {s, s_prime, {}, {}, {}}; }
    static WuParams psi2(double s, double s_prime, double k1, double k2, double k3) {
        return {s, s_prime, k1, k2, k3};
    }
    bool has_ks() const noexcept { return k1 && k2 && k3; }
};

/// α₁ … α₉, 1-based. Index 0 is unused.
struct AlphaSet {
    std::array<double, 10> alpha{};
    double operator[](int i) const { return alpha.at(static_cast<std::size_t>(i)); }
};

/// Failed inequalities among 2 ≤ s ≤ 3 ≤ s' ≤ 5 and s' - s'/s ≥ 2. Empty when valid.
std::vector<std::string> psi1_violations(double s, double s_prime);

/// psi1_violations plus s ≤ k3 ≤ k2 ≤ k1 ≤ s', 1 ≤ αᵢ ≤ 3, α₁ < α₄ and α₅ < α₈.
std::vector<std::string> psi2_violations(const WuParams& p);

/// α's from their defining formulas. Throws ConstraintViolation if psi2_violations
/// is non-empty, std::invalid_argument if the k's are missing.
AlphaSet alpha_set(const WuParams& p);

/// The same formulas with no constraint checks.
AlphaSet alpha_values(const WuParams& p);

/// σ(a,b,c) = ∫_a^b log(c/(t-1)) / t dt, oriented (b < a gives the negated integral).
double sigma(double a, double b, double c);

/// σ₀(t) = σ(3, t+2, t+1) / (1 - σ(3,5,4)).
double sigma0(double t);

/// Which interval gates the third Ξ₁ term. The printed kernel uses [α₃, α₂];
/// the published reference code uses [α₂, α₃], which is empty for s ≤ 3.
enum class Xi1Indicator { printed, appendix };

/// Denominator of the seventh Ξ₂ term: (1 - t/s') as in the reference code,
/// or (1 + t/s') as typeset.
enum class Xi2Term7 { appendix_minus, printed_plus };

struct KernelOptions {
    Xi1Indicator xi1 = Xi1Indicator::printed;
    Xi2Term7 term7 = Xi2Term7::appendix_minus;
};

/// 1 if a ≤ t ≤ b and a ≤ b, else 0.
inline bool indicator(double a, double b, double t) noexcept { return a <= b && a <= t && t <= b; }

std::array<double, 3> xi1_terms(double t, double s, double s_prime, const KernelOptions& opts = {});
double xi1(double t, double s, double s_prime, const KernelOptions& opts = {});

std::array<double, 10> xi2_terms(double t, const WuParams& p, const KernelOptions& opts = {});
double xi2(double t, const WuParams& p, const KernelOptions& opts = {});

/// Points in [1,3] where a Ξ term switches on or off.
std::vector<double> xi1_breakpoints(double s, double s_prime);
std::vector<double> xi2_breakpoints(const WuParams& p);

/// Choices the source leaves open for the I₂ sum.
struct I2Options {
    /// Σ I₂,ᵢ runs over i = 9..upper_index; 21 or 19.
    int upper_index = 21;
    /// Weight of I₂,₂₀: 1/(t u v² x) as typeset, or 1/(t u v w² x).
    bool weight20_printed = true;
};

/// Everything the Wu integrals depend on besides the parameters themselves.
struct Settings {
    quadrature::Config quad{};
    const buchstab::Spline* spline = nullptr;  // nullptr selects default_spline()
    KernelOptions kernel{};
    I2Options i2{};

    const buchstab::Spline& omega() const {
        return spline ? *spline : buchstab::default_spline();
    }
};

/// 1/s' ≤ t ≤ u ≤ v ≤ 1/s.
quadrature::OrderedDomain i1_domain(double s, double s_prime);

/// Domain 𝔻₂,ᵢ for 9 ≤ i ≤ 21. Requires the k's.
quadrature::OrderedDomain i2_domain(int i, const WuParams& p);

/// Index of the variable dividing the ω argument in I₂,ᵢ (u = 1, v = 2, w = 3, x = 4).
int i2_divisor(int i);

/// Least φ ≥ 2 with (φ - Σ vars) / divisor ≥ 1 on the whole closed domain,
/// from the componentwise-maximal corner.
double phi_low(const quadrature::OrderedDomain& dom, int divisor_var);

/// Numeric counterpart of phi_low: bisects on a lattice probe of the ω argument.
double phi_threshold_bisect(const quadrature::OrderedDomain& dom, int divisor_var,
                            double hi = 5.0, double tol = 1e-3);

/// Inner I₁ integral at fixed φ. 0 when s' ≤ s.
/// Throws UndefinedIntegrand below phi_low.
double i1(double phi, double s, double s_prime, const Settings& settings = {});

/// Inner I₂,ᵢ integral at fixed φ. Throws UndefinedIntegrand below phi_low,
/// ConstraintViolation for infeasible parameters.
double i2(int i, double phi, const WuParams& p, const Settings& settings = {});

/// Same integrand as i1 / i2 with ω replaced by 1.
double i1_weight(double s, double s_prime, const Settings& settings = {});
double i2_weight(int i, const WuParams& p, const Settings& settings = {});

struct PhiMax {
    double phi = 0.0;
    double value = 0.0;
    double phi_low = 2.0;
};

/// max over φ in [max(2, φ_low), 4] by grid refinement 0.1 → 0.001.
PhiMax i1_max(double s, double s_prime, const Settings& settings = {});

/// max over φ in [max(2, φ_low), 5] by grid refinement 0.1 → 0.001.
PhiMax i2_max(int i, const WuParams& p, const Settings& settings = {});

/// The three parts of Ψ₁ and the result.
struct Psi1Breakdown {
    double log_term = 0.0;    // -∫_2^{s'-1} log(t-1)/t dt
    double ratio_term = 0.0;  // ½ ∫_{1-1/s}^{1-1/s'} log(s't-1)/(t(1-t)) dt
    PhiMax i1{};
    double value = 0.0;
};

Psi1Breakdown psi1_detail(double s, double s_prime, const Settings& settings = {});
double psi1(double s, double s_prime, const Settings& settings = {});

/// The five one-dimensional parts of Ψ₂ (already weighted), each I₂,ᵢ maximum and the result.
struct Psi2Breakdown {
    std::array<double, 5> one_d{};
    std::map<int, PhiMax> i2;
    double value = 0.0;
};

/// Ψ₂ from precomputed I₂ maxima; missing indices are computed.
Psi2Breakdown psi2_detail(const WuParams& p, const Settings& settings = {},
                          const std::map<int, PhiMax>& known = {});
double psi2(const WuParams& p, const Settings& settings = {});

/// The weighted one-dimensional part of Ψ₂ on its own.
std::array<double, 5> psi2_one_d(const WuParams& p);

/// One row of Wu's published table with an independently recomputed set of values.
struct PublishedRow {
    int index;
    double s;
    double s_prime;
    std::optional<double> k1, k2, k3;
    double psi_wu;       // Wu's value, as used in the reference solver
    double psi_thesis;   // recomputed value
    bool is_psi2() const noexcept { return k1.has_value(); }
    WuParams params() const { return {s, s_prime, k1, k2, k3}; }
};

const std::array<PublishedRow, 9>& published_rows();

} // namespace chenbound::wu
