#pragma once

#include "chenbound/psi_cache.hpp"
#include "chenbound/wu.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace chenbound::chen {

enum class GridKind { nine, forty, fourhundred, custom };

struct GridSpec {
    GridKind kind = GridKind::nine;
    int n = 9;  // row count for custom grids

    /// "nine", "forty", "fourhundred" or "custom:N" (N >= 4).
    /// Throws std::invalid_argument otherwise.
    static GridSpec parse(std::string_view text);
    std::string name() const;
};

enum class RowKind { psi2, psi1 };

/// Grid 1 = s₀ < s₁ < … < s_n = 3 with one Wu parameter tuple per row.
struct Discretization {
    GridSpec spec;
    std::vector<double> points;  // s_0 .. s_n
    std::vector<RowKind> kinds;  // row i (1-based) at index i-1
    std::vector<wu::WuParams> params;
    std::vector<bool> scan_s_prime;  // Ψ₁ rows whose s' is chosen by scanning

    std::size_t rows() const noexcept { return kinds.size(); }
};

/// nine: 2.2 … 3.0 with Wu's parameters. forty and fourhundred keep rows 1–4 and
/// refine [2.6, 3] with step 0.01 or 0.001. custom(n): n uniform points on
/// [2.2, 3]; rows with s ≤ 2.5 are Ψ₂ rows using interpolated Wu parameters.
Discretization build_grid(GridSpec spec);

enum class BSource { computed, wu_published, thesis_published };

std::string_view to_string(BSource b);
BSource parse_b_source(std::string_view text);

struct Options {
    wu::Settings settings{};
    BSource b_source = BSource::computed;
    unsigned threads = 1;
    cache::PsiCache* cache = nullptr;
};

/// Dense row-major square matrix.
struct Matrix {
    std::size_t n = 0;
    std::vector<double> data;

    Matrix() = default;
    explicit Matrix(std::size_t size) : n(size), data(size * size, 0.0) {}
    double& operator()(std::size_t i, std::size_t j) { return data[i * n + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data[i * n + j]; }
};

struct SPrimeChoice {
    double s_prime = 0.0;
    double psi = 0.0;
    double phi_max = 0.0;
};

/// s' maximizing Ψ₁(s, ·): pass at step 0.01 from the first feasible
/// hundredth up to 5, then step 0.001 around the best point.
SPrimeChoice optimize_s_prime(double s, const Options& opts);

/// Fills s' for every row flagged in scan_s_prime.
void complete_parameters(Discretization& d, const Options& opts);

/// a_ij = ∫_{s_{j-1}}^{s_j} Ξ(t, row i) dt; Ξ₂ for Ψ₂ rows, Ξ₁ otherwise.
/// Requires complete parameters.
Matrix build_A(const Discretization& d, const Options& opts);

/// Ψ values per row, from opts.b_source. Published sources only exist for the nine grid.
/// Completes parameters first when needed.
std::vector<double> build_B(Discretization& d, const Options& opts);

struct Solution {
    std::vector<double> x;
    double c_star = 0.0;
    double residual = 0.0;   // ‖(I - A)X - B‖∞
    bool first_is_max = true;
};

/// Solves (I - A)X = B by LU with partial pivoting; C* = 8(1 - x₁).
/// Throws SingularMatrix when I - A is numerically singular.
Solution solve_system(const Matrix& A, const std::vector<double>& B);

struct Report {
    std::string grid;
    BSource b_source = BSource::computed;
    std::vector<double> points;  // s_1 .. s_n
    std::vector<wu::WuParams> params;
    Matrix A;
    std::vector<double> B;
    Solution solution;
    double wall_seconds = 0.0;
};

Report solve_grid(GridSpec spec, const Options& opts);

/// solve_grid for each kind in turn.
std::vector<Report> refine_experiment(const std::vector<GridSpec>& kinds, const Options& opts);

/// Four-point piecewise cubic Lagrange interpolation: on each interval the
/// cubic through the two nodes either side (shifted inward at the ends).
/// Evaluation outside the node range extrapolates the end cubic.
class LocalCubic {
public:
    /// Needs at least 4 strictly increasing nodes.
    LocalCubic(std::vector<double> xs, std::vector<double> ys);
    double operator()(double x) const;

private:
    std::vector<double> xs_;
    std::vector<double> ys_;
};

struct InterpolationResult {
    int intervals = 0;
    double crossing_root = 0.0;
    std::vector<double> points;
    Solution solution;
    int infeasible_rows = 0;  // rows that fell back to a published parameter tuple
};

/// Root of Ψ₁ - Ψ₂ in [2.5, 2.6] for the interpolated published data.
/// Throws RootNotBracketed if the difference does not change sign.
double crossing_root();

/// Builds Ψ_B and the interpolated parameters from Wu's published rows,
/// discretizes [2.2, 3] into n points and solves. n >= 9.
InterpolationResult interpolation_experiment(int n, const Options& opts);

} // namespace chenbound::chen
