#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace chenbound::buchstab {

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

/// lim_{u→∞} ω(u) = e^{-γ}.
inline constexpr double kOmegaLimit = 0.56145948356688516982414321479126;

/// ω on [1,3] from its elementary closed form: 1/u on [1,2], (log(u-1)+1)/u on [2,3].
/// Throws DomainError outside [1,3].
double omega_closed(double u);

/// Truncation error bound 3^{-(N+1)} for midpoint Taylor splines of degree N.
double error_bound(int degree);

/// Piecewise polynomial approximation of the Buchstab function ω(u).
///
/// Interval [j, j+1) for j = 2..k carries the degree-N Taylor polynomial of ω
/// about j + 1/2. Coefficients for j = 2 come from the closed form; later
/// intervals follow from integrating (uω(u))' = ω(u-1) term by term. On [1,2)
/// the exact value 1/u is used, and from k+1 onward the limit e^{-γ}.
///
/// Every polynomial piece is within 3^{-(N+1)} of ω.
class Spline {
public:
    static constexpr int kDefaultDegree = 20;
    static constexpr int kDefaultIntervals = 10;

    /// Throws std::invalid_argument unless degree >= 1 and intervals >= 2.
    static Spline build(int degree = kDefaultDegree, int intervals = kDefaultIntervals);

    /// Evaluate at u >= 1. Throws DomainError for u < 1 (or NaN).
    double operator()(double u) const;
    double eval(double u) const { return (*this)(u); }

    int degree() const noexcept { return degree_; }
    int intervals() const noexcept { return intervals_; }

    /// Coefficient a_m(j) of (u - (j + 1/2))^m, for 2 <= j <= intervals, 0 <= m <= degree.
    double coefficient(int j, int m) const;

    double tail() const noexcept { return tail_; }
    double error_bound() const noexcept { return error_bound_; }

    /// Right end of the polynomial region; the tail constant applies from here.
    double tail_start() const noexcept { return intervals_ + 1.0; }

    /// Versioned JSON document {format, version, degree, intervals, coeffs, tail, error_bound}.
    std::string to_json() const;

    /// Inverse of to_json(). Throws std::invalid_argument on malformed or
    /// inconsistent documents.
    static Spline from_json(std::string_view text);

private:
    Spline(int degree, int intervals, std::vector<double> coeffs, double tail, double bound);

    int degree_ = 0;
    int intervals_ = 0;
    std::vector<double> coeffs_;  // row j-2 holds degree_+1 coefficients
    double tail_ = kOmegaLimit;
    double error_bound_ = 0.0;
};

/// Process-wide spline with the default degree (20) and interval count (10).
const Spline& default_spline();

/// Reference solution of the delay differential equation by the method of steps.
///
/// On [1,2] ω(u) = 1/u. Each later unit interval integrates y = uω(u),
/// y' = ω(u-1), with classical RK4 in extended precision; the delayed term comes
/// from the dense output of the previous interval. Dense output is a cubic
/// Hermite interpolant whose node derivatives follow from the equation itself,
/// ω'(u) = (ω(u-1) - ω(u)) / u.
class OdeReference {
public:
    struct Options {
        double initial_step = 1e-3;
        int max_halvings = 10;
    };

    /// Halves the step, starting from options.initial_step, until a
    /// step-doubling estimate of the global error is at most tol.
    /// Throws std::invalid_argument for u_max < 2 or tol <= 0, and
    /// NonConvergent if tol is not reached within max_halvings.
    static OdeReference solve(double u_max, double tol);
    static OdeReference solve(double u_max, double tol, const Options& options);

    /// Interpolated ω(u) for 1 <= u <= u_max. Throws DomainError otherwise.
    double operator()(double u) const;
    double eval(double u) const { return (*this)(u); }

    /// Same as operator() but keeps the extended-precision result.
    long double eval_extended(double u) const;

    double step() const noexcept { return step_; }
    double u_max() const noexcept { return u_max_; }
    double tolerance() const noexcept { return tolerance_; }
    double error_estimate() const noexcept { return error_estimate_; }
    std::size_t node_count() const noexcept { return values_.size(); }

private:
    OdeReference() = default;
    static OdeReference integrate(double u_max, double step);

    double step_ = 0.0;
    double u_max_ = 0.0;
    double tolerance_ = 0.0;
    double error_estimate_ = 0.0;
    std::size_t nodes_per_unit_ = 0;
    std::vector<long double> values_;       // ω at u = 1 + n*step
    std::vector<long double> derivatives_;  // ω' at the same nodes
};

} // namespace chenbound::buchstab
