#include "chenbound/buchstab.hpp"

#include "chenbound/errors.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace chenbound::buchstab {

namespace {

std::string format_u(double u) {
    return std::to_string(u);
}

} // namespace

double omega_closed(double u) {
    if (!(u >= 1.0 && u <= 3.0)) {
        throw DomainError("omega_closed: u = " + format_u(u) + " outside [1, 3]");
    }
    if (u <= 2.0) return 1.0 / u;
    return (std::log(u - 1.0) + 1.0) / u;
}

double error_bound(int degree) {
    if (degree < 1) throw std::invalid_argument("error_bound: degree must be >= 1");
    return std::pow(3.0, -(degree + 1));
}

// ---------------------------------------------------------------------------
// Spline

Spline::Spline(int degree, int intervals, std::vector<double> coeffs, double tail, double bound)
    : degree_(degree),
      intervals_(intervals),
      coeffs_(std::move(coeffs)),
      tail_(tail),
      error_bound_(bound) {}

Spline Spline::build(int degree, int intervals) {
    if (degree < 1) throw std::invalid_argument("Spline::build: degree must be >= 1");
    if (intervals < 2) throw std::invalid_argument("Spline::build: intervals must be >= 2");

    const auto width = static_cast<std::size_t>(degree) + 1;
    std::vector<double> a(width * static_cast<std::size_t>(intervals - 1), 0.0);
    auto at = [&](int j, int m) -> double& {
        return a[static_cast<std::size_t>(j - 2) * width + static_cast<std::size_t>(m)];
    };

    // ω₂(u) = (log(u-1)+1)/u expanded about u = 5/2.
    const double head = 1.0 + std::log(1.5);
    for (int k = 0; k <= degree; ++k) {
        double inner = 0.0;
        for (int m = 0; m < k; ++m) inner += std::pow(0.6, m) / (k - m);
        const double value =
            -head / std::pow(2.5, k + 1) + 0.6 * std::pow(2.0 / 3.0, k + 1) * inner;
        at(2, k) = (k % 2 == 0) ? -value : value;  // (-1)^{k+1}
    }

    // u ω_j(u) = ∫_{j-1}^{u-1} ω_{j-1}(t) dt + j ω_{j-1}(j), both sides about j + 1/2.
    for (int j = 3; j <= intervals; ++j) {
        const double centre = j + 0.5;
        double sum = 0.0;
        double half_pow = 1.0;
        for (int k = 0; k <= degree; ++k) {
            const double sign = (k % 2 == 0) ? 1.0 : -1.0;
            sum += at(j - 1, k) * half_pow * (j + sign / (2.0 * (k + 1)));
            half_pow *= 0.5;
        }
        at(j, 0) = sum / centre;
        for (int k = 1; k <= degree; ++k) {
            at(j, k) = (at(j - 1, k - 1) / k - at(j, k - 1)) / centre;
        }
    }

    return Spline(degree, intervals, std::move(a), kOmegaLimit, buchstab::error_bound(degree));
}

double Spline::coefficient(int j, int m) const {
    if (j < 2 || j > intervals_ || m < 0 || m > degree_) {
        throw std::out_of_range("Spline::coefficient: index out of range");
    }
    return coeffs_[static_cast<std::size_t>(j - 2) * static_cast<std::size_t>(degree_ + 1) +
                   static_cast<std::size_t>(m)];
}

double Spline::operator()(double u) const {
    if (!(u >= 1.0)) throw DomainError("Buchstab spline: u = " + format_u(u) + " below 1");
    if (u < 2.0) return 1.0 / u;
    if (u >= tail_start()) return tail_;

    const int j = static_cast<int>(u);
    const double x = u - (j + 0.5);
    const double* c = coeffs_.data() +
                      static_cast<std::size_t>(j - 2) * static_cast<std::size_t>(degree_ + 1);
    double acc = c[degree_];
    for (int m = degree_ - 1; m >= 0; --m) acc = acc * x + c[m];
    return acc;
}

const Spline& default_spline() {
    static const Spline spline = Spline::build();
    return spline;
}

// ---------------------------------------------------------------------------
// OdeReference

namespace {

// Cubic Hermite on [x0, x0+h] at local coordinate s in [0,1].
long double hermite(long double y0, long double d0, long double y1, long double d1,
                    long double h, long double s) {
    const long double s2 = s * s;
    const long double s3 = s2 * s;
    const long double h00 = 2 * s3 - 3 * s2 + 1;
    const long double h10 = s3 - 2 * s2 + s;
    const long double h01 = -2 * s3 + 3 * s2;
    const long double h11 = s3 - s2;
    return h00 * y0 + h10 * h * d0 + h01 * y1 + h11 * h * d1;
}

} // namespace

OdeReference OdeReference::integrate(double u_max, double step) {
    OdeReference ref;
    ref.nodes_per_unit_ = static_cast<std::size_t>(std::llround(1.0 / step));
    ref.step_ = 1.0 / static_cast<double>(ref.nodes_per_unit_);
    ref.u_max_ = u_max;

    const std::size_t per_unit = ref.nodes_per_unit_;
    const long double h = 1.0L / static_cast<long double>(per_unit);
    const auto units = static_cast<std::size_t>(std::ceil(u_max - 1.0));
    const std::size_t count = units * per_unit + 1;
    ref.values_.resize(count);
    ref.derivatives_.resize(count);

    auto node_u = [&](std::size_t n) {
        return 1.0L + static_cast<long double>(n) / static_cast<long double>(per_unit);
    };

    // Initial segment [1,2]: ω = 1/u. The derivative stored at u = 2 is the
    // right-hand one, +1/4, since 1/u is evaluated exactly to the left.
    for (std::size_t n = 0; n <= per_unit && n < count; ++n) {
        const long double u = node_u(n);
        ref.values_[n] = 1.0L / u;
        ref.derivatives_[n] = -1.0L / (u * u);
    }

    // Delayed value ω(x) for x within the already-integrated range.
    auto delayed = [&](long double x) -> long double {
        if (x <= 2.0L) return 1.0L / x;
        const long double pos = (x - 1.0L) * static_cast<long double>(per_unit);
        auto n = static_cast<std::size_t>(pos);
        if (n >= count - 1) n = count - 2;
        const long double s = pos - static_cast<long double>(n);
        return hermite(ref.values_[n], ref.derivatives_[n], ref.values_[n + 1],
                       ref.derivatives_[n + 1], h, s);
    };

    for (std::size_t unit = 1; unit < units; ++unit) {
        const std::size_t first = unit * per_unit;  // node at u = unit + 1
        long double y = node_u(first) * ref.values_[first];
        if (unit == 1) {
            ref.derivatives_[first] = (delayed(1.0L) - ref.values_[first]) / node_u(first);
        }
        for (std::size_t k = 0; k < per_unit; ++k) {
            const std::size_t n = first + k;
            const long double u = node_u(n);
            const long double f0 = delayed(u - 1.0L);
            const long double fm = delayed(u - 1.0L + h / 2);
            const long double f1 = delayed(u - 1.0L + h);
            // RK4 for y' = g(u) independent of y.
            y += h / 6 * (f0 + 4 * fm + f1);
            const long double u1 = node_u(n + 1);
            ref.values_[n + 1] = y / u1;
            ref.derivatives_[n + 1] = (f1 - ref.values_[n + 1]) / u1;
        }
    }
    return ref;
}

OdeReference OdeReference::solve(double u_max, double tol) {
    return solve(u_max, tol, Options{});
}

OdeReference OdeReference::solve(double u_max, double tol, const Options& options) {
    if (!(u_max >= 2.0)) throw std::invalid_argument("ode_reference: u_max must be >= 2");
    if (!(tol > 0.0)) throw std::invalid_argument("ode_reference: tol must be > 0");
    if (!(options.initial_step > 0.0 && options.initial_step <= 0.5)) {
        throw std::invalid_argument("ode_reference: initial_step must lie in (0, 0.5]");
    }

    double step = options.initial_step;
    OdeReference coarse = integrate(u_max, step);
    for (int halving = 0; halving < options.max_halvings; ++halving) {
        OdeReference fine = integrate(u_max, coarse.step_ / 2.0);
        long double diff = 0.0L;
        for (std::size_t n = 0; n < coarse.values_.size(); ++n) {
            diff = std::max(diff, std::fabs(coarse.values_[n] - fine.values_[2 * n]));
        }
        const auto estimate = static_cast<double>(diff);
        if (estimate <= tol) {
            fine.tolerance_ = tol;
            fine.error_estimate_ = estimate;
            return fine;
        }
        coarse = std::move(fine);
    }
    throw NonConvergent("ode_reference: tolerance " + std::to_string(tol) +
                        " not reached after " + std::to_string(options.max_halvings) +
                        " step halvings");
}

long double OdeReference::eval_extended(double u) const {
    if (!(u >= 1.0 && u <= u_max_)) {
        throw DomainError("ode_reference: u = " + format_u(u) + " outside [1, " +
                          format_u(u_max_) + "]");
    }
    const long double x = u;
    if (x <= 2.0L) return 1.0L / x;
    const long double pos = (x - 1.0L) * static_cast<long double>(nodes_per_unit_);
    auto n = static_cast<std::size_t>(pos);
    if (n >= values_.size() - 1) n = values_.size() - 2;
    const long double s = pos - static_cast<long double>(n);
    return hermite(values_[n], derivatives_[n], values_[n + 1], derivatives_[n + 1],
                   1.0L / static_cast<long double>(nodes_per_unit_), s);
}

double OdeReference::operator()(double u) const {
    return static_cast<double>(eval_extended(u));
}

} // namespace chenbound::buchstab
