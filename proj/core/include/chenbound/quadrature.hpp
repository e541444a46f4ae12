#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace chenbound::quadrature {

/// Non-owning callable reference; cheaper than std::function for hot inner loops.
template <class Sig>
class FunctionRef;

template <class R, class... Args>
class FunctionRef<R(Args...)> {
public:
    template <class F,
              class = std::enable_if_t<!std::is_same_v<std::decay_t<F>, FunctionRef> &&
                                       std::is_invocable_r_v<R, F&, Args...>>>
    FunctionRef(F&& f) noexcept  // NOLINT(google-explicit-constructor)
        : obj_(const_cast<void*>(static_cast<const void*>(std::addressof(f)))),
          call_([](void* obj, Args... args) -> R {
              return (*static_cast<std::add_pointer_t<std::remove_reference_t<F>>>(obj))(
                  std::forward<Args>(args)...);
          }) {}

    R operator()(Args... args) const { return call_(obj_, std::forward<Args>(args)...); }

private:
    void* obj_;
    R (*call_)(void*, Args...);
};

struct Config {
    double abs_tol = 1e-8;
    double rel_tol = 1e-4;
    int max_depth = 40;
    std::size_t mc_samples = 2'000'000;

    /// Throws std::invalid_argument when a field is out of range.
    void validate() const;
};

struct Estimate {
    double value = 0.0;
    double error = 0.0;
    std::size_t evaluations = 0;
};

/// Adaptive Gauss-Kronrod (7/15) bisection on [a, b]. A panel is accepted once
/// |K15 - G7| falls under its share of max(abs_tol, rel_tol * |I|). The rule
/// never samples the endpoints, so integrable endpoint singularities are fine.
/// Throws NonConvergent past cfg.max_depth, std::invalid_argument if a > b.
Estimate integrate_1d_estimate(FunctionRef<double(double)> f, double a, double b,
                               const Config& cfg);

inline double integrate_1d(FunctionRef<double(double)> f, double a, double b,
                           const Config& cfg = {}) {
    return integrate_1d_estimate(f, a, b, cfg).value;
}

/// Sum of integrate_1d over [a, b] split at the given interior points.
/// Breakpoints outside (a, b) are ignored; order does not matter.
double integrate_1d_split(FunctionRef<double(double)> f, double a, double b,
                          std::span<const double> breakpoints, const Config& cfg = {});

/// One end of a variable's range: a constant, or the value of an earlier variable.
struct Bound {
    enum class Kind { constant, variable };
    Kind kind = Kind::constant;
    double value = 0.0;
    int var = -1;

    static Bound constant(double v) { return {Kind::constant, v, -1}; }
    static Bound variable(int index) { return {Kind::variable, 0.0, index}; }

    double resolve(const double* x) const { return kind == Kind::constant ? value : x[var]; }
};

/// Chain-ordered integration region: variable n ranges over
/// [lower_n, upper_n], where each bound is a constant or an earlier variable.
class OrderedDomain {
public:
    static constexpr int kMaxDimension = 6;

    OrderedDomain() = default;

    /// Appends a variable. Throws std::invalid_argument if a bound refers
    /// to the new variable or a later one, or if the dimension would exceed 6.
    OrderedDomain& add(Bound lower, Bound upper);

    int dimension() const noexcept { return static_cast<int>(slots_.size()); }
    const Bound& lower(int n) const { return slots_.at(static_cast<std::size_t>(n)).first; }
    const Bound& upper(int n) const { return slots_.at(static_cast<std::size_t>(n)).second; }

    /// Interval propagation: the smallest value each variable can take and
    /// the largest. A variable with min >= max leaves a null set.
    std::vector<double> min_values() const;
    std::vector<double> max_values() const;

    /// True when the region has zero measure.
    bool empty() const;

    /// Maps the unit cube onto the region by iterated limits. Writes the point
    /// to x and returns the Jacobian, 0 where a range is empty.
    double map_unit(const double* unit, double* x) const;

private:
    std::vector<std::pair<Bound, Bound>> slots_;
};

enum class Method {
    automatic,  // iterated for dimension <= 3, quasi-Monte Carlo above
    iterated,
    qmc,
};

/// ∫_dom f. The integrand receives a pointer to dimension() coordinates.
/// Empty domains return exactly 0 without evaluating f.
double integrate_ordered(FunctionRef<double(const double*)> f, const OrderedDomain& dom,
                         const Config& cfg = {}, Method method = Method::automatic);

struct Argmax {
    double arg = 0.0;
    double value = 0.0;
    std::size_t evaluations = 0;
};

/// Grid refinement maximization: scan lo, lo+ε, … ≤ hi at ε = tol0, recentre a
/// window [max(best-ε, lo), best+ε] on the best point, divide ε by 10, and repeat
/// while ε >= tol_final. Ties go to the smaller argument. Points where g throws
/// UndefinedIntegrand or DomainError are skipped.
/// Throws std::invalid_argument for a bad bracket or tolerances, and
/// UndefinedIntegrand if the first pass finds no defined point.
Argmax grid_maximize(const std::function<double(double)>& g, double lo, double hi,
                     double tol0 = 0.1, double tol_final = 0.001);

/// Least x in [lo, hi] with defined(x), for monotone predicates. Returns lo at
/// once if defined(lo); otherwise bisects until hi - lo < tol and returns hi.
/// Throws ThresholdNotBracketed if defined(hi) is false.
double bisect_threshold(const std::function<bool(double)>& defined, double lo, double hi,
                        double tol = 1e-3);

/// Smallest value of g over a lattice of `per_axis` points per unit-cube axis
/// (endpoints included) mapped onto dom. Used as a numeric definedness probe.
double lattice_minimum(FunctionRef<double(const double*)> g, const OrderedDomain& dom,
                       int per_axis = 5);

} // namespace chenbound::quadrature
