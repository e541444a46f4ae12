#include "chenbound/errors.hpp"
#include "chenbound/quadrature.hpp"

#include "doctest.h"

#include <cmath>
#include <vector>

using namespace chenbound;
using namespace chenbound::quadrature;

namespace {

OrderedDomain simplex(int dim, double a, double b) {
    OrderedDomain d;
    d.add(Bound::constant(a), Bound::constant(b));
    for (int n = 1; n < dim; ++n) d.add(Bound::variable(n - 1), Bound::constant(b));
    return d;
}

double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }

} // namespace

TEST_SUITE("quadrature") {

TEST_CASE("config validation") {
    Config c;
    CHECK_NOTHROW(c.validate());
    c.abs_tol = 0.0;
    CHECK_THROWS(c.validate());
    c = {};
    c.max_depth = 0;
    CHECK_THROWS(c.validate());
}

TEST_CASE("polynomials up to degree five are exact") {
    Config cfg;
    cfg.abs_tol = 1e-14;
    cfg.rel_tol = 1e-14;
    CHECK(integrate_1d([](double x) { return x; }, 0.0, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
    for (int k = 0; k <= 5; ++k) {
        const double v = integrate_1d([k](double x) { return std::pow(x, k); }, 0.0, 1.0, cfg);
        CHECK(std::fabs(v - 1.0 / (k + 1)) < 1e-12);
    }
    const double mixed = integrate_1d([](double x) { return 3 * x * x * x * x * x - x * x + 7; }, 0.0, 1.0, cfg);
    CHECK(std::fabs(mixed - (0.5 - 1.0 / 3.0 + 7.0)) < 1e-12);
}

TEST_CASE("empty and reversed intervals") {
    CHECK(integrate_1d([](double) { return 1.0; }, 2.0, 2.0) == 0.0);
    CHECK_THROWS(integrate_1d([](double) { return 1.0; }, 2.0, 1.0));
}

TEST_CASE("endpoint log singularity") {
    Config cfg;
    cfg.abs_tol = 1e-12;
    cfg.rel_tol = 1e-12;
    CHECK(integrate_1d([](double x) { return std::log(x); }, 0.0, 1.0, cfg) == doctest::Approx(-1.0).epsilon(1e-10));
}

TEST_CASE("adaptive driver gives up past max_depth") {
    Config cfg;
    cfg.abs_tol = 1e-15;
    cfg.rel_tol = 1e-15;
    cfg.max_depth = 2;
    CHECK_THROWS_AS(integrate_1d([](double x) { return std::sin(1.0 / x); }, 1e-4, 1.0, cfg), NonConvergent);
}

TEST_CASE("split integration honours interior kinks") {
    const std::vector<double> br{0.3, 0.7};
    Config cfg;
    cfg.abs_tol = 1e-13;
    cfg.rel_tol = 1e-13;
    const double v = integrate_1d_split([](double x) { return std::fabs(x - 0.3) + (x > 0.7 ? 1.0 : 0.0); },
                                        0.0, 1.0, br, cfg);
    CHECK(v == doctest::Approx(0.5 * 0.09 + 0.5 * 0.49 + 0.3).epsilon(1e-12));
}

TEST_CASE("ordered simplex volumes") {
    const auto d3 = simplex(3, 0.25, 0.5);
    const double v3 = integrate_ordered([](const double*) { return 1.0; }, d3);
    CHECK(v3 == doctest::Approx(std::pow(0.25, 3) / 6.0).epsilon(1e-10));
    CHECK(v3 == doctest::Approx(0.002604166666).epsilon(1e-9));
    for (int dim : {4, 5, 6}) {
        const double exact = std::pow(0.25, dim) / factorial(dim);
        const double qmc = integrate_ordered([](const double*) { return 1.0; }, simplex(dim, 0.25, 0.5));
        CHECK_MESSAGE(std::fabs(qmc / exact - 1.0) < 1e-3, "dim " << dim);
        Config fine;
        fine.rel_tol = 1e-7;
        const double iter = integrate_ordered([](const double*) { return 1.0; }, simplex(dim, 0.25, 0.5), fine,
                                              Method::iterated);
        CHECK_MESSAGE(std::fabs(iter / exact - 1.0) < 1e-6, "dim " << dim);
    }
}

TEST_CASE("linearity in the integrand") {
    const auto d = simplex(3, 0.25, 0.5);
    const double one = integrate_ordered([](const double*) { return 1.0; }, d);
    CHECK(integrate_ordered([](const double*) { return 3.5; }, d) == doctest::Approx(3.5 * one).epsilon(1e-12));
}

TEST_CASE("box and mixed chains") {
    // {0 <= t <= 1, 2 <= u <= 3, t <= v <= 1}: volume 1 * 1/2
    OrderedDomain d;
    d.add(Bound::constant(0), Bound::constant(1))
        .add(Bound::constant(2), Bound::constant(3))
        .add(Bound::variable(0), Bound::constant(1));
    CHECK(integrate_ordered([](const double*) { return 1.0; }, d) == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(d.min_values() == std::vector<double>{0, 2, 0});
    CHECK(d.max_values() == std::vector<double>{1, 3, 1});
}

TEST_CASE("Fubini: reversing the chain order") {
    const double a = 0.2, b = 0.5;
    auto f = [](double t, double u, double v) { return t * u * u + 1.0 / v + std::sin(t * v); };
    OrderedDomain forward = simplex(3, a, b);
    // v first, then u <= v, then t <= u
    OrderedDomain backward;
    backward.add(Bound::constant(a), Bound::constant(b))
        .add(Bound::constant(a), Bound::variable(0))
        .add(Bound::constant(a), Bound::variable(1));
    Config cfg;
    const double x = integrate_ordered([&](const double* p) { return f(p[0], p[1], p[2]); }, forward, cfg);
    const double y = integrate_ordered([&](const double* p) { return f(p[2], p[1], p[0]); }, backward, cfg);
    CHECK(std::fabs(x - y) < 10.0 * (cfg.abs_tol + cfg.rel_tol * std::fabs(x)));
}

TEST_CASE("empty domains integrate to exactly zero") {
    OrderedDomain d;
    d.add(Bound::constant(0.5), Bound::constant(0.4)).add(Bound::variable(0), Bound::constant(1));
    CHECK(d.empty());
    CHECK(integrate_ordered([](const double*) { return 1.0; }, d) == 0.0);
    OrderedDomain chained;  // t in [0.3, 0.4], u in [t, 0.2]: empty through the chain
    chained.add(Bound::constant(0.3), Bound::constant(0.4)).add(Bound::variable(0), Bound::constant(0.2));
    CHECK(chained.empty());
    CHECK(integrate_ordered([](const double*) { return 1.0; }, chained) == 0.0);
    OrderedDomain six = simplex(6, 0.5, 0.25);
    CHECK(integrate_ordered([](const double*) { return 1.0; }, six, {}, Method::qmc) == 0.0);
}

TEST_CASE("qmc is reproducible") {
    const auto d = simplex(5, 0.2, 0.5);
    auto f = [](const double* x) { return 1.0 / (x[0] * x[4]); };
    CHECK(integrate_ordered(f, d) == integrate_ordered(f, d));
}

TEST_CASE("grid_maximize") {
    auto peak = grid_maximize([](double x) { return -(x - 3.0) * (x - 3.0); }, 2.0, 4.0, 0.1, 0.001);
    CHECK(std::fabs(peak.arg - 3.0) <= 0.001);
    auto edge = grid_maximize([](double x) { return -x; }, 2.0, 4.0);
    CHECK(edge.arg == 2.0);
    auto flat = grid_maximize([](double) { return 1.0; }, 2.0, 4.0);
    CHECK(flat.arg == 2.0);
    auto skip = grid_maximize(
        [](double x) {
            if (x < 2.5) throw UndefinedIntegrand("below");
            return -x;
        },
        2.0, 4.0);
    CHECK(skip.arg == doctest::Approx(2.5).epsilon(1e-12));
    auto off_grid = grid_maximize([](double x) { return -std::fabs(x - 2.3456); }, 2.0, 4.0);
    CHECK(std::fabs(off_grid.arg - 2.3456) <= 0.001);
    CHECK_THROWS(grid_maximize([](double) -> double { throw UndefinedIntegrand("never"); }, 2.0, 3.0));
    CHECK_THROWS(grid_maximize([](double x) { return x; }, 2.0, 3.0, 0.001, 0.01));
}

TEST_CASE("bisect_threshold") {
    CHECK(bisect_threshold([](double) { return true; }, 2.0, 5.0) == 2.0);
    const double t = bisect_threshold([](double x) { return x >= 2.75; }, 2.0, 5.0, 0.001);
    CHECK(t >= 2.75);
    CHECK(t - 2.75 <= 0.001);
    CHECK_THROWS_AS(bisect_threshold([](double) { return false; }, 2.0, 5.0), ThresholdNotBracketed);
}

TEST_CASE("lattice minimum finds the corner of a decreasing function") {
    const auto d = simplex(3, 0.2, 0.5);
    const double m = lattice_minimum([](const double* x) { return -(x[0] + x[1] + x[2]); }, d);
    CHECK(m == doctest::Approx(-1.5));
}

}
