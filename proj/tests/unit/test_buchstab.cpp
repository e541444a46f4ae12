#include "chenbound/buchstab.hpp"
#include "chenbound/errors.hpp"
#include "chenbound/quadrature.hpp"

#include "doctest.h"

#include <array>
#include <cmath>

using namespace chenbound;
using buchstab::Spline;

namespace {

const buchstab::OdeReference& ode() {
    static const auto r = buchstab::OdeReference::solve(12.0, 1e-15);
    return r;
}

// Independent evaluation of (log(u - 1) + 1)/u.
double closed_oracle(double u) { return u < 2.0 ? 1.0 / u : (std::log(u - 1.0) + 1.0) / u; }

} // namespace

TEST_SUITE("buchstab") {

TEST_CASE("closed form on [1,3]") {
    CHECK(buchstab::omega_closed(1.0) == 1.0);
    CHECK(buchstab::omega_closed(2.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(buchstab::omega_closed(2.5) == doctest::Approx((std::log(1.5) + 1.0) / 2.5).epsilon(1e-15));
    CHECK(buchstab::omega_closed(2.5) == doctest::Approx(0.5621860).epsilon(1e-7));
    // both branches meet at 2
    CHECK(std::fabs(buchstab::omega_closed(std::nextafter(2.0, 0.0)) - buchstab::omega_closed(2.0)) < 1e-15);
    CHECK_THROWS_AS(buchstab::omega_closed(0.99), DomainError);
    CHECK_THROWS_AS(buchstab::omega_closed(3.01), DomainError);
}

TEST_CASE("error bound is 3^-(N+1)") {
    CHECK(buchstab::error_bound(1) == doctest::Approx(1.0 / 9.0));
    CHECK(buchstab::error_bound(10) == doctest::Approx(std::pow(3.0, -11)));
    CHECK(buchstab::error_bound(20) == doctest::Approx(std::pow(3.0, -21)));
    CHECK(Spline::build(20, 10).error_bound() == doctest::Approx(std::pow(3.0, -21)));
}

TEST_CASE("first coefficient is omega at 5/2") {
    for (int n : {10, 20}) {
        const auto sp = Spline::build(n, 10);
        CHECK(std::fabs(sp.coefficient(2, 0) - (1.0 + std::log(1.5)) / 2.5) <= sp.error_bound());
    }
}

TEST_CASE("spline matches the closed form on [2,3]") {
    const auto s10 = Spline::build(10, 10);
    CHECK(std::fabs(s10(2.5) - closed_oracle(2.5)) <= std::pow(3.0, -11));
    const auto s20 = Spline::build(20, 10);
    for (int i = 0; i <= 10; ++i) {
        const double u = 2.0 + 0.1 * i;
        CHECK(std::fabs(s20(u) - closed_oracle(u)) <= std::pow(3.0, -21));
    }
    CHECK(std::fabs(s20(3.0) - 0.5643824) < 1e-7);
}

TEST_CASE("exact branch, tail and domain") {
    const auto& sp = buchstab::default_spline();
    CHECK(sp(1.5) == 1.0 / 1.5);
    CHECK(sp(1.0) == 1.0);
    CHECK(sp(20.0) == doctest::Approx(0.5614594836).epsilon(1e-10));
    CHECK(sp.tail() == doctest::Approx(std::exp(-buchstab::kEulerGamma)).epsilon(1e-15));
    CHECK(sp(11.0) == sp.tail());
    CHECK_THROWS_AS(sp(0.5), DomainError);
}

TEST_CASE("trivial bound") {
    const auto& sp = buchstab::default_spline();
    const double e = sp.error_bound();
    for (double u = 1.0; u <= 15.0; u += 0.005) {
        CHECK(sp(u) >= 0.5 - e);
        CHECK(sp(u) <= 1.0 + e);
    }
}

TEST_CASE("continuity at knots") {
    for (int n : {10, 20}) {
        const auto sp = Spline::build(n, 10);
        for (int j = 2; j <= 11; ++j) {
            const double left = sp(std::nextafter(static_cast<double>(j), 0.0));
            CHECK(std::fabs(left - sp(j)) <= 2.0 * sp.error_bound());
        }
    }
}

TEST_CASE("integral identity u w(u) - int_1^{u-1} w = 1") {
    const auto& sp = buchstab::default_spline();
    quadrature::Config cfg;
    cfg.abs_tol = 1e-13;
    cfg.rel_tol = 1e-13;
    const std::array<double, 9> knots{2, 3, 4, 5, 6, 7, 8, 9, 10};
    for (double u : {2.0, 2.5, 3.7, 5.0, 7.25, 9.9, 11.0}) {
        const double integral = quadrature::integrate_1d_split([&](double t) { return sp(t); }, 1.0,
                                                               u - 1.0, knots, cfg);
        CHECK(std::fabs(u * sp(u) - integral - 1.0) <= sp.intervals() * sp.error_bound() + 1e-12);
    }
}

TEST_CASE("json round trip") {
    const auto sp = Spline::build(12, 7);
    const auto back = Spline::from_json(sp.to_json());
    CHECK(back.degree() == 12);
    CHECK(back.intervals() == 7);
    CHECK(back.error_bound() == sp.error_bound());
    for (double u = 1.0; u < 9.0; u += 0.0137) CHECK(back(u) == sp(u));
    CHECK_THROWS(Spline::from_json("{\"format\":\"something else\"}"));
    CHECK_THROWS(Spline::from_json("not json"));
}

TEST_CASE("ode reference anchors") {
    const auto& r = ode();
    CHECK(r(2.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(std::fabs(r(3.0) - (std::log(2.0) + 1.0) / 3.0) <= 1e-14);
    CHECK(std::fabs(r(10.0) - std::exp(-buchstab::kEulerGamma)) <= 1e-13 + r.tolerance());
    for (double u = 1.0; u <= 2.0; u += 0.01) CHECK(std::fabs(r(u) - 1.0 / u) <= r.tolerance());
    CHECK(r.error_estimate() <= r.tolerance());
}

TEST_CASE("ode reference is continuous at node scale") {
    // |w'| <= 1 on [1, inf), so neighbours at distance h differ by at most h.
    const auto& r = ode();
    const double h = r.step();
    for (double u = 1.0; u + h <= 11.0; u += 0.37 * h * 97.0) {
        CHECK(std::fabs(r(u + h) - r(u)) <= h);
    }
}

TEST_CASE("spline agrees with the ode reference") {
    const auto& sp = buchstab::default_spline();
    const auto& r = ode();
    double worst = 0.0;
    for (int n = 0; n <= 900; ++n) {
        const double u = 1.0 + 0.01 * n;
        worst = std::max(worst, std::fabs(sp(u) - r(u)));
    }
    CHECK(worst <= sp.error_bound() + r.tolerance());
}

TEST_CASE("empirical decay towards e^-gamma") {
    const auto& r = ode();
    const double limit = std::exp(-buchstab::kEulerGamma);
    for (int n = 20; n <= 105; ++n) {
        const double u = 0.1 * n;
        const double bound = 0.38 * std::exp(-1.275 * u * std::log(u));
        CHECK_MESSAGE(std::fabs(r(u) - limit) <= bound, "u = " << u);
    }
}

TEST_CASE("ode reference reports an unreachable tolerance") {
    buchstab::OdeReference::Options opts;
    opts.max_halvings = 1;
    CHECK_THROWS_AS(buchstab::OdeReference::solve(5.0, 1e-30, opts), NonConvergent);
    CHECK_THROWS(buchstab::OdeReference::solve(1.5, 1e-10));
    CHECK_THROWS(buchstab::OdeReference::solve(5.0, 0.0));
}

}
