#include "chenbound/errors.hpp"
#include "chenbound/wu.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace chenbound::wu {

using quadrature::Bound;
using quadrature::OrderedDomain;

namespace {

Bound C(double v) { return Bound::constant(v); }
Bound V(int n) { return Bound::variable(n); }

// Arguments a hair below 1 at the closed corner are rounding, not a real violation.
constexpr double kArgumentSlack = 1e-9;

enum class Weight { uu, vv, i20_printed, i20_alternate, xx };

Weight weight_for(int i, const Settings& settings) {
    if (i <= 15) return Weight::uu;
    if (i <= 19) return Weight::vv;
    if (i == 20) return settings.i2.weight20_printed ? Weight::i20_printed : Weight::i20_alternate;
    return Weight::xx;
}

double weight(Weight w, const double* x) {
    switch (w) {
    case Weight::uu:
        return 1.0 / (x[0] * x[1] * x[1] * x[2]);
    case Weight::vv:
        return 1.0 / (x[0] * x[1] * x[2] * x[2] * x[3]);
    case Weight::i20_printed:
        return 1.0 / (x[0] * x[1] * x[2] * x[2] * x[4]);
    case Weight::i20_alternate:
        return 1.0 / (x[0] * x[1] * x[2] * x[3] * x[3] * x[4]);
    case Weight::xx:
        return 1.0 / (x[0] * x[1] * x[2] * x[3] * x[4] * x[4] * x[5]);
    }
    return 0.0;
}

double omega_argument(double phi, const double* x, int dim, int divisor) {
    double sum = 0.0;
    for (int n = 0; n < dim; ++n) sum += x[n];
    return (phi - sum) / x[divisor];
}

double weighted_omega_integral(const OrderedDomain& dom, int divisor, Weight w, double phi,
                               const Settings& settings, bool with_omega) {
    const int dim = dom.dimension();
    const buchstab::Spline& omega = settings.omega();
    auto f = [&](const double* x) {
        if (!with_omega) return weight(w, x);
        double arg = omega_argument(phi, x, dim, divisor);
        if (arg < 1.0) {
            if (arg < 1.0 - kArgumentSlack) {
                throw UndefinedIntegrand("omega argument " + std::to_string(arg) +
                                         " below 1 at phi = " + std::to_string(phi));
            }
            arg = 1.0;
        }
        return omega(arg) * weight(w, x);
    };
    return quadrature::integrate_ordered(f, dom, settings.quad);
}

void check_index(int i) {
    if (i < 9 || i > 21) throw std::invalid_argument("I2 index must lie in 9..21");
}

void check_phi(double phi, double low, const char* what) {
    if (phi < low - 1e-12) {
        throw UndefinedIntegrand(std::string(what) + ": phi = " + std::to_string(phi) +
                                 " below threshold " + std::to_string(low));
    }
}

} // namespace

OrderedDomain i1_domain(double s, double s_prime) {
    const double lo = 1.0 / s_prime;
    const double hi = 1.0 / s;
    OrderedDomain d;
    d.add(C(lo), C(hi)).add(V(0), C(hi)).add(V(1), C(hi));
    return d;
}

OrderedDomain i2_domain(int i, const WuParams& p) {
    check_index(i);
    if (!p.has_ks()) throw std::invalid_argument("i2_domain: k1, k2, k3 are required");
    const double a = 1.0 / p.s_prime;
    const double b = 1.0 / *p.k1;
    const double c = 1.0 / *p.k2;
    const double d = 1.0 / *p.k3;
    const double e = 1.0 / p.s;
    OrderedDomain D;
    switch (i) {
    case 9: D.add(C(b), C(d)).add(V(0), C(d)).add(V(1), C(d)); break;
    case 10: D.add(C(b), C(c)).add(V(0), C(c)).add(C(c), C(e)); break;
    case 11: D.add(C(b), C(c)).add(C(c), C(d)).add(V(1), C(d)); break;
    case 12: D.add(C(a), C(b)).add(V(0), C(b)).add(C(d), C(e)); break;
    case 13: D.add(C(a), C(b)).add(C(b), C(c)).add(C(c), C(e)); break;
    case 14: D.add(C(a), C(b)).add(C(c), C(e)).add(V(1), C(e)); break;
    case 15: D.add(C(b), C(c)).add(C(c), C(d)).add(C(d), C(e)); break;
    case 16: D.add(C(c), C(d)).add(V(0), C(d)).add(V(1), C(d)).add(V(2), C(d)); break;
    case 17: D.add(C(c), C(d)).add(V(0), C(d)).add(V(1), C(d)).add(C(d), C(e)); break;
    case 18: D.add(C(c), C(d)).add(V(0), C(d)).add(C(d), C(e)).add(V(2), C(e)); break;
    case 19: D.add(C(b), C(c)).add(C(d), C(e)).add(V(1), C(e)).add(V(2), C(e)); break;
    case 20:
        D.add(C(c), C(d)).add(C(d), C(e)).add(V(1), C(e)).add(V(2), C(e)).add(V(3), C(e));
        break;
    case 21:
        D.add(C(d), C(e)).add(V(0), C(e)).add(V(1), C(e)).add(V(2), C(e)).add(V(3), C(e))
            .add(V(4), C(e));
        break;
    default: break;
    }
    return D;
}

int i2_divisor(int i) {
    check_index(i);
    if (i <= 15) return 1;
    if (i <= 19) return 2;
    if (i == 20) return 3;
    return 4;
}

double phi_low(const OrderedDomain& dom, int divisor_var) {
    const auto corner = dom.max_values();
    double sum = 0.0;
    for (double v : corner) sum += v;
    return std::max(2.0, sum + corner.at(static_cast<std::size_t>(divisor_var)));
}

double phi_threshold_bisect(const OrderedDomain& dom, int divisor_var, double hi, double tol) {
    const int dim = dom.dimension();
    auto defined = [&](double phi) {
        const double least = quadrature::lattice_minimum(
            [&](const double* x) { return omega_argument(phi, x, dim, divisor_var); }, dom);
        return least >= 1.0 - 1e-12;
    };
    return quadrature::bisect_threshold(defined, 2.0, hi, tol);
}

double i1(double phi, double s, double s_prime, const Settings& settings) {
    if (s_prime <= s) return 0.0;
    const auto dom = i1_domain(s, s_prime);
    check_phi(phi, phi_low(dom, 1), "I1");
    return weighted_omega_integral(dom, 1, Weight::uu, phi, settings, true);
}

double i1_weight(double s, double s_prime, const Settings& settings) {
    if (s_prime <= s) return 0.0;
    return weighted_omega_integral(i1_domain(s, s_prime), 1, Weight::uu, 0.0, settings, false);
}

double i2(int i, double phi, const WuParams& p, const Settings& settings) {
    alpha_set(p);
    const auto dom = i2_domain(i, p);
    if (dom.empty()) return 0.0;
    const int div = i2_divisor(i);
    check_phi(phi, phi_low(dom, div), "I2");
    return weighted_omega_integral(dom, div, weight_for(i, settings), phi, settings, true);
}

double i2_weight(int i, const WuParams& p, const Settings& settings) {
    alpha_set(p);
    const auto dom = i2_domain(i, p);
    if (dom.empty()) return 0.0;
    return weighted_omega_integral(dom, i2_divisor(i), weight_for(i, settings), 0.0, settings,
                                   false);
}

PhiMax i1_max(double s, double s_prime, const Settings& settings) {
    const auto dom = i1_domain(s, s_prime);
    const double low = phi_low(dom, 1);
    if (s_prime <= s) return {low, 0.0, low};
    const auto best = quadrature::grid_maximize(
        [&](double phi) { return i1(phi, s, s_prime, settings); }, low, 4.0, 0.1, 0.001);
    return {best.arg, best.value, low};
}

PhiMax i2_max(int i, const WuParams& p, const Settings& settings) {
    alpha_set(p);
    const auto dom = i2_domain(i, p);
    const int div = i2_divisor(i);
    const double low = phi_low(dom, div);
    if (dom.empty()) return {low, 0.0, low};
    const auto best = quadrature::grid_maximize(
        [&](double phi) { return i2(i, phi, p, settings); }, low, 5.0, 0.1, 0.001);
    return {best.arg, best.value, low};
}

} // namespace chenbound::wu
