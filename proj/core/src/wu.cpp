#include "chenbound/wu.hpp"

#include "chenbound/errors.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace chenbound::wu {

namespace {

constexpr double kSlack = 1e-12;

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

void require(std::vector<std::string>& out, bool ok, const std::string& what) {
    if (!ok) out.push_back(what);
}

// Tight absolute target for the cheap one-dimensional pieces.
quadrature::Config one_d_config(double abs_tol = 1e-13) {
    quadrature::Config c;
    c.abs_tol = abs_tol;
    c.rel_tol = 1e-13;
    c.max_depth = 50;
    return c;
}

double oriented(quadrature::FunctionRef<double(double)> f, double a, double b,
                const quadrature::Config& cfg) {
    if (a <= b) return quadrature::integrate_1d(f, a, b, cfg);
    return -quadrature::integrate_1d(f, b, a, cfg);
}

double log_term(double a, double b, const quadrature::Config& cfg) {
    return oriented([](double t) { return std::log(t - 1.0) / t; }, a, b, cfg);
}

double ratio_term(double k, double a, double b, const quadrature::Config& cfg) {
    return oriented([k](double t) { return std::log(k * t - 1.0) / (t * (1.0 - t)); }, a, b, cfg);
}

} // namespace

std::vector<std::string> psi1_violations(double s, double s_prime) {
    std::vector<std::string> out;
    require(out, s >= 2.0 - kSlack, "2 <= s (s = " + fmt(s) + ")");
    require(out, s <= 3.0 + kSlack, "s <= 3 (s = " + fmt(s) + ")");
    require(out, s_prime >= 3.0 - kSlack, "3 <= s' (s' = " + fmt(s_prime) + ")");
    require(out, s_prime <= 5.0 + kSlack, "s' <= 5 (s' = " + fmt(s_prime) + ")");
    require(out, s_prime - s_prime / s >= 2.0 - kSlack,
            "s' - s'/s >= 2 (got " + fmt(s_prime - s_prime / s) + ")");
    return out;
}

AlphaSet alpha_values(const WuParams& p) {
    if (!p.has_ks()) throw std::invalid_argument("alpha_set: k1, k2, k3 are required");
    const double s = p.s;
    const double sp = p.s_prime;
    const double k1 = *p.k1;
    const double k2 = *p.k2;
    const double k3 = *p.k3;
    AlphaSet a;
    a.alpha[1] = k1 - 2.0;
    a.alpha[2] = sp - 2.0;
    a.alpha[3] = sp - sp / s - 1.0;
    a.alpha[4] = sp - sp / k2 - 1.0;
    a.alpha[5] = sp - sp / k3 - 1.0;
    a.alpha[6] = sp - 2.0 * sp / k2;
    a.alpha[7] = sp - sp / k1 - sp / k3;
    a.alpha[8] = sp - sp / k1 - sp / k2;
    a.alpha[9] = k1 - k1 / k2 - 1.0;
    return a;
}

std::vector<std::string> psi2_violations(const WuParams& p) {
    auto out = psi1_violations(p.s, p.s_prime);
    if (!p.has_ks()) {
        out.emplace_back("k1, k2, k3 must be given");
        return out;
    }
    const double k1 = *p.k1;
    const double k2 = *p.k2;
    const double k3 = *p.k3;
    require(out, p.s <= k3 + kSlack, "s <= k3 (k3 = " + fmt(k3) + ")");
    require(out, k3 <= k2 + kSlack, "k3 <= k2 (k2 = " + fmt(k2) + ")");
    require(out, k2 <= k1 + kSlack, "k2 <= k1 (k1 = " + fmt(k1) + ")");
    require(out, k1 <= p.s_prime + kSlack, "k1 <= s' (s' = " + fmt(p.s_prime) + ")");
    if (k1 > 1.0 && k2 > 1.0 && k3 > 1.0 && p.s > 1.0) {
        const AlphaSet a = alpha_values(p);
        for (int i = 1; i <= 9; ++i) {
            require(out, a[i] >= 1.0 - kSlack && a[i] <= 3.0 + kSlack,
                    "1 <= alpha" + std::to_string(i) + " <= 3 (got " + fmt(a[i]) + ")");
        }
        require(out, a[1] < a[4], "alpha1 < alpha4");
        require(out, a[5] < a[8], "alpha5 < alpha8");
    }
    return out;
}

AlphaSet alpha_set(const WuParams& p) {
    if (!p.has_ks()) throw std::invalid_argument("alpha_set: k1, k2, k3 are required");
    auto bad = psi2_violations(p);
    if (!bad.empty()) throw ConstraintViolation(std::move(bad));
    return alpha_values(p);
}

double sigma(double a, double b, double c) {
    if (!(a > 1.0 && b > 1.0)) throw DomainError("sigma: limits must exceed 1");
    if (!(c > 0.0)) throw DomainError("sigma: c must be positive");
    return oriented([c](double t) { return std::log(c / (t - 1.0)) / t; }, a, b, one_d_config());
}

double sigma0(double t) {
    if (!(t >= 1.0)) throw DomainError("sigma0: t = " + fmt(t) + " below 1");
    static const double denominator = 1.0 - sigma(3.0, 5.0, 4.0);
    return sigma(3.0, t + 2.0, t + 1.0) / denominator;
}

std::array<double, 3> xi1_terms(double t, double s, double s_prime, const KernelOptions& opts) {
    const double sp = s_prime;
    const double a2 = sp - 2.0;
    const double a3 = sp - sp / s - 1.0;
    const double base = (s - 1.0) * (sp - 1.0);
    std::array<double, 3> r{};
    r[0] = sigma0(t) / (2.0 * t) * std::log(16.0 / base);
    if (indicator(a2, 3.0, t)) r[1] = std::log((t + 1.0) * (t + 1.0) / base) / (2.0 * t);
    const bool third = opts.xi1 == Xi1Indicator::printed ? indicator(a3, a2, t) : indicator(a2, a3, t);
    if (third) r[2] = std::log((t + 1.0) / ((s - 1.0) * (sp - 1.0 - t))) / (2.0 * t);
    return r;
}

double xi1(double t, double s, double s_prime, const KernelOptions& opts) {
    const auto r = xi1_terms(t, s, s_prime, opts);
    return r[0] + r[1] + r[2];
}

std::array<double, 10> xi2_terms(double t, const WuParams& p, const KernelOptions& opts) {
    const AlphaSet a = alpha_values(p);
    const double s = p.s;
    const double sp = p.s_prime;
    const double k1 = *p.k1;
    const double k2 = *p.k2;
    const double k3 = *p.k3;
    const double prod = (s - 1.0) * (sp - 1.0) * (k1 - 1.0) * (k2 - 1.0) * (k3 - 1.0);
    const double w = 1.0 / (5.0 * t);
    const double minus = 1.0 / (5.0 * t * (1.0 - t / sp));

    std::array<double, 10> r{};
    r[0] = sigma0(t) * w * std::log(1024.0 / prod);
    if (indicator(a[2], 3.0, t)) r[1] = w * std::log(std::pow(t + 1.0, 5) / prod);
    if (indicator(a[9], a[1], t)) {
        r[2] = w * std::log((t + 1.0) / ((k2 - 1.0) * (k1 - 1.0 - t)));
    }
    if (indicator(a[5], a[2], t)) {
        r[3] = w * std::log((t + 1.0) / ((k3 - 1.0) * (sp - 1.0 - t)));
    }
    if (indicator(a[3], a[2], t)) {
        r[4] = w * std::log((t + 1.0) / ((s - 1.0) * (sp - 1.0 - t)));
    }
    if (indicator(a[1], a[2], t)) {
        r[5] = w * std::log((t + 1.0) * (t + 1.0) / ((k1 - 1.0) * (k2 - 1.0)));
    }
    if (indicator(a[7], a[5], t)) {
        const double denom = opts.term7 == Xi2Term7::printed_plus
                                 ? 1.0 / (5.0 * t * (1.0 + t / sp))
                                 : minus;
        r[6] = denom * std::log(sp * sp / ((k1 * sp - sp - k1 * t) * (k3 * sp - sp - k3 * t)));
    }
    if (indicator(a[5], a[8], t)) {
        r[7] = minus * std::log(sp * (sp - 1.0 - t) / (k1 * sp - sp - k1 * t));
    }
    if (indicator(a[6], a[8], t)) r[8] = minus * std::log(sp / (k2 * sp - sp - k2 * t));
    if (indicator(a[8], a[2], t)) r[9] = minus * std::log(sp - 1.0 - t);
    return r;
}

double xi2(double t, const WuParams& p, const KernelOptions& opts) {
    double sum = 0.0;
    for (double v : xi2_terms(t, p, opts)) sum += v;
    return sum;
}

std::vector<double> xi1_breakpoints(double s, double s_prime) {
    return {s_prime - 2.0, s_prime - s_prime / s - 1.0, 3.0};
}

std::vector<double> xi2_breakpoints(const WuParams& p) {
    const AlphaSet a = alpha_values(p);
    std::vector<double> out(a.alpha.begin() + 1, a.alpha.end());
    out.push_back(3.0);
    return out;
}

Psi1Breakdown psi1_detail(double s, double s_prime, const Settings& settings) {
    auto bad = psi1_violations(s, s_prime);
    if (!bad.empty()) throw ConstraintViolation(std::move(bad));
    const auto cfg = one_d_config(std::min(settings.quad.abs_tol, 1e-10));
    Psi1Breakdown out;
    out.log_term = -log_term(2.0, s_prime - 1.0, cfg);
    out.ratio_term = 0.5 * ratio_term(s_prime, 1.0 - 1.0 / s, 1.0 - 1.0 / s_prime, cfg);
    out.i1 = i1_max(s, s_prime, settings);
    out.value = out.log_term + out.ratio_term - out.i1.value;
    return out;
}

double psi1(double s, double s_prime, const Settings& settings) {
    return psi1_detail(s, s_prime, settings).value;
}

std::array<double, 5> psi2_one_d(const WuParams& p) {
    alpha_set(p);
    const auto cfg = one_d_config(1e-12);
    const double k1 = *p.k1;
    const double k2 = *p.k2;
    const double k3 = *p.k3;
    return {
        -0.4 * log_term(2.0, p.s_prime - 1.0, cfg),
        -0.4 * log_term(2.0, k1 - 1.0, cfg),
        -0.2 * log_term(2.0, k2 - 1.0, cfg),
        0.2 * ratio_term(p.s_prime, 1.0 - 1.0 / p.s, 1.0 - 1.0 / p.s_prime, cfg),
        0.2 * ratio_term(k1, 1.0 - 1.0 / k3, 1.0 - 1.0 / k1, cfg),
    };
}

Psi2Breakdown psi2_detail(const WuParams& p, const Settings& settings,
                          const std::map<int, PhiMax>& known) {
    if (settings.i2.upper_index != 19 && settings.i2.upper_index != 21) {
        throw std::invalid_argument("psi2: upper index must be 19 or 21");
    }
    Psi2Breakdown out;
    out.one_d = psi2_one_d(p);
    double sum_i = 0.0;
    for (int i = 9; i <= settings.i2.upper_index; ++i) {
        auto it = known.find(i);
        const PhiMax m = it != known.end() ? it->second : i2_max(i, p, settings);
        out.i2[i] = m;
        sum_i += m.value;
    }
    double base = 0.0;
    for (double v : out.one_d) base += v;
    out.value = base - 0.4 * sum_i;
    return out;
}

double psi2(const WuParams& p, const Settings& settings) {
    return psi2_detail(p, settings).value;
}

const std::array<PublishedRow, 9>& published_rows() {
    static const std::array<PublishedRow, 9> rows{{
        {1, 2.2, 4.54, 3.53, 2.90, 2.44, 0.015826357, 0.01615180},
        {2, 2.3, 4.50, 3.54, 2.88, 2.43, 0.015247971, 0.01547663},
        {3, 2.4, 4.46, 3.57, 2.87, 2.40, 0.013898757, 0.01406834},
        {4, 2.5, 4.12, 3.56, 2.91, 2.50, 0.011776059, 0.01187935},
        {5, 2.6, 3.58, {}, {}, {}, 0.009405211, 0.00947409},
        {6, 2.7, 3.47, {}, {}, {}, 0.006558950, 0.00659089},
        {7, 2.8, 3.34, {}, {}, {}, 0.003536751, 0.00354796},
        {8, 2.9, 3.19, {}, {}, {}, 0.001056651, 0.00105838},
        {9, 3.0, 3.00, {}, {}, {}, 0.0, 0.0},
    }};
    return rows;
}

} // namespace chenbound::wu
