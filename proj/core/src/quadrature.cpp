#include "chenbound/quadrature.hpp"

#include "chenbound/errors.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace chenbound::quadrature {

void Config::validate() const {
    if (!(abs_tol > 0.0)) throw std::invalid_argument("quadrature: abs_tol must be > 0");
    if (!(rel_tol > 0.0)) throw std::invalid_argument("quadrature: rel_tol must be > 0");
    if (max_depth < 1) throw std::invalid_argument("quadrature: max_depth must be >= 1");
    if (mc_samples < 1) throw std::invalid_argument("quadrature: mc_samples must be >= 1");
}

namespace {

// Kronrod 15-point nodes on [-1,1] stored as the non-negative half, with the
// embedded 7-point Gauss weights aligned to the same nodes (0 where absent).
struct Rule {
    std::array<double, 8> x{};
    std::array<double, 8> wk{};
    std::array<double, 8> wg{};
};

const Rule& gk15() {
    static const Rule rule = [] {
        using boost::math::quadrature::gauss;
        using boost::math::quadrature::gauss_kronrod;
        Rule r;
        const auto& kx = gauss_kronrod<double, 15>::abscissa();
        const auto& kw = gauss_kronrod<double, 15>::weights();
        const auto& gx = gauss<double, 7>::abscissa();
        const auto& gw = gauss<double, 7>::weights();
        for (std::size_t i = 0; i < r.x.size(); ++i) {
            r.x[i] = kx[i];
            r.wk[i] = kw[i];
            for (std::size_t g = 0; g < gx.size(); ++g) {
                if (std::fabs(gx[g] - kx[i]) < 1e-14) r.wg[i] = gw[g];
            }
        }
        return r;
    }();
    return rule;
}

struct Panel {
    double a;
    double b;
    double value;
    double error;
    int depth;
};

struct ByError {
    bool operator()(const Panel& l, const Panel& r) const { return l.error < r.error; }
};

Panel evaluate(FunctionRef<double(double)> f, double a, double b, int depth) {
    const Rule& rule = gk15();
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double k = 0.0;
    double g = 0.0;
    const double f0 = f(c);
    k += rule.wk[0] * f0;
    g += rule.wg[0] * f0;
    for (std::size_t i = 1; i < rule.x.size(); ++i) {
        const double dx = h * rule.x[i];
        const double fs = f(c - dx) + f(c + dx);
        k += rule.wk[i] * fs;
        g += rule.wg[i] * fs;
    }
    k *= h;
    g *= h;
    double err = std::fabs(k - g);
    // Nothing meaningful remains below the rounding noise of the sum itself.
    const double noise = 50.0 * std::numeric_limits<double>::epsilon() * std::fabs(k);
    if (err < noise) err = 0.0;
    return {a, b, k, err, depth};
}

} // namespace

Estimate integrate_1d_estimate(FunctionRef<double(double)> f, double a, double b,
                               const Config& cfg) {
    if (std::isnan(a) || std::isnan(b)) throw std::invalid_argument("integrate_1d: NaN limit");
    if (a > b) throw std::invalid_argument("integrate_1d: requires a <= b");
    if (a == b) return {};

    std::priority_queue<Panel, std::vector<Panel>, ByError> queue;
    Panel first = evaluate(f, a, b, 0);
    double total = first.value;
    double total_err = first.error;
    std::size_t evaluations = 15;
    queue.push(first);

    auto target = [&] { return std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(total)); };

    while (total_err > target()) {
        Panel worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (worst.depth >= cfg.max_depth || mid <= worst.a || mid >= worst.b) {
            throw NonConvergent("integrate_1d: no convergence on [" + std::to_string(a) + ", " +
                                std::to_string(b) + "], error estimate " +
                                std::to_string(total_err));
        }
        Panel left = evaluate(f, worst.a, mid, worst.depth + 1);
        Panel right = evaluate(f, mid, worst.b, worst.depth + 1);
        evaluations += 30;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
        // Guard against drift from repeated incremental updates.
        if (queue.size() % 64 == 0) {
            auto copy = queue;
            total = 0.0;
            total_err = 0.0;
            while (!copy.empty()) {
                total += copy.top().value;
                total_err += copy.top().error;
                copy.pop();
            }
        }
    }
    return {total, total_err, evaluations};
}

double integrate_1d_split(FunctionRef<double(double)> f, double a, double b,
                          std::span<const double> breakpoints, const Config& cfg) {
    std::vector<double> cuts{a};
    for (double p : breakpoints) {
        if (p > a && p < b) cuts.push_back(p);
    }
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) sum += integrate_1d(f, cuts[i], cuts[i + 1], cfg);
    return sum;
}

Argmax grid_maximize(const std::function<double(double)>& g, double lo, double hi, double tol0,
                     double tol_final) {
    if (!(lo <= hi)) throw std::invalid_argument("grid_maximize: requires lo <= hi");
    if (!(tol0 > tol_final && tol_final > 0.0)) {
        throw std::invalid_argument("grid_maximize: requires tol0 > tol_final > 0");
    }

    Argmax best;
    bool found = false;
    double left = lo;
    double right = hi;
    double eps = tol0;
    // Scan steps are decimal; the slack keeps 10 * 0.1 from stopping short of hi.
    const double slack = 1e-9;
    while (eps >= tol_final * (1.0 - slack)) {
        bool pass_found = false;
        Argmax pass;
        for (long n = 0;; ++n) {
            const double x = left + static_cast<double>(n) * eps;
            if (x > right + slack * eps) break;
            double v;
            try {
                v = g(x);
            } catch (const UndefinedIntegrand&) {
                continue;
            } catch (const DomainError&) {
                continue;
            }
            ++best.evaluations;
            if (std::isnan(v)) continue;
            if (!pass_found || v > pass.value) {
                pass.arg = x;
                pass.value = v;
                pass_found = true;
            }
        }
        if (pass_found) {
            best.arg = pass.arg;
            best.value = pass.value;
            found = true;
        }
        if (!found) {
            throw UndefinedIntegrand("grid_maximize: function undefined at every scan point");
        }
        left = std::max(best.arg - eps, lo);
        right = best.arg + eps;
        eps /= 10.0;
    }
    return best;
}

double bisect_threshold(const std::function<bool(double)>& defined, double lo, double hi,
                        double tol) {
    if (!(lo <= hi)) throw std::invalid_argument("bisect_threshold: requires lo <= hi");
    if (!(tol > 0.0)) throw std::invalid_argument("bisect_threshold: tol must be > 0");
    if (defined(lo)) return lo;
    if (!defined(hi)) {
        throw ThresholdNotBracketed("bisect_threshold: predicate false at upper end " +
                                    std::to_string(hi));
    }
    while (hi - lo >= tol) {
        const double mid = 0.5 * (lo + hi);
        if (defined(mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

} // namespace chenbound::quadrature
