#include "chenbound/chen.hpp"

#include "chenbound/errors.hpp"
#include "chenbound/parallel.hpp"
#include "published_fit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace chenbound::chen {

LocalCubic::LocalCubic(std::vector<double> xs, std::vector<double> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
    if (xs_.size() != ys_.size() || xs_.size() < 4) {
        throw std::invalid_argument("LocalCubic: needs at least 4 nodes with matching values");
    }
    if (!std::is_sorted(xs_.begin(), xs_.end()) ||
        std::adjacent_find(xs_.begin(), xs_.end()) != xs_.end()) {
        throw std::invalid_argument("LocalCubic: nodes must be strictly increasing");
    }
}

double LocalCubic::operator()(double x) const {
    const auto n = static_cast<long>(xs_.size());
    long k = static_cast<long>(std::upper_bound(xs_.begin(), xs_.end(), x) - xs_.begin()) - 1;
    k = std::clamp(k, 0L, n - 2);
    const long lo = std::clamp(k - 1, 0L, n - 4);
    double sum = 0.0;
    for (long i = lo; i < lo + 4; ++i) {
        double basis = 1.0;
        for (long j = lo; j < lo + 4; ++j) {
            if (j != i) basis *= (x - xs_[j]) / (xs_[i] - xs_[j]);
        }
        sum += basis * ys_[i];
    }
    return sum;
}

namespace detail {

namespace {

std::vector<double> column(bool psi2_rows_only, double wu::PublishedRow::*field) {
    std::vector<double> out;
    for (const auto& r : wu::published_rows()) {
        if (!psi2_rows_only || r.is_psi2()) out.push_back(r.*field);
    }
    return out;
}

std::vector<double> k_column(std::optional<double> wu::PublishedRow::*field) {
    std::vector<double> out;
    for (const auto& r : wu::published_rows()) {
        if (r.is_psi2()) out.push_back(*(r.*field));
    }
    return out;
}

std::vector<double> slice(const std::vector<double>& v, std::size_t from, std::size_t to) {
    return {v.begin() + static_cast<long>(from), v.begin() + static_cast<long>(to)};
}

double bisect_root(const LocalCubic& f1, const LocalCubic& f2, double lo, double hi) {
    auto diff = [&](double s) { return f1(s) - f2(s); };
    double flo = diff(lo);
    const double fhi = diff(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0)) {
        throw RootNotBracketed("crossing: Psi1 - Psi2 does not change sign on [" +
                               std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    while (hi - lo > 1e-13) {
        const double mid = 0.5 * (lo + hi);
        const double fm = diff(mid);
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

PublishedFit make_fit() {
    const auto s = column(false, &wu::PublishedRow::s);
    const auto psi = column(false, &wu::PublishedRow::psi_wu);
    const auto sp = column(false, &wu::PublishedRow::s_prime);
    const auto s2 = column(true, &wu::PublishedRow::s);
    PublishedFit fit{
        LocalCubic(slice(s, 4, 9), slice(psi, 4, 9)),
        LocalCubic(slice(s, 0, 4), slice(psi, 0, 4)),
        LocalCubic(s, sp),
        LocalCubic(s2, k_column(&wu::PublishedRow::k1)),
        LocalCubic(s2, k_column(&wu::PublishedRow::k2)),
        LocalCubic(s2, k_column(&wu::PublishedRow::k3)),
        0.0,
    };
    fit.crossing = bisect_root(fit.psi1, fit.psi2, 2.5, 2.6);
    return fit;
}

} // namespace

double PublishedFit::psi_b(double s) const {
    if (s <= 2.2) return psi2(2.2);
    return s <= crossing ? psi2(s) : psi1(s);
}

wu::WuParams PublishedFit::params(double s, RowKind kind, bool* fallback) const {
    if (fallback) *fallback = false;
    const auto& rows = wu::published_rows();
    const bool want2 = kind == RowKind::psi2;
    wu::WuParams p = want2 ? wu::WuParams::psi2(s, s_prime(s), k1(s), k2(s), k3(s))
                           : wu::WuParams::psi1(s, s_prime(s));
    auto feasible = [&](const wu::WuParams& q) {
        return want2 ? wu::psi2_violations(q).empty() : wu::psi1_violations(q.s, q.s_prime).empty();
    };
    if (feasible(p)) return p;
    if (fallback) *fallback = true;

    const wu::PublishedRow* nearest = nullptr;
    const wu::PublishedRow* nearest_feasible = nullptr;
    for (const auto& r : rows) {
        if (r.is_psi2() != want2) continue;
        auto q = r.params();
        q.s = s;
        if (!nearest || std::fabs(r.s - s) < std::fabs(nearest->s - s)) nearest = &r;
        if (feasible(q) &&
            (!nearest_feasible || std::fabs(r.s - s) < std::fabs(nearest_feasible->s - s))) {
            nearest_feasible = &r;
        }
    }
    const auto* pick = nearest_feasible ? nearest_feasible : nearest;
    auto q = pick->params();
    q.s = s;
    return q;
}

const PublishedFit& published_fit() {
    static const PublishedFit fit = make_fit();
    return fit;
}

} // namespace detail

double crossing_root() {
    return detail::published_fit().crossing;
}

InterpolationResult interpolation_experiment(int n, const Options& opts) {
    if (n < 9) throw std::invalid_argument("interpolation_experiment: needs at least 9 intervals");
    const auto& fit = detail::published_fit();

    Discretization d;
    d.spec = {GridKind::custom, n};
    d.points.push_back(1.0);
    InterpolationResult out;
    out.intervals = n;
    out.crossing_root = fit.crossing;
    std::vector<double> B;
    for (int i = 1; i <= n; ++i) {
        const double s = static_cast<double>(22 * (n - 1) + 8 * (i - 1)) / (10.0 * (n - 1));
        const RowKind kind = s > fit.crossing ? RowKind::psi1 : RowKind::psi2;
        bool fallback = false;
        d.points.push_back(s);
        d.kinds.push_back(kind);
        d.params.push_back(fit.params(s, kind, &fallback));
        d.scan_s_prime.push_back(false);
        if (fallback) ++out.infeasible_rows;
        B.push_back(fit.psi_b(s));
    }
    const Matrix A = build_A(d, opts);
    out.solution = solve_system(A, B);
    out.points.assign(d.points.begin() + 1, d.points.end());
    return out;
}

} // namespace chenbound::chen
