#include "chenbound/chen.hpp"

#include "chenbound/errors.hpp"
#include "chenbound/parallel.hpp"
#include "published_fit.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace chenbound::chen {

GridSpec GridSpec::parse(std::string_view text) {
    if (text == "nine") return {GridKind::nine, 9};
    if (text == "forty") return {GridKind::forty, 45};
    if (text == "fourhundred") return {GridKind::fourhundred, 405};
    constexpr std::string_view prefix = "custom:";
    if (text.substr(0, prefix.size()) == prefix) {
        const std::string digits(text.substr(prefix.size()));
        std::size_t used = 0;
        int n = 0;
        try {
            n = std::stoi(digits, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == digits.size() && !digits.empty() && n >= 4) return {GridKind::custom, n};
        throw std::invalid_argument("grid: custom:N needs an integer N >= 4");
    }
    throw std::invalid_argument("grid: expected nine, forty, fourhundred or custom:N, got '" +
                                std::string(text) + "'");
}

std::string GridSpec::name() const {
    switch (kind) {
    case GridKind::nine: return "nine";
    case GridKind::forty: return "forty";
    case GridKind::fourhundred: return "fourhundred";
    case GridKind::custom: return "custom:" + std::to_string(n);
    }
    return "?";
}

std::string_view to_string(BSource b) {
    switch (b) {
    case BSource::computed: return "computed";
    case BSource::wu_published: return "wu-published";
    case BSource::thesis_published: return "thesis-published";
    }
    return "?";
}

BSource parse_b_source(std::string_view text) {
    if (text == "computed") return BSource::computed;
    if (text == "wu-published") return BSource::wu_published;
    if (text == "thesis-published") return BSource::thesis_published;
    throw std::invalid_argument("b-source: expected computed, wu-published or thesis-published");
}

namespace {

constexpr double kPsi2Edge = 2.5 + 1e-9;

void add_published_psi2_rows(Discretization& d) {
    for (const auto& row : wu::published_rows()) {
        if (!row.is_psi2()) continue;
        d.points.push_back(row.s);
        d.kinds.push_back(RowKind::psi2);
        d.params.push_back(row.params());
        d.scan_s_prime.push_back(false);
    }
}

void add_scanned_psi1_row(Discretization& d, double s) {
    d.points.push_back(s);
    d.kinds.push_back(RowKind::psi1);
    d.params.push_back(wu::WuParams::psi1(s, std::numeric_limits<double>::quiet_NaN()));
    d.scan_s_prime.push_back(true);
}

quadrature::Config matrix_config() {
    quadrature::Config c;
    c.abs_tol = 1e-12;
    c.rel_tol = 1e-10;
    c.max_depth = 60;
    return c;
}

} // namespace

Discretization build_grid(GridSpec spec) {
    Discretization d;
    d.spec = spec;
    d.points.push_back(1.0);
    switch (spec.kind) {
    case GridKind::nine:
        d.spec.n = 9;
        for (const auto& row : wu::published_rows()) {
            d.points.push_back(row.s);
            d.kinds.push_back(row.is_psi2() ? RowKind::psi2 : RowKind::psi1);
            d.params.push_back(row.params());
            d.scan_s_prime.push_back(false);
        }
        break;
    case GridKind::forty:
    case GridKind::fourhundred: {
        const int denom = spec.kind == GridKind::forty ? 100 : 1000;
        const int steps = spec.kind == GridKind::forty ? 40 : 400;
        d.spec.n = steps + 5;
        add_published_psi2_rows(d);
        add_scanned_psi1_row(d, 2.6);
        for (int k = 1; k <= steps; ++k) {
            add_scanned_psi1_row(d, static_cast<double>(26 * denom / 10 + k) / denom);
        }
        break;
    }
    case GridKind::custom: {
        const int n = spec.n;
        if (n < 4) throw std::invalid_argument("custom grid needs at least 4 rows");
        for (int i = 1; i <= n; ++i) {
            const double s = static_cast<double>(22 * (n - 1) + 8 * (i - 1)) / (10.0 * (n - 1));
            if (s <= kPsi2Edge) {
                bool fallback = false;
                d.points.push_back(s);
                d.kinds.push_back(RowKind::psi2);
                d.params.push_back(detail::published_fit().params(s, RowKind::psi2, &fallback));
                d.scan_s_prime.push_back(false);
            } else {
                add_scanned_psi1_row(d, s);
            }
        }
        break;
    }
    }
    return d;
}

SPrimeChoice optimize_s_prime(double s, const Options& opts) {
    const double feasible = std::max(3.0, 2.0 * s / (s - 1.0));
    const double lo = std::ceil(feasible * 100.0 - 1e-9) / 100.0;
    if (lo > 5.0) throw DomainError("optimize_s_prime: no feasible s' for s = " + std::to_string(s));
    auto objective = [&](double sp) {
        if (!wu::psi1_violations(s, sp).empty()) return std::numeric_limits<double>::quiet_NaN();
        return cache::cached_psi1(opts.cache, s, sp, opts.settings).value;
    };
    const auto best = quadrature::grid_maximize(objective, lo, 5.0, 0.01, 0.001);
    SPrimeChoice out;
    out.s_prime = std::round(best.arg * 1000.0) / 1000.0;
    const auto r = cache::cached_psi1(opts.cache, s, out.s_prime, opts.settings);
    out.psi = r.value;
    out.phi_max = r.phi_max;
    return out;
}

void complete_parameters(Discretization& d, const Options& opts) {
    parallel_for(d.rows(), opts.threads, [&](std::size_t r) {
        if (d.scan_s_prime[r] && std::isnan(d.params[r].s_prime)) {
            d.params[r].s_prime = optimize_s_prime(d.params[r].s, opts).s_prime;
        }
    });
    if (opts.cache) opts.cache->flush();
}

Matrix build_A(const Discretization& d, const Options& opts) {
    const std::size_t n = d.rows();
    for (const auto& p : d.params) {
        if (std::isnan(p.s_prime)) throw std::invalid_argument("build_A: parameters incomplete");
    }
    Matrix A(n);
    const auto cfg = matrix_config();
    const auto& kernel = opts.settings.kernel;
    parallel_for(n, opts.threads, [&](std::size_t i) {
        const wu::WuParams& p = d.params[i];
        const bool psi2 = d.kinds[i] == RowKind::psi2;
        const auto cuts = psi2 ? wu::xi2_breakpoints(p) : wu::xi1_breakpoints(p.s, p.s_prime);
        for (std::size_t j = 0; j < n; ++j) {
            const double a = d.points[j];
            const double b = d.points[j + 1];
            if (psi2) {
                A(i, j) = quadrature::integrate_1d_split(
                    [&](double t) { return wu::xi2(t, p, kernel); }, a, b, cuts, cfg);
            } else {
                A(i, j) = quadrature::integrate_1d_split(
                    [&](double t) { return wu::xi1(t, p.s, p.s_prime, kernel); }, a, b, cuts, cfg);
            }
        }
    });
    return A;
}

std::vector<double> build_B(Discretization& d, const Options& opts) {
    const std::size_t n = d.rows();
    std::vector<double> B(n, 0.0);
    if (opts.b_source != BSource::computed) {
        if (d.spec.kind != GridKind::nine) {
            throw std::invalid_argument("published B vectors exist only for the nine grid");
        }
        const auto& rows = wu::published_rows();
        for (std::size_t i = 0; i < n; ++i) {
            B[i] = opts.b_source == BSource::wu_published ? rows[i].psi_wu : rows[i].psi_thesis;
        }
        return B;
    }
    complete_parameters(d, opts);
    parallel_for(n, opts.threads, [&](std::size_t i) {
        const auto& p = d.params[i];
        if (d.kinds[i] == RowKind::psi2) {
            B[i] = cache::cached_psi2(opts.cache, p, opts.settings).value;
        } else {
            B[i] = cache::cached_psi1(opts.cache, p.s, p.s_prime, opts.settings).value;
        }
    });
    if (opts.cache) opts.cache->flush();
    return B;
}

Solution solve_system(const Matrix& A, const std::vector<double>& B) {
    const std::size_t n = A.n;
    if (B.size() != n || n == 0) throw std::invalid_argument("solve_system: dimension mismatch");
    using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    const auto size = static_cast<Eigen::Index>(n);
    RowMajor M = RowMajor::Identity(size, size) - Eigen::Map<const RowMajor>(A.data.data(), size, size);
    const Eigen::PartialPivLU<RowMajor> lu(M);
    const double rcond = lu.rcond();
    if (!(rcond > 1e-14)) {
        throw SingularMatrix("solve_system: I - A is singular (rcond " + std::to_string(rcond) + ")");
    }
    const Eigen::VectorXd x = lu.solve(Eigen::Map<const Eigen::VectorXd>(B.data(), size));

    Solution out;
    out.x.assign(x.data(), x.data() + n);
    for (double v : out.x) {
        if (!std::isfinite(v)) throw SingularMatrix("solve_system: non-finite solution");
    }
    // Residual in extended precision, independent of the factorization.
    long double worst = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
        long double r = -static_cast<long double>(B[i]) + out.x[i];
        for (std::size_t j = 0; j < n; ++j) r -= static_cast<long double>(A(i, j)) * out.x[j];
        worst = std::max(worst, std::fabs(r));
    }
    out.residual = static_cast<double>(worst);
    out.c_star = 8.0 * (1.0 - out.x[0]);
    out.first_is_max = std::max_element(out.x.begin(), out.x.end()) == out.x.begin();
    return out;
}

Report solve_grid(GridSpec spec, const Options& opts) {
    const auto start = std::chrono::steady_clock::now();
    Discretization d = build_grid(spec);
    Report r;
    r.grid = d.spec.name();
    r.b_source = opts.b_source;
    r.B = build_B(d, opts);
    if (opts.b_source != BSource::computed) complete_parameters(d, opts);
    r.A = build_A(d, opts);
    r.solution = solve_system(r.A, r.B);
    r.points.assign(d.points.begin() + 1, d.points.end());
    r.params = d.params;
    r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

std::vector<Report> refine_experiment(const std::vector<GridSpec>& kinds, const Options& opts) {
    std::vector<Report> out;
    out.reserve(kinds.size());
    for (const auto& k : kinds) out.push_back(solve_grid(k, opts));
    return out;
}

} // namespace chenbound::chen
