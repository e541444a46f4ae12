#include "chenbound/errors.hpp"
#include "chenbound/quadrature.hpp"

#include <boost/random/sobol.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace chenbound::quadrature {

OrderedDomain& OrderedDomain::add(Bound lower, Bound upper) {
    const int next = dimension();
    if (next >= kMaxDimension) {
        throw std::invalid_argument("OrderedDomain: at most 6 variables are supported");
    }
    for (const Bound* b : {&lower, &upper}) {
        if (b->kind == Bound::Kind::variable && (b->var < 0 || b->var >= next)) {
            throw std::invalid_argument("OrderedDomain: bound must refer to an earlier variable");
        }
    }
    slots_.emplace_back(lower, upper);
    return *this;
}

std::vector<double> OrderedDomain::min_values() const {
    std::vector<double> lo(slots_.size());
    for (std::size_t n = 0; n < slots_.size(); ++n) {
        const Bound& b = slots_[n].first;
        lo[n] = b.kind == Bound::Kind::constant ? b.value : lo[static_cast<std::size_t>(b.var)];
    }
    return lo;
}

std::vector<double> OrderedDomain::max_values() const {
    std::vector<double> hi(slots_.size());
    for (std::size_t n = 0; n < slots_.size(); ++n) {
        const Bound& b = slots_[n].second;
        hi[n] = b.kind == Bound::Kind::constant ? b.value : hi[static_cast<std::size_t>(b.var)];
    }
    return hi;
}

bool OrderedDomain::empty() const {
    if (slots_.empty()) return true;
    const auto lo = min_values();
    const auto hi = max_values();
    for (std::size_t n = 0; n < slots_.size(); ++n) {
        if (!(lo[n] < hi[n])) return true;
    }
    return false;
}

double OrderedDomain::map_unit(const double* unit, double* x) const {
    double jacobian = 1.0;
    for (std::size_t n = 0; n < slots_.size(); ++n) {
        const double lo = slots_[n].first.resolve(x);
        const double hi = slots_[n].second.resolve(x);
        if (hi > lo) {
            x[n] = lo + (hi - lo) * unit[n];
            jacobian *= hi - lo;
        } else {
            x[n] = lo;
            jacobian = 0.0;
        }
    }
    return jacobian;
}

namespace {

class Iterated {
public:
    Iterated(FunctionRef<double(const double*)> f, const OrderedDomain& dom, const Config& cfg)
        : f_(f), dom_(dom), cfg_(cfg), last_(dom.dimension() - 1) {}

    double level(int n, double rel_tol) {
        const double lo = dom_.lower(n).resolve(x_.data());
        const double hi = dom_.upper(n).resolve(x_.data());
        if (!(hi > lo)) return 0.0;
        Config c = cfg_;
        c.rel_tol = rel_tol;
        c.abs_tol = cfg_.abs_tol * 1e-6;
        if (n == last_) {
            return integrate_1d(
                [&](double v) {
                    x_[static_cast<std::size_t>(n)] = v;
                    return f_(x_.data());
                },
                lo, hi, c);
        }
        // Inner integrals are resolved one decade tighter so their noise
        // stays below the outer error estimate.
        return integrate_1d(
            [&](double v) {
                x_[static_cast<std::size_t>(n)] = v;
                return level(n + 1, rel_tol / 10.0);
            },
            lo, hi, c);
    }

private:
    FunctionRef<double(const double*)> f_;
    const OrderedDomain& dom_;
    Config cfg_;
    int last_;
    std::array<double, OrderedDomain::kMaxDimension> x_{};
};

double qmc(FunctionRef<double(const double*)> f, const OrderedDomain& dom, const Config& cfg) {
    const auto dim = static_cast<std::size_t>(dom.dimension());
    boost::random::sobol engine(dim);
    const double scale = std::ldexp(1.0, -64);
    std::array<double, OrderedDomain::kMaxDimension> unit{};
    std::array<double, OrderedDomain::kMaxDimension> x{};
    long double sum = 0.0L;
    for (std::size_t i = 0; i < cfg.mc_samples; ++i) {
        for (std::size_t k = 0; k < dim; ++k) unit[k] = static_cast<double>(engine()) * scale;
        const double jac = dom.map_unit(unit.data(), x.data());
        if (jac > 0.0) sum += static_cast<long double>(f(x.data()) * jac);
    }
    return static_cast<double>(sum / static_cast<long double>(cfg.mc_samples));
}

} // namespace

double integrate_ordered(FunctionRef<double(const double*)> f, const OrderedDomain& dom,
                         const Config& cfg, Method method) {
    cfg.validate();
    if (dom.empty()) return 0.0;
    if (method == Method::automatic) method = dom.dimension() <= 3 ? Method::iterated : Method::qmc;
    if (method == Method::qmc) return qmc(f, dom, cfg);
    Iterated it(f, dom, cfg);
    return it.level(0, cfg.rel_tol);
}

double lattice_minimum(FunctionRef<double(const double*)> g, const OrderedDomain& dom,
                       int per_axis) {
    if (per_axis < 2) throw std::invalid_argument("lattice_minimum: per_axis must be >= 2");
    const int dim = dom.dimension();
    std::array<int, OrderedDomain::kMaxDimension> idx{};
    std::array<double, OrderedDomain::kMaxDimension> unit{};
    std::array<double, OrderedDomain::kMaxDimension> x{};
    double best = std::numeric_limits<double>::infinity();
    while (true) {
        for (int k = 0; k < dim; ++k) {
            unit[static_cast<std::size_t>(k)] =
                static_cast<double>(idx[static_cast<std::size_t>(k)]) / (per_axis - 1);
        }
        dom.map_unit(unit.data(), x.data());
        best = std::min(best, g(x.data()));
        int k = 0;
        while (k < dim && ++idx[static_cast<std::size_t>(k)] == per_axis) {
            idx[static_cast<std::size_t>(k)] = 0;
            ++k;
        }
        if (k == dim) break;
    }
    return best;
}

} // namespace chenbound::quadrature
