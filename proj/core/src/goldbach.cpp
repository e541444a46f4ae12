#include "chenbound/goldbach.hpp"

#include "chenbound/errors.hpp"
#include "chenbound/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace chenbound::goldbach {

PrimeTable::PrimeTable(std::uint64_t limit) : limit_(limit) {
    if (limit < 2) throw std::invalid_argument("sieve: limit must be >= 2");
    if (limit > 4'000'000'000ULL) throw std::length_error("sieve: limit too large");
    composite_.assign(limit + 1, false);
    composite_[0] = composite_[1] = true;
    for (std::uint64_t p = 2; p * p <= limit; ++p) {
        if (composite_[p]) continue;
        for (std::uint64_t m = p * p; m <= limit; m += p) composite_[m] = true;
    }
    for (std::uint64_t n = 2; n <= limit; ++n) {
        if (!composite_[n]) primes_.push_back(static_cast<std::uint32_t>(n));
    }
}

bool PrimeTable::is_prime(std::uint64_t n) const {
    if (n > limit_) throw std::out_of_range("is_prime: " + std::to_string(n) + " above sieve limit");
    return !composite_[n];
}

std::uint64_t PrimeTable::pi(std::uint64_t x) const {
    if (x > limit_) throw std::out_of_range("pi: " + std::to_string(x) + " above sieve limit");
    return static_cast<std::uint64_t>(std::upper_bound(primes_.begin(), primes_.end(), x) -
                                      primes_.begin());
}

namespace {

void check_even(std::uint64_t n, const char* what) {
    if (n < 4 || n % 2 != 0) {
        throw DomainError(std::string(what) + ": N = " + std::to_string(n) +
                          " must be even and at least 4");
    }
}

} // namespace

std::uint64_t d_count(std::uint64_t n, const PrimeTable& pt) {
    check_even(n, "d_count");
    if (n > pt.limit()) throw DomainError("d_count: N exceeds the sieve limit");
    std::uint64_t count = 0;
    for (std::uint32_t p : pt.primes()) {
        if (p > n / 2) break;
        if (pt.is_prime(n - p)) ++count;
    }
    return count;
}

std::optional<std::uint64_t> first_goldbach_failure(std::uint64_t max_n, const PrimeTable& pt) {
    if (max_n > pt.limit()) throw DomainError("first_goldbach_failure: max exceeds the sieve limit");
    for (std::uint64_t n = 4; n <= max_n; n += 2) {
        bool found = false;
        for (std::uint32_t p : pt.primes()) {
            if (p > n / 2) break;
            if (pt.is_prime(n - p)) {
                found = true;
                break;
            }
        }
        if (!found) return n;
    }
    return std::nullopt;
}

double twin_prime_constant(std::uint64_t prime_limit) {
    if (prime_limit < 3) return 1.0;
    const PrimeTable pt(prime_limit);
    double product = 1.0;
    for (std::uint32_t p : pt.primes()) {
        if (p == 2) continue;
        const double q = static_cast<double>(p) - 1.0;
        product *= 1.0 - 1.0 / (q * q);
    }
    return product;
}

double c_n(std::uint64_t n, double c0) {
    double factor = c0;
    while (n % 2 == 0 && n > 0) n /= 2;
    for (std::uint64_t p = 3; p * p <= n; p += 2) {
        if (n % p != 0) continue;
        factor *= 1.0 + 1.0 / static_cast<double>(p - 2);
        while (n % p == 0) n /= p;
    }
    if (n > 2) factor *= 1.0 + 1.0 / static_cast<double>(n - 2);
    return factor;
}

double theta(std::uint64_t n, double c0) {
    check_even(n, "theta");
    const double x = static_cast<double>(n);
    const double l = std::log(x);
    return c_n(n, c0) * x / (l * l);
}

std::vector<CometRow> comet(std::uint64_t max_n, CometFilter filter, const PrimeTable& pt,
                            double c0, unsigned threads) {
    if (max_n > pt.limit()) throw DomainError("comet: max exceeds the sieve limit");
    std::vector<std::uint64_t> ns;
    if (filter == CometFilter::all) {
        for (std::uint64_t n = 4; n <= max_n; n += 2) ns.push_back(n);
    } else {
        for (std::uint32_t p : pt.primes()) {
            if (12ULL * p > max_n) break;
            ns.push_back(12ULL * p);
        }
    }
    std::vector<CometRow> rows(ns.size());
    parallel_for(ns.size(), threads, [&](std::size_t k) {
        const std::uint64_t n = ns[k];
        rows[k] = {n, d_count(n, pt), 2.0 * theta(n, c0), static_cast<int>((n / 2) % 3)};
    });
    return rows;
}

} // namespace chenbound::goldbach
