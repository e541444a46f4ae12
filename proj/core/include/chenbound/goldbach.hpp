#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace chenbound::goldbach {

/// Primality table for [0, limit] from the sieve of Eratosthenes.
class PrimeTable {
public:
    /// Throws std::invalid_argument for limit < 2, std::length_error above 4·10⁹.
    explicit PrimeTable(std::uint64_t limit);

    std::uint64_t limit() const noexcept { return limit_; }

    /// Throws std::out_of_range above limit().
    bool is_prime(std::uint64_t n) const;

    /// π(x): number of primes ≤ x, for x ≤ limit().
    std::uint64_t pi(std::uint64_t x) const;

    const std::vector<std::uint32_t>& primes() const noexcept { return primes_; }

private:
    std::uint64_t limit_;
    std::vector<bool> composite_;
    std::vector<std::uint32_t> primes_;
};

/// D(N) = #{p prime : p ≤ N/2, N - p prime}. Throws DomainError unless
/// N is even and 4 ≤ N ≤ pt.limit().
std::uint64_t d_count(std::uint64_t n, const PrimeTable& pt);

/// Smallest even N in [4, max_n] with D(N) = 0, if any. Stops at the first
/// prime p with N - p prime for each N.
std::optional<std::uint64_t> first_goldbach_failure(std::uint64_t max_n, const PrimeTable& pt);

/// ∏_{3 ≤ p ≤ prime_limit} (1 - 1/(p-1)²).
double twin_prime_constant(std::uint64_t prime_limit);

/// C_N = c0 ∏_{p | N, p > 2} (1 + 1/(p-2)).
double c_n(std::uint64_t n, double c0);

/// Θ(N) = C_N N / log² N. Throws DomainError unless N is even and ≥ 4.
double theta(std::uint64_t n, double c0);

enum class CometFilter { all, multiples_of_12p };

struct CometRow {
    std::uint64_t n = 0;
    std::uint64_t d = 0;
    double two_theta = 0.0;
    int color_class = 0;  // (N/2) mod 3
};

/// Rows for even N in [4, max_n] (or N = 12p ≤ max_n). Computed on `threads`
/// workers, returned in increasing N. Throws DomainError if max_n > pt.limit().
std::vector<CometRow> comet(std::uint64_t max_n, CometFilter filter, const PrimeTable& pt,
                            double c0, unsigned threads = 1);

} // namespace chenbound::goldbach
