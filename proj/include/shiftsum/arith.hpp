#pragma once

// Factorization and the divisor-type functions tau, omega and D.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

#include "shiftsum/dyadic.hpp"

namespace shiftsum {

/// Thrown when a requested table would exceed its configured memory cap.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct PrimePower {
    std::uint64_t prime = 0;
    std::uint32_t exponent = 0;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// n together with its prime powers, primes strictly increasing. Empty iff n == 1.
struct Factorization {
    std::uint64_t n = 1;
    std::vector<PrimePower> factors;

    friend bool operator==(const Factorization&, const Factorization&) = default;
};

inline constexpr std::uint64_t kDefaultSpfCap = 100'000'000;

/// Smallest-prime-factor table for 2..limit. Immutable once built.
class SpfTable {
public:
    SpfTable(std::uint64_t limit, std::uint64_t cap = kDefaultSpfCap);

    std::uint64_t limit() const { return limit_; }

    /// Smallest prime factor of m, 2 <= m <= limit.
    std::uint64_t operator[](std::uint64_t m) const;

    bool is_prime(std::uint64_t m) const { return m >= 2 && (*this)[m] == m; }

    /// All primes up to limit in increasing order.
    std::vector<std::uint64_t> primes() const;

private:
    std::uint64_t limit_;
    // 32-bit entries whenever every index fits, which is the practical case.
    std::variant<std::vector<std::uint32_t>, std::vector<std::uint64_t>> table_;
};

SpfTable build_spf(std::uint64_t limit, std::uint64_t cap = kDefaultSpfCap);

/// Factor n. Uses the table when n is within it, trial division otherwise.
Factorization factorize(std::uint64_t n, const SpfTable* spf = nullptr);

std::uint64_t tau(const Factorization& f);
std::uint32_t omega(const Factorization& f);
std::uint64_t unitary_divisor_count(const Factorization& f);

/// D(n) = tau(n) / 2^omega(n) = prod (a+1)/2.
DyadicRational divisor_ratio(const Factorization& f);

/// D(m^2) from the factorization of m: prod (2a+1)/2.
DyadicRational divisor_ratio_of_square(const Factorization& f);

}  // namespace shiftsum
