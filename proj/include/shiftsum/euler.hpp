#pragma once

// Local Euler factors of sum D(n^2) n^-s, the truncated products
//   P(s) = prod_p (1 - 1/(2p^s) + 1/(2p^(2s)))
// and their cutoff-dependent values at s = 1.

#include <cstdint>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace shiftsum {

/// 50 significant decimal digits, round to nearest.
using HighPrecision = boost::multiprecision::cpp_bin_float_50;

struct MathConstants {
    static constexpr double gamma = 0.57721566490153286060651209008240243;
    static const HighPrecision& gamma_hp();
};

/// Closed form (2 - p^-s + p^-2s) / (2 (1 - p^-s)^2). Requires s > 0.
double local_factor(std::uint64_t p, double s);

/// 1 + sum_{m=1}^{terms} (2m+1)/2 p^-ms, the series the closed form sums.
double local_factor_series(std::uint64_t p, double s, unsigned terms);

struct SeriesCheck {
    double lhs = 0.0;  // sum_{m=0}^{M} (2m+1) x^m
    double rhs = 0.0;  // (1+x)/(1-x)^2
    double gap = 0.0;
};

/// Requires |x| <= 0.9 and M >= 1.
SeriesCheck series_identity_check(double x, unsigned M);

struct TruncatedProduct {
    double s = 0.0;
    std::uint64_t cutoff = 0;
    std::uint64_t primes_used = 0;
    HighPrecision product;            // multiplied factor by factor, ascending primes
    HighPrecision product_from_logs;  // exp(sum log factor)
    double value_f64 = 0.0;
    double relative_gap = 0.0;  // |product - product_from_logs| / product
};

/// Product over primes p <= cutoff. Requires s > 0 and cutoff >= 2.
TruncatedProduct truncated_P(double s, std::uint64_t cutoff);

struct PrimeContribution {
    std::uint64_t prime = 0;
    HighPrecision factor;          // 1 - 1/(2p) + 1/(2p^2)
    HighPrecision logderiv_term;   // ln p (1/(2p) - 1/p^2) / factor
};

/// Partial products for the constants at s = 1. Never a limit value: every
/// field is tied to `cutoff`.
struct EulerProductEstimate {
    std::uint64_t cutoff = 0;
    std::uint64_t largest_prime = 0;
    double s = 1.0;
    HighPrecision C1_partial;
    HighPrecision logderiv_sum;
    HighPrecision C2_partial;
    double C1_f64 = 0.0;
    double logderiv_f64 = 0.0;
    double C2_f64 = 0.0;
    std::optional<std::vector<PrimeContribution>> per_prime;
};

EulerProductEstimate constants_estimate(std::uint64_t cutoff, bool keep_per_prime = false);

/// Estimates for several cutoffs from a single pass over the primes.
std::vector<EulerProductEstimate> constants_estimates(std::vector<std::uint64_t> cutoffs);

/// sum_{n <= n_terms} n^-s + n_terms^(1-s)/(s-1). Requires s > 1, n_terms >= 10.
double zeta_real(double s, std::uint64_t n_terms);

struct DirichletCheck {
    double s = 0.0;
    std::uint64_t n_max = 0;
    std::uint64_t cutoff = 0;
    double lhs = 0.0;            // sum_{n <= n_max} D(n^2) n^-s
    double rhs = 0.0;            // zeta(s)^2 P(s), truncated
    double gap = 0.0;
    double tail_estimate = 0.0;  // integral bound on the omitted terms, crude
    double euler_rhs = 0.0;      // prod_{p <= cutoff} local_factor(p, s)
    double euler_gap = 0.0;      // |lhs - euler_rhs|
};

/// Requires s > 1 and n_max >= 1 and cutoff >= 2 (cutoff >= 2 for a nontrivial product).
/// The zeta factor uses max(n_max, 10^6) terms.
DirichletCheck dirichlet_factorization_check(double s, std::uint64_t n_max, std::uint64_t cutoff);

}  // namespace shiftsum
