#pragma once

// Self-checks that pit the fast paths against their oracles.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "shiftsum/dyadic.hpp"
#include "shiftsum/summatory.hpp"

namespace shiftsum {

struct SuiteResult {
    std::string name;
    bool passed = true;
    std::uint64_t cases = 0;
    std::string counterexample;  // first failure, empty on success
};

/// Exact S(x) by some fast path under test.
using BlockSum = std::function<DyadicRational(std::uint64_t)>;

BlockSum default_block_sum(const SummatoryConfig& config);

/// Block path against the direct scan for every x in [1, max].
SuiteResult check_oracle_equality(std::uint64_t max, const BlockSum& block,
                                  const SummatoryConfig& config);

/// Same, at the given checkpoints only (any order, duplicates allowed).
SuiteResult check_oracle_equality_at(std::vector<std::uint64_t> xs, const BlockSum& block,
                                     const SummatoryConfig& config);

/// `count` reproducible pseudo-random integers in [lo, hi].
std::vector<std::uint64_t> random_checkpoints(std::size_t count, std::uint64_t lo, std::uint64_t hi,
                                              std::uint64_t seed);

/// W(N) = N T(N) - sum_{m<N} T(m) for every N <= n_max, using exact sums.
SuiteResult check_partial_summation(std::uint64_t n_max, const SummatoryConfig& config);

/// Local-factor closed form against the 200-term series, and the numerator
/// identity (1-p^-s)^2 f_p(s) = 1 - p^-s/2 + p^-2s/2, on the standard grid.
SuiteResult check_local_factor_series();
SuiteResult check_local_factor_identity();

inline constexpr std::uint64_t kDefaultSeed = 20240611;

}  // namespace shiftsum
