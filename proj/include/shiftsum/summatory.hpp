#pragma once

// Exact summatory functions over the square-completion shift:
//   S(x) = sum_{n <= x} D(n + s(n))
//   T(N) = sum_{m <= N} D(m^2)
//   W(N) = sum_{m <= N} m * D(m^2)

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <utility>
#include <vector>

#include "shiftsum/arith.hpp"
#include "shiftsum/dyadic.hpp"

namespace shiftsum {

/// Thrown when a request is valid but deliberately not run (direct method above its cap).
class RefusalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SummatoryConfig {
    std::uint64_t segment_size = std::uint64_t{1} << 20;
    std::uint64_t direct_cap = 1'000'000'000;
    std::uint64_t spf_cap = kDefaultSpfCap;
    unsigned threads = 1;
};

inline constexpr std::uint64_t kMaxBlockArgument = 1'000'000'000'000'000'000ull;
inline constexpr std::uint64_t kMaxSquareIndex = 1'000'000'000'000ull;

enum class Method { direct, block, paper_literal_block };
enum class Quantity { S, T, W };

std::string_view to_string(Method m);
std::string_view to_string(Quantity q);

struct SumReport {
    Quantity quantity = Quantity::S;
    std::uint64_t x = 0;  // x for S, N for T and W
    Method method = Method::block;
    DyadicRational value;
    double value_f64 = 0.0;
    std::uint64_t terms_processed = 0;
    double elapsed = 0.0;  // seconds; the only non-reproducible field
};

/// Term-by-term oracle. Refuses x above config.direct_cap.
SumReport sum_direct(std::uint64_t x, const SummatoryConfig& config = {});

/// S(x) = T(N) + sum_{k<N} 2k D((k+1)^2) + (x - N^2) D((N+1)^2), N = isqrt(x).
SumReport sum_block(std::uint64_t x, const SummatoryConfig& config = {});

/// The uncorrected block formula that sends every n in [k^2, (k+1)^2) to (k+1)^2,
/// including n = k^2. Not equal to S(x); exists to measure the deviation.
SumReport sum_block_paper_literal(std::uint64_t x, const SummatoryConfig& config = {});

SumReport T_sum(std::uint64_t N, const SummatoryConfig& config = {});
SumReport W_sum(std::uint64_t N, const SummatoryConfig& config = {});

/// Real-argument entry point: sums depend on floor(x) only.
std::uint64_t floor_argument(long double x);
SumReport sum_at(long double x, Method method, const SummatoryConfig& config = {});

/// Incremental term-by-term evaluation of S, for checking many x in one pass.
class DirectScanner {
public:
    /// `limit` bounds every x later passed to advance_to.
    DirectScanner(std::uint64_t limit, const SummatoryConfig& config = {});

    /// Running S(x); x must not decrease between calls.
    const DyadicRational& advance_to(std::uint64_t x);

    std::uint64_t position() const { return position_; }

private:
    std::uint64_t limit_;
    std::uint64_t position_ = 0;
    DyadicRational total_;
    std::optional<SpfTable> spf_;
};

/// D(m^2) for every m in [lo, hi] in one sieve segment (hi - lo + 1 <= segment_size).
std::vector<std::pair<std::uint64_t, DyadicRational>> sieve_D_square_range(
    std::uint64_t lo, std::uint64_t hi, const SummatoryConfig& config = {});

/// Raw form of D(m^2) = odd / 2^omega, with odd = prod (2a+1).
struct SquareRatio {
    std::uint64_t odd = 1;
    std::uint32_t omega = 0;
};

/// Visit every m in [lo, hi] in increasing order, any range length, segment by segment.
void for_each_D_square(std::uint64_t lo, std::uint64_t hi, const SummatoryConfig& config,
                       const std::function<void(std::uint64_t, SquareRatio)>& visit);

}  // namespace shiftsum
