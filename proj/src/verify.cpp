#include "shiftsum/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <sstream>

#include "shiftsum/euler.hpp"

namespace shiftsum {

namespace {

constexpr std::array<std::uint64_t, 5> kGridPrimes{2, 3, 5, 7, 11};
constexpr std::array<double, 4> kGridS{1.2, 1.5, 2.0, 3.0};

std::string mismatch(std::uint64_t x, const DyadicRational& block, const DyadicRational& direct) {
    std::ostringstream os;
    os << "x=" << x << " block=" << block.to_string() << " direct=" << direct.to_string();
    return os.str();
}

}  // namespace

BlockSum default_block_sum(const SummatoryConfig& config) {
    return [config](std::uint64_t x) { return sum_block(x, config).value; };
}

SuiteResult check_oracle_equality(std::uint64_t max, const BlockSum& block,
                                  const SummatoryConfig& config) {
    SuiteResult out{"oracle-equality", true, 0, {}};
    DirectScanner scan(max, config);
    for (std::uint64_t x = 1; x <= max; ++x) {
        const DyadicRational& direct = scan.advance_to(x);
        const DyadicRational fast = block(x);
        ++out.cases;
        if (fast != direct) {
            out.passed = false;
            out.counterexample = mismatch(x, fast, direct);
            break;
        }
    }
    return out;
}

SuiteResult check_oracle_equality_at(std::vector<std::uint64_t> xs, const BlockSum& block,
                                     const SummatoryConfig& config) {
    SuiteResult out{"oracle-equality-random", true, 0, {}};
    if (xs.empty()) return out;
    std::sort(xs.begin(), xs.end());
    DirectScanner scan(xs.back(), config);
    for (const std::uint64_t x : xs) {
        const DyadicRational& direct = scan.advance_to(x);
        const DyadicRational fast = block(x);
        ++out.cases;
        if (fast != direct) {
            out.passed = false;
            out.counterexample = mismatch(x, fast, direct);
            break;
        }
    }
    return out;
}

std::vector<std::uint64_t> random_checkpoints(std::size_t count, std::uint64_t lo, std::uint64_t hi,
                                              std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::uint64_t> out;
    out.reserve(count);
    // Explicit modular draw: uniform_int_distribution is not portable across standard libraries.
    const std::uint64_t width = hi - lo + 1;
    for (std::size_t i = 0; i < count; ++i) out.push_back(lo + (width == 0 ? rng() : rng() % width));
    return out;
}

SuiteResult check_partial_summation(std::uint64_t n_max, const SummatoryConfig& config) {
    SuiteResult out{"partial-summation", true, 0, {}};
    DyadicRational prefix_of_T;  // sum_{m<N} T(m)
    for (std::uint64_t N = 1; N <= n_max; ++N) {
        const DyadicRational T = T_sum(N, config).value;
        const DyadicRational W = W_sum(N, config).value;
        const DyadicRational rhs = T.scaled(BigInt(N)) - prefix_of_T;
        ++out.cases;
        if (W != rhs) {
            out.passed = false;
            out.counterexample = "N=" + std::to_string(N) + " W=" + W.to_string() +
                                 " N*T-sum=" + rhs.to_string();
            break;
        }
        prefix_of_T += T;
    }
    return out;
}

SuiteResult check_local_factor_series() {
    SuiteResult out{"local-factor-series", true, 0, {}};
    for (const auto p : kGridPrimes) {
        for (const double s : kGridS) {
            ++out.cases;
            const double gap = std::fabs(local_factor(p, s) - local_factor_series(p, s, 200));
            if (!(gap < 1e-12)) {
                out.passed = false;
                out.counterexample = "p=" + std::to_string(p) + " s=" + std::to_string(s) +
                                     " gap=" + std::to_string(gap);
                return out;
            }
        }
    }
    return out;
}

SuiteResult check_local_factor_identity() {
    SuiteResult out{"local-factor-identity", true, 0, {}};
    for (const auto p : kGridPrimes) {
        for (const double s : kGridS) {
            ++out.cases;
            const double x = std::pow(static_cast<double>(p), -s);
            const double lhs = (1.0 - x) * (1.0 - x) * local_factor(p, s);
            const double rhs = 1.0 - x / 2.0 + x * x / 2.0;
            const double gap = std::fabs(lhs - rhs);
            if (!(gap < 1e-14)) {
                out.passed = false;
                out.counterexample = "p=" + std::to_string(p) + " s=" + std::to_string(s) +
                                     " gap=" + std::to_string(gap);
                return out;
            }
        }
    }
    return out;
}

}  // namespace shiftsum
