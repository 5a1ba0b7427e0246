#include "shiftsum/summatory.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <string>
#include <thread>

#include "shiftsum/square_shift.hpp"

namespace shiftsum {

namespace {

using u128 = unsigned __int128;

// Every D(m^2) with m < 2^64 has at most 15 distinct primes, so scaling by
// 2^16 turns each term into an integer.
constexpr unsigned kScaleBits = 16;

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

BigInt to_big(u128 v) {
    BigInt out = static_cast<std::uint64_t>(v >> 64);
    out <<= 64;
    out += static_cast<std::uint64_t>(v);
    return out;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
    if (limit < 2) return {};
    return build_spf(limit).primes();
}

// Segmented sieve of the (odd part, omega) of D(m^2) over windows of m.
class SquareRatioSieve {
public:
    SquareRatioSieve(std::uint64_t hi_max, std::uint64_t segment_size)
        : primes_(primes_up_to(isqrt(hi_max))), segment_size_(segment_size) {}

    struct Buffers {
        std::vector<std::uint64_t> rest;
        std::vector<std::uint64_t> odd;
        std::vector<std::uint8_t> omega;
    };

    Buffers make_buffers(std::uint64_t span) const {
        const std::uint64_t n = std::min(span, segment_size_);
        return {std::vector<std::uint64_t>(n), std::vector<std::uint64_t>(n),
                std::vector<std::uint8_t>(n)};
    }

    void run(std::uint64_t lo, std::uint64_t hi, Buffers& b) const {
        const std::uint64_t len = hi - lo + 1;
        for (std::uint64_t i = 0; i < len; ++i) {
            b.rest[i] = lo + i;
            b.odd[i] = 1;
            b.omega[i] = 0;
        }
        for (const std::uint64_t p : primes_) {
            if (p * p > hi) break;
            std::uint64_t first = (lo + p - 1) / p * p;
            for (std::uint64_t m = first; m <= hi; m += p) {
                const std::uint64_t i = m - lo;
                std::uint64_t r = b.rest[i] / p;
                std::uint64_t a = 1;
                while (r % p == 0) {
                    r /= p;
                    ++a;
                }
                b.rest[i] = r;
                b.odd[i] *= 2 * a + 1;
                ++b.omega[i];
            }
        }
        // At most one prime above sqrt(hi) remains, with exponent 1.
        for (std::uint64_t i = 0; i < len; ++i) {
            if (b.rest[i] > 1) {
                b.odd[i] *= 3;
                ++b.omega[i];
            }
        }
    }

private:
    std::vector<std::uint64_t> primes_;
    std::uint64_t segment_size_;
};

// Scaled exact partial sums over m in [1, N]:
//   plain    = 2^16 * sum D(m^2)
//   weighted = 2^16 * sum m D(m^2)
struct SquareSums {
    BigInt plain;
    BigInt weighted;
};

SquareSums accumulate_square_sums(std::uint64_t N, const SummatoryConfig& config) {
    SquareSums total;
    if (N == 0) return total;
    const std::uint64_t seg = std::max<std::uint64_t>(1, config.segment_size);
    const SquareRatioSieve sieve(N, seg);
    const std::uint64_t segments = (N + seg - 1) / seg;

    std::vector<SquareSums> partial(segments);
    std::atomic<std::uint64_t> next{0};

    auto worker = [&] {
        auto buffers = sieve.make_buffers(N);
        for (std::uint64_t s = next++; s < segments; s = next++) {
            const std::uint64_t lo = s * seg + 1;
            const std::uint64_t hi = std::min(N, lo + seg - 1);
            sieve.run(lo, hi, buffers);
            u128 plain = 0;
            u128 weighted = 0;
            for (std::uint64_t i = 0; i <= hi - lo; ++i) {
                const u128 term = u128{buffers.odd[i]} << (kScaleBits - buffers.omega[i]);
                plain += term;
                weighted += term * (lo + i);
            }
            partial[s] = {to_big(plain), to_big(weighted)};
        }
    };

    const unsigned threads =
        static_cast<unsigned>(std::clamp<std::uint64_t>(config.threads, 1, segments));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }

    // Fixed combination order; the sums are exact so the order is not observable.
    for (auto& p : partial) {
        total.plain += p.plain;
        total.weighted += p.weighted;
    }
    return total;
}

DyadicRational unscale(const BigInt& scaled) { return DyadicRational(scaled, kScaleBits); }

DyadicRational square_ratio_at(std::uint64_t m) { return divisor_ratio_of_square(factorize(m)); }

void check_block_argument(std::uint64_t x) {
    if (x == 0) throw std::domain_error("x must be >= 1");
    if (x > kMaxBlockArgument) throw std::domain_error("x must be <= 10^18");
}

void check_square_index(std::uint64_t N) {
    if (N == 0) throw std::domain_error("N must be >= 1");
    if (N > kMaxSquareIndex) throw std::domain_error("N must be <= 10^12");
}

SumReport finish(SumReport r, const Stopwatch& watch) {
    r.value_f64 = r.value.to_double();
    r.elapsed = watch.seconds();
    return r;
}

[[maybe_unused]] SumReport corrected_block(std::uint64_t x, const SummatoryConfig& config) {
    Stopwatch watch;
    check_block_argument(x);
    const std::uint64_t N = isqrt(x);
    const SquareSums sums = accumulate_square_sums(N, config);

    // sum_{k=1}^{N-1} 2k D((k+1)^2) = sum_{m=1}^{N} 2(m-1) D(m^2)
    DyadicRational value = unscale(sums.plain);
    value += unscale(2 * sums.weighted - 2 * sums.plain);
    value += square_ratio_at(N + 1).scaled(BigInt(x - N * N));

    SumReport r{Quantity::S, x, Method::block, std::move(value), 0.0, N + 1, 0.0};
    return finish(std::move(r), watch);
}

}  // namespace

std::string_view to_string(Method m) {
    switch (m) {
        case Method::direct: return "direct";
        case Method::block: return "block";
        case Method::paper_literal_block: return "paper-literal-block";
    }
    return "unknown";
}

std::string_view to_string(Quantity q) {
    switch (q) {
        case Quantity::S: return "S";
        case Quantity::T: return "T";
        case Quantity::W: return "W";
    }
    return "unknown";
}

DirectScanner::DirectScanner(std::uint64_t limit, const SummatoryConfig& config) : limit_(limit) {
    if (limit > config.direct_cap) {
        throw RefusalError("direct summation to " + std::to_string(limit) + " exceeds the cap of " +
                           std::to_string(config.direct_cap) + "; use the block method");
    }
    // Largest value of n + s(n) for n <= limit.
    const std::uint64_t top = limit <= 1 ? 1 : shift(limit).root * shift(limit).root;
    if (top >= 2 && top <= config.spf_cap) spf_.emplace(top, config.spf_cap);
}

const DyadicRational& DirectScanner::advance_to(std::uint64_t x) {
    if (x > limit_) throw std::out_of_range("direct scan past its limit");
    if (x < position_) throw std::logic_error("direct scan cannot move backwards");
    const SpfTable* table = spf_ ? &*spf_ : nullptr;
    for (std::uint64_t n = position_ + 1; n <= x; ++n) {
        const ShiftDecomposition d = shift(n);
        total_ += divisor_ratio(factorize(n + d.shift, table));
    }
    position_ = x;
    return total_;
}

SumReport sum_direct(std::uint64_t x, const SummatoryConfig& config) {
    Stopwatch watch;
    if (x == 0) throw std::domain_error("x must be >= 1");
    DirectScanner scan(x, config);
    SumReport r{Quantity::S, x, Method::direct, scan.advance_to(x), 0.0, x, 0.0};
    return finish(std::move(r), watch);
}

SumReport sum_block(std::uint64_t x, const SummatoryConfig& config) {
#ifdef SHIFTSUM_FAULT_PAPER_LITERAL
    // Fault-injection build: the verify suite must catch this.
    SumReport r = sum_block_paper_literal(x, config);
    r.method = Method::block;
    return r;
#else
    return corrected_block(x, config);
#endif
}

SumReport sum_block_paper_literal(std::uint64_t x, const SummatoryConfig& config) {
    Stopwatch watch;
    check_block_argument(x);
    const std::uint64_t N = isqrt(x);
    const SquareSums sums = accumulate_square_sums(N, config);

    // sum_{k=1}^{N-1} (2k+1) D((k+1)^2) = sum_{m=2}^{N} (2m-1) D(m^2)
    DyadicRational value = unscale(2 * sums.weighted - sums.plain);
    value -= DyadicRational(1);
    value += square_ratio_at(N + 1).scaled(BigInt(x - N * N + 1));

    SumReport r{Quantity::S, x, Method::paper_literal_block, std::move(value), 0.0, N + 1, 0.0};
    return finish(std::move(r), watch);
}

SumReport T_sum(std::uint64_t N, const SummatoryConfig& config) {
    Stopwatch watch;
    check_square_index(N);
    const SquareSums sums = accumulate_square_sums(N, config);
    SumReport r{Quantity::T, N, Method::block, unscale(sums.plain), 0.0, N, 0.0};
    return finish(std::move(r), watch);
}

SumReport W_sum(std::uint64_t N, const SummatoryConfig& config) {
    Stopwatch watch;
    check_square_index(N);
    const SquareSums sums = accumulate_square_sums(N, config);
    SumReport r{Quantity::W, N, Method::block, unscale(sums.weighted), 0.0, N, 0.0};
    return finish(std::move(r), watch);
}

std::uint64_t floor_argument(long double x) {
    if (!(x >= 1.0L)) throw std::domain_error("x must be >= 1");
    if (x >= 18446744073709551616.0L) throw std::domain_error("x is out of range");
    return static_cast<std::uint64_t>(std::floor(x));
}

SumReport sum_at(long double x, Method method, const SummatoryConfig& config) {
    const std::uint64_t n = floor_argument(x);
    switch (method) {
        case Method::direct: return sum_direct(n, config);
        case Method::block: return sum_block(n, config);
        case Method::paper_literal_block: return sum_block_paper_literal(n, config);
    }
    throw std::invalid_argument("unknown method");
}

std::vector<std::pair<std::uint64_t, DyadicRational>> sieve_D_square_range(
    std::uint64_t lo, std::uint64_t hi, const SummatoryConfig& config) {
    if (lo == 0 || lo > hi) throw std::domain_error("need 1 <= lo <= hi");
    if (hi - lo >= config.segment_size) {
        throw std::domain_error("range longer than one segment");
    }
    std::vector<std::pair<std::uint64_t, DyadicRational>> out;
    out.reserve(hi - lo + 1);
    for_each_D_square(lo, hi, config, [&](std::uint64_t m, SquareRatio r) {
        out.emplace_back(m, DyadicRational(BigInt(r.odd), r.omega));
    });
    return out;
}

void for_each_D_square(std::uint64_t lo, std::uint64_t hi, const SummatoryConfig& config,
                       const std::function<void(std::uint64_t, SquareRatio)>& visit) {
    if (lo == 0 || lo > hi) throw std::domain_error("need 1 <= lo <= hi");
    const std::uint64_t seg = std::max<std::uint64_t>(1, config.segment_size);
    const SquareRatioSieve sieve(hi, seg);
    auto buffers = sieve.make_buffers(hi - lo + 1);
    for (std::uint64_t start = lo;;) {
        const std::uint64_t end = hi - start < seg ? hi : start + seg - 1;
        sieve.run(start, end, buffers);
        for (std::uint64_t i = 0; i <= end - start; ++i) {
            visit(start + i, {buffers.odd[i], buffers.omega[i]});
        }
        if (end == hi) break;
        start = end + 1;
    }
}

}  // namespace shiftsum
