#include "shiftsum/arith.hpp"

#include <array>
#include <limits>
#include <string>

namespace shiftsum {

namespace {

template <typename Entry>
std::vector<Entry> sieve_smallest_factors(std::uint64_t limit) {
    std::vector<Entry> spf(limit + 1, 0);
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (spf[i] != 0) continue;
        spf[i] = static_cast<Entry>(i);
        if (i > limit / i) continue;
        for (std::uint64_t j = i * i; j <= limit; j += i) {
            if (spf[j] == 0) spf[j] = static_cast<Entry>(i);
        }
    }
    return spf;
}

void push_power(Factorization& f, std::uint64_t p, std::uint32_t a) {
    if (a > 0) f.factors.push_back({p, a});
}

std::uint32_t divide_out(std::uint64_t& n, std::uint64_t p) {
    std::uint32_t a = 0;
    while (n % p == 0) {
        n /= p;
        ++a;
    }
    return a;
}

Factorization trial_division(std::uint64_t n) {
    Factorization f{n, {}};
    for (std::uint64_t p : {2u, 3u, 5u}) push_power(f, p, divide_out(n, p));

    // Candidates coprime to 30.
    static constexpr std::array<std::uint64_t, 8> kGaps{4, 2, 4, 2, 4, 6, 2, 6};
    std::uint64_t d = 7;
    std::size_t gap = 0;
    while (d <= n / d) {
        push_power(f, d, divide_out(n, d));
        d += kGaps[gap];
        gap = (gap + 1) & 7;
    }
    if (n > 1) f.factors.push_back({n, 1});
    return f;
}

}  // namespace

SpfTable::SpfTable(std::uint64_t limit, std::uint64_t cap) : limit_(limit) {
    if (limit < 2) throw std::domain_error("spf table limit must be at least 2");
    if (limit > cap) {
        throw ResourceError("spf table of " + std::to_string(limit) + " entries exceeds cap of " +
                            std::to_string(cap));
    }
    if (limit <= std::numeric_limits<std::uint32_t>::max()) {
        table_ = sieve_smallest_factors<std::uint32_t>(limit);
    } else {
        table_ = sieve_smallest_factors<std::uint64_t>(limit);
    }
}

std::uint64_t SpfTable::operator[](std::uint64_t m) const {
    return std::visit([m](const auto& t) -> std::uint64_t { return t[m]; }, table_);
}

std::vector<std::uint64_t> SpfTable::primes() const {
    std::vector<std::uint64_t> out;
    for (std::uint64_t m = 2; m <= limit_; ++m) {
        if ((*this)[m] == m) out.push_back(m);
    }
    return out;
}

SpfTable build_spf(std::uint64_t limit, std::uint64_t cap) { return SpfTable(limit, cap); }

Factorization factorize(std::uint64_t n, const SpfTable* spf) {
    if (n == 0) throw std::domain_error("cannot factorize 0");
    if (spf == nullptr || n > spf->limit()) return trial_division(n);

    Factorization f{n, {}};
    while (n > 1) {
        const std::uint64_t p = (*spf)[n];
        std::uint32_t a = 0;
        while (n % p == 0) {
            n /= p;
            ++a;
        }
        f.factors.push_back({p, a});
    }
    return f;
}

std::uint64_t tau(const Factorization& f) {
    std::uint64_t t = 1;
    for (const auto& pp : f.factors) t *= pp.exponent + 1;
    return t;
}

std::uint32_t omega(const Factorization& f) { return static_cast<std::uint32_t>(f.factors.size()); }

std::uint64_t unitary_divisor_count(const Factorization& f) { return std::uint64_t{1} << omega(f); }

DyadicRational divisor_ratio(const Factorization& f) {
    return DyadicRational(BigInt(tau(f)), omega(f));
}

DyadicRational divisor_ratio_of_square(const Factorization& f) {
    std::uint64_t odd = 1;
    for (const auto& pp : f.factors) odd *= 2 * std::uint64_t{pp.exponent} + 1;
    return DyadicRational(BigInt(odd), omega(f));
}

}  // namespace shiftsum
