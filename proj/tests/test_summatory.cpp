#include <doctest.h>

#include <random>

#include "shiftsum/square_shift.hpp"
#include "shiftsum/summatory.hpp"
#include "shiftsum/verify.hpp"

using namespace shiftsum;

namespace {

DyadicRational dy(std::int64_t num, std::uint64_t exp) { return DyadicRational(BigInt(num), exp); }

DyadicRational D_at(std::uint64_t n) { return divisor_ratio(factorize(n)); }

}  // namespace

// Expected values below come from tests/oracle/enumerate_values.py.

TEST_CASE("direct spot values") {
    CHECK(sum_direct(1).value == DyadicRational(1));
    CHECK(sum_direct(3).value == DyadicRational(4));
    CHECK(sum_direct(4).value == dy(11, 1));
    CHECK(sum_direct(8).value == dy(23, 1));
    CHECK(sum_direct(100).value == DyadicRational(226));
    CHECK(sum_direct(1000).value == dy(22017, 3));
    CHECK(sum_direct(8).method == Method::direct);
    CHECK(sum_direct(8).value_f64 == 11.5);
}

TEST_CASE("block spot values") {
    CHECK(sum_block(1).value == DyadicRational(1));
    CHECK(sum_block(3).value == DyadicRational(4));
    CHECK(sum_block(4).value == dy(11, 1));
    CHECK(sum_block(8).value == dy(23, 1));
    CHECK(sum_block(100).value == DyadicRational(226));
    CHECK(sum_block(1000).value == dy(22017, 3));
    CHECK(sum_block(8).terms_processed == 3);
}

TEST_CASE("T and W spot values") {
    CHECK(T_sum(1).value == DyadicRational(1));
    CHECK(T_sum(3).value == DyadicRational(4));
    CHECK(T_sum(6).value == dy(41, 2));
    CHECK(T_sum(100).value == dy(1213, 2));
    CHECK(W_sum(1).value == DyadicRational(1));
    CHECK(W_sum(3).value == dy(17, 1));
    CHECK(W_sum(100).value == dy(33095, 1));
    CHECK(W_sum(3).value == T_sum(3).value.scaled(3) - (T_sum(1).value + T_sum(2).value));
}

TEST_CASE("uncorrected block values") {
    CHECK(sum_block_paper_literal(1).value == dy(3, 1));
    CHECK(sum_block_paper_literal(2).value == DyadicRational(3));
    CHECK(sum_block_paper_literal(3).value == dy(9, 1));
    CHECK(sum_block_paper_literal(4).value == DyadicRational(6));
    CHECK(sum_block_paper_literal(8).value == DyadicRational(12));
    CHECK(sum_block_paper_literal(10).value == DyadicRational(17));
    CHECK(sum_block_paper_literal(8).method == Method::paper_literal_block);
}

TEST_CASE("uncorrected block deviates by D((N+1)^2) - 1") {
    for (std::uint64_t x = 1; x <= 10'000; ++x) {
        const std::uint64_t N = isqrt(x);
        const DyadicRational deviation = sum_block_paper_literal(x).value - sum_block(x).value;
        REQUIRE(deviation == D_at((N + 1) * (N + 1)) - DyadicRational(1));
    }
}

TEST_CASE("block equals direct for x <= 3000") {
    const SummatoryConfig config;
    const SuiteResult r = check_oracle_equality(3000, default_block_sum(config), config);
    CHECK(r.passed);
    CHECK(r.cases == 3000);
}

TEST_CASE("increments are single terms D(x + s(x))") {
    DyadicRational prev;
    for (std::uint64_t x = 1; x <= 5000; ++x) {
        const DyadicRational cur = sum_block(x).value;
        const ShiftDecomposition d = shift(x);
        REQUIRE(cur - prev == D_at(x + d.shift));
        REQUIRE(cur > prev);
        prev = cur;
    }
}

TEST_CASE("perfect squares have an empty tail") {
    for (std::uint64_t N = 1; N <= 200; ++N) {
        const std::uint64_t x = N * N;
        const DyadicRational expected =
            T_sum(N).value + (W_sum(N).value - T_sum(N).value).scaled(2);
        REQUIRE(sum_block(x).value == expected);
    }
}

TEST_CASE("real arguments use the floor") {
    CHECK(sum_at(8.999L, Method::block).value == dy(23, 1));
    CHECK(sum_at(8.0L, Method::direct).value == dy(23, 1));
    CHECK(sum_at(2.5L, Method::paper_literal_block).value == DyadicRational(3));
    CHECK_THROWS_AS(sum_at(0.5L, Method::block), std::domain_error);
}

TEST_CASE("errors") {
    CHECK_THROWS_AS(sum_direct(0), std::domain_error);
    CHECK_THROWS_AS(sum_block(0), std::domain_error);
    CHECK_THROWS_AS(sum_block(kMaxBlockArgument + 1), std::domain_error);
    CHECK_THROWS_AS(T_sum(0), std::domain_error);
    CHECK_THROWS_AS(W_sum(0), std::domain_error);

    SummatoryConfig capped;
    capped.direct_cap = 1000;
    CHECK_THROWS_AS(sum_direct(1001, capped), RefusalError);
    CHECK_NOTHROW(sum_direct(1000, capped));
}

TEST_CASE("sieve_D_square_range") {
    const auto first = sieve_D_square_range(1, 10);
    const DyadicRational expected[] = {dy(1, 0), dy(3, 1), dy(3, 1), dy(5, 1), dy(3, 1),
                                       dy(9, 2), dy(3, 1), dy(7, 1), dy(5, 1), dy(9, 2)};
    REQUIRE(first.size() == 10);
    for (std::size_t i = 0; i < 10; ++i) {
        CHECK(first[i].first == i + 1);
        CHECK(first[i].second == expected[i]);
    }
    for (std::uint64_t p : {2ull, 97ull, 1'000'003ull, 2'147'483'647ull}) {
        const auto one = sieve_D_square_range(p, p);
        REQUIRE(one.size() == 1);
        CHECK(one[0].second == dy(3, 1));
    }
    SummatoryConfig small;
    small.segment_size = 16;
    CHECK_THROWS_AS(sieve_D_square_range(1, 17, small), std::domain_error);
    CHECK_THROWS_AS(sieve_D_square_range(0, 5), std::domain_error);
}

TEST_CASE("segmented sieve matches factorization for m <= 1e5") {
    SummatoryConfig config;
    config.segment_size = 4099;  // many uneven segments
    std::uint64_t expected_m = 1;
    for_each_D_square(1, 100'000, config, [&](std::uint64_t m, SquareRatio r) {
        REQUIRE(m == expected_m++);
        REQUIRE(DyadicRational(BigInt(r.odd), r.omega) == divisor_ratio_of_square(factorize(m)));
    });
    CHECK(expected_m == 100'001);

    // A window far from the origin.
    for_each_D_square(999'990'000, 1'000'000'000, config, [&](std::uint64_t m, SquareRatio r) {
        REQUIRE(DyadicRational(BigInt(r.odd), r.omega) == divisor_ratio_of_square(factorize(m)));
    });
}

TEST_CASE("range-split additivity") {
    std::mt19937_64 rng(31);
    const SummatoryConfig config;
    for (int i = 0; i < 100; ++i) {
        const std::uint64_t b = 2 + rng() % 50'000;
        const std::uint64_t a = 1 + rng() % (b - 1);
        DyadicRational left, right;
        for_each_D_square(1, a, config, [&](std::uint64_t, SquareRatio r) { left += DyadicRational(BigInt(r.odd), r.omega); });
        for_each_D_square(a + 1, b, config, [&](std::uint64_t, SquareRatio r) { right += DyadicRational(BigInt(r.odd), r.omega); });
        REQUIRE(left + right == T_sum(b).value);
    }
}

TEST_CASE("results do not depend on threads or segment size") {
    SummatoryConfig base;
    const SumReport reference = sum_block(10'000'000'000ull, base);
    for (unsigned threads : {2u, 3u, 4u}) {
        for (std::uint64_t seg : {std::uint64_t{1} << 10, std::uint64_t{12'345}, std::uint64_t{1} << 20}) {
            SummatoryConfig c;
            c.threads = threads;
            c.segment_size = seg;
            REQUIRE(sum_block(10'000'000'000ull, c).value == reference.value);
        }
    }
    SummatoryConfig c;
    c.threads = 4;
    c.segment_size = 777;
    CHECK(W_sum(50'000, c).value == W_sum(50'000).value);
    CHECK(T_sum(50'000, c).value == T_sum(50'000).value);
}

TEST_CASE("partial summation identity for N <= 300") {
    const SuiteResult r = check_partial_summation(300, SummatoryConfig{});
    CHECK(r.passed);
    CHECK(r.cases == 300);
}

TEST_CASE("direct scanner") {
    DirectScanner scan(100);
    CHECK(scan.advance_to(4) == dy(11, 1));
    CHECK(scan.advance_to(8) == dy(23, 1));
    CHECK(scan.advance_to(8) == dy(23, 1));
    CHECK(scan.advance_to(100) == DyadicRational(226));
    CHECK_THROWS_AS(scan.advance_to(50), std::logic_error);
    CHECK_THROWS_AS(scan.advance_to(101), std::out_of_range);
}
