#include "shiftsum/square_shift.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace shiftsum {

std::uint64_t isqrt(std::uint64_t n) {
    using u128 = unsigned __int128;
    // The float seed can be off by one or two near 2^53 and above; fix up in integers.
    std::uint64_t r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    if (r > 0xFFFFFFFFull) r = 0xFFFFFFFFull;
    while (u128{r} * r > n) --r;
    while (u128{r + 1} * (r + 1) <= n) ++r;
    assert(u128{r} * r <= n && u128{r + 1} * (r + 1) > n);
    return r;
}

ShiftDecomposition shift(std::uint64_t n) {
    if (n == 0) throw std::domain_error("shift is defined for n >= 1");
    const std::uint64_t root = n == 1 ? 1 : isqrt(n - 1) + 1;
    // root^2 may be 2^64 when n is near the top of the range; the shift itself fits.
    const auto square = static_cast<unsigned __int128>(root) * root;
    return {n, root, static_cast<std::uint64_t>(square - n)};
}

Block block_of(std::uint64_t k) {
    if (k == 0) throw std::domain_error("block index must be >= 1");
    if (k > 0xFFFFFFFFull) throw std::out_of_range("block index must be below 2^32");
    const std::uint64_t lo = k * k;
    const std::uint64_t hi = lo + 2 * k;  // (k+1)^2 - 1
    return {lo, hi, 1, 2 * k};
}

}  // namespace shiftsum
