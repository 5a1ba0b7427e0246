#pragma once

#include <cstdint>

namespace shiftsum {

/// floor(sqrt(n)), exact over the whole 64-bit range.
std::uint64_t isqrt(std::uint64_t n);

/// n + shift == root * root, where root is the least integer with root^2 >= n.
struct ShiftDecomposition {
    std::uint64_t n = 0;
    std::uint64_t root = 0;
    std::uint64_t shift = 0;

    friend bool operator==(const ShiftDecomposition&, const ShiftDecomposition&) = default;
};

ShiftDecomposition shift(std::uint64_t n);

/// The integers k^2 .. (k+1)^2 - 1. Exactly one of them (k^2 itself) completes
/// to k^2; the other 2k complete to (k+1)^2.
struct Block {
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;
    std::uint64_t count_at_ksq = 0;
    std::uint64_t count_to_next = 0;

    friend bool operator==(const Block&, const Block&) = default;
};

/// Requires 1 <= k < 2^32 so that hi fits in 64 bits.
Block block_of(std::uint64_t k);

}  // namespace shiftsum
