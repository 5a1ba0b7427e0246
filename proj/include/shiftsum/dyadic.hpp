#pragma once

// Exact rationals of the form a / 2^e.

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace shiftsum {

using BigInt = boost::multiprecision::cpp_int;

/// Exact value numerator / 2^exponent, kept in canonical form: the numerator
/// is odd, or the value is zero with exponent 0. Equality is field-wise.
class DyadicRational {
public:
    DyadicRational() = default;
    DyadicRational(std::int64_t value);  // NOLINT: implicit from integers is intended
    DyadicRational(BigInt numerator, std::uint64_t exponent);

    const BigInt& numerator() const { return num_; }
    std::uint64_t exponent() const { return exp_; }

    bool is_zero() const { return num_.is_zero(); }
    int sign() const { return num_.sign(); }

    DyadicRational& operator+=(const DyadicRational& rhs);
    DyadicRational& operator-=(const DyadicRational& rhs);
    DyadicRational& operator*=(const DyadicRational& rhs);

    /// Multiply by an integer; stays exact.
    DyadicRational scaled(const BigInt& factor) const;

    DyadicRational operator-() const;

    /// Correctly rounded (nearest, ties to even) binary64 value.
    double to_double() const;

    /// "a" when the exponent is 0, otherwise "a/b" with b = 2^e written out.
    std::string to_string() const;

    friend bool operator==(const DyadicRational&, const DyadicRational&) = default;
    friend std::strong_ordering operator<=>(const DyadicRational& a, const DyadicRational& b);

private:
    void canonicalize();

    BigInt num_{0};
    std::uint64_t exp_ = 0;
};

DyadicRational operator+(DyadicRational a, const DyadicRational& b);
DyadicRational operator-(DyadicRational a, const DyadicRational& b);
DyadicRational operator*(DyadicRational a, const DyadicRational& b);

/// Parse the to_string() form back ("a" or "a/2^e" written as "a/b").
DyadicRational parse_dyadic(const std::string& text);

}  // namespace shiftsum
