#include "shiftsum/dyadic.hpp"

#include <cmath>
#include <stdexcept>

namespace shiftsum {

DyadicRational::DyadicRational(std::int64_t value) : num_(value), exp_(0) { canonicalize(); }

DyadicRational::DyadicRational(BigInt numerator, std::uint64_t exponent)
    : num_(std::move(numerator)), exp_(exponent) {
    canonicalize();
}

void DyadicRational::canonicalize() {
    if (num_.is_zero()) {
        exp_ = 0;
        return;
    }
    if (exp_ == 0) return;
    const std::uint64_t twos = boost::multiprecision::lsb(abs(num_));
    const std::uint64_t strip = twos < exp_ ? twos : exp_;
    if (strip > 0) {
        num_ >>= strip;
        exp_ -= strip;
    }
}

DyadicRational& DyadicRational::operator+=(const DyadicRational& rhs) {
    if (rhs.is_zero()) return *this;
    if (exp_ == rhs.exp_) {
        num_ += rhs.num_;
    } else if (exp_ > rhs.exp_) {
        num_ += rhs.num_ << (exp_ - rhs.exp_);
    } else {
        num_ <<= (rhs.exp_ - exp_);
        num_ += rhs.num_;
        exp_ = rhs.exp_;
    }
    canonicalize();
    return *this;
}

DyadicRational& DyadicRational::operator-=(const DyadicRational& rhs) { return *this += -rhs; }

DyadicRational& DyadicRational::operator*=(const DyadicRational& rhs) {
    num_ *= rhs.num_;
    exp_ += rhs.exp_;
    canonicalize();
    return *this;
}

DyadicRational DyadicRational::scaled(const BigInt& factor) const {
    return DyadicRational(num_ * factor, exp_);
}

DyadicRational DyadicRational::operator-() const {
    DyadicRational out = *this;
    out.num_ = -out.num_;
    return out;
}

double DyadicRational::to_double() const {
    if (num_.is_zero()) return 0.0;
    const bool negative = num_.sign() < 0;
    BigInt mag = abs(num_);
    const std::int64_t top = static_cast<std::int64_t>(boost::multiprecision::msb(mag));

    // Keep 53 significant bits and round the remainder to nearest, ties to even.
    std::int64_t shift = top - 52;
    if (shift > 0) {
        const BigInt dropped = mag & ((BigInt(1) << shift) - 1);
        const BigInt half = BigInt(1) << (shift - 1);
        mag >>= shift;
        if (dropped > half || (dropped == half && (mag & 1) != 0)) {
            mag += 1;
        }
    } else {
        shift = 0;
    }
    const double mantissa = static_cast<double>(static_cast<std::uint64_t>(mag));
    const double value = std::ldexp(mantissa, static_cast<int>(shift - static_cast<std::int64_t>(exp_)));
    return negative ? -value : value;
}

std::string DyadicRational::to_string() const {
    if (exp_ == 0) return num_.str();
    return num_.str() + "/" + (BigInt(1) << exp_).str();
}

std::strong_ordering operator<=>(const DyadicRational& a, const DyadicRational& b) {
    const std::uint64_t e = a.exp_ > b.exp_ ? a.exp_ : b.exp_;
    const BigInt lhs = a.num_ << (e - a.exp_);
    const BigInt rhs = b.num_ << (e - b.exp_);
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

DyadicRational operator+(DyadicRational a, const DyadicRational& b) { return a += b; }
DyadicRational operator-(DyadicRational a, const DyadicRational& b) { return a -= b; }
DyadicRational operator*(DyadicRational a, const DyadicRational& b) { return a *= b; }

DyadicRational parse_dyadic(const std::string& text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return DyadicRational(BigInt(text), 0);
        const BigInt num(text.substr(0, slash));
        const BigInt den(text.substr(slash + 1));
        if (den <= 0 || (den & (den - 1)) != 0) {
            throw std::invalid_argument("denominator is not a power of two: " + text);
        }
        return DyadicRational(num, boost::multiprecision::msb(den));
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("not a dyadic rational: " + text);
    }
}

}  // namespace shiftsum
