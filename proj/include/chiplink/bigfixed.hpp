#pragma once

#include <cstdint>
#include <vector>

namespace chiplink {

/// Non-negative fixed-point number with 512 fractional bits (~154 decimal
/// digits) and an unbounded integer part, stored as little-endian 64-bit
/// limbs. Multiplication truncates back to 512 fractional bits, so each
/// operation is exact to ~1e-154 relative -- far beyond the 50 digits the
/// reference computations need.
class BigFixed {
public:
    static constexpr int kFracLimbs = 8;
    static constexpr int kFracBits  = kFracLimbs * 64;

    BigFixed() = default;

    static BigFixed zero() { return BigFixed(); }
    static BigFixed one();
    /// Exact conversion of a non-negative finite double (exact whenever
    /// v >= 2^-459; smaller magnitudes truncate at the 512th fractional bit).
    static BigFixed from_double(double v);
    static BigFixed from_integer(std::uint64_t v);

    BigFixed& operator+=(const BigFixed& rhs);
    /// Requires *this >= rhs.
    BigFixed& operator-=(const BigFixed& rhs);
    friend BigFixed operator+(BigFixed a, const BigFixed& b) { return a += b; }
    friend BigFixed operator-(BigFixed a, const BigFixed& b) { return a -= b; }

    /// Fixed-point product, truncated to kFracBits fractional bits.
    BigFixed mul(const BigFixed& rhs) const;
    /// Product with a plain integer (no radix shift).
    BigFixed mul_integer(std::uint64_t c) const;
    /// Truncating division by a plain integer.
    BigFixed div_small(std::uint64_t d) const;
    /// x^e by square-and-multiply, e >= 0.
    BigFixed pow(int e) const;

    /// -1, 0, +1 for <, ==, >.
    int compare(const BigFixed& rhs) const;
    bool is_zero() const { return limbs_.empty(); }

    /// Nearest-double approximation (hi + lo of split()).
    double to_double() const;
    /// Splits into two non-negative doubles with hi a 53-bit truncation of
    /// the value (hi <= value) and lo the truncation of the remainder, so
    /// hi + lo carries ~106 significant bits.
    void split(double& hi, double& lo) const;

private:
    // value = sum_i limbs_[i] * 2^(64 i - kFracBits); empty vector = 0.
    std::vector<std::uint64_t> limbs_;

    void trim();
    void shift_left_bits(int bits);
    double truncate_to_double() const;
};

} // namespace chiplink
