#include "chiplink/bigfixed.hpp"

#include <cmath>
#include <cstddef>

#include "chiplink/errors.hpp"

namespace chiplink {

namespace {
using u64 = std::uint64_t;
using u128 = unsigned __int128;
} // namespace

void BigFixed::trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
}

void BigFixed::shift_left_bits(int bits) {
    if (is_zero() || bits == 0) return;
    const int limb_shift = bits / 64;
    const int bit_shift = bits % 64;
    std::vector<u64> out(limbs_.size() + limb_shift + 1, 0);
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
        out[i + limb_shift] |= limbs_[i] << bit_shift;
        if (bit_shift != 0)
            out[i + limb_shift + 1] |= limbs_[i] >> (64 - bit_shift);
    }
    limbs_ = std::move(out);
    trim();
}

BigFixed BigFixed::one() {
    BigFixed r;
    r.limbs_.assign(kFracLimbs + 1, 0);
    r.limbs_[kFracLimbs] = 1;
    return r;
}

BigFixed BigFixed::from_integer(u64 v) {
    BigFixed r;
    if (v == 0) return r;
    r.limbs_.assign(kFracLimbs + 1, 0);
    r.limbs_[kFracLimbs] = v;
    return r;
}

BigFixed BigFixed::from_double(double v) {
    if (!(v >= 0.0) || !std::isfinite(v))
        throw DomainError("BigFixed::from_double: need a finite non-negative value");
    BigFixed r;
    if (v == 0.0) return r;
    int exp2 = 0;
    const double frac = std::frexp(v, &exp2);          // v = frac * 2^exp2
    const u64 mant = static_cast<u64>(std::ldexp(frac, 53)); // exact 53-bit integer
    const int shift = kFracBits + exp2 - 53;
    r.limbs_.assign(1, mant);
    if (shift >= 0) {
        r.shift_left_bits(shift);
    } else {
        // Truncate bits below 2^-kFracBits.
        const int right = -shift;
        if (right >= 64) return BigFixed();
        r.limbs_[0] >>= right;
        r.trim();
    }
    return r;
}

BigFixed& BigFixed::operator+=(const BigFixed& rhs) {
    if (limbs_.size() < rhs.limbs_.size()) limbs_.resize(rhs.limbs_.size(), 0);
    u64 carry = 0;
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
        u128 s = static_cast<u128>(limbs_[i]) + carry;
        if (i < rhs.limbs_.size()) s += rhs.limbs_[i];
        limbs_[i] = static_cast<u64>(s);
        carry = static_cast<u64>(s >> 64);
    }
    if (carry) limbs_.push_back(carry);
    return *this;
}

BigFixed& BigFixed::operator-=(const BigFixed& rhs) {
    if (compare(rhs) < 0)
        throw DomainError("BigFixed: subtraction would go negative");
    u64 borrow = 0;
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
        const u64 sub = (i < rhs.limbs_.size() ? rhs.limbs_[i] : 0);
        const u128 lhs = static_cast<u128>(limbs_[i]);
        const u128 need = static_cast<u128>(sub) + borrow;
        if (lhs >= need) {
            limbs_[i] = static_cast<u64>(lhs - need);
            borrow = 0;
        } else {
            limbs_[i] = static_cast<u64>((lhs + (static_cast<u128>(1) << 64)) - need);
            borrow = 1;
        }
    }
    trim();
    return *this;
}

BigFixed BigFixed::mul(const BigFixed& rhs) const {
    BigFixed r;
    if (is_zero() || rhs.is_zero()) return r;
    std::vector<u64> prod(limbs_.size() + rhs.limbs_.size(), 0);
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
        u64 carry = 0;
        for (std::size_t j = 0; j < rhs.limbs_.size(); ++j) {
            u128 cur = static_cast<u128>(limbs_[i]) * rhs.limbs_[j] +
                       prod[i + j] + carry;
            prod[i + j] = static_cast<u64>(cur);
            carry = static_cast<u64>(cur >> 64);
        }
        std::size_t k = i + rhs.limbs_.size();
        while (carry) {
            u128 cur = static_cast<u128>(prod[k]) + carry;
            prod[k] = static_cast<u64>(cur);
            carry = static_cast<u64>(cur >> 64);
            ++k;
        }
    }
    // Both operands carry kFracBits fractional bits; drop the extra radix tail.
    if (prod.size() <= kFracLimbs) return r;
    r.limbs_.assign(prod.begin() + kFracLimbs, prod.end());
    r.trim();
    return r;
}

BigFixed BigFixed::mul_integer(u64 c) const {
    BigFixed r;
    if (is_zero() || c == 0) return r;
    r.limbs_.assign(limbs_.size() + 1, 0);
    u64 carry = 0;
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
        u128 cur = static_cast<u128>(limbs_[i]) * c + carry;
        r.limbs_[i] = static_cast<u64>(cur);
        carry = static_cast<u64>(cur >> 64);
    }
    r.limbs_[limbs_.size()] = carry;
    r.trim();
    return r;
}

BigFixed BigFixed::div_small(u64 d) const {
    if (d == 0) throw DomainError("BigFixed: division by zero");
    BigFixed r;
    if (is_zero()) return r;
    r.limbs_.assign(limbs_.size(), 0);
    u128 rem = 0;
    for (std::size_t i = limbs_.size(); i-- > 0;) {
        u128 cur = (rem << 64) | limbs_[i];
        r.limbs_[i] = static_cast<u64>(cur / d);
        rem = cur % d;
    }
    r.trim();
    return r;
}

BigFixed BigFixed::pow(int e) const {
    if (e < 0) throw DomainError("BigFixed::pow: negative exponent");
    BigFixed result = one();
    BigFixed base = *this;
    while (e > 0) {
        if (e & 1) result = result.mul(base);
        base = base.mul(base);
        e >>= 1;
    }
    return result;
}

int BigFixed::compare(const BigFixed& rhs) const {
    if (limbs_.size() != rhs.limbs_.size())
        return limbs_.size() < rhs.limbs_.size() ? -1 : 1;
    for (std::size_t i = limbs_.size(); i-- > 0;) {
        if (limbs_[i] != rhs.limbs_[i]) return limbs_[i] < rhs.limbs_[i] ? -1 : 1;
    }
    return 0;
}

double BigFixed::truncate_to_double() const {
    if (is_zero()) return 0.0;
    // Position of the highest set bit, relative to bit 0 of limb 0.
    int top = static_cast<int>(limbs_.size()) * 64 - 1;
    {
        u64 hi = limbs_.back();
        int lead = 0;
        while (!(hi & (static_cast<u64>(1) << 63))) {
            hi <<= 1;
            ++lead;
        }
        top -= lead;
    }
    // Extract the 53 bits [top .. top-52], zero-padded below.
    u64 bits = 0;
    for (int b = 0; b < 53; ++b) {
        const int pos = top - b;
        if (pos < 0) break;
        const u64 limb = limbs_[static_cast<std::size_t>(pos) / 64];
        const u64 bit = (limb >> (pos % 64)) & 1;
        bits |= bit << (52 - b);
    }
    return std::ldexp(static_cast<double>(bits), top - 52 - kFracBits);
}

void BigFixed::split(double& hi, double& lo) const {
    hi = truncate_to_double();
    if (hi == 0.0) {
        lo = 0.0;
        return;
    }
    BigFixed rem = *this;
    rem -= BigFixed::from_double(hi);
    lo = rem.truncate_to_double();
}

double BigFixed::to_double() const {
    double hi = 0, lo = 0;
    split(hi, lo);
    return hi + lo;
}

} // namespace chiplink
