#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace kdm {

// Arbitrary-precision signed integer, sign-magnitude over 32-bit limbs.
// Magnitude is little-endian with no trailing zero limbs; zero has an
// empty magnitude and sign 0. Sized for exact combinatorics at desk
// scale (binomials up to a few hundred bits), not for cryptography.
class BigInt {
  public:
    BigInt() = default;
    BigInt(long long v);
    explicit BigInt(std::string_view decimal);

    bool is_zero() const { return sign_ == 0; }
    int sign() const { return sign_; }
    bool is_one() const { return sign_ == 1 && mag_.size() == 1 && mag_[0] == 1; }
    bool odd() const { return !mag_.empty() && (mag_[0] & 1u); }

    BigInt operator-() const;
    BigInt abs() const;

    BigInt& operator+=(const BigInt& rhs);
    BigInt& operator-=(const BigInt& rhs);
    BigInt& operator*=(const BigInt& rhs);
    BigInt& operator/=(const BigInt& rhs);
    BigInt& operator%=(const BigInt& rhs);

    friend BigInt operator+(BigInt a, const BigInt& b) { return a += b; }
    friend BigInt operator-(BigInt a, const BigInt& b) { return a -= b; }
    friend BigInt operator*(BigInt a, const BigInt& b) { return a *= b; }
    friend BigInt operator/(BigInt a, const BigInt& b) { return a /= b; }
    friend BigInt operator%(BigInt a, const BigInt& b) { return a %= b; }

    // Truncated division: q rounds toward zero, r carries the dividend's
    // sign, a == q*b + r. Divisor must be nonzero.
    static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r);

    static BigInt gcd(const BigInt& a, const BigInt& b);
    static BigInt pow(const BigInt& base, unsigned long long exp);

    int compare(const BigInt& rhs) const;
    friend bool operator==(const BigInt& a, const BigInt& b) { return a.compare(b) == 0; }
    friend bool operator!=(const BigInt& a, const BigInt& b) { return a.compare(b) != 0; }
    friend bool operator<(const BigInt& a, const BigInt& b) { return a.compare(b) < 0; }
    friend bool operator<=(const BigInt& a, const BigInt& b) { return a.compare(b) <= 0; }
    friend bool operator>(const BigInt& a, const BigInt& b) { return a.compare(b) > 0; }
    friend bool operator>=(const BigInt& a, const BigInt& b) { return a.compare(b) >= 0; }

    std::string str() const;

    // Narrowing accessors; throw kdm::Error on overflow.
    long long to_int64() const;
    bool fits_int64() const;

    size_t limb_count() const { return mag_.size(); }

  private:
    int sign_ = 0;
    std::vector<uint32_t> mag_;

    void trim();
    void set_from_mag(int sign);

    static int cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    static std::vector<uint32_t> add_mag(const std::vector<uint32_t>& a,
                                         const std::vector<uint32_t>& b);
    // Requires |a| >= |b|.
    static std::vector<uint32_t> sub_mag(const std::vector<uint32_t>& a,
                                         const std::vector<uint32_t>& b);
    static std::vector<uint32_t> mul_mag(const std::vector<uint32_t>& a,
                                         const std::vector<uint32_t>& b);
    static void divmod_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b,
                           std::vector<uint32_t>& q, std::vector<uint32_t>& r);
    static uint32_t divmod_small(std::vector<uint32_t>& a, uint32_t divisor);
    static void mul_small_add(std::vector<uint32_t>& a, uint32_t mul, uint32_t add);
};

}  // namespace kdm
