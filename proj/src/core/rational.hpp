#pragma once

#include <string>
#include <string_view>

#include "core/bigint.hpp"

namespace kdm {

// Exact rational, always in lowest terms with positive denominator.
// This is the arithmetic substrate for every table/ratio computation;
// no floating point appears in any correctness path.
class Rational {
  public:
    Rational() : num_(0), den_(1) {}
    Rational(long long v) : num_(v), den_(1) {}
    Rational(BigInt num) : num_(std::move(num)), den_(1) {}
    Rational(BigInt num, BigInt den);
    Rational(long long num, long long den) : Rational(BigInt(num), BigInt(den)) {}

    // Accepts "num/den", "num", optional sign on the numerator.
    static Rational parse(std::string_view text);

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_integer() const { return den_.is_one(); }
    int sign() const { return num_.sign(); }

    Rational& operator+=(const Rational& rhs);
    Rational& operator-=(const Rational& rhs);
    Rational& operator*=(const Rational& rhs);
    Rational& operator/=(const Rational& rhs);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    Rational operator-() const;

    Rational inverse() const;
    static Rational pow(const Rational& base, unsigned long long exp);

    int compare(const Rational& rhs) const;
    friend bool operator==(const Rational& a, const Rational& b) { return a.compare(b) == 0; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.compare(b) != 0; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.compare(b) < 0; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.compare(b) <= 0; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.compare(b) > 0; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.compare(b) >= 0; }

    // Canonical serialized form, always "num/den" (e.g. "884/1").
    std::string str() const;
    // Human form: integers render without the "/1".
    std::string display() const;
    // Decimal expansion truncated (not rounded) to `digits` fractional digits.
    std::string decimal(int digits) const;

  private:
    BigInt num_;
    BigInt den_;

    void normalize();
};

}  // namespace kdm
