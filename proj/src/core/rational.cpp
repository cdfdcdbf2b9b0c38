#include "core/rational.hpp"

#include <utility>

#include "core/error.hpp"

namespace kdm {

Rational::Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) fail(ErrorCode::invalid_argument, "rational with zero denominator");
    normalize();
}

void Rational::normalize() {
    if (den_.sign() < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    if (num_.is_zero()) {
        den_ = BigInt(1);
        return;
    }
    BigInt g = BigInt::gcd(num_, den_);
    if (!g.is_one()) {
        num_ /= g;
        den_ /= g;
    }
}

Rational Rational::parse(std::string_view text) {
    size_t slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(BigInt(text));
    if (slash == 0 || slash + 1 >= text.size())
        fail(ErrorCode::parse, "malformed rational: '" + std::string(text) + "'");
    return Rational(BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)));
}

Rational& Rational::operator+=(const Rational& rhs) {
    num_ = num_ * rhs.den_ + rhs.num_ * den_;
    den_ *= rhs.den_;
    normalize();
    return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
    num_ = num_ * rhs.den_ - rhs.num_ * den_;
    den_ *= rhs.den_;
    normalize();
    return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
    num_ *= rhs.num_;
    den_ *= rhs.den_;
    normalize();
    return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
    if (rhs.is_zero()) fail(ErrorCode::invalid_argument, "rational division by zero");
    num_ *= rhs.den_;
    den_ *= rhs.num_;
    normalize();
    return *this;
}

Rational Rational::operator-() const {
    Rational r = *this;
    r.num_ = -r.num_;
    return r;
}

Rational Rational::inverse() const {
    if (is_zero()) fail(ErrorCode::invalid_argument, "inverse of zero");
    return Rational(den_, num_);
}

Rational Rational::pow(const Rational& base, unsigned long long exp) {
    return Rational(BigInt::pow(base.num_, exp), BigInt::pow(base.den_, exp));
}

int Rational::compare(const Rational& rhs) const {
    return (num_ * rhs.den_).compare(rhs.num_ * den_);
}

std::string Rational::str() const { return num_.str() + "/" + den_.str(); }

std::string Rational::display() const {
    return den_.is_one() ? num_.str() : str();
}

std::string Rational::decimal(int digits) const {
    if (digits < 0) fail(ErrorCode::invalid_argument, "negative digit count");
    BigInt n = num_.abs();
    BigInt q, r;
    BigInt::divmod(n, den_, q, r);
    std::string out = q.str();
    if (digits > 0) {
        out += '.';
        std::string frac;
        frac.reserve(digits);
        for (int i = 0; i < digits; ++i) {
            r *= BigInt(10);
            BigInt d;
            BigInt::divmod(r, den_, d, r);
            frac += d.str();
        }
        out += frac;
    }
    if (num_.sign() < 0) out = "-" + out;
    return out;
}

}  // namespace kdm
