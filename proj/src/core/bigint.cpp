#include "core/bigint.hpp"

#include <algorithm>
#include <bit>
#include <cctype>

#include "core/error.hpp"

namespace kdm {

namespace {
constexpr uint64_t kBase = uint64_t(1) << 32;
constexpr uint32_t kDecChunkDigits = 9;
constexpr uint32_t kDecChunk = 1000000000u;  // 10^9
}  // namespace

BigInt::BigInt(long long v) {
    if (v == 0) return;
    sign_ = v < 0 ? -1 : 1;
    unsigned long long m = v < 0 ? 0ULL - static_cast<unsigned long long>(v)
                                 : static_cast<unsigned long long>(v);
    mag_.push_back(static_cast<uint32_t>(m));
    if (m >> 32) mag_.push_back(static_cast<uint32_t>(m >> 32));
}

BigInt::BigInt(std::string_view decimal) {
    size_t i = 0;
    int sign = 1;
    if (i < decimal.size() && (decimal[i] == '+' || decimal[i] == '-')) {
        if (decimal[i] == '-') sign = -1;
        ++i;
    }
    if (i >= decimal.size()) fail(ErrorCode::parse, "empty integer literal");
    for (; i < decimal.size(); ++i) {
        char c = decimal[i];
        if (c < '0' || c > '9')
            fail(ErrorCode::parse, "invalid digit in integer literal: '" + std::string(decimal) + "'");
        mul_small_add(mag_, 10, static_cast<uint32_t>(c - '0'));
    }
    set_from_mag(sign);
}

void BigInt::trim() {
    while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
    if (mag_.empty()) sign_ = 0;
}

void BigInt::set_from_mag(int sign) {
    trim();
    sign_ = mag_.empty() ? 0 : sign;
}

BigInt BigInt::operator-() const {
    BigInt r = *this;
    r.sign_ = -r.sign_;
    return r;
}

BigInt BigInt::abs() const {
    BigInt r = *this;
    if (r.sign_ < 0) r.sign_ = 1;
    return r;
}

int BigInt::cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
}

int BigInt::compare(const BigInt& rhs) const {
    if (sign_ != rhs.sign_) return sign_ < rhs.sign_ ? -1 : 1;
    int c = cmp_mag(mag_, rhs.mag_);
    return sign_ >= 0 ? c : -c;
}

std::vector<uint32_t> BigInt::add_mag(const std::vector<uint32_t>& a,
                                      const std::vector<uint32_t>& b) {
    const std::vector<uint32_t>& lo = a.size() < b.size() ? a : b;
    const std::vector<uint32_t>& hi = a.size() < b.size() ? b : a;
    std::vector<uint32_t> out(hi.size() + 1, 0);
    uint64_t carry = 0;
    for (size_t i = 0; i < hi.size(); ++i) {
        uint64_t s = carry + hi[i] + (i < lo.size() ? lo[i] : 0);
        out[i] = static_cast<uint32_t>(s);
        carry = s >> 32;
    }
    out[hi.size()] = static_cast<uint32_t>(carry);
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

std::vector<uint32_t> BigInt::sub_mag(const std::vector<uint32_t>& a,
                                      const std::vector<uint32_t>& b) {
    std::vector<uint32_t> out(a.size(), 0);
    int64_t borrow = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        int64_t s = static_cast<int64_t>(a[i]) - borrow - (i < b.size() ? b[i] : 0);
        if (s < 0) {
            s += static_cast<int64_t>(kBase);
            borrow = 1;
        } else {
            borrow = 0;
        }
        out[i] = static_cast<uint32_t>(s);
    }
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

std::vector<uint32_t> BigInt::mul_mag(const std::vector<uint32_t>& a,
                                      const std::vector<uint32_t>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<uint32_t> out(a.size() + b.size(), 0);
    for (size_t i = 0; i < a.size(); ++i) {
        uint64_t carry = 0;
        uint64_t ai = a[i];
        for (size_t j = 0; j < b.size(); ++j) {
            uint64_t cur = out[i + j] + ai * b[j] + carry;
            out[i + j] = static_cast<uint32_t>(cur);
            carry = cur >> 32;
        }
        out[i + b.size()] = static_cast<uint32_t>(carry);
    }
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

uint32_t BigInt::divmod_small(std::vector<uint32_t>& a, uint32_t divisor) {
    uint64_t rem = 0;
    for (size_t i = a.size(); i-- > 0;) {
        uint64_t cur = (rem << 32) | a[i];
        a[i] = static_cast<uint32_t>(cur / divisor);
        rem = cur % divisor;
    }
    while (!a.empty() && a.back() == 0) a.pop_back();
    return static_cast<uint32_t>(rem);
}

void BigInt::mul_small_add(std::vector<uint32_t>& a, uint32_t mul, uint32_t add) {
    uint64_t carry = add;
    for (size_t i = 0; i < a.size(); ++i) {
        uint64_t cur = static_cast<uint64_t>(a[i]) * mul + carry;
        a[i] = static_cast<uint32_t>(cur);
        carry = cur >> 32;
    }
    if (carry) a.push_back(static_cast<uint32_t>(carry));
}

// Knuth algorithm D, 32-bit limbs with 64-bit intermediates.
void BigInt::divmod_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b,
                        std::vector<uint32_t>& q, std::vector<uint32_t>& r) {
    q.clear();
    r.clear();
    if (b.empty()) fail(ErrorCode::invalid_argument, "division by zero");
    if (cmp_mag(a, b) < 0) {
        r = a;
        return;
    }
    if (b.size() == 1) {
        q = a;
        uint32_t rem = divmod_small(q, b[0]);
        if (rem) r.push_back(rem);
        return;
    }

    const size_t n = b.size();
    const size_t m = a.size() - n;
    const int shift = std::countl_zero(b.back());

    // Normalized copies: v's top limb gets its high bit set.
    std::vector<uint32_t> v(n);
    for (size_t i = n; i-- > 0;) {
        uint64_t x = static_cast<uint64_t>(b[i]) << shift;
        if (i > 0 && shift) x |= b[i - 1] >> (32 - shift);
        v[i] = static_cast<uint32_t>(x);
    }
    std::vector<uint32_t> u(a.size() + 1, 0);
    for (size_t i = a.size(); i-- > 0;) {
        uint64_t x = static_cast<uint64_t>(a[i]) << shift;
        if (i > 0 && shift) x |= a[i - 1] >> (32 - shift);
        u[i] = static_cast<uint32_t>(x);
    }
    if (shift) u[a.size()] = static_cast<uint32_t>(a.back() >> (32 - shift));

    q.assign(m + 1, 0);
    const uint64_t vn1 = v[n - 1];
    const uint64_t vn2 = v[n - 2];

    for (size_t j = m + 1; j-- > 0;) {
        uint64_t numer = (static_cast<uint64_t>(u[j + n]) << 32) | u[j + n - 1];
        uint64_t qhat = numer / vn1;
        uint64_t rhat = numer % vn1;
        while (qhat >= kBase || qhat * vn2 > (rhat << 32) + u[j + n - 2]) {
            --qhat;
            rhat += vn1;
            if (rhat >= kBase) break;
        }

        // Multiply-subtract qhat * v from u[j .. j+n].
        uint64_t borrow = 0;
        int64_t t = 0;
        for (size_t i = 0; i < n; ++i) {
            uint64_t p = qhat * v[i];
            t = static_cast<int64_t>(static_cast<uint64_t>(u[i + j]) - borrow -
                                     (p & 0xFFFFFFFFull));
            u[i + j] = static_cast<uint32_t>(t);
            borrow = (p >> 32) - static_cast<uint64_t>(t >> 32);
        }
        t = static_cast<int64_t>(static_cast<uint64_t>(u[j + n]) - borrow);
        u[j + n] = static_cast<uint32_t>(t);

        q[j] = static_cast<uint32_t>(qhat);
        if (t < 0) {
            --q[j];
            uint64_t carry = 0;
            for (size_t i = 0; i < n; ++i) {
                uint64_t s = static_cast<uint64_t>(u[i + j]) + v[i] + carry;
                u[i + j] = static_cast<uint32_t>(s);
                carry = s >> 32;
            }
            u[j + n] = static_cast<uint32_t>(static_cast<uint64_t>(u[j + n]) + carry);
        }
    }

    // Denormalize the remainder.
    r.assign(n, 0);
    for (size_t i = 0; i < n; ++i) {
        uint64_t x = u[i] >> shift;
        if (i + 1 < n && shift) x |= static_cast<uint64_t>(u[i + 1]) << (32 - shift);
        r[i] = static_cast<uint32_t>(x);
    }
    while (!q.empty() && q.back() == 0) q.pop_back();
    while (!r.empty() && r.back() == 0) r.pop_back();
}

BigInt& BigInt::operator+=(const BigInt& rhs) {
    if (rhs.sign_ == 0) return *this;
    if (sign_ == 0) {
        *this = rhs;
        return *this;
    }
    if (sign_ == rhs.sign_) {
        mag_ = add_mag(mag_, rhs.mag_);
        return *this;
    }
    int c = cmp_mag(mag_, rhs.mag_);
    if (c == 0) {
        mag_.clear();
        sign_ = 0;
    } else if (c > 0) {
        mag_ = sub_mag(mag_, rhs.mag_);
    } else {
        mag_ = sub_mag(rhs.mag_, mag_);
        sign_ = rhs.sign_;
    }
    return *this;
}

BigInt& BigInt::operator-=(const BigInt& rhs) { return *this += -rhs; }

BigInt& BigInt::operator*=(const BigInt& rhs) {
    sign_ *= rhs.sign_;
    mag_ = mul_mag(mag_, rhs.mag_);
    if (mag_.empty()) sign_ = 0;
    return *this;
}

void BigInt::divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
    std::vector<uint32_t> qm, rm;
    divmod_mag(a.mag_, b.mag_, qm, rm);
    q.mag_ = std::move(qm);
    r.mag_ = std::move(rm);
    q.set_from_mag(a.sign_ * b.sign_);
    r.set_from_mag(a.sign_);
}

BigInt& BigInt::operator/=(const BigInt& rhs) {
    BigInt q, r;
    divmod(*this, rhs, q, r);
    *this = std::move(q);
    return *this;
}

BigInt& BigInt::operator%=(const BigInt& rhs) {
    BigInt q, r;
    divmod(*this, rhs, q, r);
    *this = std::move(r);
    return *this;
}

BigInt BigInt::gcd(const BigInt& a, const BigInt& b) {
    BigInt x = a.abs();
    BigInt y = b.abs();
    while (!y.is_zero()) {
        BigInt q, r;
        divmod(x, y, q, r);
        x = std::move(y);
        y = std::move(r);
    }
    return x;
}

BigInt BigInt::pow(const BigInt& base, unsigned long long exp) {
    BigInt result(1);
    BigInt acc = base;
    while (exp) {
        if (exp & 1) result *= acc;
        exp >>= 1;
        if (exp) acc *= acc;
    }
    return result;
}

std::string BigInt::str() const {
    if (sign_ == 0) return "0";
    std::vector<uint32_t> work = mag_;
    std::string out;
    while (!work.empty()) {
        uint32_t chunk = divmod_small(work, kDecChunk);
        if (work.empty()) {
            out = std::to_string(chunk) + out;
        } else {
            std::string part = std::to_string(chunk);
            out = std::string(kDecChunkDigits - part.size(), '0') + part + out;
        }
    }
    return sign_ < 0 ? "-" + out : out;
}

bool BigInt::fits_int64() const {
    if (mag_.size() > 2) return false;
    if (mag_.size() < 2) return true;
    uint64_t m = (static_cast<uint64_t>(mag_[1]) << 32) | mag_[0];
    return m <= (sign_ < 0 ? uint64_t(1) << 63 : (uint64_t(1) << 63) - 1);
}

long long BigInt::to_int64() const {
    if (!fits_int64()) fail(ErrorCode::internal, "integer too large for int64: " + str());
    uint64_t m = 0;
    if (!mag_.empty()) m = mag_[0];
    if (mag_.size() == 2) m |= static_cast<uint64_t>(mag_[1]) << 32;
    return sign_ < 0 ? -static_cast<long long>(m) : static_cast<long long>(m);
}

}  // namespace kdm
