#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "core/bigint.hpp"
#include "core/error.hpp"
#include "core/rng.hpp"

using kdm::BigInt;
using kdm::SplitMix64;

namespace {

// Shift-subtract reference division, independent of the production
// algorithm. Slow but unarguable.
void reference_divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
    BigInt an = a.abs();
    BigInt bn = b.abs();
    q = BigInt(0);
    r = BigInt(0);
    // Collect |a|'s bits via repeated halving.
    std::vector<int> bits;
    BigInt two(2);
    BigInt cur = an;
    while (!cur.is_zero()) {
        BigInt half, bit;
        BigInt::divmod(cur, two, half, bit);
        bits.push_back(bit.is_zero() ? 0 : 1);
        cur = half;
    }
    for (size_t i = bits.size(); i-- > 0;) {
        r *= two;
        q *= two;
        if (bits[i]) r += BigInt(1);
        if (r >= bn) {
            r -= bn;
            q += BigInt(1);
        }
    }
    if (a.sign() * b.sign() < 0) q = -q;
    if (a.sign() < 0) r = -r;
}

BigInt random_bigint(SplitMix64& rng, int max_limbs) {
    int limbs = 1 + static_cast<int>(rng.below(max_limbs));
    BigInt v(0);
    for (int i = 0; i < limbs; ++i) {
        v *= BigInt(1ll << 32);
        v += BigInt(static_cast<long long>(rng.below(1ull << 32)));
    }
    if (rng.below(2)) v = -v;
    return v;
}

}  // namespace

TEST_CASE("small arithmetic agrees with int64") {
    SplitMix64 rng(42);
    for (int i = 0; i < 2000; ++i) {
        long long a = static_cast<long long>(rng.below(1ull << 31)) - (1ll << 30);
        long long b = static_cast<long long>(rng.below(1ull << 31)) - (1ll << 30);
        CHECK(BigInt(a) + BigInt(b) == BigInt(a + b));
        CHECK(BigInt(a) - BigInt(b) == BigInt(a - b));
        CHECK(BigInt(a) * BigInt(b) == BigInt(a * b));
        if (b != 0) {
            CHECK(BigInt(a) / BigInt(b) == BigInt(a / b));
            CHECK(BigInt(a) % BigInt(b) == BigInt(a % b));
        }
        CHECK((BigInt(a) < BigInt(b)) == (a < b));
    }
}

TEST_CASE("decimal string round trip") {
    CHECK(BigInt(0).str() == "0");
    CHECK(BigInt(-1).str() == "-1");
    CHECK(BigInt("123456789012345678901234567890").str() == "123456789012345678901234567890");
    CHECK(BigInt("-000123").str() == "-123");
    CHECK_THROWS_AS(BigInt("12x4"), kdm::Error);
    CHECK_THROWS_AS(BigInt(""), kdm::Error);

    SplitMix64 rng(7);
    for (int i = 0; i < 200; ++i) {
        BigInt v = random_bigint(rng, 6);
        CHECK(BigInt(v.str()) == v);
    }
}

TEST_CASE("divmod identity on random operands") {
    SplitMix64 rng(1234);
    for (int i = 0; i < 400; ++i) {
        BigInt a = random_bigint(rng, 8);
        BigInt b = random_bigint(rng, 4);
        if (b.is_zero()) continue;
        BigInt q, r;
        BigInt::divmod(a, b, q, r);
        CHECK(q * b + r == a);
        CHECK(r.abs() < b.abs());
        if (!r.is_zero()) CHECK(r.sign() == a.sign());
    }
}

TEST_CASE("divmod matches shift-subtract reference") {
    SplitMix64 rng(99);
    for (int i = 0; i < 150; ++i) {
        BigInt a = random_bigint(rng, 7);
        BigInt b = random_bigint(rng, 3);
        if (b.is_zero()) continue;
        BigInt q1, r1, q2, r2;
        BigInt::divmod(a, b, q1, r1);
        reference_divmod(a, b, q2, r2);
        CHECK(q1 == q2);
        CHECK(r1 == r2);
    }
}

TEST_CASE("divmod fuzz with extreme limbs") {
    // Limbs biased toward 0, 1, 2^31 and 2^32-1 reach the correction and
    // add-back paths of the division far more often than uniform draws.
    SplitMix64 rng(31337);
    auto extreme = [&](int max_limbs) {
        static const uint32_t pool[] = {0u, 1u, 2u, 0x7FFFFFFFu, 0x80000000u,
                                        0x80000001u, 0xFFFFFFFEu, 0xFFFFFFFFu};
        int limbs = 1 + static_cast<int>(rng.below(max_limbs));
        BigInt v(0);
        for (int i = 0; i < limbs; ++i) {
            uint32_t limb = rng.below(4) ? pool[rng.below(8)]
                                         : static_cast<uint32_t>(rng.below(1ull << 32));
            v *= BigInt(1ll << 32);
            v += BigInt(static_cast<long long>(limb));
        }
        return v;
    };
    for (int i = 0; i < 3000; ++i) {
        BigInt a = extreme(6);
        BigInt b = extreme(3);
        if (b.is_zero()) continue;
        BigInt q, r;
        BigInt::divmod(a, b, q, r);
        CHECK(q * b + r == a);
        CHECK(r.abs() < b.abs());
    }
}

TEST_CASE("division edge patterns") {
    // Divisors with a high bit forcing normalization shifts of 0 and add-back
    // candidates: all-ones dividends against 2^k +/- 1 shaped divisors.
    BigInt ones("340282366920938463463374607431768211455");  // 2^128 - 1
    BigInt d1("18446744073709551616");                       // 2^64
    BigInt d2("18446744073709551615");                       // 2^64 - 1
    BigInt d3("9223372036854775808");                        // 2^63
    for (const BigInt& d : {d1, d2, d3}) {
        BigInt q, r;
        BigInt::divmod(ones, d, q, r);
        CHECK(q * d + r == ones);
        CHECK(r.abs() < d.abs());
    }
    CHECK(ones / ones == BigInt(1));
    CHECK(ones % ones == BigInt(0));
    CHECK(BigInt(5) / ones == BigInt(0));
    CHECK_THROWS_AS(ones / BigInt(0), kdm::Error);
}

TEST_CASE("gcd and pow") {
    CHECK(BigInt::gcd(BigInt(12), BigInt(18)) == BigInt(6));
    CHECK(BigInt::gcd(BigInt(-12), BigInt(18)) == BigInt(6));
    CHECK(BigInt::gcd(BigInt(0), BigInt(5)) == BigInt(5));
    CHECK(BigInt::pow(BigInt(2), 128).str() == "340282366920938463463374607431768211456");
    CHECK(BigInt::pow(BigInt(10), 0) == BigInt(1));
    CHECK(BigInt::pow(BigInt(-3), 3) == BigInt(-27));

    SplitMix64 rng(5);
    for (int i = 0; i < 100; ++i) {
        BigInt a = random_bigint(rng, 4).abs();
        BigInt b = random_bigint(rng, 4).abs();
        if (a.is_zero() || b.is_zero()) continue;
        BigInt g = BigInt::gcd(a, b);
        CHECK((a % g).is_zero());
        CHECK((b % g).is_zero());
        CHECK(BigInt::gcd(a / g, b / g) == BigInt(1));
    }
}

TEST_CASE("int64 narrowing") {
    CHECK(BigInt(0).to_int64() == 0);
    CHECK(BigInt(-42).to_int64() == -42);
    BigInt max("9223372036854775807");
    CHECK(max.to_int64() == 9223372036854775807ll);
    BigInt min("-9223372036854775808");
    CHECK(min.fits_int64());
    BigInt too_big("9223372036854775808");
    CHECK(!too_big.fits_int64());
    CHECK_THROWS_AS(too_big.to_int64(), kdm::Error);
}
