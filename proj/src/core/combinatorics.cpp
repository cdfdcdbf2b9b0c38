#include "core/combinatorics.hpp"

#include "core/error.hpp"

namespace kdm {

BigInt binomial(long long n, long long k) {
    if (n < 0) fail(ErrorCode::invalid_argument, "binomial with negative n");
    if (k < 0 || k > n) return BigInt(0);
    if (k > n - k) k = n - k;
    BigInt result(1);
    for (long long i = 1; i <= k; ++i) {
        result *= BigInt(n - k + i);
        result /= BigInt(i);  // exact: result is C(n-k+i, i) after this step
    }
    return result;
}

Rational pochhammer(const Rational& x, unsigned n) {
    Rational result(1);
    Rational term = x;
    for (unsigned i = 0; i < n; ++i) {
        result *= term;
        term += Rational(1);
    }
    return result;
}

}  // namespace kdm
