#pragma once

#include "core/bigint.hpp"
#include "core/rational.hpp"

namespace kdm {

// C(n, k) by the multiplicative formula; each partial product is divided
// down immediately (the division is exact), so intermediates never exceed
// the final coefficient by more than one factor.
BigInt binomial(long long n, long long k);

// Rising factorial (x)_n = x (x+1) ... (x+n-1) over rationals.
Rational pochhammer(const Rational& x, unsigned n);

}  // namespace kdm
