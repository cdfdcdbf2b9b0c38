#pragma once

#include <vector>

#include "core/params.hpp"
#include "core/rational.hpp"

namespace kdm {

// Optimal deterministic competitive ratio for uniform capacity b:
//   c* = 1 - (1/b) * (sum_{i=1}^{b} i * C(kb, b-i) / (d-1)^{b-i}) * (1-1/d)^{kb}
// Exact in all terms. Requires d >= 2; d = 1 must be handled by the caller
// (any greedy strategy is already optimal there).
Rational competitive_ratio(const Params& p);

// Ratio for variable capacities: the minimum of the per-capacity ratios.
Rational min_competitive_ratio(int k, int d, const std::vector<int>& capacities);

// Deficiency F(x, l, delta): capacity units an adaptive adversary can force
// a deterministic online algorithm to leave empty, starting from x servers
// of load l and degree delta. Closed form:
//   F = x * (1-1/d)^{kb-delta} * sum_{i=1}^{b-l} i * C(kb-delta, b-l-i) / (d-1)^{b-l-i}
Rational deficiency_closed(const Rational& x, int load, int degree, const Params& p);

// Same quantity evaluated straight from the recurrence
//   F(x,l,delta) = x (1-1/d)^{kb-delta} (b-l)
//                  + sum_{i=1}^{kb-delta} F(x/d (1-1/d)^{i-1}, l+1, delta+i)
// with bases F(x,b,delta) = 0 and F(x,l,kb) = x(b-l). Serves as the
// independent oracle for deficiency_closed.
Rational deficiency_recursive(const Rational& x, int load, int degree, const Params& p);

// Truncated Gauss hypergeometric series 2F1(2, -m; gamma; z), a polynomial:
//   sum_{n=0}^{m} (-1)^n C(m,n) (2)_n / (gamma)_n * z^n
// Fails with a pole diagnostic if (gamma)_n vanishes for some n <= m.
Rational gauss_2f1_poly(int m, const Rational& gamma, const Rational& z);

struct MonotonicityScan {
    std::vector<std::pair<int, Rational>> values;  // (b, c*) for b = 1..b_max
    bool strictly_increasing = false;
};

// Exact c* for b = 1..b_max with a strictness verdict. Requires k >= d >= 2.
MonotonicityScan monotonicity_scan(int k, int d, int b_max);

struct ConvergenceGap {
    Rational gap;    // 1 - c*
    Rational bound;  // C(kb, b-1) (1-1/d)^{kb} / (d-1)^{b-1}
};

// Returns 1 - c* together with its combinatorial upper bound; requires
// k >= d >= 2 and verifies gap <= bound.
ConvergenceGap convergence_gap(const Params& p);

}  // namespace kdm
