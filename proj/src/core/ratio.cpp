#include "core/ratio.hpp"

#include <optional>
#include <set>
#include <string>

#include "core/combinatorics.hpp"
#include "core/error.hpp"

namespace kdm {

namespace {

// sum_{i=1}^{slots} i * C(remaining, slots - i) / (d-1)^{slots - i}
Rational deficiency_sum(int remaining, int slots, int d) {
    Rational sum(0);
    for (int i = 1; i <= slots; ++i) {
        Rational term(BigInt(i) * binomial(remaining, slots - i),
                      BigInt::pow(BigInt(d - 1), slots - i));
        sum += term;
    }
    return sum;
}

void check_deficiency_args(int load, int degree, const Params& p) {
    p.validate();
    if (load < 0 || load > p.b)
        fail(ErrorCode::invalid_argument,
             "load out of range: " + std::to_string(load) + " not in [0, " + std::to_string(p.b) + "]");
    if (degree < load || degree > p.k * p.b)
        fail(ErrorCode::invalid_argument,
             "degree out of range: " + std::to_string(degree) + " not in [" + std::to_string(load) +
                 ", " + std::to_string(p.k * p.b) + "]");
}

}  // namespace

Rational competitive_ratio(const Params& p) {
    p.validate();
    const int kb = p.k * p.b;
    Rational loss = deficiency_sum(kb, p.b, p.d);
    loss *= Rational(1, p.b);
    loss *= Rational::pow(Rational(p.d - 1, p.d), kb);
    return Rational(1) - loss;
}

Rational min_competitive_ratio(int k, int d, const std::vector<int>& capacities) {
    if (capacities.empty())
        fail(ErrorCode::invalid_argument, "capacity set must be nonempty");
    std::set<int> distinct(capacities.begin(), capacities.end());
    std::optional<Rational> best;
    for (int b : distinct) {
        Rational c = competitive_ratio(Params{k, d, b});
        if (!best || c < *best) best = std::move(c);
    }
    return *best;
}

Rational deficiency_closed(const Rational& x, int load, int degree, const Params& p) {
    check_deficiency_args(load, degree, p);
    const int remaining = p.k * p.b - degree;
    Rational f = deficiency_sum(remaining, p.b - load, p.d);
    f *= Rational::pow(Rational(p.d - 1, p.d), remaining);
    f *= x;
    return f;
}

Rational deficiency_recursive(const Rational& x, int load, int degree, const Params& p) {
    check_deficiency_args(load, degree, p);
    const int kb = p.k * p.b;
    // F is linear in x, so the recurrence is expanded once at x = 1 per
    // (l, delta) cell and scaled at the end.
    std::vector<std::vector<std::optional<Rational>>> memo(
        p.b + 1, std::vector<std::optional<Rational>>(kb + 1));
    const Rational survive(p.d - 1, p.d);  // 1 - 1/d

    auto unit = [&](auto&& self, int l, int delta) -> const Rational& {
        auto& slot = memo[l][delta];
        if (slot) return *slot;
        if (l == p.b) {
            slot = Rational(0);
        } else if (delta == kb) {
            slot = Rational(p.b - l);
        } else {
            Rational f = Rational::pow(survive, kb - delta) * Rational(p.b - l);
            Rational child_x(1, p.d);  // (1/d) (1-1/d)^{i-1} for i = 1
            for (int i = 1; i <= kb - delta; ++i) {
                f += child_x * self(self, l + 1, delta + i);
                child_x *= survive;
            }
            slot = std::move(f);
        }
        return *slot;
    };
    return x * unit(unit, load, degree);
}

Rational gauss_2f1_poly(int m, const Rational& gamma, const Rational& z) {
    if (m < 0) fail(ErrorCode::invalid_argument, "series order must be >= 0");
    Rational sum(1);
    Rational term(1);
    for (int n = 1; n <= m; ++n) {
        Rational factor = gamma + Rational(n - 1);
        if (factor.is_zero())
            fail(ErrorCode::pole,
                 "pole: (gamma)_n vanishes at n = " + std::to_string(n) + " for gamma = " + gamma.str());
        term *= Rational(-(m - n + 1) * (n + 1), n);
        term *= z;
        term /= factor;
        sum += term;
    }
    return sum;
}

MonotonicityScan monotonicity_scan(int k, int d, int b_max) {
    if (d < 2 || k < d)
        fail(ErrorCode::invalid_argument, "monotonicity scan requires k >= d >= 2");
    if (b_max < 1) fail(ErrorCode::invalid_argument, "b_max must be >= 1");
    MonotonicityScan scan;
    scan.strictly_increasing = true;
    for (int b = 1; b <= b_max; ++b) {
        Rational c = competitive_ratio(Params{k, d, b});
        if (!scan.values.empty() && c <= scan.values.back().second)
            scan.strictly_increasing = false;
        scan.values.emplace_back(b, std::move(c));
    }
    return scan;
}

ConvergenceGap convergence_gap(const Params& p) {
    if (p.d < 2 || p.k < p.d)
        fail(ErrorCode::invalid_argument, "convergence gap requires k >= d >= 2");
    p.validate();
    const int kb = p.k * p.b;
    ConvergenceGap out;
    out.gap = Rational(1) - competitive_ratio(p);
    out.bound = Rational(binomial(kb, p.b - 1), BigInt::pow(BigInt(p.d - 1), p.b - 1));
    out.bound *= Rational::pow(Rational(p.d - 1, p.d), kb);
    if (out.gap > out.bound)
        fail(ErrorCode::internal, "deficiency bound violated at k=" + std::to_string(p.k) +
                                      " d=" + std::to_string(p.d) + " b=" + std::to_string(p.b));
    return out;
}

}  // namespace kdm
