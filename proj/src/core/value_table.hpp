#pragma once

#include <memory>
#include <string>
#include <vector>

#include "core/params.hpp"
#include "core/rational.hpp"

namespace kdm {

struct TableViolation {
    std::string kind;  // "range", "boundary", "anchor", "monotonicity", "saturation"
    int l = 0;
    int delta = 0;
    std::string detail;
};

struct TableValidationReport {
    std::vector<TableViolation> violations;
    // Cells whose value differs from an independently recomputed table;
    // localizes a corrupted entry exactly.
    std::vector<std::pair<int, int>> mismatched_cells;

    bool ok() const { return violations.empty() && mismatched_cells.empty(); }
};

// The potential grid V(l, delta) driving WeightedAssignment for one (k, d, b),
// with the per-load anchors P_l and the ratio c*. Values are exact rationals;
// the grid is materialized once and immutable afterwards, so lookups are
// plain table reads and safe to share across threads.
class ValueTable {
  public:
    // Closed-form construction: P_l from the boundary identity, V from the
    // solved two-parameter recurrence.
    static ValueTable build(const Params& p);

    // Independent route: for each load row, propagate the one-step recurrence
    // with P_l left symbolic and solve V(l, kb) = 1 for it. Used as the
    // oracle against build().
    static ValueTable build_recursive(const Params& p);

    const Params& params() const { return p_; }
    const Rational& c_star() const { return c_star_; }
    // 1/(b c*): the exact dual budget per matched request.
    const Rational& dual_step() const { return dual_step_; }

    // V with boundary clamping: 1 for l >= b or delta >= kb. Requires
    // 0 <= l <= b and delta >= l; degrees beyond kb are admitted.
    const Rational& value(int l, int delta) const;

    // p(l,delta) = V(l+1,delta+1) - V(l,delta): dual raise on the matched server.
    Rational p_gain(int l, int delta) const;
    // q(l,delta) = V(l,delta+1) - V(l,delta): dual raise on a passed-over neighbor.
    Rational q_gain(int l, int delta) const;

    // P_l = V(l, l) for l in 0..b-1.
    const Rational& potential(int l) const;

    // Checks every structural invariant plus the saturation identity
    // p + (d-1) q = 1/(b c*) on interior cells, and recomputes the grid to
    // localize corrupted entries. Violations are data, not failures.
    TableValidationReport validate() const;

    // "l,delta,num,den" rows, exact integers, header included.
    std::string csv() const;

    // Test hook for fault-injection; not part of the public contract.
    void perturb(int l, int delta, Rational v);

  private:
    Params p_;
    Rational c_star_;
    Rational dual_step_;
    std::vector<std::vector<Rational>> rows_;  // rows_[l][delta - l], delta in l..kb
    std::vector<Rational> potentials_;         // P_l, l in 0..b-1

    ValueTable() = default;
    static ValueTable make_shell(const Params& p);
    bool equal_grid(const ValueTable& other) const;
};

// Process-wide cache keyed by (k, d, b); tables are built once and shared.
std::shared_ptr<const ValueTable> table_for(const Params& p);

}  // namespace kdm
