#pragma once

#include "core/instance.hpp"
#include "core/rational.hpp"

namespace kdm {

// Exact maximum b-matching size via max-flow on the standard network
// (source -> request, capacity 1; request -> server per edge, capacity 1;
// server -> sink, capacity b_s).
long long max_b_matching(const Instance& inst);

// Maximum total weight of a feasible assignment where every match at
// server s is worth w_s. Feasible load vectors form a polymatroid, so the
// greedy sweep over servers in descending weight order, retaining the flow
// already committed, is exact.
Rational max_weight_b_matching(const Instance& inst);

// True iff the maximum b-matching saturates every server to b_s.
bool has_perfect_b_matching(const Instance& inst);

}  // namespace kdm
