#pragma once

#include <string>
#include <vector>

#include "core/engine.hpp"
#include "core/instance.hpp"
#include "core/params.hpp"
#include "core/rational.hpp"

namespace kdm {

// A set of servers the construction treats identically: all currently at
// the same designated (load, degree). Sizes stay divisible by d^{kb-degree}.
struct AdversaryGroup {
    std::vector<int> servers;  // ascending ids
    int load = 0;
    int degree = 0;
};

struct AdversaryTranscript {
    Params params;                 // base parameters (b = chosen capacity for variable runs)
    int scale = 1;
    PolicyKind policy = PolicyKind::greedy;
    Instance instance;             // the emitted (k,d)-graph, arrival order fixed
    RunResult run;                 // the observed online run
    long long base_servers = 0;    // N
    long long designated_matched = 0;  // adversary bookkeeping; >= true matched
    long long designated_empty = 0;    // base-block slots empty under that bookkeeping; == F(N,0,0)
    long long empty_capacity = 0;      // total capacity - matched_count
    BigInt forced_empty;               // F(N, 0, 0), exact
    Rational c_star_min;               // c* of the base capacity (min over capacities if variable)
    bool variable = false;
    std::vector<int> capacities;       // distinct capacities (variable runs)
    long long slack = 0;               // sum of non-base capacities (variable runs)
};

// The adaptive lower-bound input played live against `policy`: N = scale * d^{kb}
// servers of capacity b, requests emitted round by round, matched servers
// split off into child groups and recursed. A policy that declines a request
// is charged as if it matched the lowest-id neighbor. Requires k >= d >= 2.
AdversaryTranscript run_adversary(const Params& p, PolicyKind policy, int scale = 1);

// Variable-capacity extension: the full construction on the capacity whose
// c* is minimal, plus one singleton server per remaining capacity, padded
// with private requests. The additive slack those servers grant the online
// algorithm is reported explicitly.
AdversaryTranscript run_adversary_variable(int k, int d, const std::vector<int>& capacities,
                                           PolicyKind policy, int scale = 1);

struct TranscriptCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct TranscriptReport {
    std::vector<TranscriptCheck> checks;
    bool ok() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

// Recomputes everything the transcript claims: emptied capacity from the
// matching, the F(N,0,0) floor, (k,d)-validity of the emitted instance,
// OPT = total capacity (max-flow), and the matched-count ceiling.
TranscriptReport verify_transcript(const AdversaryTranscript& t);

}  // namespace kdm
