#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "core/instance.hpp"
#include "core/rational.hpp"
#include "core/value_table.hpp"

namespace kdm {

enum class PolicyKind { greedy, balance, highdegree, wa, wa_vc, wa_vw };

PolicyKind parse_policy(const std::string& name);
std::string policy_name(PolicyKind kind);
bool is_wa_family(PolicyKind kind);

struct StepAudit {
    int request_id = 0;
    std::optional<int> server;  // matched server, if any
    Rational delta_primal;
    Rational delta_dual;
    Rational bound;   // delta_primal / c*_s of the chosen server; 0 when unmatched
    bool audited = false;
    bool pass = true;
};

struct ServerState {
    int capacity = 1;
    Rational weight = Rational(1);
    int load = 0;
    int degree = 0;  // counts every incident arrival, matched or not
    Rational dual;   // x(s); tracked only for the WeightedAssignment family
};

struct RunResult {
    PolicyKind policy = PolicyKind::greedy;
    bool audited = false;           // duals maintained (WA family with d >= 2)
    Rational primal;                // matched count, or matched weight for wa-vw
    Rational dual;                  // dual objective; 0 for baselines
    Rational guarantee;             // c* (wa) or min_s c*_s (vc/vw); 0 for baselines
    long long matched_count = 0;
    std::vector<std::optional<int>> matched;  // per arrival, in order
    std::vector<StepAudit> audits;
    bool audits_all_pass = true;
    bool kd_valid = false;          // validate_kd_graph verdict for the replayed instance
    bool end_dual_one = false;      // x(s) == 1 for every server at the end
    bool dual_feasible = true;      // w_s x(s) + y(r) >= w_s on every edge at the end
    bool ratio_vs_dual_ok = true;   // primal >= guarantee * dual

    // Everything the per-step and end-state analysis demands, where it
    // applies. Baselines pass vacuously.
    bool checks_ok() const {
        if (!audited) return true;
        return audits_all_pass && ratio_vs_dual_ok && (!kd_valid || (end_dual_one && dual_feasible));
    }
};

nlohmann::ordered_json run_result_to_json(const RunResult& r, bool include_audits);

// Sequential online matcher: feed arrivals one at a time, in order. The
// adversary drives this incrementally; run_stream replays a whole instance.
class Matcher {
  public:
    Matcher(int k, int d, const std::vector<ServerSpec>& servers, PolicyKind kind);

    StepAudit feed(const RequestArrival& arrival);

    const ServerState& server(int id) const { return servers_.at(id); }
    size_t server_count() const { return servers_.size(); }
    // y(r) for the i-th arrival fed so far. Algorithm never raises these;
    // they exist so the feasibility check works from stored values.
    const Rational& request_dual(size_t arrival_index) const {
        return request_duals_.at(arrival_index);
    }
    const Rational& primal() const { return primal_; }
    const Rational& dual() const { return dual_; }
    PolicyKind kind() const { return kind_; }
    const Rational& guarantee() const { return guarantee_; }
    bool audited() const { return audited_; }

    // Snapshot of everything accumulated so far (kd_valid left false; the
    // caller owns that verdict).
    RunResult result() const;

  private:
    int k_;
    int d_;
    PolicyKind kind_;
    bool audited_ = false;
    std::vector<ServerState> servers_;
    std::vector<std::shared_ptr<const ValueTable>> tables_;  // per server; WA family
    Rational primal_;
    Rational dual_;
    Rational guarantee_;
    long long matched_count_cache_ = 0;
    std::vector<StepAudit> audits_;
    std::vector<std::optional<int>> matched_;
    std::vector<Rational> request_duals_;  // y(r), never raised

    std::optional<int> choose(const std::vector<int>& eligible) const;
    Rational selection_score(int sid) const;
};

RunResult run_stream(const Instance& inst, PolicyKind kind);

// Fills the verdicts that need the instance: (k,d)-validity and end-state
// dual feasibility over all edges. The matcher must have replayed exactly
// inst.arrivals.
void finalize_run_checks(RunResult& result, const Instance& inst, const Matcher& matcher);

}  // namespace kdm
