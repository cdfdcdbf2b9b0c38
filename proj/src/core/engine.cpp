#include "core/engine.hpp"

#include <algorithm>
#include <set>

#include "core/error.hpp"
#include "core/ratio.hpp"

namespace kdm {

PolicyKind parse_policy(const std::string& name) {
    if (name == "greedy") return PolicyKind::greedy;
    if (name == "balance") return PolicyKind::balance;
    if (name == "highdegree") return PolicyKind::highdegree;
    if (name == "wa") return PolicyKind::wa;
    if (name == "wa-vc") return PolicyKind::wa_vc;
    if (name == "wa-vw") return PolicyKind::wa_vw;
    fail(ErrorCode::unknown_policy,
         "unknown policy '" + name + "' (expected greedy, balance, highdegree, wa, wa-vc, wa-vw)");
}

std::string policy_name(PolicyKind kind) {
    switch (kind) {
        case PolicyKind::greedy: return "greedy";
        case PolicyKind::balance: return "balance";
        case PolicyKind::highdegree: return "highdegree";
        case PolicyKind::wa: return "wa";
        case PolicyKind::wa_vc: return "wa-vc";
        case PolicyKind::wa_vw: return "wa-vw";
    }
    return "?";
}

bool is_wa_family(PolicyKind kind) {
    return kind == PolicyKind::wa || kind == PolicyKind::wa_vc || kind == PolicyKind::wa_vw;
}

Matcher::Matcher(int k, int d, const std::vector<ServerSpec>& servers, PolicyKind kind)
    : k_(k), d_(d), kind_(kind) {
    if (k < 1) fail(ErrorCode::invalid_argument, "k must be >= 1");
    if (d < 1) fail(ErrorCode::invalid_argument, "d must be >= 1");
    servers_.resize(servers.size());
    for (size_t i = 0; i < servers.size(); ++i) {
        if (servers[i].id != static_cast<int>(i))
            fail(ErrorCode::invalid_argument, "server ids must be dense");
        servers_[i].capacity = servers[i].capacity;
        servers_[i].weight = servers[i].weight;
    }

    // With d = 1 any greedy strategy is optimal and the value-table
    // machinery is undefined, so the WA variants degrade to greedy.
    audited_ = is_wa_family(kind) && d_ >= 2;
    if (!audited_) {
        guarantee_ = Rational(0);
        if (is_wa_family(kind)) guarantee_ = Rational(1);
        return;
    }

    if (kind == PolicyKind::wa) {
        for (const auto& s : servers)
            if (s.capacity != servers.front().capacity)
                fail(ErrorCode::invalid_argument,
                     "policy 'wa' requires uniform capacities; use 'wa-vc'");
    }

    tables_.resize(servers.size());
    std::set<int> caps;
    for (size_t i = 0; i < servers.size(); ++i) {
        tables_[i] = table_for(Params{k_, d_, servers[i].capacity});
        caps.insert(servers[i].capacity);
    }
    if (!servers.empty()) {
        std::vector<int> cap_list(caps.begin(), caps.end());
        guarantee_ = min_competitive_ratio(k_, d_, cap_list);
    }
}

// Matching criterion: q(l,delta) for wa, scaled by b_s for wa-vc and by
// w_s b_s for wa-vw. Larger is better; exact comparison, ties to the
// lowest server id.
Rational Matcher::selection_score(int sid) const {
    const ServerState& s = servers_[sid];
    Rational q = tables_[sid]->q_gain(s.load, s.degree);
    if (kind_ == PolicyKind::wa) return q;
    q *= Rational(s.capacity);
    if (kind_ == PolicyKind::wa_vw) q *= s.weight;
    return q;
}

std::optional<int> Matcher::choose(const std::vector<int>& eligible) const {
    if (eligible.empty()) return std::nullopt;
    switch (kind_) {
        case PolicyKind::greedy:
            return *std::min_element(eligible.begin(), eligible.end());
        case PolicyKind::balance: {
            int best = eligible.front();
            for (int sid : eligible)
                if (servers_[sid].load < servers_[best].load ||
                    (servers_[sid].load == servers_[best].load && sid < best))
                    best = sid;
            return best;
        }
        case PolicyKind::highdegree: {
            int best = eligible.front();
            for (int sid : eligible)
                if (servers_[sid].degree > servers_[best].degree ||
                    (servers_[sid].degree == servers_[best].degree && sid < best))
                    best = sid;
            return best;
        }
        default: {
            if (!audited_)  // d = 1 degradation
                return *std::min_element(eligible.begin(), eligible.end());
            int best = -1;
            Rational best_score;
            for (int sid : eligible) {
                Rational score = selection_score(sid);
                if (best < 0 || score > best_score || (score == best_score && sid < best)) {
                    best = sid;
                    best_score = std::move(score);
                }
            }
            return best;
        }
    }
}

StepAudit Matcher::feed(const RequestArrival& arrival) {
    std::vector<int> eligible;
    eligible.reserve(arrival.neighbors.size());
    for (int sid : arrival.neighbors) {
        if (sid < 0 || sid >= static_cast<int>(servers_.size()))
            fail(ErrorCode::invalid_argument,
                 "arrival " + std::to_string(arrival.id) + " references unknown server");
        if (servers_[sid].load < servers_[sid].capacity) eligible.push_back(sid);
    }

    std::optional<int> pick = choose(eligible);

    StepAudit audit;
    audit.request_id = arrival.id;
    audit.server = pick;
    audit.audited = audited_;

    if (pick) {
        ServerState& s = servers_[*pick];
        audit.delta_primal = kind_ == PolicyKind::wa_vw ? s.weight : Rational(1);
        primal_ += audit.delta_primal;
        ++matched_count_cache_;
    }

    if (audited_) {
        // Dual raises: the matched server moves to V(l+1, delta+1), every
        // other eligible neighbor to V(l, delta+1). Full neighbors keep
        // x = 1; the lookup clamps past kb.
        Rational delta_dual(0);
        for (int sid : eligible) {
            ServerState& s = servers_[sid];
            int new_load = (pick && *pick == sid) ? s.load + 1 : s.load;
            Rational x_new = tables_[sid]->value(new_load, s.degree + 1);
            Rational factor(s.capacity);
            if (kind_ == PolicyKind::wa_vw) factor *= s.weight;
            delta_dual += factor * (x_new - s.dual);
            s.dual = std::move(x_new);
        }
        dual_ += delta_dual;
        audit.delta_dual = std::move(delta_dual);
        if (pick) {
            audit.bound = audit.delta_primal / tables_[*pick]->c_star();
            audit.pass = audit.delta_dual <= audit.bound;
        } else {
            audit.pass = audit.delta_dual.is_zero();
        }
    }

    for (int sid : arrival.neighbors) ++servers_[sid].degree;
    if (pick) ++servers_[*pick].load;

    matched_.push_back(pick);
    audits_.push_back(audit);
    request_duals_.emplace_back(0);
    return audit;
}

RunResult Matcher::result() const {
    RunResult r;
    r.policy = kind_;
    r.audited = audited_;
    r.primal = primal_;
    r.dual = dual_;
    r.guarantee = guarantee_;
    r.matched = matched_;
    r.matched_count = matched_count_cache_;
    r.audits = audits_;
    r.audits_all_pass = true;
    for (const auto& a : audits_)
        if (!a.pass) r.audits_all_pass = false;
    r.end_dual_one = audited_;
    if (audited_) {
        for (const auto& s : servers_)
            if (s.dual != Rational(1)) r.end_dual_one = false;
        r.ratio_vs_dual_ok = primal_ >= guarantee_ * dual_;
    }
    return r;
}

void finalize_run_checks(RunResult& result, const Instance& inst, const Matcher& matcher) {
    result.kd_valid = validate_kd_graph(inst).is_kd_graph();
    if (!result.audited) return;
    // End-state feasibility of the constructed dual, from the stored
    // values: w_s x(s) + y(r) >= w_s on every edge.
    for (size_t i = 0; i < inst.arrivals.size() && result.dual_feasible; ++i) {
        const Rational& y = matcher.request_dual(i);
        for (int sid : inst.arrivals[i].neighbors) {
            const ServerState& s = matcher.server(sid);
            if (s.weight * s.dual + y < s.weight) {
                result.dual_feasible = false;
                break;
            }
        }
    }
}

RunResult run_stream(const Instance& inst, PolicyKind kind) {
    inst.check_structure();
    Matcher matcher(inst.k, inst.d, inst.servers, kind);
    for (const auto& arrival : inst.arrivals) matcher.feed(arrival);
    RunResult r = matcher.result();
    finalize_run_checks(r, inst, matcher);
    return r;
}

nlohmann::ordered_json run_result_to_json(const RunResult& r, bool include_audits) {
    nlohmann::ordered_json j;
    j["policy"] = policy_name(r.policy);
    j["P"] = r.primal.str();
    j["D"] = r.dual.str();
    j["matched_count"] = r.matched_count;
    j["audited"] = r.audited;
    j["guarantee"] = r.guarantee.str();
    j["audits_all_pass"] = r.audits_all_pass;
    j["end_dual_one"] = r.end_dual_one;
    j["dual_feasible"] = r.dual_feasible;
    j["kd_valid"] = r.kd_valid;
    j["checks_ok"] = r.checks_ok();
    j["matched"] = nlohmann::ordered_json::array();
    for (size_t i = 0; i < r.matched.size(); ++i) {
        if (!r.matched[i]) continue;
        nlohmann::ordered_json e;
        e["request"] = r.audits[i].request_id;
        e["server"] = *r.matched[i];
        j["matched"].push_back(std::move(e));
    }
    if (include_audits) {
        j["audits"] = nlohmann::ordered_json::array();
        for (const auto& a : r.audits) {
            nlohmann::ordered_json e;
            e["request"] = a.request_id;
            if (a.server) e["server"] = *a.server;
            e["dP"] = a.delta_primal.str();
            e["dD"] = a.delta_dual.str();
            e["bound"] = a.bound.str();
            e["pass"] = a.pass;
            j["audits"].push_back(std::move(e));
        }
    }
    return j;
}

}  // namespace kdm
