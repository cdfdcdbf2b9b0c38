#include "core/adversary.hpp"

#include <deque>
#include <set>

#include "core/error.hpp"
#include "core/offline_opt.hpp"
#include "core/ratio.hpp"

namespace kdm {

namespace {

constexpr long long kMaxServers = 2'000'000;
constexpr long long kMaxArrivals = 20'000'000;

long long pow_ll(long long base, int exp, long long limit) {
    long long r = 1;
    for (int i = 0; i < exp; ++i) {
        r *= base;
        if (r > limit) fail(ErrorCode::invalid_argument, "adversary instance too large");
    }
    return r;
}

struct Builder {
    Params p;
    PolicyKind policy;
    Matcher* matcher = nullptr;
    std::vector<RequestArrival>* arrivals = nullptr;
    std::vector<long long>* designated_load = nullptr;
    int next_request = 0;

    std::optional<int> emit(std::vector<int> neighbors) {
        RequestArrival r;
        r.id = next_request++;
        r.neighbors = std::move(neighbors);
        if (arrivals->size() >= static_cast<size_t>(kMaxArrivals))
            fail(ErrorCode::invalid_argument, "adversary instance too large");
        StepAudit audit = matcher->feed(r);
        arrivals->push_back(std::move(r));
        return audit.server;
    }

    // One request per block of d survivors; the matched (or charged)
    // server leaves the survivor pool for the round's child group.
    void process(AdversaryGroup group) {
        const int kb = p.k * p.b;
        std::deque<AdversaryGroup> queue;
        queue.push_back(std::move(group));
        while (!queue.empty()) {
            AdversaryGroup g = std::move(queue.front());
            queue.pop_front();

            if (g.load == p.b) {
                // Full servers only need their degree topped up to kb.
                for (int sid : g.servers)
                    for (int i = g.degree; i < kb; ++i) emit({sid});
                continue;
            }
            if (g.degree == kb) continue;  // survivors; (b - load) slots stay empty

            std::vector<int> survivors = std::move(g.servers);
            const int rounds = kb - g.degree;
            for (int j = 0; j < rounds; ++j) {
                if (survivors.size() % p.d != 0)
                    fail(ErrorCode::internal, "group size lost divisibility by d");
                std::vector<int> next_survivors;
                AdversaryGroup child;
                child.load = g.load + 1;
                child.degree = g.degree + j + 1;
                next_survivors.reserve(survivors.size() - survivors.size() / p.d);
                child.servers.reserve(survivors.size() / p.d);
                for (size_t off = 0; off < survivors.size(); off += p.d) {
                    std::vector<int> block(survivors.begin() + off, survivors.begin() + off + p.d);
                    std::optional<int> picked = emit(block);
                    int charged = picked ? *picked : block.front();
                    ++(*designated_load)[charged];
                    for (int sid : block) {
                        if (sid == charged)
                            child.servers.push_back(sid);
                        else
                            next_survivors.push_back(sid);
                    }
                }
                survivors = std::move(next_survivors);
                queue.push_back(std::move(child));
            }
        }
    }
};

AdversaryTranscript finish(Builder& builder, Matcher& matcher, Instance inst,
                           AdversaryTranscript t) {
    t.run = matcher.result();
    finalize_run_checks(t.run, inst, matcher);
    t.instance = std::move(inst);
    t.designated_matched = 0;
    for (long long l : *builder.designated_load) t.designated_matched += l;
    t.designated_empty = static_cast<long long>(t.base_servers) * t.params.b;
    for (long long i = 0; i < t.base_servers; ++i)
        t.designated_empty -= (*builder.designated_load)[i];
    t.empty_capacity = t.instance.total_capacity() - t.run.matched_count;

    Rational f = deficiency_closed(Rational(t.base_servers), 0, 0, t.params);
    if (!f.is_integer()) fail(ErrorCode::internal, "F(N,0,0) is not integral");
    t.forced_empty = f.num();
    return t;
}

}  // namespace

AdversaryTranscript run_adversary(const Params& p, PolicyKind policy, int scale) {
    p.validate();
    if (p.k < p.d)
        fail(ErrorCode::invalid_argument,
             "adversary construction requires k >= d (the bound is only proven there)");
    if (scale < 1) fail(ErrorCode::invalid_argument, "scale must be >= 1");

    const int kb = p.k * p.b;
    const long long n = scale * pow_ll(p.d, kb, kMaxServers);
    if (n > kMaxServers) fail(ErrorCode::invalid_argument, "adversary instance too large");

    Instance inst;
    inst.k = p.k;
    inst.d = p.d;
    inst.servers.resize(n);
    for (long long i = 0; i < n; ++i) inst.servers[i] = {static_cast<int>(i), p.b, Rational(1)};
    inst.metadata["generator"] = "adversary";
    inst.metadata["adaptive_against"] = policy_name(policy);
    inst.metadata["scale"] = scale;

    Matcher matcher(p.k, p.d, inst.servers, policy);
    std::vector<long long> designated(n, 0);

    Builder builder{p, policy, &matcher, &inst.arrivals, &designated};
    AdversaryGroup root;
    root.servers.resize(n);
    for (long long i = 0; i < n; ++i) root.servers[i] = static_cast<int>(i);
    builder.process(std::move(root));

    AdversaryTranscript t;
    t.params = p;
    t.scale = scale;
    t.policy = policy;
    t.base_servers = n;
    t.c_star_min = competitive_ratio(p);
    return finish(builder, matcher, std::move(inst), std::move(t));
}

AdversaryTranscript run_adversary_variable(int k, int d, const std::vector<int>& capacities,
                                           PolicyKind policy, int scale) {
    if (capacities.empty()) fail(ErrorCode::invalid_argument, "capacity set must be nonempty");
    std::set<int> distinct(capacities.begin(), capacities.end());

    int base_cap = 0;
    Rational best;
    for (int b : distinct) {
        Rational c = competitive_ratio(Params{k, d, b});
        if (base_cap == 0 || c < best) {
            base_cap = b;
            best = std::move(c);
        }
    }
    Params p{k, d, base_cap};
    p.validate();
    if (k < d)
        fail(ErrorCode::invalid_argument,
             "adversary construction requires k >= d (the bound is only proven there)");
    if (scale < 1) fail(ErrorCode::invalid_argument, "scale must be >= 1");

    const int kb = k * base_cap;
    const long long n = scale * pow_ll(d, kb, kMaxServers);
    if (n + static_cast<long long>(distinct.size()) > kMaxServers)
        fail(ErrorCode::invalid_argument, "adversary instance too large");

    Instance inst;
    inst.k = k;
    inst.d = d;
    inst.servers.resize(n);
    for (long long i = 0; i < n; ++i) inst.servers[i] = {static_cast<int>(i), base_cap, Rational(1)};
    long long slack = 0;
    std::vector<int> extras;
    for (int b : distinct) {
        if (b == base_cap) continue;
        int id = static_cast<int>(inst.servers.size());
        inst.servers.push_back({id, b, Rational(1)});
        extras.push_back(id);
        slack += b;
    }
    inst.metadata["generator"] = "adversary-variable";
    inst.metadata["adaptive_against"] = policy_name(policy);
    inst.metadata["scale"] = scale;

    Matcher matcher(k, d, inst.servers, policy);
    std::vector<long long> designated(inst.servers.size(), 0);

    Builder builder{p, policy, &matcher, &inst.arrivals, &designated};
    AdversaryGroup root;
    root.servers.resize(n);
    for (long long i = 0; i < n; ++i) root.servers[i] = static_cast<int>(i);
    builder.process(std::move(root));

    // One private bundle of degree-1 requests per extra capacity; they make
    // the graph (k,d)-valid and hand the algorithm at most `slack` matches.
    for (int id : extras)
        for (int i = 0; i < k * inst.servers[id].capacity; ++i) builder.emit({id});

    AdversaryTranscript t;
    t.params = p;
    t.scale = scale;
    t.policy = policy;
    t.base_servers = n;
    t.variable = true;
    t.capacities.assign(distinct.begin(), distinct.end());
    t.slack = slack;
    t.c_star_min = best;
    return finish(builder, matcher, std::move(inst), std::move(t));
}

TranscriptReport verify_transcript(const AdversaryTranscript& t) {
    TranscriptReport report;
    auto check = [&](const std::string& name, bool pass, const std::string& detail) {
        report.checks.push_back({name, pass, detail});
    };

    // Empty capacity recomputed from the emitted matching.
    long long matched = 0;
    std::vector<long long> load(t.instance.servers.size(), 0);
    bool matching_valid = true;
    for (size_t i = 0; i < t.run.matched.size(); ++i) {
        if (!t.run.matched[i]) continue;
        int sid = *t.run.matched[i];
        bool neighbor = false;
        for (int nb : t.instance.arrivals[i].neighbors) neighbor |= nb == sid;
        if (!neighbor || ++load[sid] > t.instance.servers[sid].capacity) matching_valid = false;
        ++matched;
    }
    check("matching_feasible", matching_valid, "every match to a neighbor, capacities respected");

    long long empty = t.instance.total_capacity() - matched;
    check("empty_capacity_recomputed", empty == t.empty_capacity,
          "recomputed " + std::to_string(empty) + ", recorded " + std::to_string(t.empty_capacity));

    BigInt floor = t.forced_empty;
    check("empty_capacity_floor", BigInt(empty) >= floor,
          "empty " + std::to_string(empty) + " >= F(N,0,0) = " + floor.str());

    long long ceiling_base = t.instance.total_capacity() - t.slack;
    BigInt matched_ceiling = BigInt(ceiling_base) - floor + BigInt(t.slack);
    check("matched_ceiling", BigInt(matched) <= matched_ceiling,
          "matched " + std::to_string(matched) + " <= bN - F + slack = " + matched_ceiling.str());

    ValidationReport validity = validate_kd_graph(t.instance);
    check("kd_valid", validity.is_kd_graph(), "emitted instance is a (k,d)-graph");

    long long opt = max_b_matching(t.instance);
    check("opt_is_total_capacity", opt == t.instance.total_capacity(),
          "OPT = " + std::to_string(opt) + ", total capacity = " +
              std::to_string(t.instance.total_capacity()));
    return report;
}

}  // namespace kdm
