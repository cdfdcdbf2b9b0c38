#include "core/instance.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "core/error.hpp"
#include "core/rng.hpp"

namespace kdm {

bool Instance::uniform_capacity() const {
    for (const auto& s : servers)
        if (s.capacity != servers.front().capacity) return false;
    return true;
}

long long Instance::total_capacity() const {
    long long total = 0;
    for (const auto& s : servers) total += s.capacity;
    return total;
}

void Instance::check_structure() const {
    if (k < 1) fail(ErrorCode::invalid_argument, "instance k must be >= 1");
    if (d < 1) fail(ErrorCode::invalid_argument, "instance d must be >= 1");
    const int n = static_cast<int>(servers.size());
    for (int i = 0; i < n; ++i) {
        if (servers[i].id != i)
            fail(ErrorCode::invalid_argument,
                 "server ids must be dense 0..n-1; position " + std::to_string(i) + " has id " +
                     std::to_string(servers[i].id));
        if (servers[i].capacity < 1)
            fail(ErrorCode::invalid_argument,
                 "server " + std::to_string(i) + " has nonpositive capacity");
        if (servers[i].weight.sign() <= 0)
            fail(ErrorCode::invalid_argument,
                 "server " + std::to_string(i) + " has nonpositive weight");
    }
    std::set<int> seen_requests;
    for (const auto& r : arrivals) {
        if (!seen_requests.insert(r.id).second)
            fail(ErrorCode::invalid_argument, "duplicate arrival id " + std::to_string(r.id));
        if (r.neighbors.empty())
            fail(ErrorCode::invalid_argument,
                 "arrival " + std::to_string(r.id) + " has no neighbors");
        std::set<int> seen;
        for (int s : r.neighbors) {
            if (s < 0 || s >= n)
                fail(ErrorCode::invalid_argument, "arrival " + std::to_string(r.id) +
                                                      " references unknown server " + std::to_string(s));
            if (!seen.insert(s).second)
                fail(ErrorCode::invalid_argument, "arrival " + std::to_string(r.id) +
                                                      " lists server " + std::to_string(s) + " twice");
        }
    }
}

ValidationReport validate_kd_graph(const Instance& inst) {
    ValidationReport report;
    const int n = static_cast<int>(inst.servers.size());
    // Structural defects are collected rather than thrown so a verifier can
    // report them alongside degree violations.
    try {
        inst.check_structure();
    } catch (const Error& e) {
        report.structural_errors.push_back(e.what());
        return report;
    }
    std::vector<long long> degree(n, 0);
    for (const auto& r : inst.arrivals) {
        for (int s : r.neighbors) ++degree[s];
        if (static_cast<int>(r.neighbors.size()) > inst.d)
            report.offending_requests.push_back(r.id);
    }
    for (int s = 0; s < n; ++s)
        if (degree[s] < static_cast<long long>(inst.k) * inst.servers[s].capacity)
            report.offending_servers.push_back(s);
    return report;
}

namespace {

Instance random_core(int k, int d, const std::vector<int>& capacities,
                     const std::vector<Rational>& weights, uint64_t seed) {
    const int n = static_cast<int>(capacities.size());
    if (d < 1) fail(ErrorCode::invalid_argument, "d must be >= 1");
    if (n < 1) fail(ErrorCode::invalid_argument, "need at least one server");
    Instance inst;
    inst.k = k;
    inst.d = d;
    inst.servers.resize(n);
    for (int i = 0; i < n; ++i) {
        inst.servers[i].id = i;
        inst.servers[i].capacity = capacities[i];
        inst.servers[i].weight = weights.empty() ? Rational(1) : weights[i];
    }

    const int arrival_degree = std::min(d, n);
    std::vector<long long> degree(n, 0);
    std::vector<long long> target(n);
    long long deficient = n;  // targets are >= 1, so every server starts short
    for (int i = 0; i < n; ++i) target[i] = static_cast<long long>(k) * capacities[i];

    SplitMix64 rng(seed);
    int next_id = 0;
    long long max_target = 0;
    for (int i = 0; i < n; ++i) max_target = std::max(max_target, target[i]);
    // Uniform draws until every server reaches its degree target. The
    // expected arrival count is O(n k b / d) with a coupon-collector tail;
    // the cap is far above any plausible draw count.
    const long long arrival_cap = 1000 + 50ll * n * max_target;
    while (deficient > 0) {
        if (static_cast<long long>(inst.arrivals.size()) > arrival_cap)
            fail(ErrorCode::internal, "instance generation exceeded the arrival cap");
        std::set<int> chosen;
        while (static_cast<int>(chosen.size()) < arrival_degree)
            chosen.insert(static_cast<int>(rng.below(n)));
        RequestArrival r;
        r.id = next_id++;
        r.neighbors.assign(chosen.begin(), chosen.end());
        for (int s : r.neighbors) {
            if (degree[s] == target[s] - 1) --deficient;
            ++degree[s];
        }
        inst.arrivals.push_back(std::move(r));
    }
    return inst;
}

}  // namespace

Instance random_instance(const Params& p, int n_servers, uint64_t seed) {
    p.validate();
    if (n_servers < p.d)
        fail(ErrorCode::invalid_argument, "need at least d servers");
    return random_core(p.k, p.d, std::vector<int>(n_servers, p.b), {}, seed);
}

Instance random_instance_variable(int k, int d, const std::vector<int>& capacities,
                                  const std::vector<Rational>& weights, uint64_t seed) {
    if (k < 1) fail(ErrorCode::invalid_argument, "k must be >= 1");
    if (!weights.empty() && weights.size() != capacities.size())
        fail(ErrorCode::invalid_argument, "weights must be empty or match capacities");
    for (int c : capacities)
        if (c < 1) fail(ErrorCode::invalid_argument, "capacities must be >= 1");
    for (const auto& w : weights)
        if (w.sign() <= 0) fail(ErrorCode::invalid_argument, "weights must be positive");
    return random_core(k, d, capacities, weights, seed);
}

namespace {

using nlohmann::ordered_json;

const ordered_json& require_field(const ordered_json& j, const char* field, const char* where) {
    auto it = j.find(field);
    if (it == j.end())
        fail(ErrorCode::parse, std::string("missing field '") + field + "' in " + where);
    return *it;
}

int require_int(const ordered_json& j, const char* field, const char* where) {
    const ordered_json& v = require_field(j, field, where);
    if (!v.is_number_integer())
        fail(ErrorCode::parse, std::string("field '") + field + "' in " + where + " must be an integer");
    return v.get<int>();
}

Rational parse_weight(const ordered_json& v, const char* where) {
    if (v.is_number_integer()) return Rational(v.get<long long>());
    if (v.is_string()) {
        try {
            return Rational::parse(v.get<std::string>());
        } catch (const Error&) {
            fail(ErrorCode::parse, std::string("malformed weight in ") + where);
        }
    }
    fail(ErrorCode::parse, std::string("weight in ") + where + " must be \"num/den\" or an integer");
}

}  // namespace

Instance parse_instance(const std::string& json_text) {
    ordered_json j;
    try {
        j = ordered_json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        fail(ErrorCode::parse, std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) fail(ErrorCode::parse, "instance must be a JSON object");

    Instance inst;
    inst.k = require_int(j, "k", "instance");
    inst.d = require_int(j, "d", "instance");

    const ordered_json& servers = require_field(j, "servers", "instance");
    if (!servers.is_array()) fail(ErrorCode::parse, "field 'servers' must be an array");
    for (const auto& js : servers) {
        ServerSpec s;
        s.id = require_int(js, "id", "server entry");
        s.capacity = require_int(js, "capacity", "server entry");
        if (js.contains("weight")) s.weight = parse_weight(js["weight"], "server entry");
        inst.servers.push_back(std::move(s));
    }

    const ordered_json& arrivals = require_field(j, "arrivals", "instance");
    if (!arrivals.is_array()) fail(ErrorCode::parse, "field 'arrivals' must be an array");
    for (const auto& jr : arrivals) {
        RequestArrival r;
        r.id = require_int(jr, "id", "arrival entry");
        const ordered_json& nb = require_field(jr, "neighbors", "arrival entry");
        if (!nb.is_array()) fail(ErrorCode::parse, "field 'neighbors' must be an array");
        for (const auto& v : nb) {
            if (!v.is_number_integer())
                fail(ErrorCode::parse, "neighbor ids must be integers");
            r.neighbors.push_back(v.get<int>());
        }
        inst.arrivals.push_back(std::move(r));
    }

    if (j.contains("metadata")) inst.metadata = j["metadata"];

    try {
        inst.check_structure();
    } catch (const Error& e) {
        fail(ErrorCode::parse, e.what());
    }
    return inst;
}

std::string instance_to_json(const Instance& inst) {
    ordered_json j;
    j["k"] = inst.k;
    j["d"] = inst.d;
    j["servers"] = ordered_json::array();
    for (const auto& s : inst.servers) {
        ordered_json js;
        js["id"] = s.id;
        js["capacity"] = s.capacity;
        js["weight"] = s.weight.str();
        j["servers"].push_back(std::move(js));
    }
    j["arrivals"] = ordered_json::array();
    for (const auto& r : inst.arrivals) {
        ordered_json jr;
        jr["id"] = r.id;
        jr["neighbors"] = r.neighbors;
        j["arrivals"].push_back(std::move(jr));
    }
    if (!inst.metadata.is_null()) j["metadata"] = inst.metadata;
    return j.dump(2) + "\n";
}

Instance read_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::io, "cannot open instance file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_instance(buf.str());
}

void write_instance(const Instance& inst, const std::string& path) {
    std::ofstream out(path);
    if (!out) fail(ErrorCode::io, "cannot open for writing: " + path);
    out << instance_to_json(inst);
    if (!out) fail(ErrorCode::io, "failed writing instance to " + path);
}

}  // namespace kdm
