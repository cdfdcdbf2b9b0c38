#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "core/params.hpp"
#include "core/rational.hpp"

namespace kdm {

struct ServerSpec {
    int id = 0;
    int capacity = 1;
    Rational weight = Rational(1);

    friend bool operator==(const ServerSpec& a, const ServerSpec& b) {
        return a.id == b.id && a.capacity == b.capacity && a.weight == b.weight;
    }
};

struct RequestArrival {
    int id = 0;
    std::vector<int> neighbors;

    friend bool operator==(const RequestArrival& a, const RequestArrival& b) = default;
};

// A bipartite instance with a fixed online arrival order. Immutable by
// convention once loaded; the arrival order *is* part of the instance.
struct Instance {
    int k = 0;
    int d = 0;
    std::vector<ServerSpec> servers;        // ids dense 0..|S|-1
    std::vector<RequestArrival> arrivals;   // online order
    nlohmann::ordered_json metadata;        // optional, preserved on round-trip

    bool uniform_capacity() const;
    long long total_capacity() const;

    // Throws on malformed structure (non-dense server ids, bad neighbor
    // references, duplicate neighbors, empty neighbor lists, nonpositive
    // capacities or weights, duplicate arrival ids).
    void check_structure() const;

    friend bool operator==(const Instance& a, const Instance& b) {
        return a.k == b.k && a.d == b.d && a.servers == b.servers && a.arrivals == b.arrivals &&
               a.metadata == b.metadata;
    }
};

struct ValidationReport {
    std::vector<std::string> structural_errors;
    std::vector<int> offending_servers;   // total degree < k * b_s
    std::vector<int> offending_requests;  // degree > d

    bool structurally_ok() const { return structural_errors.empty(); }
    bool is_kd_graph() const {
        return structurally_ok() && offending_servers.empty() && offending_requests.empty();
    }
};

// Degree accounting against the (k,d)-graph definition: every server must
// see at least k*b_s incident arrivals in total, every arrival at most d
// neighbors. Structural defects are reported separately from degree ones.
ValidationReport validate_kd_graph(const Instance& inst);

// Deterministic generator: arrivals adjacent to min(d, n_servers) distinct
// uniformly drawn servers until every server has degree >= k*b. The result
// always validates. A harness convenience with no optimality semantics.
Instance random_instance(const Params& p, int n_servers, uint64_t seed);

// Variable-capacity / vertex-weighted variant: one capacity (and optional
// weight) per server. Empty weights means all 1.
Instance random_instance_variable(int k, int d, const std::vector<int>& capacities,
                                  const std::vector<Rational>& weights, uint64_t seed);

Instance parse_instance(const std::string& json_text);
std::string instance_to_json(const Instance& inst);
Instance read_instance(const std::string& path);
void write_instance(const Instance& inst, const std::string& path);

}  // namespace kdm
