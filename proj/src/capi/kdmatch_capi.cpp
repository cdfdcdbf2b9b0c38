#include "kdmatch/kdmatch.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include <json.hpp>

#include "core/adversary.hpp"
#include "core/engine.hpp"
#include "core/error.hpp"
#include "core/instance.hpp"
#include "core/offline_opt.hpp"
#include "core/ratio.hpp"
#include "core/value_table.hpp"

using nlohmann::ordered_json;

struct kdm_table {
    kdm::ValueTable table;
};

struct kdm_instance {
    kdm::Instance instance;
};

struct kdm_run {
    kdm::RunResult run;
};

struct kdm_transcript {
    kdm::AdversaryTranscript transcript;
};

namespace {

thread_local std::string g_last_error = "no error";

kdm_status record(kdm_status status, const std::string& message) {
    g_last_error = message;
    return status;
}

kdm_status map_error(const kdm::Error& e) {
    switch (e.code()) {
        case kdm::ErrorCode::invalid_argument: return record(KDM_ERR_INVALID_ARGUMENT, e.what());
        case kdm::ErrorCode::parse: return record(KDM_ERR_PARSE, e.what());
        case kdm::ErrorCode::io: return record(KDM_ERR_IO, e.what());
        case kdm::ErrorCode::unknown_policy: return record(KDM_ERR_UNKNOWN_POLICY, e.what());
        case kdm::ErrorCode::pole: return record(KDM_ERR_POLE, e.what());
        case kdm::ErrorCode::check_failed: return record(KDM_ERR_CHECK_FAILED, e.what());
        case kdm::ErrorCode::internal: return record(KDM_ERR_INTERNAL, e.what());
    }
    return record(KDM_ERR_INTERNAL, e.what());
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

// Wraps a callable; converts exceptions into status codes.
template <typename Fn>
kdm_status guarded(Fn&& fn) {
    try {
        fn();
        return KDM_OK;
    } catch (const kdm::Error& e) {
        return map_error(e);
    } catch (const std::exception& e) {
        return record(KDM_ERR_INTERNAL, e.what());
    }
}

kdm_status require(const void* p, const char* name) {
    if (p) return KDM_OK;
    return record(KDM_ERR_NULL_ARGUMENT, std::string(name) + " must not be NULL");
}

ordered_json validation_to_json(const kdm::ValidationReport& report) {
    ordered_json j;
    j["is_kd_graph"] = report.is_kd_graph();
    j["structural_errors"] = report.structural_errors;
    j["offending_servers"] = report.offending_servers;
    j["offending_requests"] = report.offending_requests;
    return j;
}

}  // namespace

extern "C" {

const char* kdm_version(void) { return "1.0.0"; }

const char* kdm_last_error(void) { return g_last_error.c_str(); }

void kdm_string_free(char* s) { std::free(s); }

kdm_status kdm_competitive_ratio(int k, int d, int b, char** out) {
    if (kdm_status s = require(out, "out")) return s;
    return guarded([&] { *out = dup_string(kdm::competitive_ratio({k, d, b}).str()); });
}

kdm_status kdm_min_competitive_ratio(int k, int d, const int* capacities, size_t count,
                                     char** out) {
    if (kdm_status s = require(out, "out")) return s;
    if (kdm_status s = require(capacities, "capacities")) return s;
    return guarded([&] {
        std::vector<int> caps(capacities, capacities + count);
        *out = dup_string(kdm::min_competitive_ratio(k, d, caps).str());
    });
}

kdm_status kdm_deficiency(const char* x, int load, int degree, int k, int d, int b,
                          int use_recurrence, char** out) {
    if (kdm_status s = require(out, "out")) return s;
    if (kdm_status s = require(x, "x")) return s;
    return guarded([&] {
        kdm::Rational xr = kdm::Rational::parse(x);
        kdm::Rational f = use_recurrence ? kdm::deficiency_recursive(xr, load, degree, {k, d, b})
                                         : kdm::deficiency_closed(xr, load, degree, {k, d, b});
        *out = dup_string(f.str());
    });
}

kdm_status kdm_gauss_2f1_poly(int m, const char* gamma, const char* z, char** out) {
    if (kdm_status s = require(out, "out")) return s;
    if (kdm_status s = require(gamma, "gamma")) return s;
    if (kdm_status s = require(z, "z")) return s;
    return guarded([&] {
        *out = dup_string(
            kdm::gauss_2f1_poly(m, kdm::Rational::parse(gamma), kdm::Rational::parse(z)).str());
    });
}

kdm_status kdm_monotonicity_scan(int k, int d, int b_max, char** out_json) {
    if (kdm_status s = require(out_json, "out_json")) return s;
    return guarded([&] {
        kdm::MonotonicityScan scan = kdm::monotonicity_scan(k, d, b_max);
        ordered_json j;
        j["values"] = ordered_json::array();
        for (const auto& [b, c] : scan.values) {
            ordered_json e;
            e["b"] = b;
            e["c_star"] = c.str();
            j["values"].push_back(std::move(e));
        }
        j["strictly_increasing"] = scan.strictly_increasing;
        *out_json = dup_string(j.dump());
    });
}

kdm_status kdm_convergence_gap(int k, int d, int b, char** out_gap, char** out_bound) {
    if (kdm_status s = require(out_gap, "out_gap")) return s;
    if (kdm_status s = require(out_bound, "out_bound")) return s;
    return guarded([&] {
        kdm::ConvergenceGap gap = kdm::convergence_gap({k, d, b});
        *out_gap = dup_string(gap.gap.str());
        *out_bound = dup_string(gap.bound.str());
    });
}

kdm_status kdm_rational_decimal(const char* rational, int digits, char** out) {
    if (kdm_status s = require(out, "out")) return s;
    if (kdm_status s = require(rational, "rational")) return s;
    return guarded([&] { *out = dup_string(kdm::Rational::parse(rational).decimal(digits)); });
}

kdm_status kdm_rational_div(const char* a, const char* b, char** out) {
    if (kdm_status s = require(out, "out")) return s;
    if (kdm_status s = require(a, "a")) return s;
    if (kdm_status s = require(b, "b")) return s;
    return guarded(
        [&] { *out = dup_string((kdm::Rational::parse(a) / kdm::Rational::parse(b)).str()); });
}

kdm_status kdm_rational_cmp(const char* a, const char* b, int* out) {
    if (kdm_status s = require(out, "out")) return s;
    if (kdm_status s = require(a, "a")) return s;
    if (kdm_status s = require(b, "b")) return s;
    return guarded([&] {
        int c = kdm::Rational::parse(a).compare(kdm::Rational::parse(b));
        *out = c < 0 ? -1 : (c > 0 ? 1 : 0);
    });
}

kdm_status kdm_table_build(int k, int d, int b, kdm_table** out) {
    if (kdm_status s = require(out, "out")) return s;
    return guarded([&] { *out = new kdm_table{kdm::ValueTable::build({k, d, b})}; });
}

kdm_status kdm_table_build_recursive(int k, int d, int b, kdm_table** out) {
    if (kdm_status s = require(out, "out")) return s;
    return guarded([&] { *out = new kdm_table{kdm::ValueTable::build_recursive({k, d, b})}; });
}

void kdm_table_free(kdm_table* t) { delete t; }

kdm_status kdm_table_c_star(const kdm_table* t, char** out) {
    if (kdm_status s = require(t, "table")) return s;
    if (kdm_status s = require(out, "out")) return s;
    return guarded([&] { *out = dup_string(t->table.c_star().str()); });
}

kdm_status kdm_table_value(const kdm_table* t, int load, int degree, char** out) {
    if (kdm_status s = require(t, "table")) return s;
    if (kdm_status s = require(out, "out")) return s;
    return guarded([&] { *out = dup_string(t->table.value(load, degree).str()); });
}

kdm_status kdm_table_gains(const kdm_table* t, int load, int degree, char** out_p,
                           char** out_q) {
    if (kdm_status s = require(t, "table")) return s;
    return guarded([&] {
        if (out_p) *out_p = dup_string(t->table.p_gain(load, degree).str());
        if (out_q) *out_q = dup_string(t->table.q_gain(load, degree).str());
    });
}

kdm_status kdm_table_csv(const kdm_table* t, char** out) {
    if (kdm_status s = require(t, "table")) return s;
    if (kdm_status s = require(out, "out")) return s;
    return guarded([&] { *out = dup_string(t->table.csv()); });
}

kdm_status kdm_table_validate(const kdm_table* t, char** out_json) {
    if (kdm_status s = require(t, "table")) return s;
    if (kdm_status s = require(out_json, "out_json")) return s;
    return guarded([&] {
        kdm::TableValidationReport report = t->table.validate();
        ordered_json j;
        j["ok"] = report.ok();
        j["violations"] = ordered_json::array();
        for (const auto& v : report.violations) {
            ordered_json e;
            e["kind"] = v.kind;
            e["l"] = v.l;
            e["delta"] = v.delta;
            e["detail"] = v.detail;
            j["violations"].push_back(std::move(e));
        }
        j["mismatched_cells"] = ordered_json::array();
        for (const auto& [l, delta] : report.mismatched_cells)
            j["mismatched_cells"].push_back(ordered_json::array({l, delta}));
        *out_json = dup_string(j.dump());
    });
}

kdm_status kdm_instance_read(const char* path, kdm_instance** out) {
    if (kdm_status s = require(out, "out")) return s;
    if (kdm_status s = require(path, "path")) return s;
    return guarded([&] { *out = new kdm_instance{kdm::read_instance(path)}; });
}

kdm_status kdm_instance_parse(const char* json_text, kdm_instance** out) {
    if (kdm_status s = require(out, "out")) return s;
    if (kdm_status s = require(json_text, "json_text")) return s;
    return guarded([&] { *out = new kdm_instance{kdm::parse_instance(json_text)}; });
}

kdm_status kdm_instance_write(const kdm_instance* inst, const char* path) {
    if (kdm_status s = require(inst, "instance")) return s;
    if (kdm_status s = require(path, "path")) return s;
    return guarded([&] { kdm::write_instance(inst->instance, path); });
}

kdm_status kdm_instance_to_json(const kdm_instance* inst, char** out) {
    if (kdm_status s = require(inst, "instance")) return s;
    if (kdm_status s = require(out, "out")) return s;
    return guarded([&] { *out = dup_string(kdm::instance_to_json(inst->instance)); });
}

kdm_status kdm_instance_random(int k, int d, int b, int n_servers, unsigned long long seed,
                               kdm_instance** out) {
    if (kdm_status s = require(out, "out")) return s;
    return guarded([&] { *out = new kdm_instance{kdm::random_instance({k, d, b}, n_servers, seed)}; });
}

kdm_status kdm_instance_validate(const kdm_instance* inst, char** out_json) {
    if (kdm_status s = require(inst, "instance")) return s;
    if (kdm_status s = require(out_json, "out_json")) return s;
    return guarded([&] {
        *out_json = dup_string(validation_to_json(kdm::validate_kd_graph(inst->instance)).dump());
    });
}

kdm_status kdm_instance_total_capacity(const kdm_instance* inst, long long* out) {
    if (kdm_status s = require(inst, "instance")) return s;
    if (kdm_status s = require(out, "out")) return s;
    return guarded([&] { *out = inst->instance.total_capacity(); });
}

void kdm_instance_free(kdm_instance* inst) { delete inst; }

kdm_status kdm_max_b_matching(const kdm_instance* inst, long long* out) {
    if (kdm_status s = require(inst, "instance")) return s;
    if (kdm_status s = require(out, "out")) return s;
    return guarded([&] { *out = kdm::max_b_matching(inst->instance); });
}

kdm_status kdm_max_weight_b_matching(const kdm_instance* inst, char** out) {
    if (kdm_status s = require(inst, "instance")) return s;
    if (kdm_status s = require(out, "out")) return s;
    return guarded([&] { *out = dup_string(kdm::max_weight_b_matching(inst->instance).str()); });
}

kdm_status kdm_has_perfect_b_matching(const kdm_instance* inst, int* out) {
    if (kdm_status s = require(inst, "instance")) return s;
    if (kdm_status s = require(out, "out")) return s;
    return guarded([&] { *out = kdm::has_perfect_b_matching(inst->instance) ? 1 : 0; });
}

kdm_status kdm_run_stream(const kdm_instance* inst, const char* policy, kdm_run** out) {
    if (kdm_status s = require(inst, "instance")) return s;
    if (kdm_status s = require(policy, "policy")) return s;
    if (kdm_status s = require(out, "out")) return s;
    return guarded(
        [&] { *out = new kdm_run{kdm::run_stream(inst->instance, kdm::parse_policy(policy))}; });
}

void kdm_run_free(kdm_run* r) { delete r; }

kdm_status kdm_run_primal(const kdm_run* r, char** out) {
    if (kdm_status s = require(r, "run")) return s;
    if (kdm_status s = require(out, "out")) return s;
    return guarded([&] { *out = dup_string(r->run.primal.str()); });
}

kdm_status kdm_run_dual(const kdm_run* r, char** out) {
    if (kdm_status s = require(r, "run")) return s;
    if (kdm_status s = require(out, "out")) return s;
    return guarded([&] { *out = dup_string(r->run.dual.str()); });
}

kdm_status kdm_run_guarantee(const kdm_run* r, char** out) {
    if (kdm_status s = require(r, "run")) return s;
    if (kdm_status s = require(out, "out")) return s;
    return guarded([&] { *out = dup_string(r->run.guarantee.str()); });
}

kdm_status kdm_run_matched_count(const kdm_run* r, long long* out) {
    if (kdm_status s = require(r, "run")) return s;
    if (kdm_status s = require(out, "out")) return s;
    return guarded([&] { *out = r->run.matched_count; });
}

kdm_status kdm_run_audit_counts(const kdm_run* r, long long* passed, long long* total) {
    if (kdm_status s = require(r, "run")) return s;
    return guarded([&] {
        long long pass = 0, all = 0;
        for (const auto& a : r->run.audits) {
            if (!a.audited) continue;
            ++all;
            if (a.pass) ++pass;
        }
        if (passed) *passed = pass;
        if (total) *total = all;
    });
}

kdm_status kdm_run_checks_ok(const kdm_run* r, int* out) {
    if (kdm_status s = require(r, "run")) return s;
    if (kdm_status s = require(out, "out")) return s;
    return guarded([&] { *out = r->run.checks_ok() ? 1 : 0; });
}

kdm_status kdm_run_to_json(const kdm_run* r, int include_audits, char** out) {
    if (kdm_status s = require(r, "run")) return s;
    if (kdm_status s = require(out, "out")) return s;
    return guarded(
        [&] { *out = dup_string(kdm::run_result_to_json(r->run, include_audits != 0).dump()); });
}

kdm_status kdm_adversary_run(int k, int d, int b, const char* policy, int scale,
                             kdm_transcript** out) {
    if (kdm_status s = require(out, "out")) return s;
    if (kdm_status s = require(policy, "policy")) return s;
    return guarded([&] {
        *out = new kdm_transcript{kdm::run_adversary({k, d, b}, kdm::parse_policy(policy), scale)};
    });
}

kdm_status kdm_adversary_run_variable(int k, int d, const int* capacities, size_t count,
                                      const char* policy, int scale, kdm_transcript** out) {
    if (kdm_status s = require(out, "out")) return s;
    if (kdm_status s = require(policy, "policy")) return s;
    if (kdm_status s = require(capacities, "capacities")) return s;
    return guarded([&] {
        std::vector<int> caps(capacities, capacities + count);
        *out = new kdm_transcript{
            kdm::run_adversary_variable(k, d, caps, kdm::parse_policy(policy), scale)};
    });
}

void kdm_transcript_free(kdm_transcript* t) { delete t; }

kdm_status kdm_transcript_instance(const kdm_transcript* t, kdm_instance** out) {
    if (kdm_status s = require(t, "transcript")) return s;
    if (kdm_status s = require(out, "out")) return s;
    return guarded([&] { *out = new kdm_instance{t->transcript.instance}; });
}

kdm_status kdm_transcript_run(const kdm_transcript* t, kdm_run** out) {
    if (kdm_status s = require(t, "transcript")) return s;
    if (kdm_status s = require(out, "out")) return s;
    return guarded([&] { *out = new kdm_run{t->transcript.run}; });
}

kdm_status kdm_transcript_empty_capacity(const kdm_transcript* t, long long* out) {
    if (kdm_status s = require(t, "transcript")) return s;
    if (kdm_status s = require(out, "out")) return s;
    return guarded([&] { *out = t->transcript.empty_capacity; });
}

kdm_status kdm_transcript_forced_empty(const kdm_transcript* t, char** out) {
    if (kdm_status s = require(t, "transcript")) return s;
    if (kdm_status s = require(out, "out")) return s;
    return guarded([&] { *out = dup_string(t->transcript.forced_empty.str()); });
}

kdm_status kdm_transcript_bound(const kdm_transcript* t, char** out_c_star_min,
                                long long* out_slack) {
    if (kdm_status s = require(t, "transcript")) return s;
    return guarded([&] {
        if (out_c_star_min) *out_c_star_min = dup_string(t->transcript.c_star_min.str());
        if (out_slack) *out_slack = t->transcript.slack;
    });
}

kdm_status kdm_transcript_verify(const kdm_transcript* t, char** out_json) {
    if (kdm_status s = require(t, "transcript")) return s;
    if (kdm_status s = require(out_json, "out_json")) return s;
    return guarded([&] {
        kdm::TranscriptReport report = kdm::verify_transcript(t->transcript);
        ordered_json j;
        j["ok"] = report.ok();
        j["checks"] = ordered_json::array();
        for (const auto& c : report.checks) {
            ordered_json e;
            e["name"] = c.name;
            e["pass"] = c.pass;
            e["detail"] = c.detail;
            j["checks"].push_back(std::move(e));
        }
        *out_json = dup_string(j.dump());
    });
}

}  // extern "C"
