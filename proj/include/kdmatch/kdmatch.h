/*
 * kdmatch: online b-matching on (k,d)-bounded bipartite graphs.
 *
 * C interface over the C++ core. All objects are opaque handles created and
 * released through this API; every entry point returns a kdm_status, with a
 * thread-local message available via kdm_last_error() after a failure.
 * Exact values (ratios, potentials, primal/dual objectives) travel as
 * "numerator/denominator" strings; free any returned string with
 * kdm_string_free().
 */
#ifndef KDMATCH_H
#define KDMATCH_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum kdm_status {
    KDM_OK = 0,
    KDM_ERR_NULL_ARGUMENT = 1,
    KDM_ERR_INVALID_ARGUMENT = 2,
    KDM_ERR_PARSE = 3,
    KDM_ERR_IO = 4,
    KDM_ERR_UNKNOWN_POLICY = 5,
    KDM_ERR_POLE = 6,
    KDM_ERR_CHECK_FAILED = 7,
    KDM_ERR_INTERNAL = 8
} kdm_status;

typedef struct kdm_table kdm_table;
typedef struct kdm_instance kdm_instance;
typedef struct kdm_run kdm_run;
typedef struct kdm_transcript kdm_transcript;

const char* kdm_version(void);

/* Message describing the most recent failure on this thread; never NULL. */
const char* kdm_last_error(void);

void kdm_string_free(char* s);

/* ---- exact ratio computations -------------------------------------- */

/* c* for uniform capacity b; out receives "num/den". */
kdm_status kdm_competitive_ratio(int k, int d, int b, char** out);

/* min over the given capacities of the per-capacity c*. */
kdm_status kdm_min_competitive_ratio(int k, int d, const int* capacities, size_t count,
                                     char** out);

/* Deficiency F(x, l, delta) for parameters (k, d, b); x is "num/den" or "num".
 * use_recurrence != 0 evaluates the recurrence instead of the closed form. */
kdm_status kdm_deficiency(const char* x, int load, int degree, int k, int d, int b,
                          int use_recurrence, char** out);

/* Truncated Gauss series 2F1(2, -m; gamma; z); gamma and z are rationals. */
kdm_status kdm_gauss_2f1_poly(int m, const char* gamma, const char* z, char** out);

/* JSON: {"values":[{"b":1,"c_star":"..."},...],"strictly_increasing":bool} */
kdm_status kdm_monotonicity_scan(int k, int d, int b_max, char** out_json);

/* gap = 1 - c* and its combinatorial bound; requires k >= d >= 2. */
kdm_status kdm_convergence_gap(int k, int d, int b, char** out_gap, char** out_bound);

/* Truncating decimal rendering of a "num/den" string (display only). */
kdm_status kdm_rational_decimal(const char* rational, int digits, char** out);

/* Exact quotient of two rationals, reduced. */
kdm_status kdm_rational_div(const char* a, const char* b, char** out);

/* Exact comparison: out = -1, 0, or 1. */
kdm_status kdm_rational_cmp(const char* a, const char* b, int* out);

/* ---- value tables --------------------------------------------------- */

kdm_status kdm_table_build(int k, int d, int b, kdm_table** out);
/* Recurrence-driven construction; same contract, used for cross-checks. */
kdm_status kdm_table_build_recursive(int k, int d, int b, kdm_table** out);
void kdm_table_free(kdm_table* t);

kdm_status kdm_table_c_star(const kdm_table* t, char** out);
/* V(l, delta) with boundary clamping. */
kdm_status kdm_table_value(const kdm_table* t, int load, int degree, char** out);
/* p(l, delta) and q(l, delta); either output pointer may be NULL. */
kdm_status kdm_table_gains(const kdm_table* t, int load, int degree, char** out_p, char** out_q);
/* CSV "l,delta,num,den" with header. */
kdm_status kdm_table_csv(const kdm_table* t, char** out);
/* JSON report: {"ok":bool,"violations":[...],"mismatched_cells":[[l,delta],...]} */
kdm_status kdm_table_validate(const kdm_table* t, char** out_json);

/* ---- instances ------------------------------------------------------ */

kdm_status kdm_instance_read(const char* path, kdm_instance** out);
kdm_status kdm_instance_parse(const char* json_text, kdm_instance** out);
kdm_status kdm_instance_write(const kdm_instance* inst, const char* path);
kdm_status kdm_instance_to_json(const kdm_instance* inst, char** out);
kdm_status kdm_instance_random(int k, int d, int b, int n_servers, unsigned long long seed,
                               kdm_instance** out);
/* JSON report: {"is_kd_graph":bool,"structural_errors":[...],
 *               "offending_servers":[...],"offending_requests":[...]} */
kdm_status kdm_instance_validate(const kdm_instance* inst, char** out_json);
kdm_status kdm_instance_total_capacity(const kdm_instance* inst, long long* out);
void kdm_instance_free(kdm_instance* inst);

/* ---- offline optimum ------------------------------------------------ */

kdm_status kdm_max_b_matching(const kdm_instance* inst, long long* out);
kdm_status kdm_max_weight_b_matching(const kdm_instance* inst, char** out);
kdm_status kdm_has_perfect_b_matching(const kdm_instance* inst, int* out);

/* ---- online runs ----------------------------------------------------- */

/* policy is one of: greedy, balance, highdegree, wa, wa-vc, wa-vw. */
kdm_status kdm_run_stream(const kdm_instance* inst, const char* policy, kdm_run** out);
void kdm_run_free(kdm_run* r);

kdm_status kdm_run_primal(const kdm_run* r, char** out);
kdm_status kdm_run_dual(const kdm_run* r, char** out);
kdm_status kdm_run_guarantee(const kdm_run* r, char** out);
kdm_status kdm_run_matched_count(const kdm_run* r, long long* out);
kdm_status kdm_run_audit_counts(const kdm_run* r, long long* passed, long long* total);
/* 1 iff every per-step audit and end-state check passed. */
kdm_status kdm_run_checks_ok(const kdm_run* r, int* out);
kdm_status kdm_run_to_json(const kdm_run* r, int include_audits, char** out);

/* ---- adaptive adversary ---------------------------------------------- */

kdm_status kdm_adversary_run(int k, int d, int b, const char* policy, int scale,
                             kdm_transcript** out);
kdm_status kdm_adversary_run_variable(int k, int d, const int* capacities, size_t count,
                                      const char* policy, int scale, kdm_transcript** out);
void kdm_transcript_free(kdm_transcript* t);

/* The emitted instance / observed run; caller frees the returned handle. */
kdm_status kdm_transcript_instance(const kdm_transcript* t, kdm_instance** out);
kdm_status kdm_transcript_run(const kdm_transcript* t, kdm_run** out);
kdm_status kdm_transcript_empty_capacity(const kdm_transcript* t, long long* out);
/* F(N,0,0) as a decimal integer string. */
kdm_status kdm_transcript_forced_empty(const kdm_transcript* t, char** out);
kdm_status kdm_transcript_bound(const kdm_transcript* t, char** out_c_star_min,
                                long long* out_slack);
/* JSON: {"ok":bool,"checks":[{"name":...,"pass":bool,"detail":...},...]} */
kdm_status kdm_transcript_verify(const kdm_transcript* t, char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* KDMATCH_H */
