// kdm: command-line harness over the kdmatch shared library.
//
// Subcommands: ratio, table, run, adversary, sweep, verify. Exit codes:
//   0  success, every audit/invariant check passed
//   1  a check failed (audit, end-state, validation, verification)
//   2  unknown policy
//   3  invalid parameters / grid / usage
//   4  I/O failure
//   5  parse failure
//   6  internal error
// If KDM_OUT_DIR is set, bare relative output filenames are placed there.

#include <atomic>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kdmatch/kdmatch.h"

using nlohmann::ordered_json;

namespace {

struct CliError {
    int exit_code;
    std::string message;
};

int exit_code_for(kdm_status status) {
    switch (status) {
        case KDM_OK: return 0;
        case KDM_ERR_UNKNOWN_POLICY: return 2;
        case KDM_ERR_NULL_ARGUMENT:
        case KDM_ERR_INVALID_ARGUMENT: return 3;
        case KDM_ERR_IO: return 4;
        case KDM_ERR_PARSE: return 5;
        default: return 6;
    }
}

void check(kdm_status status) {
    if (status != KDM_OK) throw CliError{exit_code_for(status), kdm_last_error()};
}

// Owns a string returned by the library.
struct CStr {
    char* ptr = nullptr;
    CStr() = default;
    CStr(const CStr&) = delete;
    CStr& operator=(const CStr&) = delete;
    ~CStr() { kdm_string_free(ptr); }
    std::string str() const { return ptr ? ptr : ""; }
};

struct InstanceHandle {
    kdm_instance* ptr = nullptr;
    ~InstanceHandle() { kdm_instance_free(ptr); }
};

struct RunHandle {
    kdm_run* ptr = nullptr;
    ~RunHandle() { kdm_run_free(ptr); }
};

struct TranscriptHandle {
    kdm_transcript* ptr = nullptr;
    ~TranscriptHandle() { kdm_transcript_free(ptr); }
};

struct TableHandle {
    kdm_table* ptr = nullptr;
    ~TableHandle() { kdm_table_free(ptr); }
};

std::string decimal12(const std::string& rational) {
    CStr out;
    check(kdm_rational_decimal(rational.c_str(), 12, &out.ptr));
    return out.str();
}

std::string rational_div(const std::string& a, const std::string& b) {
    CStr out;
    check(kdm_rational_div(a.c_str(), b.c_str(), &out.ptr));
    return out.str();
}

int rational_cmp(const std::string& a, const std::string& b) {
    int out = 0;
    check(kdm_rational_cmp(a.c_str(), b.c_str(), &out));
    return out;
}

// "num/den" -> "num" when den == 1, for display.
std::string pretty(const std::string& rational) {
    auto slash = rational.find('/');
    if (slash != std::string::npos && rational.substr(slash + 1) == "1")
        return rational.substr(0, slash);
    return rational;
}

std::string utc_timestamp() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string resolve_output(const std::string& path) {
    if (path.empty()) return path;
    if (path.find('/') != std::string::npos) return path;
    const char* dir = std::getenv("KDM_OUT_DIR");
    if (!dir || !*dir) return path;
    return std::string(dir) + "/" + path;
}

void write_text(const std::string& path, const std::string& text, bool append = false) {
    std::ofstream out(resolve_output(path),
                      append ? std::ios::out | std::ios::app : std::ios::out);
    if (!out) throw CliError{4, "cannot open for writing: " + path};
    out << text;
    if (!out) throw CliError{4, "write failed: " + path};
}

std::vector<int> parse_int_list(const std::string& text, const char* what) {
    // Comma-separated values and inclusive lo:hi ranges, e.g. "1,2,4:6".
    std::vector<int> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        try {
            auto colon = tok.find(':');
            if (colon == std::string::npos) {
                out.push_back(std::stoi(tok));
            } else {
                int lo = std::stoi(tok.substr(0, colon));
                int hi = std::stoi(tok.substr(colon + 1));
                if (hi < lo) throw CliError{3, std::string("empty range in ") + what + ": " + tok};
                for (int v = lo; v <= hi; ++v) out.push_back(v);
            }
        } catch (const CliError&) {
            throw;
        } catch (const std::exception&) {
            throw CliError{3, std::string("cannot parse ") + what + ": '" + tok + "'"};
        }
    }
    if (out.empty()) throw CliError{3, std::string(what) + " must be nonempty"};
    return out;
}

// One finished experiment, serialized as a single JSON line.
struct Record {
    ordered_json json;
    bool checks_ok = true;

    std::string line() const { return json.dump() + "\n"; }
};

Record make_record(const std::string& command, ordered_json params, const std::string& policy,
                   const std::string& primal, const std::string& dual, const std::string& opt,
                   long long audit_passed, long long audit_total, bool checks_ok,
                   unsigned long long seed) {
    Record rec;
    rec.json["timestamp"] = utc_timestamp();
    rec.json["command"] = command;
    rec.json["params"] = std::move(params);
    rec.json["policy"] = policy;
    rec.json["P"] = primal;
    rec.json["D"] = dual;
    rec.json["OPT"] = opt;
    bool opt_zero = rational_cmp(opt, "0") == 0;
    std::string ratio = opt_zero ? "n/a" : rational_div(primal, opt);
    rec.json["ratio"] = ratio;
    rec.json["ratio_decimal"] = opt_zero ? "n/a" : decimal12(ratio);
    rec.json["audit_passed"] = audit_passed;
    rec.json["audit_total"] = audit_total;
    if (!opt_zero && rational_cmp(ratio, "1") > 0) checks_ok = false;  // P <= OPT must hold
    rec.json["checks_ok"] = checks_ok;
    rec.json["seed"] = seed;
    rec.checks_ok = checks_ok;
    return rec;
}

Record record_from_run(const std::string& command, ordered_json params,
                       const std::string& policy, kdm_instance* inst, kdm_run* run,
                       unsigned long long seed) {
    CStr primal, dual;
    check(kdm_run_primal(run, &primal.ptr));
    check(kdm_run_dual(run, &dual.ptr));
    std::string opt;
    if (policy == "wa-vw") {
        CStr w;
        check(kdm_max_weight_b_matching(inst, &w.ptr));
        opt = w.str();
    } else {
        long long m = 0;
        check(kdm_max_b_matching(inst, &m));
        opt = std::to_string(m) + "/1";
    }
    long long passed = 0, total = 0;
    check(kdm_run_audit_counts(run, &passed, &total));
    int ok = 0;
    check(kdm_run_checks_ok(run, &ok));
    return make_record(command, std::move(params), policy, primal.str(), dual.str(), opt,
                       passed, total, ok != 0, seed);
}

// ---- subcommands ----------------------------------------------------

struct RatioArgs {
    int k = 0, d = 0, b = 0;
    std::string capacities;
};

int cmd_ratio(const RatioArgs& args) {
    if (args.d == 1) {
        // Any greedy strategy is optimal when requests have a single neighbor.
        std::cout << "1 ≈ 1.000000000000\n";
        return 0;
    }
    CStr ratio;
    if (!args.capacities.empty()) {
        std::vector<int> caps = parse_int_list(args.capacities, "--capacities");
        check(kdm_min_competitive_ratio(args.k, args.d, caps.data(), caps.size(), &ratio.ptr));
    } else {
        if (args.b < 1) throw CliError{3, "provide -b or --capacities"};
        check(kdm_competitive_ratio(args.k, args.d, args.b, &ratio.ptr));
    }
    std::cout << pretty(ratio.str()) << " ≈ " << decimal12(ratio.str()) << "\n";
    return 0;
}

struct TableArgs {
    int k = 0, d = 0, b = 0;
    bool csv = false;
    bool recursive = false;
    std::string out;
};

int cmd_table(const TableArgs& args) {
    TableHandle table;
    check(args.recursive ? kdm_table_build_recursive(args.k, args.d, args.b, &table.ptr)
                         : kdm_table_build(args.k, args.d, args.b, &table.ptr));
    CStr c_star;
    check(kdm_table_c_star(table.ptr, &c_star.ptr));

    std::string body;
    if (args.csv) {
        CStr csv;
        check(kdm_table_csv(table.ptr, &csv.ptr));
        body = csv.str();
    } else {
        std::ostringstream text;
        text << "c* = " << pretty(c_star.str()) << " ≈ " << decimal12(c_star.str()) << "\n";
        if (args.k < args.d)
            text << "note: k < d, so the c*-competitiveness guarantee does not apply\n";
        for (int l = 0; l <= args.b; ++l) {
            text << "l=" << l << ":";
            for (int delta = l; delta <= args.k * args.b; ++delta) {
                CStr v;
                check(kdm_table_value(table.ptr, l, delta, &v.ptr));
                text << " " << pretty(v.str());
            }
            text << "\n";
        }
        body = text.str();
    }

    CStr validation;
    check(kdm_table_validate(table.ptr, &validation.ptr));
    bool ok = ordered_json::parse(validation.str())["ok"].get<bool>();

    if (args.out.empty())
        std::cout << body;
    else
        write_text(args.out, body);
    if (!ok) {
        std::cerr << "table validation failed: " << validation.str() << "\n";
        return 1;
    }
    return 0;
}

struct RunArgs {
    std::string instance_path;
    std::string policy = "wa";
    bool audits = false;
    std::string out;
    unsigned long long seed = 0;
};

int cmd_run(const RunArgs& args) {
    InstanceHandle inst;
    check(kdm_instance_read(args.instance_path.c_str(), &inst.ptr));
    RunHandle run;
    check(kdm_run_stream(inst.ptr, args.policy.c_str(), &run.ptr));

    ordered_json params;
    CStr instance_json;
    check(kdm_instance_to_json(inst.ptr, &instance_json.ptr));
    ordered_json parsed = ordered_json::parse(instance_json.str());
    params["k"] = parsed["k"];
    params["d"] = parsed["d"];
    params["servers"] = parsed["servers"].size();
    params["instance"] = args.instance_path;

    Record rec = record_from_run("run", std::move(params), args.policy, inst.ptr, run.ptr,
                                 args.seed);
    if (args.audits) {
        CStr full;
        check(kdm_run_to_json(run.ptr, 1, &full.ptr));
        rec.json["run"] = ordered_json::parse(full.str());
    }
    std::string line = rec.line();
    if (args.out.empty())
        std::cout << line;
    else
        write_text(args.out, line, true);
    return rec.checks_ok ? 0 : 1;
}

struct AdversaryArgs {
    int k = 0, d = 0, b = 0;
    std::string capacities;
    std::string policy = "wa";
    int scale = 1;
    std::string save_instance;
    std::string out;
};

int cmd_adversary(const AdversaryArgs& args) {
    TranscriptHandle transcript;
    ordered_json params;
    params["k"] = args.k;
    params["d"] = args.d;
    if (!args.capacities.empty()) {
        std::vector<int> caps = parse_int_list(args.capacities, "--capacities");
        check(kdm_adversary_run_variable(args.k, args.d, caps.data(), caps.size(),
                                         args.policy.c_str(), args.scale, &transcript.ptr));
        params["capacities"] = caps;
    } else {
        if (args.b < 1) throw CliError{3, "provide -b or --capacities"};
        check(kdm_adversary_run(args.k, args.d, args.b, args.policy.c_str(), args.scale,
                                &transcript.ptr));
        params["b"] = args.b;
    }
    params["scale"] = args.scale;

    InstanceHandle inst;
    check(kdm_transcript_instance(transcript.ptr, &inst.ptr));
    RunHandle run;
    check(kdm_transcript_run(transcript.ptr, &run.ptr));

    CStr verify;
    check(kdm_transcript_verify(transcript.ptr, &verify.ptr));
    ordered_json verdict = ordered_json::parse(verify.str());

    Record rec = record_from_run("adversary", std::move(params), args.policy, inst.ptr,
                                 run.ptr, 0);
    long long empty = 0;
    check(kdm_transcript_empty_capacity(transcript.ptr, &empty));
    CStr forced, c_min;
    long long slack = 0;
    check(kdm_transcript_forced_empty(transcript.ptr, &forced.ptr));
    check(kdm_transcript_bound(transcript.ptr, &c_min.ptr, &slack));
    rec.json["empty_capacity"] = empty;
    rec.json["forced_empty"] = forced.str();
    rec.json["c_star_min"] = c_min.str();
    rec.json["slack"] = slack;
    rec.json["verify"] = verdict;
    if (!verdict["ok"].get<bool>()) {
        rec.checks_ok = false;
        rec.json["checks_ok"] = false;
    }

    if (!args.save_instance.empty())
        check(kdm_instance_write(inst.ptr, resolve_output(args.save_instance).c_str()));

    std::string line = rec.line();
    if (args.out.empty())
        std::cout << line;
    else
        write_text(args.out, line, true);
    return rec.checks_ok ? 0 : 1;
}

struct VerifyArgs {
    std::string instance_path;
};

int cmd_verify(const VerifyArgs& args) {
    InstanceHandle inst;
    check(kdm_instance_read(args.instance_path.c_str(), &inst.ptr));
    CStr report;
    check(kdm_instance_validate(inst.ptr, &report.ptr));
    ordered_json j = ordered_json::parse(report.str());
    std::cout << j.dump(2) << "\n";
    return j["is_kd_graph"].get<bool>() ? 0 : 1;
}

struct SweepArgs {
    std::string k_list = "2";
    std::string d_list = "2";
    std::string b_list = "1";
    std::string policies = "wa";
    std::string mode = "adversary";
    int scale = 1;
    int servers = 16;
    int seeds = 1;
    int jobs = 1;
    std::string out;
};

struct SweepCell {
    int k, d, b;
    std::string policy;
    unsigned long long seed;
};

Record sweep_cell_record(const SweepArgs& args, const SweepCell& cell) {
    ordered_json params;
    params["k"] = cell.k;
    params["d"] = cell.d;
    params["b"] = cell.b;
    if (args.mode == "adversary") {
        TranscriptHandle transcript;
        check(kdm_adversary_run(cell.k, cell.d, cell.b, cell.policy.c_str(), args.scale,
                                &transcript.ptr));
        params["scale"] = args.scale;
        InstanceHandle inst;
        check(kdm_transcript_instance(transcript.ptr, &inst.ptr));
        RunHandle run;
        check(kdm_transcript_run(transcript.ptr, &run.ptr));
        CStr verify;
        check(kdm_transcript_verify(transcript.ptr, &verify.ptr));
        Record rec = record_from_run("sweep", std::move(params), cell.policy, inst.ptr,
                                     run.ptr, cell.seed);
        if (!ordered_json::parse(verify.str())["ok"].get<bool>()) {
            rec.checks_ok = false;
            rec.json["checks_ok"] = false;
        }
        return rec;
    }
    params["servers"] = args.servers;
    InstanceHandle inst;
    check(kdm_instance_random(cell.k, cell.d, cell.b, args.servers, cell.seed, &inst.ptr));
    RunHandle run;
    check(kdm_run_stream(inst.ptr, cell.policy.c_str(), &run.ptr));
    return record_from_run("sweep", std::move(params), cell.policy, inst.ptr, run.ptr,
                           cell.seed);
}

int cmd_sweep(const SweepArgs& args) {
    if (args.mode != "adversary" && args.mode != "random")
        throw CliError{3, "--mode must be 'adversary' or 'random'"};
    if (args.jobs < 1) throw CliError{3, "--jobs must be >= 1"};
    if (args.out.empty()) throw CliError{3, "sweep requires --out"};

    std::vector<SweepCell> cells;
    for (int k : parse_int_list(args.k_list, "--k"))
        for (int d : parse_int_list(args.d_list, "--d"))
            for (int b : parse_int_list(args.b_list, "--b")) {
                std::stringstream ss(args.policies);
                std::string policy;
                while (std::getline(ss, policy, ',')) {
                    if (policy.empty()) continue;
                    int seeds = args.mode == "random" ? args.seeds : 1;
                    for (int s = 0; s < seeds; ++s)
                        cells.push_back({k, d, b, policy, static_cast<unsigned long long>(s)});
                }
            }
    if (cells.empty()) throw CliError{3, "empty sweep grid"};

    // Validate the grid up front so a bad cell fails fast, not mid-sweep.
    for (const auto& c : cells) {
        if (c.d < 2) throw CliError{3, "grid contains d < 2"};
        if (args.mode == "adversary" && c.k < c.d)
            throw CliError{3, "adversary sweep requires k >= d for every cell"};
    }

    std::vector<Record> records(cells.size());
    std::vector<CliError> errors(cells.size(), CliError{0, ""});
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= cells.size()) return;
            try {
                records[i] = sweep_cell_record(args, cells[i]);
            } catch (const CliError& e) {
                errors[i] = e;
            }
        }
    };
    std::vector<std::thread> pool;
    int jobs = std::min<int>(args.jobs, static_cast<int>(cells.size()));
    for (int t = 0; t < jobs - 1; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    for (size_t i = 0; i < cells.size(); ++i)
        if (errors[i].exit_code != 0)
            throw CliError{errors[i].exit_code, "sweep cell failed: " + errors[i].message};

    bool all_ok = true;
    std::string lines;
    for (const auto& r : records) {
        lines += r.line();
        all_ok = all_ok && r.checks_ok;
    }
    write_text(args.out, lines, true);
    std::cout << "wrote " << records.size() << " records to " << resolve_output(args.out)
              << "\n";
    return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"online b-matching on (k,d)-graphs: exact ratios, value tables, "
                 "online runs, adversary battles"};
    app.require_subcommand(1);

    RatioArgs ratio_args;
    auto* ratio = app.add_subcommand("ratio", "print the optimal competitive ratio c*");
    ratio->add_option("-k", ratio_args.k, "server demand factor k")->required();
    ratio->add_option("-d", ratio_args.d, "request degree bound d")->required();
    ratio->add_option("-b", ratio_args.b, "uniform server capacity b");
    ratio->add_option("--capacities", ratio_args.capacities, "capacity list, e.g. 1,4");

    TableArgs table_args;
    auto* table = app.add_subcommand("table", "print or export the value table V(l,delta)");
    table->add_option("-k", table_args.k, "k")->required();
    table->add_option("-d", table_args.d, "d")->required();
    table->add_option("-b", table_args.b, "b")->required();
    table->add_flag("--csv", table_args.csv, "emit CSV (l,delta,num,den)");
    table->add_flag("--recursive", table_args.recursive, "build via the recurrence");
    table->add_option("-o,--out", table_args.out, "write to file instead of stdout");

    RunArgs run_args;
    auto* run = app.add_subcommand("run", "replay an instance file against a policy");
    run->add_option("instance", run_args.instance_path, "instance JSON file")->required();
    run->add_option("--policy", run_args.policy,
                    "greedy|balance|highdegree|wa|wa-vc|wa-vw");
    run->add_flag("--audits", run_args.audits, "include the per-step audit trail");
    run->add_option("-o,--out", run_args.out, "append the record to this file");

    AdversaryArgs adv_args;
    auto* adversary =
        app.add_subcommand("adversary", "play the adaptive adversary against a policy");
    adversary->add_option("-k", adv_args.k, "k")->required();
    adversary->add_option("-d", adv_args.d, "d")->required();
    adversary->add_option("-b", adv_args.b, "uniform capacity b");
    adversary->add_option("--capacities", adv_args.capacities,
                          "variable capacities, e.g. 1,4");
    adversary->add_option("--policy", adv_args.policy,
                          "greedy|balance|highdegree|wa|wa-vc|wa-vw");
    adversary->add_option("--scale", adv_args.scale, "multiply N = d^{kb} by this factor");
    adversary->add_option("--save-instance", adv_args.save_instance,
                          "write the emitted instance to this file");
    adversary->add_option("-o,--out", adv_args.out, "append the record to this file");

    SweepArgs sweep_args;
    auto* sweep = app.add_subcommand("sweep", "grid of experiments, one JSONL record each");
    sweep->add_option("--k", sweep_args.k_list, "k values, e.g. 2,3")->required();
    sweep->add_option("--d", sweep_args.d_list, "d values")->required();
    sweep->add_option("--b", sweep_args.b_list, "b values, e.g. 1:4")->required();
    sweep->add_option("--policies", sweep_args.policies, "comma-separated policies");
    sweep->add_option("--mode", sweep_args.mode, "adversary (default) or random");
    sweep->add_option("--scale", sweep_args.scale, "adversary scale");
    sweep->add_option("--servers", sweep_args.servers, "server count (random mode)");
    sweep->add_option("--seeds", sweep_args.seeds, "seeds per cell (random mode)");
    sweep->add_option("--jobs", sweep_args.jobs, "worker threads");
    sweep->add_option("--out", sweep_args.out, "JSONL output file (appended)")->required();

    VerifyArgs verify_args;
    auto* verify = app.add_subcommand("verify", "validate an instance file as a (k,d)-graph");
    verify->add_option("instance", verify_args.instance_path, "instance JSON file")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 3;
    }

    try {
        if (ratio->parsed()) return cmd_ratio(ratio_args);
        if (table->parsed()) return cmd_table(table_args);
        if (run->parsed()) return cmd_run(run_args);
        if (adversary->parsed()) return cmd_adversary(adv_args);
        if (sweep->parsed()) return cmd_sweep(sweep_args);
        if (verify->parsed()) return cmd_verify(verify_args);
    } catch (const CliError& e) {
        std::cerr << "error: " << e.message << "\n";
        return e.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 6;
    }
    return 3;
}
