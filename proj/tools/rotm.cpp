// rotm: command-line front end. JSON on stdout, diagnostics on stderr.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "rotm/bennett.hpp"
#include "rotm/census.hpp"
#include "rotm/corpus.hpp"
#include "rotm/demon.hpp"
#include "rotm/errors.hpp"
#include "rotm/json_io.hpp"
#include "rotm/parser.hpp"
#include "rotm/reversibility.hpp"
#include "rotm/simulator.hpp"

namespace {

using namespace rotm;

enum Exit : int { kOk = 0, kUsage = 2, kFails = 3, kBudget = 4 };

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write '" + path + "'");
    out << text;
}

std::uint64_t budget() {
    if (const char* env = std::getenv("ROTM_BUDGET")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw std::invalid_argument(std::string("ROTM_BUDGET is not an integer: ") + env);
        }
    }
    return kDefaultBudget;
}

Machine shutter(const std::string& path) { return path.empty() ? bundled_machine("N") : load_machine(path); }

struct Args {
    std::string file, input, out, range, machine;
    bool strict = false, trace = false, static_only = false, exhaustive = false, csv = false;
    std::uint64_t max_steps = 1'000'000, max_len = 6, len = 0;
    std::uint64_t molecules = 10, steps = 1024, trials = 100'000, seed = 42;
    unsigned jobs = 1;
};

int cmd_validate(const Args& a) {
    const auto report = validate(parse_draft(read_file(a.file)), a.strict ? ValidationMode::strict : ValidationMode::lenient);
    emit(to_json(report));
    for (const auto& e : report.errors) std::cerr << "error: " << e << '\n';
    for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';
    return report.valid ? kOk : kFails;
}

int cmd_run(const Args& a) {
    const Machine m = load_machine(a.file);
    RunOptions opts;
    opts.max_steps = a.max_steps;
    opts.trace = a.trace;
    const auto result = run(m, encode_input(m, a.input), opts);
    if (a.trace)
        for (const auto& e : result.trace) std::cerr << format_trace_line(m, e) << '\n';
    emit(to_json(m, result));
    return kOk;
}

int cmd_verify(const Args& a) {
    const Machine m = load_machine(a.file);
    Json out = Json::object();
    bool holds = true;
    const bool run_static = a.static_only || !a.exhaustive;
    if (run_static) {
        const auto report = static_check(m);
        out["static"] = to_json(m, report);
        for (const auto& v : report.violations) std::cerr << "violation: " << v.message << '\n';
    }
    if (a.exhaustive) {
        ExhaustiveOptions opts;
        opts.max_len = a.max_len;
        opts.max_steps = a.max_steps;
        opts.jobs = a.jobs;
        const auto report = exhaustive_check(m, opts);
        out["exhaustive"] = to_json(m, report);
        holds = report.reversible;
    }
    // Top-level verdict: exhaustive when requested, otherwise static.
    out["verdict"] = a.exhaustive ? out["exhaustive"]["verdict"] : out["static"]["verdict"];
    emit(out);
    return holds ? kOk : kFails;
}

std::pair<std::size_t, std::size_t> parse_range(const std::string& text) {
    const auto dots = text.find("..");
    if (dots == std::string::npos) throw CLI::ValidationError("--range", "expected A..B");
    const auto lo = std::stoull(text.substr(0, dots)), hi = std::stoull(text.substr(dots + 2));
    if (lo > hi) throw CLI::ValidationError("--range", "A must not exceed B");
    return {lo, hi};
}

int cmd_census(const Args& a) {
    const Machine m = load_machine(a.file);
    CensusOptions opts;
    opts.max_steps = a.max_steps;
    opts.budget = budget();
    opts.jobs = a.jobs;
    std::vector<CensusResult> rows;
    try {
        if (!a.range.empty()) {
            const auto [lo, hi] = parse_range(a.range);
            rows = cost_curve(m, lo, hi, opts);
        } else {
            rows.push_back(final_dp_census(m, a.len, opts));
        }
    } catch (const CensusInvalid& e) {
        std::cerr << e.what() << '\n';
        emit(to_json(m, e.partial, false));
        return kFails;
    }
    if (a.csv) {
        std::cout << "n,D,cost_bits,ceil_bits,timeouts\n";
        for (const auto& r : rows)
            std::cout << r.n << ',' << r.distinct << ',' << Json(r.cost_bits).dump() << ',' << r.ceil_bits << ','
                      << r.timeouts << '\n';
        return kOk;
    }
    if (a.range.empty()) {
        emit(to_json(m, rows.front(), true));
    } else {
        Json list = Json::array();
        for (const auto& r : rows) list.push_back(to_json(m, r, false));
        emit(list);
    }
    return kOk;
}

int cmd_family(const Args& a) {
    const Machine m = load_machine(a.file);
    try {
        const auto report = family_check(m, a.len, a.max_steps);
        emit(to_json(m, report));
        return report.distinct ? kOk : kFails;
    } catch (const CensusInvalid& e) {
        std::cerr << e.what() << '\n';
        return kFails;
    }
}

int cmd_embed(const Args& a) {
    write_file(a.out, serialize(landauer_embed(load_machine(a.file))));
    return kOk;
}

int cmd_invert(const Args& a) {
    try {
        write_file(a.out, serialize(invert_rules(load_machine(a.file))));
        return kOk;
    } catch (const NotStaticallyReversibleError& e) {
        std::cerr << e.what() << '\n';
        return kFails;
    }
}

int cmd_pipeline(const Args& a) {
    const Machine m = load_machine(a.file);
    PipelineOptions opts;
    opts.max_steps = a.max_steps;
    const auto result = read_twice_pipeline(m, encode_input(m, a.input), opts);
    emit(to_json(result));
    return result.cleanliness.clean() ? kOk : kFails;
}

int cmd_demon(const Args& a) {
    ExperimentParams p = default_params();
    p.molecules = a.molecules;
    p.steps = a.steps;
    p.trials = a.trials;
    p.seed = a.seed;
    p.jobs = a.jobs;
    if (!a.machine.empty()) p.machine = load_machine(a.machine);
    const auto stats = simulate_trials(p);
    if (a.csv) {
        std::cout << "a_count,trials\n";
        for (auto [k, v] : stats.a_count_histogram) std::cout << k << ',' << v << '\n';
        return kOk;
    }
    emit(to_json(p, stats));
    return kOk;
}

int cmd_ledger(const Args& a) {
    LedgerOptions opts;
    opts.jobs = a.jobs;
    opts.max_steps = a.max_steps;
    const auto report = second_law_ledger(a.molecules, a.steps, shutter(a.machine), opts);
    emit(to_json(report));
    return report.verdict ? kOk : kFails;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Read-once Turing machine toolkit"};
    app.require_subcommand(1);
    Args a;

    auto file_arg = [&](CLI::App* sub) { sub->add_option("file", a.file, "machine description")->required(); };
    auto jobs_opt = [&](CLI::App* sub) { sub->add_option("--jobs", a.jobs, "worker threads")->check(CLI::Range(1u, 1024u)); };
    auto steps_opt = [&](CLI::App* sub) { sub->add_option("--max-steps", a.max_steps, "step budget per run"); };

    auto* validate_cmd = app.add_subcommand("validate", "check a machine description");
    file_arg(validate_cmd);
    validate_cmd->add_flag("--strict", a.strict, "require a total transition function");

    auto* run_cmd = app.add_subcommand("run", "simulate one input");
    file_arg(run_cmd);
    run_cmd->add_option("--input", a.input, "input string")->required();
    steps_opt(run_cmd);
    run_cmd->add_flag("--trace", a.trace, "print each configuration to stderr");

    auto* verify_cmd = app.add_subcommand("verify", "check reversibility");
    file_arg(verify_cmd);
    verify_cmd->add_flag("--static", a.static_only, "rule-level check");
    verify_cmd->add_flag("--exhaustive", a.exhaustive, "enumerate inputs up to --max-len");
    verify_cmd->add_option("--max-len", a.max_len, "longest input");
    steps_opt(verify_cmd);
    jobs_opt(verify_cmd);

    auto* census_cmd = app.add_subcommand("census", "count distinct final dynamic parts");
    file_arg(census_cmd);
    auto* len_opt = census_cmd->add_option("--len", a.len, "input length");
    auto* range_opt = census_cmd->add_option("--range", a.range, "lengths A..B");
    len_opt->excludes(range_opt);
    census_cmd->add_flag("--csv", a.csv, "CSV rows instead of JSON");
    steps_opt(census_cmd);
    jobs_opt(census_cmd);

    auto* family_cmd = app.add_subcommand("family", "check the b^i a^(n-i) family");
    file_arg(family_cmd);
    family_cmd->add_option("--len", a.len, "input length")->required();
    steps_opt(family_cmd);

    auto* embed_cmd = app.add_subcommand("embed", "add a history tape");
    file_arg(embed_cmd);
    embed_cmd->add_option("-o,--output", a.out, "output file")->required();

    auto* invert_cmd = app.add_subcommand("invert", "invert a statically reversible machine");
    file_arg(invert_cmd);
    invert_cmd->add_option("-o,--output", a.out, "output file")->required();

    auto* pipeline_cmd = app.add_subcommand("pipeline", "garbage-free two-pass computation");
    file_arg(pipeline_cmd);
    pipeline_cmd->add_option("--input", a.input, "input string")->required();
    steps_opt(pipeline_cmd);

    auto* demon_cmd = app.add_subcommand("demon", "shutter experiment Monte Carlo");
    demon_cmd->add_option("--molecules", a.molecules)->required()->check(CLI::PositiveNumber);
    demon_cmd->add_option("--steps", a.steps)->required()->check(CLI::PositiveNumber);
    demon_cmd->add_option("--trials", a.trials)->required()->check(CLI::PositiveNumber);
    demon_cmd->add_option("--seed", a.seed)->required();
    demon_cmd->add_option("--machine", a.machine, "shutter machine (default: bundled N)");
    demon_cmd->add_flag("--csv", a.csv, "CSV histogram of a-counts instead of JSON");
    jobs_opt(demon_cmd);

    auto* ledger_cmd = app.add_subcommand("ledger", "second-law bookkeeping");
    ledger_cmd->add_option("--molecules", a.molecules)->required()->check(CLI::PositiveNumber);
    ledger_cmd->add_option("--steps", a.steps)->required()->check(CLI::PositiveNumber);
    ledger_cmd->add_option("--machine", a.machine, "shutter machine (default: bundled N)");
    steps_opt(ledger_cmd);
    jobs_opt(ledger_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    const std::vector<std::pair<CLI::App*, int (*)(const Args&)>> dispatch = {
        {validate_cmd, cmd_validate}, {run_cmd, cmd_run},         {verify_cmd, cmd_verify},
        {census_cmd, cmd_census},     {family_cmd, cmd_family},   {embed_cmd, cmd_embed},
        {invert_cmd, cmd_invert},     {pipeline_cmd, cmd_pipeline}, {demon_cmd, cmd_demon},
        {ledger_cmd, cmd_ledger}};
    try {
        if (census_cmd->parsed() && len_opt->count() == 0 && range_opt->count() == 0)
            throw CLI::ValidationError("census", "one of --len or --range is required");
        for (auto [sub, fn] : dispatch)
            if (sub->parsed()) return fn(a);
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << '\n' << app.help();
        return kUsage;
    } catch (const BudgetError& e) {
        std::cerr << "budget: " << e.what() << '\n';
        return kBudget;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kUsage;
    } catch (const ValidationError& e) {
        std::cerr << "invalid machine: " << e.what() << '\n';
        return kFails;
    } catch (const NoCostModelError& e) {
        std::cerr << e.what() << '\n';
        return kFails;
    } catch (const MachineMisbehaviorError& e) {
        std::cerr << e.what() << '\n';
        return kFails;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
