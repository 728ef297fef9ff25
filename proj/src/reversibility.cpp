#include "rotm/reversibility.hpp"

#include <map>
#include <mutex>
#include <unordered_set>

#include "rotm/parallel.hpp"

namespace rotm {

namespace {

struct Incoming {
    std::size_t rule_id;
    unsigned clamp;
    const Rule* rule;
    std::vector<int> moves;  // effective moves after clamping
};

std::string describe_rule(const Machine& m, std::size_t id, unsigned clamp) {
    const Rule& r = m.rule(id);
    std::string out = "#" + std::to_string(id) + " (" + m.states()[r.source].name;
    if (r.read_input) out += "," + m.input_symbol_name(*r.read_input);
    out += ")->" + m.states()[r.target].name;
    if (clamp) out += " [left-end]";
    return out;
}

}  // namespace

StaticReport static_check(const Machine& machine) {
    StaticReport report;
    const std::size_t k = static_cast<std::size_t>(machine.tape_count());

    std::map<StateId, std::vector<Incoming>> into;
    for (std::size_t id = 1; id <= machine.rules().size(); ++id) {
        const Rule& r = machine.rule(id);
        into[r.target].push_back({id, 0, &r, r.move_work});
        std::vector<std::size_t> left;
        for (std::size_t t = 0; t < k; ++t)
            if (r.move_work[t] < 0) left.push_back(t);
        for (unsigned mask = 1; mask < (1u << left.size()); ++mask) {
            Incoming in{id, 0, &r, r.move_work};
            for (std::size_t b = 0; b < left.size(); ++b)
                if (mask >> b & 1) {
                    in.clamp |= 1u << left[b];
                    in.moves[left[b]] = 0;
                }
            into[machine.reject_state()].push_back(std::move(in));
        }
    }

    for (const auto& [target, edges] : into) {
        for (std::size_t i = 0; i < edges.size(); ++i)
            for (std::size_t j = i + 1; j < edges.size(); ++j) {
                const Incoming& a = edges[i];
                const Incoming& b = edges[j];
                const bool both_sighted = a.rule->sighted() && b.rule->sighted();
                if (both_sighted && *a.rule->read_input != *b.rule->read_input) continue;
                // A tape with equal moves and different writes tells the two apart:
                // its pre-step head position is the same under both rules.
                bool separated = false;
                for (std::size_t t = 0; t < k && !separated; ++t)
                    separated = a.moves[t] == b.moves[t] && a.rule->write_work[t] != b.rule->write_work[t];
                if (separated) continue;

                Violation v;
                v.target = target;
                v.rule_a = a.rule_id;
                v.rule_b = b.rule_id;
                v.clamp_a = a.clamp;
                v.clamp_b = b.clamp;
                if (a.rule->sighted() != b.rule->sighted())
                    v.condition = 'A';
                else if (a.moves == b.moves)
                    v.condition = 'B';
                else
                    v.condition = 'C';
                const char* why = v.condition == 'A'   ? "sighted and blind rules enter the same state"
                                  : v.condition == 'B' ? "rules read the same input cell and write identically"
                                                       : "rules move differently and no tape separates them";
                v.message = std::string("condition ") + v.condition + " on target " +
                            machine.states()[target].name + ": " + describe_rule(machine, a.rule_id, a.clamp) +
                            " and " + describe_rule(machine, b.rule_id, b.clamp) + ": " + why;
                report.violations.push_back(std::move(v));
            }
    }
    report.statically_reversible = report.violations.empty();
    return report;
}

ExhaustiveReport exhaustive_check(const Machine& machine, const ExhaustiveOptions& options) {
    const std::size_t radix = machine.input_alphabet().size();
    RunOptions run_opts;
    run_opts.max_steps = options.max_steps;
    run_opts.trace = true;
    run_opts.totality = Totality::strict;

    // Flat shortlex numbering of all inputs of length <= max_len.
    std::vector<std::uint64_t> offsets{0};
    for (std::size_t len = 0; len <= options.max_len; ++len) {
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < len; ++i) count *= radix;
        offsets.push_back(offsets.back() + count);
    }
    const std::uint64_t total = offsets.back();
    auto input_of = [&](std::uint64_t flat) {
        std::size_t len = 0;
        while (offsets[len + 1] <= flat) ++len;
        return word_at(flat - offsets[len], len, radix);
    };

    // Pass 1: dynamic parts occurring in any explored run.
    std::unordered_set<DynamicPart, DynamicPartHash> reachable;
    std::mutex mu;
    std::vector<std::uint64_t> block_timeouts(std::max(1u, options.jobs), 0);
    for_each_block(total, options.jobs, [&](unsigned block, std::uint64_t begin, std::uint64_t end) {
        std::unordered_set<DynamicPart, DynamicPartHash> local;
        for (std::uint64_t f = begin; f < end; ++f) {
            const auto result = run(machine, input_of(f), run_opts);
            if (result.outcome == Outcome::timeout) ++block_timeouts[block];
            for (const auto& e : result.trace) local.insert(dynamic_part_of(e.config));
        }
        std::lock_guard lock(mu);
        reachable.insert(local.begin(), local.end());
    });

    // Pass 2: in-degree of every explored configuration.
    struct BlockResult {
        std::uint64_t checked = 0;
        std::uint64_t inputs = 0;
        std::optional<Counterexample> cex;
    };
    std::vector<BlockResult> blocks(std::max(1u, options.jobs));
    for_each_block(total, options.jobs, [&](unsigned block, std::uint64_t begin, std::uint64_t end) {
        BlockResult& out = blocks[block];
        for (std::uint64_t f = begin; f < end && !out.cex; ++f) {
            const Word input = input_of(f);
            const auto result = run(machine, input, run_opts);
            ++out.inputs;
            for (const auto& e : result.trace) {
                ++out.checked;
                std::vector<Configuration> preds;
                for (auto& p : predecessors(machine, e.config, input, Totality::strict))
                    if (reachable.count(dynamic_part_of(p))) preds.push_back(std::move(p));
                if (preds.size() > 1) {
                    out.cex = Counterexample{decode_input(machine, input), e.config, std::move(preds)};
                    break;
                }
            }
        }
    });

    ExhaustiveReport report;
    for (auto t : block_timeouts) report.timeouts += t;
    for (auto& b : blocks) {
        report.configurations_checked += b.checked;
        report.inputs_checked += b.inputs;
        if (b.cex) {
            report.reversible = false;
            report.counterexample = std::move(b.cex);
            break;
        }
    }
    return report;
}

}  // namespace rotm
