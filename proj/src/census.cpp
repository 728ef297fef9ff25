#include "rotm/census.hpp"

#include <cmath>
#include <set>
#include <unordered_map>

#include "rotm/parallel.hpp"

namespace rotm {

CensusInvalid::CensusInvalid(CensusResult p)
    : std::runtime_error("census invalid: " + std::to_string(p.timeouts) + " of " + std::to_string(p.inputs) +
                         " inputs timed out"),
      partial(std::move(p)) {}

std::uint64_t ceil_log2(std::uint64_t d) {
    std::uint64_t bits = 0;
    while ((std::uint64_t{1} << bits) < d) ++bits;
    return bits;
}

namespace {

struct Slot {
    std::uint64_t first = 0;  // lexicographic index of the least input
    std::uint64_t count = 0;
};

}  // namespace

CensusResult final_dp_census(const Machine& machine, std::size_t n, const CensusOptions& options) {
    const std::size_t radix = machine.input_alphabet().size();
    std::uint64_t inputs = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (inputs > options.budget / radix)
            throw BudgetError("census of '" + machine.name() + "' at n=" + std::to_string(n) +
                              " exceeds the enumeration budget of " + std::to_string(options.budget) + " inputs");
        inputs *= radix;
    }

    RunOptions run_opts;
    run_opts.max_steps = options.max_steps;
    run_opts.totality = Totality::strict;

    const unsigned jobs = std::max(1u, options.jobs);
    std::vector<std::unordered_map<DynamicPart, Slot, DynamicPartHash>> partial(jobs);
    std::vector<std::uint64_t> timeouts(jobs, 0);
    for_each_block(inputs, jobs, [&](unsigned block, std::uint64_t begin, std::uint64_t end) {
        auto& local = partial[block];
        for (std::uint64_t i = begin; i < end; ++i) {
            const auto result = run(machine, word_at(i, n, radix), run_opts);
            if (result.outcome == Outcome::timeout) {
                ++timeouts[block];
                continue;
            }
            auto [it, fresh] = local.try_emplace(dynamic_part_of(result.final), Slot{i, 0});
            ++it->second.count;
        }
    });

    // Merge is associative: least index wins, counts add.
    std::unordered_map<DynamicPart, Slot, DynamicPartHash> merged;
    for (auto& part : partial)
        for (auto& [dp, slot] : part) {
            auto [it, fresh] = merged.try_emplace(dp, slot);
            if (!fresh) {
                it->second.first = std::min(it->second.first, slot.first);
                it->second.count += slot.count;
            }
        }

    CensusResult result;
    result.machine = machine.name();
    result.n = n;
    result.inputs = inputs;
    for (auto t : timeouts) result.timeouts += t;
    for (auto& [dp, slot] : merged)
        result.dps.emplace(dp, DpTally{decode_input(machine, word_at(slot.first, n, radix)), slot.count});
    result.distinct = result.dps.size();
    result.cost_bits = result.distinct ? std::log2(static_cast<double>(result.distinct)) : 0.0;
    result.ceil_bits = ceil_log2(result.distinct);
    const double halted = static_cast<double>(inputs - result.timeouts);
    for (const auto& [dp, tally] : result.dps) {
        const double q = static_cast<double>(tally.count) / halted;
        result.entropy_bits -= q * std::log2(q);
    }
    if (result.entropy_bits <= 0.0) result.entropy_bits = 0.0;
    if (!result.valid()) throw CensusInvalid(std::move(result));
    return result;
}

std::vector<CensusResult> cost_curve(const Machine& machine, std::size_t n_from, std::size_t n_to,
                                     const CensusOptions& options) {
    std::vector<CensusResult> rows;
    for (std::size_t n = n_from; n <= n_to; ++n) rows.push_back(final_dp_census(machine, n, options));
    return rows;
}

FamilyReport family_check(const Machine& machine, std::size_t n, std::uint64_t max_steps) {
    if (!machine.find_input_symbol("a") || !machine.find_input_symbol("b"))
        throw std::invalid_argument("family check needs input symbols 'a' and 'b'");
    RunOptions run_opts;
    run_opts.max_steps = max_steps;
    run_opts.totality = Totality::strict;

    FamilyReport report;
    std::set<DynamicPart> seen;
    bool distinct = true;
    for (std::size_t i = n + 1; i-- > 0;) {
        const std::string input = std::string(i, 'b') + std::string(n - i, 'a');
        const auto result = run(machine, encode_input(machine, input), run_opts);
        if (result.outcome == Outcome::timeout) {
            CensusResult partial;
            partial.machine = machine.name();
            partial.n = n;
            partial.timeouts = 1;
            throw CensusInvalid(std::move(partial));
        }
        FamilyMember m{input, result.outcome, dynamic_part_of(result.final)};
        if (!seen.insert(m.dp).second) distinct = false;
        report.members.push_back(std::move(m));
    }
    report.distinct = distinct;
    return report;
}

bool contains_a(const std::string& input) { return input.find('a') != std::string::npos; }

}  // namespace rotm
