#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rotm/machine.hpp"

namespace rotm {

// An input string as input-alphabet symbol ids.
using Word = std::vector<SymbolId>;

Word encode_input(const Machine& machine, std::string_view text);  // throws InputAlphabetError
std::string decode_input(const Machine& machine, const Word& word);

inline SymbolId input_at(const Word& word, Position p) {
    return p >= 1 && static_cast<std::size_t>(p) <= word.size() ? word[p - 1] : kInputEnd;
}

// What happens on an undefined transition key: lenient rejects in place,
// strict throws UndefinedTransitionError.
enum class Totality { strict, lenient };

Configuration initial_configuration(const Machine& machine, const Word& input);
Configuration initial_configuration(const Machine& machine, std::string_view input);

// Rule id applicable to a running configuration under forward semantics, 0 if none.
std::size_t matching_rule(const Machine& machine, const Configuration& config, const Word& input);

// Applies a forward rule in place. A work head pushed off the left end is
// clamped at 1 and the machine enters the reject state.
void apply_rule(const Machine& machine, std::size_t rule_id, Configuration& config);

Configuration step(const Machine& machine, const Configuration& config, const Word& input,
                   Totality totality = Totality::lenient);  // throws HaltedError

enum class Outcome { accepted, rejected, timeout };
const char* to_string(Outcome outcome);

struct TraceEntry {
    std::uint64_t step = 0;   // 0 is the initial configuration
    std::size_t rule_id = 0;  // rule applied to reach `config`; 0 for the initial entry
    Configuration config;
};

struct RunOptions {
    std::uint64_t max_steps = 1'000'000;
    bool trace = false;
    Totality totality = Totality::lenient;
};

struct RunResult {
    Outcome outcome = Outcome::timeout;
    Configuration final;
    std::uint64_t steps = 0;
    std::vector<TraceEntry> trace;
};

RunResult run(const Machine& machine, const Word& input, const RunOptions& options = {});
RunResult run_from(const Machine& machine, Configuration start, const Word& input,
                   const RunOptions& options = {});

// Every configuration c' over the same input with step(c') == c, reachable or
// not. Sorted by dynamic part.
std::vector<Configuration> predecessors(const Machine& machine, const Configuration& config,
                                        const Word& input, Totality totality = Totality::strict);

// Reverse-semantics machines (see invert_rules): one backward step, or
// nullopt when no rule applies.
std::optional<Configuration> step_reverse(const Machine& inverse, const Configuration& config,
                                          const Word& input);

struct ReverseRunResult {
    Configuration final;
    std::uint64_t steps = 0;
    bool exhausted = false;  // stopped because no rule applied
};

ReverseRunResult run_reverse(const Machine& inverse, Configuration start, const Word& input,
                             std::uint64_t max_steps);

std::string format_trace_line(const Machine& machine, const TraceEntry& entry);

}  // namespace rotm
