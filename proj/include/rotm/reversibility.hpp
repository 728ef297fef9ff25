#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rotm/machine.hpp"
#include "rotm/simulator.hpp"

namespace rotm {

// A: sighted and blind rules into one target state.
// B: two rules that can fire on the same input cell writing identical
//    content with identical moves.
// C: the same, but with differing moves and no tape that separates them.
struct Violation {
    char condition = 'B';
    StateId target = 0;
    std::size_t rule_a = 0;
    std::size_t rule_b = 0;
    // Nonzero when the rule is considered in its left-end rejection variant:
    // bit t set means work tape t was clamped.
    unsigned clamp_a = 0;
    unsigned clamp_b = 0;
    std::string message;
};

struct StaticReport {
    bool statically_reversible = true;
    std::vector<Violation> violations;
};

// Sound, incomplete: a clean report means no configuration on any input has
// two predecessors.
StaticReport static_check(const Machine& machine);

struct Counterexample {
    std::string input;
    Configuration config;
    std::vector<Configuration> predecessors;
};

struct ExhaustiveReport {
    bool reversible = true;
    std::optional<Counterexample> counterexample;
    std::uint64_t configurations_checked = 0;
    std::uint64_t inputs_checked = 0;
    std::uint64_t timeouts = 0;  // inputs explored only up to max_steps
};

struct ExhaustiveOptions {
    std::size_t max_len = 6;
    std::uint64_t max_steps = 1000;
    unsigned jobs = 1;
};

// Explores every input of length <= max_len (shortest first, then
// lexicographic) and every configuration reached within max_steps. A
// configuration fails when it has two or more predecessors whose dynamic
// parts occur in some explored run.
ExhaustiveReport exhaustive_check(const Machine& machine, const ExhaustiveOptions& options);

}  // namespace rotm
