#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "rotm/machine.hpp"

namespace rotm {

// Line-oriented machine documents:
//
//   machine <name>
//   input_alphabet: a b
//   work_alphabet: _ 0 1        (first symbol is the work blank)
//   tapes: 1
//   semantics: reverse          (optional; only emitted by invert)
//   state q0 sighted start
//   rule q0 a [_] -> acc [_] [S]
//   rule q1 [X] -> q2 [_] [L]   (blind rules omit the input symbol)
MachineDraft parse_draft(std::string_view text);  // throws ParseError
Machine parse_machine(std::string_view text);     // throws ParseError, ValidationError
Machine load_machine(const std::string& path);

std::string serialize(const Machine& machine);
std::string rule_text(const MachineDraft::Rule& rule);

enum class ValidationMode { strict, lenient };

struct ValidationReport {
    bool valid = true;
    std::vector<std::string> errors;
    std::vector<std::string> warnings;
    std::vector<std::string> unreachable_states;
    std::vector<std::string> duplicates;
    std::vector<std::string> missing;  // undefined transition keys (at most kMissingListed)
    std::uint64_t missing_count = 0;
    std::uint64_t defined_keys = 0;
    std::uint64_t total_keys = 0;

    double coverage() const {
        return total_keys == 0 ? 1.0 : static_cast<double>(defined_keys) / static_cast<double>(total_keys);
    }
};

inline constexpr std::size_t kMissingListed = 64;

// Structural checks always; strict mode additionally requires a total
// transition function over (sighted x input+end x work^k) and (blind x work^k).
ValidationReport validate(const MachineDraft& draft, ValidationMode mode);
ValidationReport validate(const Machine& machine, ValidationMode mode);

// Structural problems only (what Machine::build rejects).
std::vector<std::string> structural_problems(const MachineDraft& draft);

}  // namespace rotm
