#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rotm/machine.hpp"
#include "rotm/simulator.hpp"

namespace rotm {

inline constexpr std::size_t kDefaultHistoryCap = 4096;

// Adds a history tape (appended as the last tape). Every rule also writes its
// own fresh history symbol at the history head and moves that head right.
Machine landauer_embed(const Machine& machine, std::size_t symbol_cap = kDefaultHistoryCap);

// Names of the history symbols added by landauer_embed, in rule-id order of
// the source machine.
std::vector<std::string> history_symbols(const Machine& original, const Machine& embedded);

// Reverse machine: each rule swaps source/target and read/write and negates
// its moves. Forward machines must pass static_check. Inverting a reverse
// machine gives back the forward one.
Machine invert_rules(const Machine& machine);

struct Cleanliness {
    std::uint64_t garbage_cells = 0;      // non-blank cells off the output tape
    std::uint64_t head_displacement = 0;  // sum of |head - 1| off the output tape
    Position input_head = 1;
    std::vector<std::string> details;

    bool clean() const { return garbage_cells == 0 && head_displacement == 0; }
};

// Garbage left in a halted configuration. The output tape defaults to the
// last work tape. Cell garbage only: a clean report can still leave an
// input-dependent dynamic part (e.g. the input head).
Cleanliness cleanliness_report(const Configuration& config, std::optional<std::size_t> output_tape = std::nullopt);

struct StageLog {
    std::string name;
    std::uint64_t steps = 0;
    std::string note;
};

struct PipelineOptions {
    std::uint64_t max_steps = 1'000'000;  // per stage
};

struct PipelineResult {
    Outcome outcome = Outcome::timeout;  // outcome of the forward simulation
    std::string output;
    std::vector<StageLog> stages;  // copy, forward, output-copy, backward, erase
    std::vector<std::string> meta_steps;
    Cleanliness cleanliness;
    // Tapes: the machine's tapes, then history, then the output copy.
    Configuration final;
    Configuration after_copy;      // start of the forward run (history blank)
    Configuration after_forward;   // before uncomputation
    Configuration after_backward;  // must equal after_copy
    std::uint64_t forward_steps = 0;
    std::uint64_t backward_steps = 0;
};

// Two input passes, zero residual garbage: copy the input onto tape 1,
// run the history-recording machine, copy out the result, uncompute, then
// erase tape 1 against a second pass over the input.
PipelineResult read_twice_pipeline(const Machine& machine, const Word& input, const PipelineOptions& options = {});

// Direct (irreversible) evaluation of a function machine: tape 1 preloaded
// with the input, result read off the last tape. nullopt unless it accepts.
std::optional<std::string> direct_output(const Machine& machine, const Word& input,
                                         std::uint64_t max_steps = 1'000'000);

std::string tape_text(const Machine& machine, const WorkTape& tape);

}  // namespace rotm
