#pragma once

// Container-and-shutter experiment. Entropies are in bits throughout; multiply
// by k_B ln 2 for thermodynamic units.

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "rotm/census.hpp"
#include "rotm/machine.hpp"

namespace rotm {

// P(at least one all-left observation in T steps) = 1 - (1 - 2^-N)^T.
double analytic_p(std::uint64_t molecules, std::uint64_t steps);
// Same with an arbitrary per-step event probability q.
double analytic_p_from_event(double q, std::uint64_t steps);
// Per-step event probability: all molecules left (threshold 1), or at least
// ceil(threshold * N) of them left.
double event_probability(std::uint64_t molecules, double left_threshold = 1.0);

double binary_entropy(double p);

struct EntropyChange {
    double p = 0.0;
    double dS = 0.0;              // -pN
    double mixing = 0.0;          // H_b(p), at most 1
    double dS_with_mixing = 0.0;  // -pN + H_b(p)
};

EntropyChange expected_entropy_change(std::uint64_t molecules, std::uint64_t steps);

// Per-trial seed: the splitmix64 finalizer applied to seed + (trial+1) * 0x9E3779B97F4A7C15.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial);

struct ExperimentParams {
    std::uint64_t molecules = 10;
    std::uint64_t steps = 1024;
    std::uint64_t trials = 100'000;
    std::uint64_t seed = 42;
    Machine machine;  // shutter controller; recognizes strings containing 'a'
    unsigned jobs = 1;
    double left_threshold = 1.0;  // extension: 1.0 is the all-left event
    bool sample_positions = false;
    std::uint64_t max_machine_steps = 0;  // 0: 16 * (steps + 1)
};

ExperimentParams default_params();

struct DemonStats {
    std::uint64_t trials = 0;
    std::uint64_t closed = 0;
    double empirical_p = 0.0;
    std::int64_t total_dS = 0;  // sum of per-trial entropy changes (-N or 0)
    double mean_dS = 0.0;
    std::map<std::uint64_t, std::uint64_t> a_count_histogram;
    std::map<std::uint64_t, std::uint64_t> close_step_histogram;  // keyed by step in 1..T
};

// Throws MachineMisbehaviorError when the shutter machine's verdict on a
// sampled string disagrees with "contains a" or it fails to halt.
DemonStats simulate_trials(const ExperimentParams& params);

// Exact total variation distance between Binomial(T, 2^-N) and Poisson(T 2^-N).
double poisson_total_variation(std::uint64_t molecules, std::uint64_t steps,
                               std::uint64_t budget = 100'000'000);

struct LedgerReport {
    std::uint64_t molecules = 0;
    std::uint64_t steps = 0;
    double p = 0.0;
    double dS = 0.0;
    double Hb = 0.0;
    double H = 0.0;
    std::string H_provenance;
    bool verdict = false;  // dS >= -H
    std::optional<bool> magnitude_check;  // pN >= log2(T)/2, when T = 2^N
};

struct LedgerOptions {
    std::uint64_t census_limit = std::uint64_t{1} << 20;  // inputs; larger lengths use a closed form
    std::uint64_t max_steps = 1'000'000;
    unsigned jobs = 1;
};

// True for machines that scan for the first 'a': one sighted state that
// accepts on a, loops on b, rejects at the end, and never touches its tapes.
bool is_first_a_scanner(const Machine& machine);

LedgerReport second_law_ledger(std::uint64_t molecules, std::uint64_t steps, const Machine& machine,
                               const LedgerOptions& options = {});

}  // namespace rotm
