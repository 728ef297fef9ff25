#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "rotm/machine.hpp"
#include "rotm/simulator.hpp"

namespace rotm {

inline constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 28;

struct CensusOptions {
    std::uint64_t max_steps = 1'000'000;
    std::uint64_t budget = kDefaultBudget;  // max |Sigma|^n inputs
    unsigned jobs = 1;
};

struct DpTally {
    std::string witness;     // lexicographically least input ending here
    std::uint64_t count = 0; // inputs ending here
};

// Final dynamic parts over all inputs of one length.
struct CensusResult {
    std::string machine;
    std::size_t n = 0;
    std::uint64_t inputs = 0;
    std::uint64_t distinct = 0;  // D(n)
    double cost_bits = 0.0;      // log2 D(n)
    std::uint64_t ceil_bits = 0; // ceil(log2 D(n))
    double entropy_bits = 0.0;   // entropy of the final dp under uniform inputs (not a worst-case cost)
    std::uint64_t timeouts = 0;
    std::map<DynamicPart, DpTally> dps;

    bool valid() const { return timeouts == 0; }
};

struct CensusInvalid : std::runtime_error {
    explicit CensusInvalid(CensusResult partial);
    CensusResult partial;
};

std::uint64_t ceil_log2(std::uint64_t d);

// Runs every input of length n; throws BudgetError past the budget and
// CensusInvalid when any run times out.
CensusResult final_dp_census(const Machine& machine, std::size_t n, const CensusOptions& options = {});

std::vector<CensusResult> cost_curve(const Machine& machine, std::size_t n_from, std::size_t n_to,
                                     const CensusOptions& options = {});

struct FamilyMember {
    std::string input;
    Outcome outcome = Outcome::timeout;
    DynamicPart dp;
};

struct FamilyReport {
    bool distinct = false;
    std::vector<FamilyMember> members;  // b^n, b^(n-1)a, ..., a^n
};

// Runs the n+1 inputs b^i a^(n-i) and reports whether their final dynamic
// parts are pairwise distinct.
FamilyReport family_check(const Machine& machine, std::size_t n, std::uint64_t max_steps = 1'000'000);

// Membership in the language of strings containing an 'a'.
bool contains_a(const std::string& input);

}  // namespace rotm
