#pragma once

// Read-once Turing machine model: machine descriptions, configurations and
// their dynamic parts.
//
// A machine has one right-moving input head and k >= 1 work tapes. Sighted
// states read the input cell under the input head and advance it by one;
// blind states ignore the input and leave the head where it is. Positions
// are 1-based on every tape. Input cells past the end read the end marker.

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "rotm/errors.hpp"

namespace rotm {

enum class StateKind { sighted, blind, accept, reject };

// Forward machines apply read/write then move. Reverse machines (produced by
// invert_rules) undo a forward step: move first, then read/write.
enum class Semantics { forward, reverse };

using SymbolId = int;
using StateId = int;
using Position = std::int64_t;

// Input end marker; input symbols are 0..|input_alphabet|-1.
inline constexpr SymbolId kInputEnd = -1;
// The work blank is always the first declared work symbol.
inline constexpr SymbolId kWorkBlank = 0;
inline constexpr char kInputEndChar = '<';

const char* to_string(StateKind kind);
StateKind state_kind_from_string(const std::string& s);  // throws std::invalid_argument

// Name-level description, as written in a machine document. Transformations
// build one of these and hand it to Machine::build.
struct MachineDraft {
    struct State {
        std::string name;
        StateKind kind = StateKind::sighted;
        int line = 0;
    };
    struct Rule {
        std::string source;
        std::optional<std::string> input;  // "<" denotes the end marker
        std::vector<std::string> read;
        std::string target;
        std::vector<std::string> write;
        std::vector<int> moves;
        int line = 0;
    };

    std::string name;
    std::vector<std::string> input_alphabet;
    std::vector<std::string> work_alphabet;
    int tape_count = 1;
    Semantics semantics = Semantics::forward;
    std::vector<State> states;
    std::string start;
    std::vector<Rule> rules;
};

struct Rule {
    StateId source = 0;
    std::optional<SymbolId> read_input;  // present iff the rule is sighted
    std::vector<SymbolId> read_work;
    StateId target = 0;
    std::vector<SymbolId> write_work;
    std::vector<int> move_work;  // each in {-1, 0, +1}

    bool sighted() const { return read_input.has_value(); }
    bool operator==(const Rule&) const = default;
};

struct StateInfo {
    std::string name;
    StateKind kind;
    bool operator==(const StateInfo&) const = default;
};

// Validated, canonical, immutable machine. States are sorted by name and
// rules by their serialized text; rule ids are 1..R in that order.
class Machine {
public:
    static Machine build(const MachineDraft& draft);  // throws ValidationError

    const std::string& name() const { return name_; }
    Semantics semantics() const { return semantics_; }
    const std::vector<std::string>& input_alphabet() const { return input_alphabet_; }
    const std::vector<std::string>& work_alphabet() const { return work_alphabet_; }
    int tape_count() const { return tape_count_; }
    const std::vector<StateInfo>& states() const { return states_; }
    StateId start() const { return start_; }
    StateId accept_state() const { return accept_; }
    StateId reject_state() const { return reject_; }
    const std::vector<Rule>& rules() const { return rules_; }
    const Rule& rule(std::size_t id) const { return rules_.at(id - 1); }

    StateKind kind(StateId s) const { return states_[s].kind; }
    bool halting(StateId s) const {
        return states_[s].kind == StateKind::accept || states_[s].kind == StateKind::reject;
    }
    std::optional<StateId> find_state(const std::string& name) const;
    std::optional<SymbolId> find_input_symbol(const std::string& s) const;
    std::optional<SymbolId> find_work_symbol(const std::string& s) const;
    std::string input_symbol_name(SymbolId s) const;
    const std::string& work_symbol_name(SymbolId s) const { return work_alphabet_.at(s); }

    // Rule ids (1-based) whose source / target is the given state.
    const std::vector<std::size_t>& rules_from(StateId s) const { return rules_from_[s]; }
    const std::vector<std::size_t>& rules_into(StateId s) const { return rules_into_[s]; }

    // Forward lookup of the rule applicable in `state` reading `input` (ignored
    // for blind states) and the scanned work symbols. Returns a rule id or 0.
    std::size_t lookup(StateId state, SymbolId input, const SymbolId* work) const;

    MachineDraft draft() const;
    MachineDraft draft_with_name(std::string name) const;

    bool operator==(const Machine& other) const;

private:
    std::uint64_t encode_key(StateId state, SymbolId input, const SymbolId* work) const;

    std::string name_;
    Semantics semantics_ = Semantics::forward;
    std::vector<std::string> input_alphabet_;
    std::vector<std::string> work_alphabet_;
    int tape_count_ = 1;
    std::vector<StateInfo> states_;
    StateId start_ = 0;
    StateId accept_ = 0;
    StateId reject_ = 0;
    std::vector<Rule> rules_;
    std::vector<std::vector<std::size_t>> rules_from_;
    std::vector<std::vector<std::size_t>> rules_into_;
    std::unordered_map<std::uint64_t, std::size_t> index_;
};

enum class Halt { running, accepted, rejected };

struct WorkTape {
    std::vector<SymbolId> cells;  // cells[i] is position i+1; blank beyond
    Position head = 1;

    SymbolId at(Position p) const {
        return p >= 1 && static_cast<std::size_t>(p) <= cells.size() ? cells[p - 1] : kWorkBlank;
    }
    SymbolId read() const { return at(head); }
    void put(Position p, SymbolId s);
    void trim();
    std::size_t non_blank_cells() const;
};

struct Configuration {
    StateId state = 0;
    Position input_head = 1;
    std::vector<WorkTape> tapes;
    Halt halted = Halt::running;
};

// Configuration minus the input string: state, input head, trimmed work tape
// contents and work head positions.
struct DynamicPart {
    StateId state = 0;
    Position input_head = 1;
    std::vector<std::vector<SymbolId>> contents;
    std::vector<Position> heads;

    auto operator<=>(const DynamicPart&) const = default;
    bool operator==(const DynamicPart&) const = default;
};

struct DynamicPartHash {
    std::size_t operator()(const DynamicPart& dp) const noexcept;
};

DynamicPart dynamic_part_of(const Configuration& config);
Position focus_of(const DynamicPart& dp);

// Rebuilds a configuration from a dynamic part (halted flag derived from the
// machine's state kinds).
Configuration configuration_of(const Machine& machine, const DynamicPart& dp);

Halt halt_of(const Machine& machine, StateId state);

// Configurations compare by dynamic part plus halting flag.
bool operator==(const Configuration& a, const Configuration& b);

std::string format_tapes(const Machine& machine, const Configuration& config);
std::string format_dp(const Machine& machine, const DynamicPart& dp);

}  // namespace rotm
