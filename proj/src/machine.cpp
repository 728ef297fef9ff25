#include "rotm/machine.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "rotm/parser.hpp"

namespace rotm {

namespace {

std::string join_problems(const std::vector<std::string>& problems) {
    std::string out = "invalid machine:";
    for (const auto& p : problems) out += "\n  " + p;
    return out;
}

template <class T>
std::optional<int> index_of(const std::vector<T>& v, const T& x) {
    auto it = std::find(v.begin(), v.end(), x);
    if (it == v.end()) return std::nullopt;
    return static_cast<int>(it - v.begin());
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> problems_)
    : std::runtime_error(join_problems(problems_)), problems(std::move(problems_)) {}

const char* to_string(StateKind kind) {
    switch (kind) {
        case StateKind::sighted: return "sighted";
        case StateKind::blind: return "blind";
        case StateKind::accept: return "accept";
        case StateKind::reject: return "reject";
    }
    return "?";
}

StateKind state_kind_from_string(const std::string& s) {
    if (s == "sighted") return StateKind::sighted;
    if (s == "blind") return StateKind::blind;
    if (s == "accept") return StateKind::accept;
    if (s == "reject") return StateKind::reject;
    throw std::invalid_argument("unknown state kind '" + s + "'");
}

Machine Machine::build(const MachineDraft& draft) {
    if (auto problems = structural_problems(draft); !problems.empty())
        throw ValidationError(std::move(problems));

    Machine m;
    m.name_ = draft.name;
    m.semantics_ = draft.semantics;
    m.input_alphabet_ = draft.input_alphabet;
    m.work_alphabet_ = draft.work_alphabet;
    m.tape_count_ = draft.tape_count;

    auto states = draft.states;
    std::sort(states.begin(), states.end(),
              [](const auto& a, const auto& b) { return a.name < b.name; });
    std::map<std::string, StateId> state_ids;
    for (const auto& s : states) {
        state_ids[s.name] = static_cast<StateId>(m.states_.size());
        if (s.kind == StateKind::accept) m.accept_ = static_cast<StateId>(m.states_.size());
        if (s.kind == StateKind::reject) m.reject_ = static_cast<StateId>(m.states_.size());
        m.states_.push_back({s.name, s.kind});
    }
    m.start_ = state_ids.at(draft.start);

    std::vector<std::pair<std::string, const MachineDraft::Rule*>> ordered;
    for (const auto& r : draft.rules) ordered.emplace_back(rule_text(r), &r);
    std::sort(ordered.begin(), ordered.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    auto work_ids = [&](const std::vector<std::string>& syms) {
        std::vector<SymbolId> out;
        for (const auto& s : syms) out.push_back(*index_of(m.work_alphabet_, s));
        return out;
    };
    for (const auto& [text, r] : ordered) {
        Rule rule;
        rule.source = state_ids.at(r->source);
        rule.target = state_ids.at(r->target);
        if (r->input) {
            rule.read_input = *r->input == std::string(1, kInputEndChar)
                                  ? kInputEnd
                                  : *index_of(m.input_alphabet_, *r->input);
        }
        rule.read_work = work_ids(r->read);
        rule.write_work = work_ids(r->write);
        rule.move_work = r->moves;
        m.rules_.push_back(std::move(rule));
    }

    m.rules_from_.assign(m.states_.size(), {});
    m.rules_into_.assign(m.states_.size(), {});
    for (std::size_t i = 0; i < m.rules_.size(); ++i) {
        m.rules_from_[m.rules_[i].source].push_back(i + 1);
        m.rules_into_[m.rules_[i].target].push_back(i + 1);
    }

    if (m.semantics_ == Semantics::forward) {
        // structural_problems has already rejected key collisions and radix overflow.
        for (std::size_t i = 0; i < m.rules_.size(); ++i) {
            const Rule& r = m.rules_[i];
            m.index_.emplace(m.encode_key(r.source, r.read_input.value_or(kInputEnd), r.read_work.data()),
                             i + 1);
        }
    }
    return m;
}

std::uint64_t Machine::encode_key(StateId state, SymbolId input, const SymbolId* work) const {
    std::uint64_t key = static_cast<std::uint64_t>(state);
    const std::uint64_t input_radix = input_alphabet_.size() + 2;
    const bool sighted = states_[state].kind == StateKind::sighted;
    key = key * input_radix + (sighted ? static_cast<std::uint64_t>(input + 2) : 0);
    const std::uint64_t work_radix = work_alphabet_.size();
    for (int t = 0; t < tape_count_; ++t) key = key * work_radix + static_cast<std::uint64_t>(work[t]);
    return key;
}

std::size_t Machine::lookup(StateId state, SymbolId input, const SymbolId* work) const {
    auto it = index_.find(encode_key(state, input, work));
    return it == index_.end() ? 0 : it->second;
}

std::optional<StateId> Machine::find_state(const std::string& name) const {
    for (std::size_t i = 0; i < states_.size(); ++i)
        if (states_[i].name == name) return static_cast<StateId>(i);
    return std::nullopt;
}

std::optional<SymbolId> Machine::find_input_symbol(const std::string& s) const {
    if (s == std::string(1, kInputEndChar)) return kInputEnd;
    return index_of(input_alphabet_, s);
}

std::optional<SymbolId> Machine::find_work_symbol(const std::string& s) const {
    return index_of(work_alphabet_, s);
}

std::string Machine::input_symbol_name(SymbolId s) const {
    return s == kInputEnd ? std::string(1, kInputEndChar) : input_alphabet_.at(s);
}

MachineDraft Machine::draft() const { return draft_with_name(name_); }

MachineDraft Machine::draft_with_name(std::string name) const {
    MachineDraft d;
    d.name = std::move(name);
    d.input_alphabet = input_alphabet_;
    d.work_alphabet = work_alphabet_;
    d.tape_count = tape_count_;
    d.semantics = semantics_;
    for (const auto& s : states_) d.states.push_back({s.name, s.kind, 0});
    d.start = states_[start_].name;
    for (const auto& r : rules_) {
        MachineDraft::Rule dr;
        dr.source = states_[r.source].name;
        dr.target = states_[r.target].name;
        if (r.read_input) dr.input = input_symbol_name(*r.read_input);
        for (auto s : r.read_work) dr.read.push_back(work_alphabet_[s]);
        for (auto s : r.write_work) dr.write.push_back(work_alphabet_[s]);
        dr.moves = r.move_work;
        d.rules.push_back(std::move(dr));
    }
    return d;
}

bool Machine::operator==(const Machine& o) const {
    return name_ == o.name_ && semantics_ == o.semantics_ && input_alphabet_ == o.input_alphabet_ &&
           work_alphabet_ == o.work_alphabet_ && tape_count_ == o.tape_count_ && states_ == o.states_ &&
           start_ == o.start_ && rules_ == o.rules_;
}

void WorkTape::put(Position p, SymbolId s) {
    if (static_cast<std::size_t>(p) > cells.size()) {
        if (s == kWorkBlank) return;
        cells.resize(static_cast<std::size_t>(p), kWorkBlank);
    }
    cells[p - 1] = s;
}

void WorkTape::trim() {
    while (!cells.empty() && cells.back() == kWorkBlank) cells.pop_back();
}

std::size_t WorkTape::non_blank_cells() const {
    return static_cast<std::size_t>(
        std::count_if(cells.begin(), cells.end(), [](SymbolId s) { return s != kWorkBlank; }));
}

std::size_t DynamicPartHash::operator()(const DynamicPart& dp) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](std::uint64_t v) {
        h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    };
    mix(static_cast<std::uint64_t>(dp.state));
    mix(static_cast<std::uint64_t>(dp.input_head));
    for (std::size_t t = 0; t < dp.contents.size(); ++t) {
        mix(dp.contents[t].size());
        for (auto s : dp.contents[t]) mix(static_cast<std::uint64_t>(s));
        mix(static_cast<std::uint64_t>(dp.heads[t]));
    }
    return static_cast<std::size_t>(h);
}

DynamicPart dynamic_part_of(const Configuration& config) {
    DynamicPart dp;
    dp.state = config.state;
    dp.input_head = config.input_head;
    dp.contents.reserve(config.tapes.size());
    dp.heads.reserve(config.tapes.size());
    for (const auto& tape : config.tapes) {
        auto cells = tape.cells;
        while (!cells.empty() && cells.back() == kWorkBlank) cells.pop_back();
        dp.contents.push_back(std::move(cells));
        dp.heads.push_back(tape.head);
    }
    return dp;
}

Position focus_of(const DynamicPart& dp) { return dp.input_head; }

Halt halt_of(const Machine& machine, StateId state) {
    switch (machine.kind(state)) {
        case StateKind::accept: return Halt::accepted;
        case StateKind::reject: return Halt::rejected;
        default: return Halt::running;
    }
}

Configuration configuration_of(const Machine& machine, const DynamicPart& dp) {
    Configuration c;
    c.state = dp.state;
    c.input_head = dp.input_head;
    for (std::size_t t = 0; t < dp.contents.size(); ++t) c.tapes.push_back({dp.contents[t], dp.heads[t]});
    c.halted = halt_of(machine, dp.state);
    return c;
}

bool operator==(const Configuration& a, const Configuration& b) {
    return a.halted == b.halted && dynamic_part_of(a) == dynamic_part_of(b);
}

namespace {

std::string format_cells(const Machine& machine, const std::vector<SymbolId>& cells, Position head) {
    std::string out = "[";
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out += ' ';
        out += machine.work_symbol_name(cells[i]);
    }
    out += "]@" + std::to_string(head);
    return out;
}

}  // namespace

std::string format_tapes(const Machine& machine, const Configuration& config) {
    const DynamicPart dp = dynamic_part_of(config);
    std::string out;
    for (std::size_t t = 0; t < dp.contents.size(); ++t) {
        if (t) out += ';';
        out += format_cells(machine, dp.contents[t], dp.heads[t]);
    }
    return out;
}

std::string format_dp(const Machine& machine, const DynamicPart& dp) {
    std::ostringstream out;
    out << machine.states().at(dp.state).name << '@' << dp.input_head << ' ';
    for (std::size_t t = 0; t < dp.contents.size(); ++t) {
        if (t) out << ';';
        out << format_cells(machine, dp.contents[t], dp.heads[t]);
    }
    return out.str();
}

}  // namespace rotm
