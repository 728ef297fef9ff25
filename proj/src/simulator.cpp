#include "rotm/simulator.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace rotm {

Word encode_input(const Machine& machine, std::string_view text) {
    Word word;
    word.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        auto id = machine.find_input_symbol(std::string(1, text[i]));
        if (!id || *id == kInputEnd) throw InputAlphabetError(i + 1, text[i]);
        word.push_back(*id);
    }
    return word;
}

std::string decode_input(const Machine& machine, const Word& word) {
    std::string out;
    for (auto s : word) out += machine.input_symbol_name(s);
    return out;
}

Configuration initial_configuration(const Machine& machine, const Word& input) {
    for (std::size_t i = 0; i < input.size(); ++i)
        if (input[i] < 0 || input[i] >= static_cast<SymbolId>(machine.input_alphabet().size()))
            throw InputAlphabetError(i + 1, '?');
    Configuration c;
    c.state = machine.start();
    c.input_head = 1;
    c.tapes.assign(static_cast<std::size_t>(machine.tape_count()), WorkTape{});
    c.halted = halt_of(machine, c.state);
    return c;
}

Configuration initial_configuration(const Machine& machine, std::string_view input) {
    return initial_configuration(machine, encode_input(machine, input));
}

std::size_t matching_rule(const Machine& machine, const Configuration& config, const Word& input) {
    SymbolId work[16];
    std::vector<SymbolId> spill;
    SymbolId* scanned = work;
    if (config.tapes.size() > 16) {
        spill.resize(config.tapes.size());
        scanned = spill.data();
    }
    for (std::size_t t = 0; t < config.tapes.size(); ++t) scanned[t] = config.tapes[t].read();
    return machine.lookup(config.state, input_at(input, config.input_head), scanned);
}

void apply_rule(const Machine& machine, std::size_t rule_id, Configuration& config) {
    const Rule& r = machine.rule(rule_id);
    if (r.sighted()) ++config.input_head;
    bool fell_off = false;
    for (std::size_t t = 0; t < config.tapes.size(); ++t) {
        WorkTape& tape = config.tapes[t];
        tape.put(tape.head, r.write_work[t]);
        tape.head += r.move_work[t];
        if (tape.head < 1) {
            tape.head = 1;
            fell_off = true;
        }
    }
    config.state = fell_off ? machine.reject_state() : r.target;
    config.halted = halt_of(machine, config.state);
}

namespace {

// Advances `config` one step in place; returns the applied rule id (0 when
// an undefined key rejected in place).
std::size_t advance(const Machine& machine, Configuration& config, const Word& input, Totality totality) {
    if (config.halted != Halt::running) throw HaltedError();
    const std::size_t id = matching_rule(machine, config, input);
    if (id == 0) {
        if (totality == Totality::strict) {
            std::ostringstream msg;
            msg << "no rule for state '" << machine.states()[config.state].name << "' reading input '"
                << machine.input_symbol_name(input_at(input, config.input_head)) << "' and work [";
            for (std::size_t t = 0; t < config.tapes.size(); ++t)
                msg << (t ? " " : "") << machine.work_symbol_name(config.tapes[t].read());
            msg << "]";
            throw UndefinedTransitionError(msg.str());
        }
        config.state = machine.reject_state();
        config.halted = Halt::rejected;
        return 0;
    }
    apply_rule(machine, id, config);
    return id;
}

}  // namespace

Configuration step(const Machine& machine, const Configuration& config, const Word& input, Totality totality) {
    Configuration next = config;
    advance(machine, next, input, totality);
    return next;
}

const char* to_string(Outcome outcome) {
    switch (outcome) {
        case Outcome::accepted: return "accepted";
        case Outcome::rejected: return "rejected";
        case Outcome::timeout: return "timeout";
    }
    return "?";
}

RunResult run_from(const Machine& machine, Configuration config, const Word& input, const RunOptions& options) {
    RunResult result;
    if (options.trace) result.trace.push_back({0, 0, config});
    while (config.halted == Halt::running && result.steps < options.max_steps) {
        const std::size_t id = advance(machine, config, input, options.totality);
        ++result.steps;
        if (options.trace) result.trace.push_back({result.steps, id, config});
    }
    switch (config.halted) {
        case Halt::accepted: result.outcome = Outcome::accepted; break;
        case Halt::rejected: result.outcome = Outcome::rejected; break;
        case Halt::running: result.outcome = Outcome::timeout; break;
    }
    result.final = std::move(config);
    return result;
}

RunResult run(const Machine& machine, const Word& input, const RunOptions& options) {
    return run_from(machine, initial_configuration(machine, input), input, options);
}

std::vector<Configuration> predecessors(const Machine& machine, const Configuration& config, const Word& input,
                                        Totality totality) {
    const std::size_t k = config.tapes.size();
    std::set<DynamicPart> found;
    auto consider = [&](Configuration candidate) {
        candidate.halted = halt_of(machine, candidate.state);
        if (candidate.halted != Halt::running) return;
        if (candidate.input_head < 1) return;
        for (const auto& tape : candidate.tapes)
            if (tape.head < 1) return;
        try {
            if (step(machine, candidate, input, totality) == config) found.insert(dynamic_part_of(candidate));
        } catch (const UndefinedTransitionError&) {
        }
    };

    for (StateId s = 0; s < static_cast<StateId>(machine.states().size()); ++s) {
        for (std::size_t id : machine.rules_from(s)) {
            const Rule& r = machine.rule(id);
            // Tapes moved left from head 1 clamp and force the reject state, so
            // each such tape may or may not have been clamped.
            std::vector<std::size_t> clampable;
            for (std::size_t t = 0; t < k; ++t)
                if (r.move_work[t] < 0 && config.tapes[t].head == 1) clampable.push_back(t);
            const std::size_t variants = std::size_t{1} << clampable.size();
            for (std::size_t mask = 0; mask < variants; ++mask) {
                if (mask == 0 && r.target != config.state) continue;
                if (mask != 0 && config.state != machine.reject_state()) continue;
                Configuration c = config;
                c.state = r.source;
                if (r.sighted()) --c.input_head;
                bool ok = true;
                for (std::size_t t = 0; t < k && ok; ++t) {
                    bool clamped = false;
                    for (std::size_t b = 0; b < clampable.size(); ++b)
                        if (clampable[b] == t && (mask >> b) & 1) clamped = true;
                    WorkTape& tape = c.tapes[t];
                    tape.head = clamped ? 1 : config.tapes[t].head - r.move_work[t];
                    if (tape.head < 1 || tape.at(tape.head) != r.write_work[t]) {
                        ok = false;
                        break;
                    }
                    tape.put(tape.head, r.read_work[t]);
                }
                if (ok) consider(std::move(c));
            }
        }
    }

    // Lenient mode also rejects in place on undefined keys.
    if (totality == Totality::lenient && config.state == machine.reject_state()) {
        for (StateId s = 0; s < static_cast<StateId>(machine.states().size()); ++s) {
            if (machine.halting(s)) continue;
            Configuration c = config;
            c.state = s;
            c.halted = Halt::running;
            if (matching_rule(machine, c, input) == 0) consider(std::move(c));
        }
    }

    std::vector<Configuration> out;
    for (const auto& dp : found) out.push_back(configuration_of(machine, dp));
    return out;
}

std::optional<Configuration> step_reverse(const Machine& inverse, const Configuration& config, const Word& input) {
    for (std::size_t id : inverse.rules_from(config.state)) {
        const Rule& r = inverse.rule(id);
        Configuration c = config;
        bool ok = true;
        if (r.sighted()) {
            --c.input_head;
            ok = c.input_head >= 1 && input_at(input, c.input_head) == *r.read_input;
        }
        for (std::size_t t = 0; t < c.tapes.size() && ok; ++t) {
            WorkTape& tape = c.tapes[t];
            tape.head += r.move_work[t];
            if (tape.head < 1 || tape.read() != r.read_work[t]) {
                ok = false;
                break;
            }
            tape.put(tape.head, r.write_work[t]);
        }
        if (!ok) continue;
        c.state = r.target;
        c.halted = halt_of(inverse, c.state);
        return c;
    }
    return std::nullopt;
}

ReverseRunResult run_reverse(const Machine& inverse, Configuration start, const Word& input,
                             std::uint64_t max_steps) {
    ReverseRunResult result;
    result.final = std::move(start);
    while (result.steps < max_steps) {
        auto prev = step_reverse(inverse, result.final, input);
        if (!prev) {
            result.exhausted = true;
            break;
        }
        result.final = std::move(*prev);
        ++result.steps;
    }
    return result;
}

std::string format_trace_line(const Machine& machine, const TraceEntry& entry) {
    std::ostringstream out;
    out << "step=" << entry.step << " state=" << machine.states()[entry.config.state].name
        << " ihead=" << entry.config.input_head << " rule=";
    if (entry.rule_id == 0)
        out << '-';
    else
        out << entry.rule_id;
    out << " tapes=" << format_tapes(machine, entry.config);
    return out.str();
}

}  // namespace rotm
