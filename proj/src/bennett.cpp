#include "rotm/bennett.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

#include "rotm/reversibility.hpp"

namespace rotm {

namespace {

std::string history_prefix(const Machine& machine) {
    std::string prefix = "h";
    auto clashes = [&](const std::string& p) {
        for (const auto& s : machine.work_alphabet())
            if (s.size() > p.size() && s.compare(0, p.size(), p) == 0 &&
                std::all_of(s.begin() + static_cast<std::ptrdiff_t>(p.size()), s.end(),
                            [](char c) { return c >= '0' && c <= '9'; }))
                return true;
        return false;
    };
    while (clashes(prefix)) prefix += "h";
    return prefix;
}

// One-tape machine copying its input onto a blank tape, head ending past it.
Machine copy_machine(const std::vector<std::string>& symbols, const std::string& blank) {
    MachineDraft d;
    d.name = "copy";
    d.input_alphabet = symbols;
    d.work_alphabet = {blank};
    for (const auto& s : symbols)
        if (s != blank) d.work_alphabet.push_back(s);
    d.states = {{"copy", StateKind::sighted, 0}, {"done", StateKind::accept, 0}, {"fail", StateKind::reject, 0}};
    d.start = "copy";
    for (const auto& s : symbols) d.rules.push_back({"copy", s, {blank}, "copy", {s}, {+1}, 0});
    d.rules.push_back({"copy", "<", {blank}, "done", {blank}, {0}, 0});
    return Machine::build(d);
}

// One-tape machine blanking each cell that matches the next input symbol.
Machine erase_machine(const std::vector<std::string>& symbols, const std::string& blank) {
    MachineDraft d;
    d.name = "erase";
    d.input_alphabet = symbols;
    d.work_alphabet = {blank};
    for (const auto& s : symbols) d.work_alphabet.push_back(s);
    d.states = {{"erase", StateKind::sighted, 0}, {"done", StateKind::accept, 0}, {"fail", StateKind::reject, 0}};
    d.start = "erase";
    for (const auto& s : symbols) d.rules.push_back({"erase", s, {s}, "erase", {blank}, {+1}, 0});
    d.rules.push_back({"erase", "<", {blank}, "done", {blank}, {0}, 0});
    return Machine::build(d);
}

// Re-expresses tape cells from one machine's work alphabet in another's.
WorkTape translate(const WorkTape& tape, const Machine& from, const Machine& to) {
    WorkTape out;
    out.head = tape.head;
    for (auto s : tape.cells) {
        auto id = to.find_work_symbol(from.work_symbol_name(s));
        if (!id) throw std::invalid_argument("symbol '" + from.work_symbol_name(s) + "' has no counterpart");
        out.cells.push_back(*id);
    }
    return out;
}

WorkTape preload(const Machine& machine, const Machine& reader, const Word& input) {
    WorkTape tape;
    for (auto s : input) {
        auto id = machine.find_work_symbol(reader.input_symbol_name(s));
        if (!id)
            throw std::invalid_argument("work alphabet of '" + machine.name() + "' lacks input symbol '" +
                                        reader.input_symbol_name(s) + "'");
        tape.cells.push_back(*id);
    }
    return tape;
}

}  // namespace

Machine landauer_embed(const Machine& machine, std::size_t symbol_cap) {
    if (machine.semantics() != Semantics::forward)
        throw std::invalid_argument("landauer_embed expects a forward machine");
    if (machine.rules().size() > symbol_cap)
        throw AlphabetOverflowError("history alphabet needs " + std::to_string(machine.rules().size()) +
                                    " symbols, cap is " + std::to_string(symbol_cap));
    const std::string prefix = history_prefix(machine);
    MachineDraft d = machine.draft_with_name(machine.name() + "_hist");
    d.tape_count += 1;
    for (std::size_t id = 1; id <= d.rules.size(); ++id) {
        const std::string sym = prefix + std::to_string(id);
        d.work_alphabet.push_back(sym);
        auto& r = d.rules[id - 1];
        r.read.push_back(d.work_alphabet.front());
        r.write.push_back(sym);
        r.moves.push_back(+1);
    }
    return Machine::build(d);
}

std::vector<std::string> history_symbols(const Machine& original, const Machine& embedded) {
    return {embedded.work_alphabet().begin() + static_cast<std::ptrdiff_t>(original.work_alphabet().size()),
            embedded.work_alphabet().end()};
}

Machine invert_rules(const Machine& machine) {
    std::string name = machine.name();
    if (machine.semantics() == Semantics::forward) {
        const auto report = static_check(machine);
        if (!report.statically_reversible)
            throw NotStaticallyReversibleError("machine '" + machine.name() + "' is not statically reversible: " +
                                               report.violations.front().message);
        name += "_rev";
    } else if (name.size() > 4 && name.compare(name.size() - 4, 4, "_rev") == 0) {
        name.resize(name.size() - 4);
    } else {
        name += "_fwd";
    }
    MachineDraft d = machine.draft_with_name(name);
    d.semantics = machine.semantics() == Semantics::forward ? Semantics::reverse : Semantics::forward;
    for (auto& r : d.rules) {
        std::swap(r.source, r.target);
        std::swap(r.read, r.write);
        for (auto& m : r.moves) m = -m;
    }
    return Machine::build(d);
}

Cleanliness cleanliness_report(const Configuration& config, std::optional<std::size_t> output_tape) {
    Cleanliness c;
    c.input_head = config.input_head;
    const std::size_t out = output_tape.value_or(config.tapes.empty() ? 0 : config.tapes.size() - 1);
    for (std::size_t t = 0; t < config.tapes.size(); ++t) {
        if (t == out) continue;
        const auto cells = config.tapes[t].non_blank_cells();
        const auto disp = static_cast<std::uint64_t>(std::llabs(config.tapes[t].head - 1));
        c.garbage_cells += cells;
        c.head_displacement += disp;
        if (cells)
            c.details.push_back("tape " + std::to_string(t + 1) + ": " + std::to_string(cells) + " non-blank cells");
        if (disp)
            c.details.push_back("tape " + std::to_string(t + 1) + ": head at " +
                                std::to_string(config.tapes[t].head));
    }
    return c;
}

std::string tape_text(const Machine& machine, const WorkTape& tape) {
    auto cells = tape.cells;
    while (!cells.empty() && cells.back() == kWorkBlank) cells.pop_back();
    std::string out;
    for (auto s : cells) out += machine.work_symbol_name(s);
    return out;
}

std::optional<std::string> direct_output(const Machine& machine, const Word& input, std::uint64_t max_steps) {
    Configuration c = initial_configuration(machine, input);
    c.tapes[0] = preload(machine, machine, input);
    RunOptions opts;
    opts.max_steps = max_steps;
    opts.totality = Totality::strict;
    const auto result = run_from(machine, std::move(c), input, opts);
    if (result.outcome != Outcome::accepted) return std::nullopt;
    return tape_text(machine, result.final.tapes.back());
}

PipelineResult read_twice_pipeline(const Machine& machine, const Word& input, const PipelineOptions& options) {
    PipelineResult out;
    const auto n = static_cast<Position>(input.size());
    const std::size_t k = static_cast<std::size_t>(machine.tape_count());
    const Machine embedded = landauer_embed(machine);
    const Machine inverse = invert_rules(embedded);
    const std::string& blank = machine.work_symbol_name(kWorkBlank);
    for (const auto& sym : machine.input_alphabet())
        if (sym == blank || !machine.find_work_symbol(sym))
            throw std::invalid_argument("work alphabet of '" + machine.name() + "' must contain input symbol '" +
                                        sym + "' as a non-blank symbol");
    RunOptions opts;
    opts.max_steps = options.max_steps;
    opts.totality = Totality::strict;

    // Stage 1: first input pass copies the input onto tape T (tape 1).
    const Machine copier = copy_machine(machine.input_alphabet(), blank);
    const auto copied = run(copier, input, opts);
    if (copied.outcome != Outcome::accepted) throw TimeoutError("copy stage did not finish");
    Configuration config = initial_configuration(embedded, input);
    config.tapes[0] = translate(copied.final.tapes[0], copier, embedded);
    config.tapes[0].head = 1;
    config.input_head = copied.final.input_head;
    out.stages.push_back({"copy", copied.steps, "input copied onto tape 1"});
    out.meta_steps.push_back("home tape 1 head from " + std::to_string(n + 1) + " to 1 after copy");
    out.after_copy = config;

    // Stage 2: reversible simulation with a history tape.
    auto forward = run_from(embedded, config, input, opts);
    if (forward.outcome == Outcome::timeout) throw TimeoutError("forward stage exceeded max_steps");
    out.outcome = forward.outcome;
    out.forward_steps = forward.steps;
    out.after_forward = forward.final;
    out.stages.push_back({"forward", forward.steps, "history-recording simulation"});

    // Stage 3: copy the output tape onto a fresh blank tape.
    const WorkTape& result_tape = forward.final.tapes[k - 1];
    out.output = tape_text(embedded, result_tape);
    // The copier treats the output tape as a string over the machine's
    // single-character work symbols.
    std::vector<std::string> out_symbols;
    for (const auto& sym : machine.work_alphabet())
        if (sym.size() == 1) out_symbols.push_back(sym);
    const Machine out_copier = copy_machine(out_symbols, blank);
    Word out_word;
    {
        auto trimmed = result_tape.cells;
        while (!trimmed.empty() && trimmed.back() == kWorkBlank) trimmed.pop_back();
        for (auto s : trimmed) {
            auto id = out_copier.find_input_symbol(embedded.work_symbol_name(s));
            if (!id) throw std::invalid_argument("output symbol '" + embedded.work_symbol_name(s) +
                                                 "' is not a single character");
            out_word.push_back(*id);
        }
    }
    const auto out_copy = run(out_copier, out_word, opts);
    if (out_copy.outcome != Outcome::accepted) throw TimeoutError("output copy stage did not finish");
    const WorkTape out_tape = translate(out_copy.final.tapes[0], out_copier, embedded);
    out.stages.push_back({"output-copy", out_copy.steps, "output tape copied to a blank tape"});

    // Stage 4: uncompute by running the inverse until the history is consumed.
    const auto backward = run_reverse(inverse, forward.final, input, forward.steps + 1);
    out.backward_steps = backward.steps;
    out.after_backward = backward.final;
    out.stages.push_back({"backward", backward.steps, "inverse machine consumes the history"});
    if (!(backward.final == out.after_copy))
        throw StageInvariantError("backward stage did not restore the post-copy configuration");

    // Stage 5: second input pass erases tape T against the input.
    const Machine eraser = erase_machine(machine.input_alphabet(), blank);
    out.meta_steps.push_back("rewind input head from " + std::to_string(backward.final.input_head) + " to 1");
    Configuration erase_config = initial_configuration(eraser, input);
    erase_config.tapes[0] = translate(backward.final.tapes[0], embedded, eraser);
    const auto erased = run_from(eraser, erase_config, input, opts);
    if (erased.outcome != Outcome::accepted)
        throw StageInvariantError("erase stage found tape 1 disagreeing with the input");
    out.stages.push_back({"erase", erased.steps, "tape 1 erased against the second input pass"});
    out.meta_steps.push_back("home tape 1 head from " + std::to_string(erased.final.tapes[0].head) + " to 1 after erase");

    Configuration final = backward.final;
    final.tapes[0] = translate(erased.final.tapes[0], eraser, embedded);
    final.tapes[0].head = 1;
    final.input_head = erased.final.input_head;
    final.tapes.push_back(out_tape);
    out.cleanliness = cleanliness_report(final, final.tapes.size() - 1);
    out.final = std::move(final);
    return out;
}

}  // namespace rotm
