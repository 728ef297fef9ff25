#include <set>

#include "doctest.h"
#include "properties.hpp"
#include "rotm/bennett.hpp"
#include "rotm/reversibility.hpp"

using namespace rotm;

namespace {

ExhaustiveReport exhaustive(const Machine& m, std::size_t max_len, unsigned jobs = 1) {
    ExhaustiveOptions opts;
    opts.max_len = max_len;
    opts.max_steps = 1000;
    opts.jobs = jobs;
    return exhaustive_check(m, opts);
}

// Every dynamic part with tape contents of length <= max_cells and heads
// <= max_cells + 1, input head in [1, max_head].
std::vector<DynamicPart> window(const Machine& m, std::size_t max_cells, Position max_head) {
    const auto k = static_cast<std::size_t>(m.tape_count());
    const std::size_t radix = m.work_alphabet().size();
    std::vector<std::vector<SymbolId>> contents{{}};
    for (std::size_t len = 1; len <= max_cells; ++len) {
        std::size_t total = 1;
        for (std::size_t i = 0; i < len; ++i) total *= radix;
        for (std::size_t code = 0; code < total; ++code) {
            std::vector<SymbolId> cells(len);
            std::size_t c = code;
            for (auto& s : cells) {
                s = static_cast<SymbolId>(c % radix);
                c /= radix;
            }
            if (cells.back() != kWorkBlank) contents.push_back(cells);
        }
    }
    std::vector<DynamicPart> tapes{{}};
    for (std::size_t t = 0; t < k; ++t) {
        std::vector<DynamicPart> next;
        for (const auto& partial : tapes)
            for (const auto& cells : contents)
                for (Position h = 1; h <= static_cast<Position>(max_cells) + 1; ++h) {
                    auto dp = partial;
                    dp.contents.push_back(cells);
                    dp.heads.push_back(h);
                    next.push_back(dp);
                }
        tapes = std::move(next);
    }
    std::vector<DynamicPart> out;
    for (StateId s = 0; s < m.states().size(); ++s)
        for (Position ih = 1; ih <= max_head; ++ih)
            for (auto dp : tapes) {
                dp.state = s;
                dp.input_head = ih;
                out.push_back(std::move(dp));
            }
    return out;
}

// Brute-force reversibility oracle: steps every configuration in a window
// and looks for two reachable sources landing on one reachable target.
bool brute_force_reversible(const Machine& m, std::size_t max_len, std::size_t max_cells) {
    std::set<DynamicPart> reachable;
    RunOptions opts;
    opts.trace = true;
    opts.max_steps = 1000;
    const auto inputs = test::strings_up_to(test::alphabet_of(m), max_len);
    for (const auto& input : inputs)
        for (const auto& e : run(m, encode_input(m, input), opts).trace) reachable.insert(dynamic_part_of(e.config));
    const auto candidates = window(m, max_cells, static_cast<Position>(max_len) + 2);
    for (const auto& input : inputs) {
        const Word w = encode_input(m, input);
        std::map<DynamicPart, int> indegree;
        for (const auto& dp : candidates) {
            if (!reachable.count(dp) || m.halting(dp.state)) continue;
            ++indegree[dynamic_part_of(step(m, configuration_of(m, dp), w, Totality::strict))];
        }
        for (const auto& e : run(m, w, opts).trace)
            if (indegree[dynamic_part_of(e.config)] > 1) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("static check of N and M_bad") {
    CHECK(static_check(test::machine("N")).statically_reversible);
    const Machine bad = test::machine("M_bad");
    const auto report = static_check(bad);
    CHECK_FALSE(report.statically_reversible);
    REQUIRE(report.violations.size() == 1);
    const auto& v = report.violations.front();
    CHECK(v.condition == 'B');
    CHECK(bad.states()[v.target].name == "q1");
    const auto& a = bad.rule(v.rule_a);
    const auto& b = bad.rule(v.rule_b);
    CHECK(std::set<std::string>{bad.states()[a.source].name, bad.states()[b.source].name} ==
          std::set<std::string>{"q0", "q1"});
    CHECK(a.read_input == b.read_input);
    CHECK(bad.input_symbol_name(*a.read_input) == "a");
}

TEST_CASE("mixing sighted and blind rules into one target violates condition A") {
    const Machine m = parse_machine(R"(machine mixed
input_alphabet: a
work_alphabet: _ x
tapes: 1
state s sighted start
state t blind
state q2 blind
state acc accept
state rej reject
rule s a [_] -> t [_] [S]
rule s < [_] -> q2 [x] [S]
rule t [_] -> q2 [_] [R]
rule q2 [_] -> acc [_] [S]
)");
    const auto report = static_check(m);
    CHECK_FALSE(report.statically_reversible);
    bool found = false;
    for (const auto& v : report.violations) found |= v.condition == 'A' && m.states()[v.target].name == "q2";
    CHECK(found);
}

TEST_CASE("differing moves with no separating tape violate condition C") {
    const Machine m = parse_machine(R"(machine drift
input_alphabet: a
work_alphabet: _ x
tapes: 1
state s blind start
state t blind
state u blind
state acc accept
state rej reject
rule s [_] -> t [x] [R]
rule t [_] -> u [x] [S]
rule u [x] -> acc [x] [S]
rule u [_] -> u [x] [R]
)");
    bool found = false;
    for (const auto& v : static_check(m).violations) found |= v.condition == 'C';
    CHECK(found);
}

TEST_CASE("static verdicts on the corpus and its embeddings") {
    const std::map<std::string, bool> expected = {{"N", true},        {"M_bad", false}, {"M_tally", true},
                                                  {"M_inc", false},   {"M_parity", true}, {"spin", true}};
    for (const auto& [name, verdict] : expected) {
        CAPTURE(name);
        const Machine m = test::machine(name);
        CHECK(static_check(m).statically_reversible == verdict);
        CHECK(static_check(landauer_embed(m)).statically_reversible);
    }
}

TEST_CASE("exhaustive check examples") {
    const auto n = exhaustive(test::machine("N"), 8);
    CHECK(n.reversible);
    CHECK_FALSE(n.counterexample);
    CHECK(n.inputs_checked == 511);

    const Machine bad = test::machine("M_bad");
    const auto r = exhaustive(bad, 2);
    CHECK_FALSE(r.reversible);
    REQUIRE(r.counterexample);
    const auto& ce = *r.counterexample;
    CHECK(ce.input == "aa");
    CHECK(bad.states()[ce.config.state].name == "q1");
    CHECK(ce.config.input_head == 3);
    REQUIRE(ce.predecessors.size() == 2);
    CHECK(bad.states()[ce.predecessors[0].state].name == "q0");
    CHECK(ce.predecessors[0].input_head == 2);
    CHECK(bad.states()[ce.predecessors[1].state].name == "q1");
    CHECK(ce.predecessors[1].input_head == 2);
    const Word w = encode_input(bad, ce.input);
    for (const auto& p : ce.predecessors) CHECK(step(bad, p, w, Totality::strict) == ce.config);

    CHECK(exhaustive(landauer_embed(bad), 6).reversible);
}

TEST_CASE("exhaustive results do not depend on the job count") {
    for (const auto& name : bundled_names()) {
        CAPTURE(name);
        const Machine m = bundled_machine(name);
        const auto one = exhaustive(m, 6, 1);
        for (unsigned jobs : {2u, 5u, 8u}) {
            const auto many = exhaustive(m, 6, jobs);
            CHECK(many.reversible == one.reversible);
            CHECK(many.configurations_checked == one.configurations_checked);
            CHECK(many.timeouts == one.timeouts);
            CHECK(bool(many.counterexample) == bool(one.counterexample));
            if (one.counterexample && many.counterexample) {
                CHECK(many.counterexample->input == one.counterexample->input);
                CHECK(many.counterexample->config == one.counterexample->config);
            }
        }
    }
}

TEST_CASE("static soundness: no statically reversible machine has a counterexample") {
    for (const auto& name : bundled_names()) {
        const Machine m = bundled_machine(name);
        for (const Machine& candidate : {m, landauer_embed(m)}) {
            CAPTURE(candidate.name());
            if (!static_check(candidate).statically_reversible) continue;
            CHECK(exhaustive(candidate, candidate.tape_count() > 1 ? 6 : 8).reversible);
        }
    }
}

TEST_CASE("every embedding passes the exhaustive check") {
    for (const auto& name : bundled_names()) {
        CAPTURE(name);
        CHECK(exhaustive(landauer_embed(bundled_machine(name)), 6).reversible);
    }
}

TEST_CASE("exhaustive check agrees with a brute-force oracle") {
    for (const auto& [name, cells] : std::vector<std::pair<std::string, std::size_t>>{
             {"N", 0}, {"M_bad", 0}, {"M_tally", 3}, {"spin", 0}}) {
        CAPTURE(name);
        const Machine m = test::machine(name);
        for (std::size_t len = 1; len <= 3; ++len)
            CHECK(exhaustive(m, len).reversible == brute_force_reversible(m, len, cells));
    }
}
