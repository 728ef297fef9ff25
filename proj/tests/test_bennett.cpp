#include <set>

#include "doctest.h"
#include "properties.hpp"
#include "rotm/bennett.hpp"
#include "rotm/census.hpp"
#include "rotm/errors.hpp"
#include "rotm/reversibility.hpp"

using namespace rotm;

namespace {

// Binary increment modulo 2^n, most significant bit first.
std::string increment(std::string bits) {
    for (auto i = bits.size(); i-- > 0;) {
        if (bits[i] == '0') {
            bits[i] = '1';
            return bits;
        }
        bits[i] = '0';
    }
    return bits;
}

std::string parity(const std::string& s) {
    return std::count(s.begin(), s.end(), 'a') % 2 ? "1" : "0";
}

}  // namespace

TEST_CASE("increment and parity oracles") {
    CHECK(increment("011") == "100");
    CHECK(increment("111") == "000");
    CHECK(increment("") == "");
    CHECK(parity("aaaaaaa") == "1");
    CHECK(parity("abab") == "0");
}

TEST_CASE("embedding N adds a three-symbol history alphabet") {
    const Machine n = test::machine("N");
    const Machine e = landauer_embed(n);
    CHECK(e.name() == "N_hist");
    CHECK(e.tape_count() == 2);
    CHECK(history_symbols(n, e) == std::vector<std::string>{"h1", "h2", "h3"});
    // History tape alphabet: the blank plus one symbol per rule.
    CHECK(history_symbols(n, e).size() + 1 == 4);
    for (const auto& input : test::strings_up_to("ab", 8)) {
        CAPTURE(input);
        CHECK(run(n, encode_input(n, input)).outcome == run(e, encode_input(e, input)).outcome);
    }
}

TEST_CASE("history prefix avoids clashes with existing symbols") {
    const Machine m = parse_machine(R"(machine clash
input_alphabet: a
work_alphabet: _ h1
tapes: 1
state s sighted start
state acc accept
state rej reject
rule s a [_] -> acc [h1] [S]
rule s < [_] -> rej [_] [S]
)");
    const auto symbols = history_symbols(m, landauer_embed(m));
    CHECK(symbols == std::vector<std::string>{"hh1", "hh2"});
}

TEST_CASE("embedding overflow") {
    CHECK_THROWS_AS(landauer_embed(test::machine("M_inc"), 5), AlphabetOverflowError);
    CHECK_NOTHROW(landauer_embed(test::machine("M_inc"), 14));
}

TEST_CASE("embedding preserves semantics on the corpus") {
    for (const auto& name : bundled_names()) {
        CAPTURE(name);
        const auto failures = test::embed_preservation_failures(bundled_machine(name), 8);
        CHECK(failures.empty());
        if (!failures.empty()) MESSAGE(failures.front());
    }
}

TEST_CASE("embedded M_bad records every input") {
    const Machine e = landauer_embed(test::machine("M_bad"));
    for (std::size_t n = 1; n <= 10; ++n) CHECK(final_dp_census(e, n).distinct == (std::uint64_t{1} << n));
    const auto four = final_dp_census(e, 4);
    CHECK(four.distinct == 16);
    CHECK(four.cost_bits == 4.0);
}

TEST_CASE("inverting an embedding replays N backwards") {
    const Machine e = landauer_embed(test::machine("N"));
    const Machine inv = invert_rules(e);
    CHECK(inv.name() == "N_hist_rev");
    const Word w = encode_input(e, "bba");
    const auto forward = run(e, w);
    REQUIRE(forward.outcome == Outcome::accepted);
    const auto back = run_reverse(inv, forward.final, w, 100);
    CHECK(back.steps == 3);
    CHECK(back.final == initial_configuration(e, w));
}

TEST_CASE("reverse runs retrace every intermediate configuration") {
    for (const char* name : {"M_inc", "M_parity", "M_tally"}) {
        CAPTURE(name);
        const Machine e = landauer_embed(test::machine(name));
        const Machine inv = invert_rules(e);
        RunOptions opts;
        opts.trace = true;
        for (const auto& input : test::strings_up_to(test::alphabet_of(e), 4)) {
            const Word w = encode_input(e, input);
            const auto fwd = run(e, w, opts);
            for (std::size_t i = fwd.trace.size(); i-- > 1;) {
                const auto prev = step_reverse(inv, fwd.trace[i].config, w);
                REQUIRE(prev);
                CHECK(*prev == fwd.trace[i - 1].config);
            }
        }
    }
}

TEST_CASE("inversion is an involution on statically reversible machines") {
    for (const auto& name : bundled_names()) {
        const Machine m = bundled_machine(name);
        for (const Machine& c : {m, landauer_embed(m)}) {
            if (!static_check(c).statically_reversible) continue;
            CAPTURE(c.name());
            CHECK(invert_rules(invert_rules(c)) == c);
        }
    }
}

TEST_CASE("inverting M_bad is refused") {
    CHECK_THROWS_AS(invert_rules(test::machine("M_bad")), NotStaticallyReversibleError);
    CHECK_THROWS_AS(invert_rules(test::machine("M_inc")), NotStaticallyReversibleError);
}

TEST_CASE("pipeline examples") {
    const Machine inc = test::machine("M_inc");
    const auto r = read_twice_pipeline(inc, encode_input(inc, "011"));
    CHECK(r.outcome == Outcome::accepted);
    CHECK(r.output == "100");
    CHECK(r.cleanliness.clean());
    CHECK(r.cleanliness.garbage_cells == 0);
    REQUIRE(r.stages.size() == 5);
    const std::vector<std::string> names = {"copy", "forward", "output-copy", "backward", "erase"};
    for (std::size_t i = 0; i < 5; ++i) CHECK(r.stages[i].name == names[i]);
    CHECK_FALSE(r.meta_steps.empty());

    const auto empty = read_twice_pipeline(inc, Word{});
    CHECK(empty.output == increment(""));
    CHECK(empty.cleanliness.clean());

    const Machine par = test::machine("M_parity");
    const auto seven = read_twice_pipeline(par, encode_input(par, "aaaaaaa"));
    CHECK(seven.output == "1");
    CHECK(seven.cleanliness.clean());
    CHECK(seven.stages[1].steps == seven.stages[3].steps);
}

TEST_CASE("pipeline matches the function oracles on all inputs up to length 8") {
    for (const auto& [name, oracle] : std::vector<std::pair<std::string, std::string (*)(const std::string&)>>{
             {"M_inc", [](const std::string& s) { return increment(s); }},
             {"M_parity", [](const std::string& s) { return parity(s); }}}) {
        const Machine m = test::machine(name);
        for (const auto& input : test::strings_up_to(test::alphabet_of(m), 8)) {
            CAPTURE(input);
            const Word w = encode_input(m, input);
            const auto r = read_twice_pipeline(m, w);
            CHECK(r.output == oracle(input));
            CHECK(direct_output(m, w, 1'000'000) == oracle(input));
            CHECK(r.cleanliness.clean());
            CHECK(r.after_backward == r.after_copy);
            CHECK(r.forward_steps == r.backward_steps);
            CHECK(r.final.input_head == static_cast<Position>(input.size()) + 2);
        }
    }
}

TEST_CASE("pipeline leaves a single dynamic part once the output is projected out") {
    for (const char* name : {"M_inc", "M_parity"}) {
        const Machine m = test::machine(name);
        for (std::size_t n = 0; n <= 6; ++n) {
            CAPTURE(name);
            CAPTURE(n);
            std::set<DynamicPart> residues;
            for (const auto& input : test::strings_of_length(test::alphabet_of(m), n)) {
                auto final = read_twice_pipeline(m, encode_input(m, input)).final;
                final.tapes.pop_back();
                final.input_head = 1;
                residues.insert(dynamic_part_of(final));
            }
            CHECK(residues.size() == 1);
        }
    }
}

TEST_CASE("cleanliness report") {
    const Machine inc = test::machine("M_inc");
    const auto r = read_twice_pipeline(inc, encode_input(inc, "011"));
    CHECK(cleanliness_report(r.final).clean());

    const auto forward = cleanliness_report(r.after_forward, 0);
    CHECK(forward.garbage_cells >= r.forward_steps);
    CHECK_FALSE(forward.clean());

    const Machine n = test::machine("N");
    const auto bba = run(n, encode_input(n, "bba"));
    const auto bare = cleanliness_report(bba.final, std::size_t{99});
    CHECK(bare.garbage_cells == 0);
    CHECK(bare.input_head == 4);
    CHECK(bba.final.input_head != run(n, encode_input(n, "abb")).final.input_head);
}

TEST_CASE("pipeline requires input symbols in the work alphabet") {
    CHECK_THROWS_AS(read_twice_pipeline(test::machine("N"), encode_input(test::machine("N"), "ab")),
                    std::invalid_argument);
}
