#include <set>

#include "doctest.h"
#include "rotm/bennett.hpp"
#include "rotm/census.hpp"
#include "rotm/corpus.hpp"
#include "rotm/reversibility.hpp"
#include "test_support.hpp"

using namespace rotm;

namespace {

const std::string kManifest = std::string(ROTM_MACHINES_DIR) + "/corpus.json";

bool recognizes_la(const Machine& m) {
    if (m.input_alphabet() != std::vector<std::string>{"a", "b"}) return false;
    RunOptions opts;
    opts.max_steps = 1000;
    for (const auto& input : test::strings_up_to("ab", 8))
        if ((run(m, encode_input(m, input), opts).outcome == Outcome::accepted) != contains_a(input)) return false;
    return true;
}

bool computes_function(const Machine& m) {
    try {
        for (const auto& input : test::strings_up_to(test::alphabet_of(m), 5)) {
            const Word w = encode_input(m, input);
            const auto r = read_twice_pipeline(m, w);
            if (r.outcome != Outcome::accepted || !r.cleanliness.clean() || direct_output(m, w, 1000) != r.output)
                return false;
        }
        return true;
    } catch (const std::invalid_argument&) {
        return false;
    }
}

}  // namespace

TEST_CASE("manifest lists exactly the bundled machines") {
    const auto corpus = load_corpus(kManifest);
    std::set<std::string> listed, bundled;
    for (const auto& e : corpus) listed.insert(e.name);
    for (const auto& n : bundled_names()) bundled.insert(n);
    CHECK(listed == bundled);
    for (const char* required : {"N", "M_bad", "M_inc", "M_parity", "spin"}) CHECK(listed.count(required) == 1);
}

TEST_CASE("bundled text matches the files on disk") {
    for (const auto& e : load_corpus(kManifest)) {
        CAPTURE(e.name);
        const Machine disk = load_machine(std::string(ROTM_MACHINES_DIR) + "/" + e.file);
        CHECK(disk == bundled_machine(e.name));
        CHECK(disk.name() == e.name);
    }
}

TEST_CASE("manifest flags match observed behaviour") {
    for (const auto& e : load_corpus(kManifest)) {
        CAPTURE(e.name);
        const Machine m = bundled_machine(e.name);
        CHECK(e.recognizes_la == recognizes_la(m));
        CHECK(e.reversible == static_check(m).statically_reversible);
        CHECK(e.function == computes_function(m));
        CHECK((e.provenance == "published") == (e.name == "N"));
    }
}

TEST_CASE("unknown bundled machine") {
    CHECK_THROWS_AS(bundled_machine("nope"), std::out_of_range);
}
