#pragma once

#include <string>
#include <vector>

#include "rotm/machine.hpp"

namespace rotm {

struct CorpusEntry {
    std::string name;
    std::string file;
    std::string provenance;  // published | constructed
    bool recognizes_la = false;
    bool reversible = false;
    bool function = false;
};

// Machines compiled in from machines/*.rom.
std::vector<std::string> bundled_names();
const std::string& bundled_text(const std::string& name);  // throws std::out_of_range
Machine bundled_machine(const std::string& name);

// Reads machines/corpus.json.
std::vector<CorpusEntry> load_corpus(const std::string& manifest_path);

}  // namespace rotm
