#include "rotm/corpus.hpp"

#include <fstream>
#include <map>

#include "json.hpp"
#include "rotm/parser.hpp"

namespace rotm {

// Generated from machines/*.rom at configure time.
const std::map<std::string, std::string>& bundled_sources();

std::vector<std::string> bundled_names() {
    std::vector<std::string> names;
    for (const auto& [name, text] : bundled_sources()) names.push_back(name);
    return names;
}

const std::string& bundled_text(const std::string& name) { return bundled_sources().at(name); }

Machine bundled_machine(const std::string& name) { return parse_machine(bundled_text(name)); }

std::vector<CorpusEntry> load_corpus(const std::string& manifest_path) {
    std::ifstream in(manifest_path);
    if (!in) throw std::runtime_error("cannot open corpus manifest '" + manifest_path + "'");
    const auto doc = nlohmann::json::parse(in);
    std::vector<CorpusEntry> out;
    for (const auto& m : doc.at("machines")) {
        CorpusEntry e;
        e.name = m.at("name").get<std::string>();
        e.file = m.at("file").get<std::string>();
        e.provenance = m.at("provenance").get<std::string>();
        e.recognizes_la = m.at("recognizes_la").get<bool>();
        e.reversible = m.at("reversible").get<bool>();
        e.function = m.at("function").get<bool>();
        out.push_back(std::move(e));
    }
    return out;
}

}  // namespace rotm
