#include "rotm/parser.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace rotm {

namespace {

struct Token {
    bool group = false;
    std::string word;
    std::vector<std::string> items;
};

std::string strip_comment(std::string_view line) {
    auto hash = line.find('#');
    return std::string(hash == std::string_view::npos ? line : line.substr(0, hash));
}

std::vector<std::string> split_words(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    for (std::string w; in >> w;) out.push_back(w);
    return out;
}

std::vector<Token> tokenize(const std::string& line, int line_no) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
        } else if (line[i] == '[') {
            auto close = line.find(']', i);
            if (close == std::string::npos) throw ParseError(line_no, "unterminated '['");
            Token t;
            t.group = true;
            t.items = split_words(line.substr(i + 1, close - i - 1));
            out.push_back(std::move(t));
            i = close + 1;
        } else if (line[i] == ']') {
            throw ParseError(line_no, "unexpected ']'");
        } else {
            auto end = i;
            while (end < line.size() && !std::isspace(static_cast<unsigned char>(line[end])) &&
                   line[end] != '[')
                ++end;
            out.push_back({false, line.substr(i, end - i), {}});
            i = end;
        }
    }
    return out;
}

int parse_move(const std::string& m, int line_no) {
    if (m == "L") return -1;
    if (m == "S") return 0;
    if (m == "R") return 1;
    throw ParseError(line_no, "bad move '" + m + "' (expected L, S or R)");
}

const char* move_name(int m) { return m < 0 ? "L" : m > 0 ? "R" : "S"; }

MachineDraft::Rule parse_rule(const std::vector<Token>& toks, int line_no) {
    // rule <src> [input] [read] -> <tgt> [write] [moves]
    MachineDraft::Rule r;
    r.line = line_no;
    std::size_t i = 1;
    auto expect_word = [&](const char* what) {
        if (i >= toks.size() || toks[i].group) throw ParseError(line_no, std::string("expected ") + what);
        return toks[i++].word;
    };
    auto expect_group = [&](const char* what) {
        if (i >= toks.size() || !toks[i].group) throw ParseError(line_no, std::string("expected [") + what + "]");
        return toks[i++].items;
    };
    r.source = expect_word("source state");
    if (i < toks.size() && !toks[i].group) r.input = toks[i++].word;
    r.read = expect_group("read symbols");
    if (expect_word("'->'") != "->") throw ParseError(line_no, "expected '->'");
    r.target = expect_word("target state");
    r.write = expect_group("write symbols");
    for (const auto& m : expect_group("moves")) r.moves.push_back(parse_move(m, line_no));
    if (i != toks.size()) throw ParseError(line_no, "trailing tokens after rule");
    return r;
}

std::string bracket(const std::vector<std::string>& items) {
    std::string out = "[";
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += ' ';
        out += items[i];
    }
    return out + "]";
}

std::string join(const std::vector<std::string>& items) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += ' ';
        out += items[i];
    }
    return out;
}

}  // namespace

MachineDraft parse_draft(std::string_view text) {
    MachineDraft d;
    bool have_name = false, have_input = false, have_work = false, have_tapes = false;
    bool have_start = false;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        auto raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        const std::string line = strip_comment(raw);
        const auto words = split_words(line);
        if (words.empty()) continue;
        const std::string& head = words[0];

        if (head == "machine") {
            if (have_name) throw ParseError(line_no, "duplicate 'machine' declaration");
            if (words.size() != 2) throw ParseError(line_no, "expected 'machine <name>'");
            d.name = words[1];
            have_name = true;
        } else if (head == "input_alphabet:") {
            d.input_alphabet.assign(words.begin() + 1, words.end());
            have_input = true;
        } else if (head == "work_alphabet:") {
            if (words.size() < 2) throw ParseError(line_no, "work alphabet needs at least the blank");
            d.work_alphabet.assign(words.begin() + 1, words.end());
            have_work = true;
        } else if (head == "tapes:") {
            if (words.size() != 2) throw ParseError(line_no, "expected 'tapes: <k>'");
            try {
                d.tape_count = std::stoi(words[1]);
            } catch (const std::exception&) {
                throw ParseError(line_no, "tape count is not an integer");
            }
            have_tapes = true;
        } else if (head == "semantics:") {
            if (words.size() != 2 || (words[1] != "forward" && words[1] != "reverse"))
                throw ParseError(line_no, "expected 'semantics: forward|reverse'");
            d.semantics = words[1] == "reverse" ? Semantics::reverse : Semantics::forward;
        } else if (head == "state") {
            if (words.size() < 3 || words.size() > 4 || (words.size() == 4 && words[3] != "start"))
                throw ParseError(line_no, "expected 'state <name> <kind> [start]'");
            MachineDraft::State s;
            s.name = words[1];
            s.line = line_no;
            try {
                s.kind = state_kind_from_string(words[2]);
            } catch (const std::invalid_argument& e) {
                throw ParseError(line_no, e.what());
            }
            if (words.size() == 4) {
                if (have_start) throw ParseError(line_no, "second start state");
                d.start = s.name;
                have_start = true;
            }
            d.states.push_back(std::move(s));
        } else if (head == "rule") {
            d.rules.push_back(parse_rule(tokenize(line, line_no), line_no));
        } else {
            throw ParseError(line_no, "unknown directive '" + head + "'");
        }
    }
    if (!have_name) throw ParseError(1, "missing 'machine <name>' declaration");
    if (!have_input) throw ParseError(1, "missing 'input_alphabet:' declaration");
    if (!have_work) throw ParseError(1, "missing 'work_alphabet:' declaration");
    if (!have_tapes) throw ParseError(1, "missing 'tapes:' declaration");
    if (!have_start) throw ParseError(1, "no start state declared");
    return d;
}

Machine parse_machine(std::string_view text) { return Machine::build(parse_draft(text)); }

Machine load_machine(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open machine file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_machine(buf.str());
}

std::string rule_text(const MachineDraft::Rule& r) {
    std::string out = "rule " + r.source + ' ';
    if (r.input) out += *r.input + ' ';
    out += bracket(r.read) + " -> " + r.target + ' ' + bracket(r.write) + ' ';
    std::vector<std::string> moves;
    for (int m : r.moves) moves.emplace_back(move_name(m));
    return out + bracket(moves);
}

std::string serialize(const Machine& machine) {
    const MachineDraft d = machine.draft();
    std::ostringstream out;
    out << "machine " << d.name << '\n';
    out << "input_alphabet: " << join(d.input_alphabet) << '\n';
    out << "work_alphabet: " << join(d.work_alphabet) << '\n';
    out << "tapes: " << d.tape_count << '\n';
    if (d.semantics == Semantics::reverse) out << "semantics: reverse\n";
    for (const auto& s : d.states) {
        out << "state " << s.name << ' ' << to_string(s.kind);
        if (s.name == d.start) out << " start";
        out << '\n';
    }
    for (const auto& r : d.rules) out << rule_text(r) << '\n';
    return out.str();
}

std::vector<std::string> structural_problems(const MachineDraft& d) {
    std::vector<std::string> problems;
    auto at = [](int line) { return line > 0 ? " (line " + std::to_string(line) + ")" : std::string(); };

    if (d.name.empty()) problems.push_back("machine has no name");
    if (d.tape_count < 1) problems.push_back("tape count must be at least 1");
    if (d.input_alphabet.empty()) problems.push_back("input alphabet is empty");
    std::set<std::string> input_set, work_set;
    for (const auto& s : d.input_alphabet) {
        if (s.size() != 1) problems.push_back("input symbol '" + s + "' must be a single character");
        if (s == std::string(1, kInputEndChar))
            problems.push_back("input symbol '<' is reserved for the end marker");
        if (!input_set.insert(s).second) problems.push_back("input symbol '" + s + "' declared twice");
    }
    if (d.work_alphabet.empty()) problems.push_back("work alphabet is empty");
    for (const auto& s : d.work_alphabet) {
        if (s.find_first_of("[]#") != std::string::npos || s == "->")
            problems.push_back("work symbol '" + s + "' uses reserved characters");
        if (!work_set.insert(s).second) problems.push_back("work symbol '" + s + "' declared twice");
    }

    std::map<std::string, StateKind> kinds;
    int accepts = 0, rejects = 0;
    for (const auto& s : d.states) {
        if (!kinds.emplace(s.name, s.kind).second) problems.push_back("state '" + s.name + "' declared twice" + at(s.line));
        accepts += s.kind == StateKind::accept;
        rejects += s.kind == StateKind::reject;
    }
    if (accepts != 1) problems.push_back("exactly one accept state required, found " + std::to_string(accepts));
    if (rejects != 1) problems.push_back("exactly one reject state required, found " + std::to_string(rejects));
    if (!kinds.count(d.start)) problems.push_back("start state '" + d.start + "' is not declared");

    const bool forward = d.semantics == Semantics::forward;
    const auto k = static_cast<std::size_t>(std::max(d.tape_count, 0));
    bool rules_ok = true;
    for (const auto& r : d.rules) {
        const std::string where = at(r.line);
        auto src = kinds.find(r.source);
        if (src == kinds.end()) {
            problems.push_back("rule source state '" + r.source + "' is not declared" + where);
            rules_ok = false;
        }
        if (!kinds.count(r.target)) {
            problems.push_back("rule target state '" + r.target + "' is not declared" + where);
            rules_ok = false;
        }
        if (r.read.size() != k || r.write.size() != k || r.moves.size() != k) {
            problems.push_back("rule vectors must have one entry per tape (" + std::to_string(k) + ")" + where);
            rules_ok = false;
        }
        if (r.input && *r.input != std::string(1, kInputEndChar) && !input_set.count(*r.input)) {
            problems.push_back("symbol not in alphabet: input symbol '" + *r.input + "'" + where);
            rules_ok = false;
        }
        for (const auto* syms : {&r.read, &r.write})
            for (const auto& s : *syms)
                if (!work_set.count(s)) {
                    problems.push_back("symbol not in alphabet: work symbol '" + s + "'" + where);
                    rules_ok = false;
                }
        for (int m : r.moves)
            if (m < -1 || m > 1) {
                problems.push_back("move out of range" + where);
                rules_ok = false;
            }
        if (src != kinds.end() && forward) {
            if (src->second == StateKind::accept || src->second == StateKind::reject) {
                problems.push_back("halting state '" + r.source + "' has an outgoing rule" + where);
                rules_ok = false;
            } else if ((src->second == StateKind::sighted) != r.input.has_value()) {
                problems.push_back(std::string(src->second == StateKind::sighted
                                                   ? "sighted rule must name an input symbol"
                                                   : "blind rule must not name an input symbol") +
                                   where);
                rules_ok = false;
            }
        }
    }
    if (!problems.empty() || !rules_ok) return problems;

    if (forward) {
        // Key radix must fit the 64-bit rule index.
        long double radix = static_cast<long double>(d.states.size()) * (d.input_alphabet.size() + 2);
        for (std::size_t t = 0; t < k; ++t) radix *= static_cast<long double>(d.work_alphabet.size());
        if (radix >= 9.2e18L) problems.push_back("transition key space too large to index");

        std::map<std::string, int> seen;
        for (const auto& r : d.rules) {
            std::string key = "(" + r.source + ", ";
            if (r.input) key += *r.input + ", ";
            key += bracket(r.read) + ")";
            auto [it, fresh] = seen.emplace(key, r.line);
            if (!fresh) problems.push_back("duplicate rule for key " + key + at(r.line));
        }
    } else {
        // Reverse rules from one state must never both apply: they need
        // distinct input symbols or a tape with equal moves and distinct reads.
        for (std::size_t i = 0; i < d.rules.size(); ++i)
            for (std::size_t j = i + 1; j < d.rules.size(); ++j) {
                const auto& a = d.rules[i];
                const auto& b = d.rules[j];
                if (a.source != b.source) continue;
                if (a.input && b.input && *a.input != *b.input) continue;
                bool separated = false;
                for (std::size_t t = 0; t < k && !separated; ++t)
                    separated = a.moves[t] == b.moves[t] && a.read[t] != b.read[t];
                if (!separated)
                    problems.push_back("duplicate rule for key: reverse rules '" + rule_text(a) + "' and '" +
                                       rule_text(b) + "' can both apply");
            }
    }
    return problems;
}

ValidationReport validate(const MachineDraft& draft, ValidationMode mode) {
    ValidationReport report;
    report.errors = structural_problems(draft);
    for (const auto& e : report.errors)
        if (e.rfind("duplicate rule", 0) == 0) report.duplicates.push_back(e);
    if (!report.errors.empty()) {
        report.valid = false;
        return report;
    }
    const Machine m = Machine::build(draft);
    const auto k = static_cast<std::size_t>(m.tape_count());

    // Reachability over the state graph.
    std::vector<bool> seen(m.states().size(), false);
    std::deque<StateId> queue{m.start()};
    seen[m.start()] = true;
    while (!queue.empty()) {
        StateId s = queue.front();
        queue.pop_front();
        for (auto id : m.rules_from(s)) {
            StateId t = m.rule(id).target;
            if (!seen[t]) {
                seen[t] = true;
                queue.push_back(t);
            }
        }
    }
    for (std::size_t s = 0; s < seen.size(); ++s)
        if (!seen[s]) {
            report.unreachable_states.push_back(m.states()[s].name);
            report.warnings.push_back("state '" + m.states()[s].name + "' is unreachable");
        }

    if (k > 1)
        for (const auto& r : m.rules())
            if (r.move_work.back() < 0) {
                report.warnings.push_back("output tape (last tape) should be write-forward; rule '" +
                                          rule_text(m.draft().rules[&r - m.rules().data()]) + "' moves it left");
                break;
            }

    report.defined_keys = m.rules().size();
    if (m.semantics() == Semantics::reverse) {
        report.total_keys = report.defined_keys;
        return report;
    }

    const std::uint64_t work_keys = [&] {
        std::uint64_t v = 1;
        for (std::size_t t = 0; t < k; ++t) v *= m.work_alphabet().size();
        return v;
    }();
    for (std::size_t s = 0; s < m.states().size(); ++s) {
        if (m.kind(static_cast<StateId>(s)) == StateKind::sighted)
            report.total_keys += (m.input_alphabet().size() + 1) * work_keys;
        else if (m.kind(static_cast<StateId>(s)) == StateKind::blind)
            report.total_keys += work_keys;
    }
    report.missing_count = report.total_keys - report.defined_keys;

    if (report.missing_count > 0) {
        std::vector<SymbolId> work(k, 0);
        auto describe = [&](StateId s, std::optional<SymbolId> in) {
            std::string out = "(" + m.states()[s].name + ", ";
            if (in) out += m.input_symbol_name(*in) + ", ";
            std::vector<std::string> syms;
            for (auto w : work) syms.push_back(m.work_symbol_name(w));
            return out + bracket(syms) + ")";
        };
        // Enumerate keys in order until enough missing ones are listed.
        for (std::size_t s = 0; s < m.states().size() && report.missing.size() < kMissingListed; ++s) {
            const auto sid = static_cast<StateId>(s);
            if (m.halting(sid)) continue;
            const bool sighted = m.kind(sid) == StateKind::sighted;
            std::vector<SymbolId> inputs;
            if (sighted) {
                for (SymbolId a = 0; a < static_cast<SymbolId>(m.input_alphabet().size()); ++a) inputs.push_back(a);
                inputs.push_back(kInputEnd);
            } else {
                inputs.push_back(kInputEnd);
            }
            for (SymbolId in : inputs) {
                for (std::uint64_t c = 0; c < work_keys && report.missing.size() < kMissingListed; ++c) {
                    std::uint64_t rest = c;
                    for (std::size_t t = k; t-- > 0;) {
                        work[t] = static_cast<SymbolId>(rest % m.work_alphabet().size());
                        rest /= m.work_alphabet().size();
                    }
                    if (m.lookup(sid, in, work.data()) == 0)
                        report.missing.push_back(describe(sid, sighted ? std::optional(in) : std::nullopt));
                }
            }
        }
        std::ostringstream msg;
        msg << "transition function is partial: " << report.defined_keys << "/" << report.total_keys
            << " keys defined";
        if (mode == ValidationMode::strict) {
            report.valid = false;
            for (const auto& miss : report.missing) report.errors.push_back("missing rule " + miss);
            if (report.missing_count > report.missing.size())
                report.errors.push_back(msg.str());
        } else {
            report.warnings.push_back(msg.str());
        }
    }
    return report;
}

ValidationReport validate(const Machine& machine, ValidationMode mode) {
    return validate(machine.draft(), mode);
}

}  // namespace rotm
