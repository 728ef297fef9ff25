#include "rotm/json_io.hpp"

namespace rotm {

Json dp_json(const Machine& machine, const DynamicPart& dp) {
    Json tapes = Json::array();
    for (std::size_t t = 0; t < dp.contents.size(); ++t) {
        Json cells = Json::array();
        for (auto s : dp.contents[t]) cells.push_back(machine.work_symbol_name(s));
        tapes.push_back({{"content", cells}, {"head", dp.heads[t]}});
    }
    return {{"state", machine.states().at(dp.state).name}, {"input_head", dp.input_head}, {"tapes", tapes}};
}

Json to_json(const ValidationReport& r) {
    return {{"valid", r.valid},
            {"coverage", r.coverage()},
            {"defined_keys", r.defined_keys},
            {"total_keys", r.total_keys},
            {"errors", r.errors},
            {"warnings", r.warnings},
            {"duplicates", r.duplicates},
            {"unreachable_states", r.unreachable_states},
            {"missing", r.missing}};
}

Json to_json(const Machine& machine, const RunResult& r) {
    return {{"outcome", to_string(r.outcome)}, {"steps", r.steps},
            {"final_dp", dp_json(machine, dynamic_part_of(r.final))}};
}

Json to_json(const Machine& machine, const StaticReport& r) {
    Json violations = Json::array();
    for (const auto& v : r.violations)
        violations.push_back({{"condition", std::string(1, v.condition)},
                              {"target", machine.states()[v.target].name},
                              {"rule_a", v.rule_a},
                              {"rule_b", v.rule_b},
                              {"message", v.message}});
    return {{"verdict", r.statically_reversible ? "statically-reversible" : "undetermined"},
            {"violations", violations}};
}

Json to_json(const Machine& machine, const ExhaustiveReport& r) {
    Json out = {{"verdict", r.reversible ? "reversible-up-to-bound" : "irreversible"},
                {"configurations_checked", r.configurations_checked},
                {"inputs_checked", r.inputs_checked},
                {"timeouts", r.timeouts}};
    if (r.counterexample) {
        Json preds = Json::array();
        for (const auto& p : r.counterexample->predecessors) preds.push_back(dp_json(machine, dynamic_part_of(p)));
        out["counterexample"] = {{"input", r.counterexample->input},
                                 {"config", dp_json(machine, dynamic_part_of(r.counterexample->config))},
                                 {"predecessors", preds}};
    } else {
        out["counterexample"] = nullptr;
    }
    return out;
}

Json to_json(const Machine& machine, const CensusResult& r, bool witnesses) {
    Json out = {{"machine", r.machine},     {"n", r.n},
                {"inputs", r.inputs},       {"D", r.distinct},
                {"cost_bits", r.cost_bits}, {"ceil_bits", r.ceil_bits},
                {"entropy_bits", r.entropy_bits}, {"timeouts", r.timeouts}};
    if (witnesses) {
        Json list = Json::array();
        for (const auto& [dp, tally] : r.dps)
            list.push_back({{"dp", dp_json(machine, dp)}, {"witness", tally.witness}, {"count", tally.count}});
        out["witnesses"] = list;
    }
    return out;
}

Json to_json(const Machine& machine, const FamilyReport& r) {
    Json members = Json::array();
    for (const auto& m : r.members)
        members.push_back({{"input", m.input}, {"outcome", to_string(m.outcome)}, {"dp", dp_json(machine, m.dp)}});
    return {{"distinct", r.distinct}, {"members", members}};
}

Json to_json(const PipelineResult& r) {
    Json stages = Json::array();
    for (const auto& s : r.stages) stages.push_back({{"stage", s.name}, {"steps", s.steps}, {"note", s.note}});
    return {{"outcome", to_string(r.outcome)},
            {"output", r.output},
            {"stages", stages},
            {"meta_steps", r.meta_steps},
            {"restored", r.after_backward == r.after_copy},
            {"cleanliness",
             {{"clean", r.cleanliness.clean()},
              {"garbage_cells", r.cleanliness.garbage_cells},
              {"head_displacement", r.cleanliness.head_displacement},
              {"details", r.cleanliness.details}}}};
}

namespace {

Json histogram(const std::map<std::uint64_t, std::uint64_t>& h) {
    Json out = Json::array();
    for (auto [k, v] : h) out.push_back({k, v});
    return out;
}

}  // namespace

Json to_json(const ExperimentParams& params, const DemonStats& s) {
    return {{"molecules", params.molecules},
            {"steps", params.steps},
            {"trials", s.trials},
            {"seed", params.seed},
            {"machine", params.machine.name()},
            {"left_threshold", params.left_threshold},
            {"closed", s.closed},
            {"empirical_p", s.empirical_p},
            {"analytic_p", analytic_p_from_event(event_probability(params.molecules, params.left_threshold),
                                                 params.steps)},
            {"total_dS", s.total_dS},
            {"mean_dS", s.mean_dS},
            {"a_count_histogram", histogram(s.a_count_histogram)},
            {"close_step_histogram", histogram(s.close_step_histogram)}};
}

Json to_json(const LedgerReport& r) {
    return {{"molecules", r.molecules},
            {"steps", r.steps},
            {"p", r.p},
            {"dS", r.dS},
            {"Hb", r.Hb},
            {"H", r.H},
            {"H_provenance", r.H_provenance},
            {"verdict", r.verdict ? "holds" : "violated"},
            {"magnitude_check", r.magnitude_check ? Json(*r.magnitude_check) : Json(nullptr)}};
}

}  // namespace rotm
