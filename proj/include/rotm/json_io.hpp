#pragma once

#include "json.hpp"
#include "rotm/bennett.hpp"
#include "rotm/census.hpp"
#include "rotm/demon.hpp"
#include "rotm/parser.hpp"
#include "rotm/reversibility.hpp"
#include "rotm/simulator.hpp"

namespace rotm {

using Json = nlohmann::ordered_json;

Json dp_json(const Machine& machine, const DynamicPart& dp);
Json to_json(const ValidationReport& report);
Json to_json(const Machine& machine, const RunResult& result);
Json to_json(const Machine& machine, const StaticReport& report);
Json to_json(const Machine& machine, const ExhaustiveReport& report);
Json to_json(const Machine& machine, const CensusResult& result, bool witnesses);
Json to_json(const Machine& machine, const FamilyReport& report);
Json to_json(const PipelineResult& result);
Json to_json(const ExperimentParams& params, const DemonStats& stats);
Json to_json(const LedgerReport& report);

}  // namespace rotm
