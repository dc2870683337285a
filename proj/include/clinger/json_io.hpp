#pragma once

#include <json.hpp>

#include "clinger/analysis.hpp"
#include "clinger/exact_radix.hpp"
#include "clinger/number_lab.hpp"
#include "clinger/vm.hpp"

// JSON forms of the report types. Arbitrary-precision integers are decimal
// strings, rationals are "p/q" strings, and certified interval endpoints
// are exact hex floats, so parsing an emitted report reproduces the value
// bit for bit.

namespace clinger {

std::string int_to_json(const Int& v);
Int int_from_json(const nlohmann::json& j);
std::string rat_to_json(const Rat& v);
Rat rat_from_json(const nlohmann::json& j);

void to_json(nlohmann::json& j, const BestApprox& v);
void from_json(const nlohmann::json& j, BestApprox& v);

void to_json(nlohmann::json& j, const DensityReport& v);
void from_json(const nlohmann::json& j, DensityReport& v);
void to_json(nlohmann::json& j, const WindowEntry& v);
void from_json(const nlohmann::json& j, WindowEntry& v);
void to_json(nlohmann::json& j, const WindowReport& v);
void from_json(const nlohmann::json& j, WindowReport& v);
void to_json(nlohmann::json& j, const BracketMember& v);
void from_json(const nlohmann::json& j, BracketMember& v);
void to_json(nlohmann::json& j, const BracketReport& v);
void from_json(const nlohmann::json& j, BracketReport& v);
void to_json(nlohmann::json& j, const ShiftReport& v);
void from_json(const nlohmann::json& j, ShiftReport& v);
void to_json(nlohmann::json& j, const MixingPair& v);
void from_json(const nlohmann::json& j, MixingPair& v);
void to_json(nlohmann::json& j, const MixingReport& v);
void from_json(const nlohmann::json& j, MixingReport& v);
void to_json(nlohmann::json& j, const PumpingEntry& v);
void from_json(const nlohmann::json& j, PumpingEntry& v);
void to_json(nlohmann::json& j, const DivergenceList& v);
void from_json(const nlohmann::json& j, DivergenceList& v);
void to_json(nlohmann::json& j, const PumpingReport& v);
void from_json(const nlohmann::json& j, PumpingReport& v);

// One JSON object per trace step: {step, state, c1, c2 (or r), consumed}.
std::string trace_json_lines(const Trace& trace);

nlohmann::json stages_to_json(const std::vector<StageRecord>& stages);
nlohmann::json loop_to_json(const LoopSummary& summary);
nlohmann::json affine_to_json(const AffineFitResult& fit);
nlohmann::json configuration_to_json(const Configuration& conf, MachineClass cls);

}  // namespace clinger
