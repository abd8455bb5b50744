#pragma once

#include <filesystem>
#include <string>

#include "heteroedge/runtime/scenario.hpp"
#include "heteroedge/types.hpp"

namespace heteroedge {

// JSON round trips for the file formats the CLI speaks. Report/decision
// serialization is canonical (sorted keys, shortest-round-trip numbers), so
// identical runs produce byte-identical documents.

std::string curves_to_json(const CostCurves& curves);
CostCurves curves_from_json(const std::string& text);
CostCurves load_curves(const std::filesystem::path& path);
void save_curves(const std::filesystem::path& path, const CostCurves& curves);

std::string constraints_to_json(const ConstraintSet& c);
ConstraintSet constraints_from_json(const std::string& text);
ConstraintSet load_constraints(const std::filesystem::path& path);

std::string decision_to_json(const SplitDecision& d);

runtime::ScenarioConfig scenario_from_json(const std::string& text);
runtime::ScenarioConfig load_scenario(const std::filesystem::path& path);
std::string scenario_to_json(const runtime::ScenarioConfig& c);

std::string report_to_json(const runtime::RunReport& r);

// Plot-ready per-batch table:
// batch,r,t_total,t_off,e_total,m1,m2,distance,halted
std::string report_batches_csv(const runtime::RunReport& r);

}  // namespace heteroedge
