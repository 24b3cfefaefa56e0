#pragma once

#include "arith_orbit/experiments.hpp"
#include "arith_orbit/phase_module.hpp"
#include "arith_orbit/piecewise.hpp"

#include <json.hpp>

namespace arith_orbit {

// JSON documents for the analysis commands. Every rational is an exact
// string; logs appear both as exact coefficient lists and as decimals with
// `digits` significant digits.

nlohmann::json to_json(const std::vector<LogTerm>& terms);
nlohmann::json to_json(const GlobalHeightPrediction& h, int digits = 20);
nlohmann::json to_json(const IslandReport& report, int digits = 20);
nlohmann::json to_json(const HeightReport& report, int digits = 20);
nlohmann::json to_json(const PhaseModule& module);

}  // namespace arith_orbit
