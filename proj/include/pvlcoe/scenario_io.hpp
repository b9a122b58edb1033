#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "pvlcoe/scenario.hpp"

namespace pvlcoe {

/// Version of the scenario document schema accepted by load_scenario.
inline constexpr int schema_version = 1;

/// Parses "0.05" or the percent convenience form "5%" into a fraction.
double parse_fraction(const std::string& text);

/// Parse a scenario document, reporting syntax errors with line/column.
nlohmann::ordered_json parse_scenario_document(const std::string& text);

/// Build and fully validate a Scenario from a parsed document. Every
/// nested invariant is checked here and unknown keys are rejected, so a
/// returned Scenario is always evaluable.
Scenario scenario_from_json(const nlohmann::ordered_json& document);

Scenario load_scenario(const std::string& text);
Scenario load_scenario_file(const std::filesystem::path& path);

/// Full-form document for the scenario: defaults made explicit, rates as
/// plain fractions. load(emit(s)) reproduces s exactly.
nlohmann::ordered_json scenario_to_json(const Scenario& scenario);

}  // namespace pvlcoe
