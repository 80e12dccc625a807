#pragma once

// Scenario documents: one JSON object per experiment.
//
//   {
//     "catalog": "../catalog/h2o_o2_thz.par",        // relative to the document
//     "geometry": {"distance_m", "tx_height_m", "rx_height_m", "tx_gain", "rx_gain",
//                  "package_side_m", "package_height_m"},
//     "environment": {"temperature_k", "pressure_atm" | "pressure_kpa"},
//     "medium": {"epsilon_r", "composition": [{"gas_id", "iso_id", "q"}]},
//     "band": {"bandwidth_hz", "subbands"},
//     "frequency_hz", "tx_power_w", "allocation": "waterfilling" | "flat",
//     "absorption": {"wing_cutoff_hz", "opacity_cap"},
//     "null_tolerance"
//   }
//
// Every key is optional; absent keys keep the Scenario defaults. Unknown keys
// are rejected so typos do not silently fall back to defaults.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "thz/sweep.hpp"

namespace thz {

struct LoadedScenario {
    Scenario scenario;
    std::string catalog_path;            // empty when the medium is transparent
    std::vector<std::string> warnings;   // from the catalog parse
};

/// Scalar overrides applied after the document is read (command-line flags).
struct ScenarioOverrides {
    std::optional<double> frequency_hz;
    std::optional<double> distance_m;
    std::optional<double> temperature_k;
    std::optional<double> pressure_kpa;
    std::optional<double> tx_power_w;
    std::optional<double> bandwidth_hz;
    std::optional<std::size_t> subbands;
    std::optional<Allocation> allocation;
    bool baseline = false;
};

/// Builds a Scenario from `doc`. The catalog is chosen in order: `catalog_override`,
/// the document's "catalog" (resolved against `base_dir`), then `default_catalog`.
/// It is read only when the composition is non-empty. All problems found in
/// the document are reported together as one ValidationError; catalog syntax
/// errors surface as ParseError.
LoadedScenario scenario_from_json(const nlohmann::json& doc, const std::filesystem::path& base_dir,
                                  const ScenarioOverrides& overrides = {},
                                  const std::optional<std::string>& catalog_override = std::nullopt,
                                  const std::optional<std::string>& default_catalog = std::nullopt);

/// Reads `path` and calls scenario_from_json with its directory as base.
LoadedScenario load_scenario_file(const std::string& path, const ScenarioOverrides& overrides = {},
                                  const std::optional<std::string>& catalog_override = std::nullopt,
                                  const std::optional<std::string>& default_catalog = std::nullopt);

Allocation parse_allocation(const std::string& name);

}  // namespace thz
