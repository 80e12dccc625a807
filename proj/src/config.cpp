#include "thz/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "thz/constants.hpp"
#include "thz/errors.hpp"

namespace thz {

namespace {

using nlohmann::json;

// Records unknown keys of `obj` as violations.
void reject_unknown(const json& obj, const std::string& where, const std::set<std::string>& known,
                    std::vector<std::string>& violations) {
    for (const auto& [key, value] : obj.items()) {
        if (!known.count(key)) violations.push_back(fmt::format("{}: unknown key \"{}\"", where, key));
    }
}

// Reads obj[key] into `target` when present; a non-number is a violation.
void read_number(const json& obj, const char* key, const std::string& where, double& target,
                 std::vector<std::string>& violations) {
    if (!obj.contains(key)) return;
    if (!obj[key].is_number()) {
        violations.push_back(fmt::format("{}.{} must be a number", where, key));
        return;
    }
    target = obj[key].get<double>();
}

bool section(const json& doc, const char* key, std::vector<std::string>& violations) {
    if (!doc.contains(key)) return false;
    if (!doc[key].is_object()) {
        violations.push_back(fmt::format("{} must be an object", key));
        return false;
    }
    return true;
}

}  // namespace

Allocation parse_allocation(const std::string& name) {
    if (name == "waterfilling") return Allocation::waterfilling;
    if (name == "flat") return Allocation::flat;
    throw ValidationError({fmt::format("allocation \"{}\" is not one of waterfilling, flat", name)});
}

LoadedScenario scenario_from_json(const json& doc, const std::filesystem::path& base_dir,
                                  const ScenarioOverrides& overrides,
                                  const std::optional<std::string>& catalog_override,
                                  const std::optional<std::string>& default_catalog) {
    std::vector<std::string> v;
    if (!doc.is_object()) throw ValidationError({"scenario must be a JSON object"});
    reject_unknown(doc, "scenario",
                   {"catalog", "geometry", "environment", "medium", "band", "frequency_hz", "tx_power_w",
                    "allocation", "absorption", "null_tolerance", "description"},
                   v);

    LoadedScenario out;
    Scenario& s = out.scenario;

    if (section(doc, "geometry", v)) {
        const auto& g = doc["geometry"];
        reject_unknown(g, "geometry",
                       {"distance_m", "tx_height_m", "rx_height_m", "tx_gain", "rx_gain", "package_side_m",
                        "package_height_m"},
                       v);
        read_number(g, "distance_m", "geometry", s.geom.distance, v);
        read_number(g, "tx_height_m", "geometry", s.geom.tx_height, v);
        read_number(g, "rx_height_m", "geometry", s.geom.rx_height, v);
        read_number(g, "tx_gain", "geometry", s.geom.tx_gain, v);
        read_number(g, "rx_gain", "geometry", s.geom.rx_gain, v);
        read_number(g, "package_side_m", "geometry", s.geom.package_side, v);
        read_number(g, "package_height_m", "geometry", s.geom.package_height, v);
    }
    if (overrides.distance_m) s.geom.distance = *overrides.distance_m;

    double temperature = s.env.temperature();
    double pressure_kpa = s.env.pressure_kpa();
    if (section(doc, "environment", v)) {
        const auto& e = doc["environment"];
        reject_unknown(e, "environment", {"temperature_k", "pressure_atm", "pressure_kpa"}, v);
        read_number(e, "temperature_k", "environment", temperature, v);
        if (e.contains("pressure_atm") && e.contains("pressure_kpa")) {
            v.emplace_back("environment: give pressure_atm or pressure_kpa, not both");
        } else if (e.contains("pressure_atm")) {
            double atm = 1.0;
            read_number(e, "pressure_atm", "environment", atm, v);
            pressure_kpa = atm * constants::kpa_per_atm;
        } else {
            read_number(e, "pressure_kpa", "environment", pressure_kpa, v);
        }
    }
    if (overrides.temperature_k) temperature = *overrides.temperature_k;
    if (overrides.pressure_kpa) pressure_kpa = *overrides.pressure_kpa;
    try {
        s.env = Environment::from_kpa(temperature, pressure_kpa);
    } catch (const DomainError& e) {
        v.emplace_back(e.what());
    }

    if (section(doc, "band", v)) {
        const auto& b = doc["band"];
        reject_unknown(b, "band", {"bandwidth_hz", "subbands"}, v);
        read_number(b, "bandwidth_hz", "band", s.bandwidth, v);
        if (b.contains("subbands")) {
            if (b["subbands"].is_number_unsigned() && b["subbands"].get<std::size_t>() > 0)
                s.subbands = b["subbands"].get<std::size_t>();
            else
                v.emplace_back("band.subbands must be a positive integer");
        }
    }
    if (overrides.bandwidth_hz) s.bandwidth = *overrides.bandwidth_hz;
    if (overrides.subbands) s.subbands = *overrides.subbands;
    if (!(s.bandwidth > 0.0)) v.push_back(fmt::format("bandwidth {} Hz must be positive", s.bandwidth));
    if (s.subbands < 1) v.emplace_back("subbands must be at least 1");

    read_number(doc, "frequency_hz", "scenario", s.frequency, v);
    if (overrides.frequency_hz) s.frequency = *overrides.frequency_hz;
    if (!(s.frequency > 0.0)) v.push_back(fmt::format("frequency {} Hz must be positive", s.frequency));

    read_number(doc, "tx_power_w", "scenario", s.tx_power, v);
    if (overrides.tx_power_w) s.tx_power = *overrides.tx_power_w;
    if (!(s.tx_power >= 0.0)) v.push_back(fmt::format("tx_power {} W must be >= 0", s.tx_power));

    if (doc.contains("allocation")) {
        if (!doc["allocation"].is_string()) {
            v.emplace_back("allocation must be a string");
        } else {
            try {
                s.allocation = parse_allocation(doc["allocation"].get<std::string>());
            } catch (const ValidationError& e) {
                v.insert(v.end(), e.violations().begin(), e.violations().end());
            }
        }
    }
    if (overrides.allocation) s.allocation = *overrides.allocation;
    s.baseline = overrides.baseline;

    if (section(doc, "absorption", v)) {
        const auto& a = doc["absorption"];
        reject_unknown(a, "absorption", {"wing_cutoff_hz", "opacity_cap"}, v);
        read_number(a, "wing_cutoff_hz", "absorption", s.options.path.absorption.wing_cutoff_hz, v);
        read_number(a, "opacity_cap", "absorption", s.options.path.absorption.opacity_cap, v);
        if (!(s.options.path.absorption.opacity_cap > 0.0)) v.emplace_back("absorption.opacity_cap must be positive");
    }
    read_number(doc, "null_tolerance", "scenario", s.options.path.null_tolerance, v);
    if (!(s.options.path.null_tolerance >= 0.0)) v.emplace_back("null_tolerance must be >= 0");

    try {
        s.geom.validate();
    } catch (const ValidationError& e) {
        v.insert(v.end(), e.violations().begin(), e.violations().end());
    }

    json medium_doc = {{"epsilon_r", 1.0}, {"composition", json::array()}};
    if (section(doc, "medium", v)) {
        medium_doc = doc["medium"];
        reject_unknown(medium_doc, "medium", {"epsilon_r", "composition"}, v);
    }

    if (catalog_override) {
        out.catalog_path = *catalog_override;
    } else if (doc.contains("catalog")) {
        if (doc["catalog"].is_string())
            out.catalog_path = (base_dir / doc["catalog"].get<std::string>()).lexically_normal().string();
        else
            v.emplace_back("catalog must be a string path");
    } else if (default_catalog) {
        out.catalog_path = *default_catalog;
    }

    const SpeciesSet wanted = composition_species(medium_doc);
    if (!wanted.empty() && out.catalog_path.empty())
        v.emplace_back("the medium has absorbing species but no line catalog was given");
    if (!out.catalog_path.empty() && !wanted.empty() && !std::filesystem::exists(out.catalog_path))
        v.push_back(fmt::format("catalog file {} does not exist", out.catalog_path));
    if (!v.empty()) throw ValidationError(std::move(v));

    std::vector<SpectralLine> lines;
    if (!wanted.empty()) {
        auto parsed = load_line_catalog(out.catalog_path, wanted);
        lines = std::move(parsed.lines);
        out.warnings = std::move(parsed.warnings);
    } else {
        out.catalog_path.clear();
    }
    s.medium = load_medium(medium_doc, lines);
    return out;
}

LoadedScenario load_scenario_file(const std::string& path, const ScenarioOverrides& overrides,
                                  const std::optional<std::string>& catalog_override,
                                  const std::optional<std::string>& default_catalog) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError({fmt::format("cannot open scenario file {}", path)});
    std::stringstream buffer;
    buffer << in.rdbuf();
    json doc;
    try {
        doc = json::parse(buffer.str());
    } catch (const json::parse_error& e) {
        throw ValidationError({fmt::format("{}: {}", path, e.what())});
    }
    return scenario_from_json(doc, std::filesystem::path(path).parent_path(), overrides, catalog_override,
                              default_catalog);
}

}  // namespace thz
