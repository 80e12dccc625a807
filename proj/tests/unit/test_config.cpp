#include <doctest.h>

#include <string>

#include "thz/config.hpp"
#include "thz/errors.hpp"

using namespace thz;
using nlohmann::json;

namespace {

const std::string source = THZ_SOURCE_DIR;
const std::string catalog = source + "/data/catalog/h2o_o2_thz.par";

std::vector<std::string> violations_of(const json& doc) {
    try {
        scenario_from_json(doc, source);
    } catch (const ValidationError& e) {
        return e.violations();
    }
    return {};
}

}  // namespace

TEST_CASE("an empty document gives the defaults") {
    const auto loaded = scenario_from_json(json::object(), source);
    const Scenario defaults;
    CHECK(loaded.scenario.frequency == defaults.frequency);
    CHECK(loaded.scenario.bandwidth == defaults.bandwidth);
    CHECK(loaded.scenario.subbands == defaults.subbands);
    CHECK(loaded.scenario.geom.distance == defaults.geom.distance);
    CHECK(loaded.scenario.medium.transparent());
    CHECK(loaded.catalog_path.empty());
}

TEST_CASE("bundled scenarios load") {
    const auto wv = load_scenario_file(source + "/data/scenarios/water_vapor.json");
    CHECK_FALSE(wv.scenario.medium.transparent());
    CHECK(wv.scenario.medium.mixing_ratio({1, 1}) == 0.1);
    CHECK(wv.scenario.medium.mixing_ratio({7, 1}) == 0.2);
    CHECK(wv.scenario.env.pressure() == doctest::Approx(1.0));
    CHECK(wv.catalog_path.find("h2o_o2_thz.par") != std::string::npos);
    CHECK(wv.warnings.empty());
    const auto conv = load_scenario_file(source + "/data/scenarios/conventional.json");
    CHECK(conv.scenario.medium.transparent());
}

TEST_CASE("every problem is reported together") {
    const auto v = violations_of(json::parse(R"({
        "frequency_hz": -1,
        "tx_power_w": "lots",
        "allocation": "greedy",
        "band": {"subbands": 0},
        "geometry": {"distance_m": 1.0, "color": "red"},
        "environment": {"temperature_k": 0},
        "extra": true})"));
    CHECK(v.size() == 8);
}

TEST_CASE("pressure given twice is a violation") {
    const auto v = violations_of(json::parse(R"({"environment": {"pressure_atm": 1, "pressure_kpa": 101.325}})"));
    CHECK(v.size() == 1);
    const auto kpa = scenario_from_json(json::parse(R"({"environment": {"pressure_kpa": 50.6625}})"), source);
    CHECK(kpa.scenario.env.pressure() == doctest::Approx(0.5));
}

TEST_CASE("absorbing species need a catalog") {
    const json doc = json::parse(R"({"medium": {"epsilon_r": 1, "composition": [{"gas_id": 1, "iso_id": 1, "q": 0.1}]}})");
    CHECK(violations_of(doc).size() == 1);
    // default catalog applies when the document has none
    const auto loaded = scenario_from_json(doc, source, {}, std::nullopt, catalog);
    CHECK(loaded.catalog_path == catalog);
    CHECK_FALSE(loaded.scenario.medium.lines.empty());
    // a missing file is a violation, not an I/O crash
    CHECK_THROWS_AS(scenario_from_json(doc, source, {}, std::string("/nonexistent.par")), ValidationError);
}

TEST_CASE("catalog precedence: override, document, default") {
    json doc = json::parse(R"({"medium": {"epsilon_r": 1, "composition": [{"gas_id": 1, "iso_id": 1, "q": 0.1}]}})");
    doc["catalog"] = "data/catalog/h2o_o2_thz.par";
    const auto from_doc = scenario_from_json(doc, source, {}, std::nullopt, std::string("/nonexistent.par"));
    CHECK(from_doc.catalog_path.find("data/catalog/h2o_o2_thz.par") != std::string::npos);
    const auto fixture = std::string(THZ_FIXTURE_DIR) + "/valid_mixed.par";
    const auto overridden = scenario_from_json(doc, source, {}, fixture);
    CHECK(overridden.catalog_path == fixture);
    CHECK(overridden.scenario.medium.lines.size() < from_doc.scenario.medium.lines.size());
    // a malformed catalog surfaces as a positioned parse error
    CHECK_THROWS_AS(scenario_from_json(doc, source, {}, std::string(THZ_FIXTURE_DIR) + "/short_record.par"),
                    ParseError);
}

TEST_CASE("overrides win over the document") {
    ScenarioOverrides o;
    o.frequency_hz = 1.5e12;
    o.distance_m = 5e-5;
    o.temperature_k = 350;
    o.pressure_kpa = 50;
    o.tx_power_w = 1e-3;
    o.bandwidth_hz = 1e11;
    o.subbands = 8;
    o.allocation = Allocation::flat;
    o.baseline = true;
    const auto s = load_scenario_file(source + "/data/scenarios/water_vapor.json", o).scenario;
    CHECK(s.frequency == 1.5e12);
    CHECK(s.geom.distance == 5e-5);
    CHECK(s.env.temperature() == 350);
    CHECK(s.env.pressure_kpa() == doctest::Approx(50));
    CHECK(s.tx_power == 1e-3);
    CHECK(s.bandwidth == 1e11);
    CHECK(s.subbands == 8);
    CHECK(s.allocation == Allocation::flat);
    CHECK(s.baseline);
    CHECK(s.proposed_medium().transparent());
    ScenarioOverrides bad;
    bad.subbands = 0;
    CHECK_THROWS_AS(load_scenario_file(source + "/data/scenarios/conventional.json", bad), ValidationError);
}

TEST_CASE("unreadable or malformed scenario files") {
    CHECK_THROWS_AS(load_scenario_file("/nonexistent/scenario.json"), ValidationError);
    CHECK_THROWS_AS(load_scenario_file(std::string(THZ_FIXTURE_DIR) + "/short_record.par"), ValidationError);
    CHECK(parse_allocation("flat") == Allocation::flat);
    CHECK_THROWS_AS(parse_allocation("Flat"), ValidationError);
}
