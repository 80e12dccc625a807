#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>

#include "thz/config.hpp"
#include "thz/constants.hpp"
#include "thz/errors.hpp"
#include "thz/sweep.hpp"

using namespace thz;

namespace {

Scenario water_vapor() {
    return load_scenario_file(std::string(THZ_SOURCE_DIR) + "/data/scenarios/water_vapor.json").scenario;
}

std::string csv(const SweepResult& r) {
    std::ostringstream s;
    write_csv(r, s);
    return s.str();
}

}  // namespace

TEST_CASE("axis points") {
    auto xs = axis_points({1.0, 3.0, 5});
    REQUIRE(xs.size() == 5);
    CHECK(xs[0] == 1.0);
    CHECK(xs[2] == 2.0);
    CHECK(xs[4] == 3.0);
    auto one = axis_points({7.0, 9.0, 1});
    REQUIRE(one.size() == 1);
    CHECK(one[0] == 7.0);
    auto lg = axis_points({1e-5, 1e-3, 3, Spacing::logarithmic});
    CHECK(lg[1] == doctest::Approx(1e-4));
    CHECK(lg[2] == 1e-3);
    CHECK_THROWS_AS(axis_points({2.0, 2.0, 4}), DomainError);
    CHECK_THROWS_AS(axis_points({3.0, 2.0, 4}), DomainError);
    CHECK_THROWS_AS(axis_points({1.0, 2.0, 0}), DomainError);
    CHECK_THROWS_AS(axis_points({0.0, 2.0, 4, Spacing::logarithmic}), DomainError);
    CHECK_THROWS_AS(axis_points({NAN, 2.0, 4}), DomainError);
}

TEST_CASE("path loss sweep columns and ordering") {
    const auto s = water_vapor();
    const auto r = sweep_pathloss_vs_frequency(s, {1e12, 3e12, 41}, {1e-4, 1e-3});
    CHECK(r.axis == "frequency");
    CHECK(r.columns == std::vector<std::string>{"L_proposed_dB@d=0.0001m", "L_conventional_dB@d=0.0001m",
                                                "L_proposed_dB@d=0.001m", "L_conventional_dB@d=0.001m"});
    REQUIRE(r.rows.size() == 41);
    for (std::size_t i = 1; i < r.rows.size(); ++i) CHECK(r.rows[i].x > r.rows[i - 1].x);
    for (const auto& row : r.rows) {
        CHECK_FALSE(row.gap);
        CHECK(row.values[0] >= row.values[1]);
        CHECK(row.values[2] >= row.values[3]);
    }
}

TEST_CASE("baseline flag makes both columns equal") {
    auto s = water_vapor();
    s.baseline = true;
    const auto r = sweep_pathloss_vs_frequency(s, {1e12, 3e12, 21}, {1e-4});
    for (const auto& row : r.rows) CHECK(row.values[0] == row.values[1]);
}

TEST_CASE("two-ray nulls become gap rows without interpolation") {
    auto s = water_vapor();
    const double fnull = constants::light_speed * 2e-6 / (2 * s.geom.tx_height * s.geom.rx_height);
    // the middle point lands exactly on the null frequency
    const auto r = sweep_pathloss_vs_frequency(s, {fnull - 1e10, fnull + 1e10, 3}, {2e-6});
    REQUIRE(r.rows.size() == 3);
    CHECK_FALSE(r.rows[0].gap);
    CHECK(r.rows[1].gap);
    CHECK(r.rows[1].gap_reason == "two-ray-null");
    CHECK(std::isnan(r.rows[1].values[0]));
    CHECK(std::isnan(r.rows[1].values[1]));
    CHECK_FALSE(r.rows[2].gap);
    const auto text = csv(r);
    CHECK(text.find(",nan,nan,1,two-ray-null\n") != std::string::npos);
}

TEST_CASE("opaque points become gap rows") {
    auto s = water_vapor();
    s.options.path.absorption.opacity_cap = 1e-6;
    const auto r = sweep_pathloss_vs_frequency(s, {1.2e12, 1.3e12, 3}, {1e-4});
    for (const auto& row : r.rows) {
        CHECK(row.gap);
        CHECK(row.gap_reason == "opaque");
        CHECK(std::isnan(row.values[0]));
        CHECK(std::isfinite(row.values[1]));
    }
}

TEST_CASE("results do not depend on the thread count") {
    const auto s = water_vapor();
    const AxisRange fr{1e12, 3e12, 37};
    const auto one = csv(sweep_pathloss_vs_frequency(s, fr, {1e-4, 5e-4}, {1}));
    for (unsigned t : {2u, 5u, 0u}) CHECK(csv(sweep_pathloss_vs_frequency(s, fr, {1e-4, 5e-4}, {t})) == one);
    const AxisRange dr{10e-6, 100e-6, 9};
    const auto d1 = csv(sweep_capacity_vs_distance(s, dr, {Allocation::waterfilling, Allocation::flat}, {1}));
    CHECK(csv(sweep_capacity_vs_distance(s, dr, {Allocation::waterfilling, Allocation::flat}, {4})) == d1);
}

TEST_CASE("temperature sweep lowers loss and raises capacity") {
    const auto s = water_vapor();
    const auto r = sweep_vs_temperature(s, {250, 400, 16}, {1.2e12});
    CHECK(r.unit == "K");
    const auto loss = r.series("L_proposed_dB@f=1.2e+12Hz");
    const auto conv = r.series("L_conventional_dB@f=1.2e+12Hz");
    for (std::size_t i = 1; i < loss.size(); ++i) {
        CHECK(loss[i] < loss[i - 1]);
        CHECK(conv[i] == conv[0]);
    }
    CHECK(r.series("C_proposed_bps@f=1.2e+12Hz").size() == 16);
}

TEST_CASE("pressure sweep raises loss") {
    const auto s = water_vapor();
    const auto r = sweep_vs_pressure(s, {20, 200, 19}, {1.3e12});
    CHECK(r.unit == "kPa");
    const auto loss = r.series("L_proposed_dB@f=1.3e+12Hz");
    for (std::size_t i = 1; i < loss.size(); ++i) CHECK(loss[i] > loss[i - 1]);
}

TEST_CASE("capacity against distance orders the models and allocations") {
    const auto s = water_vapor();
    const auto r = sweep_capacity_vs_distance(s, {10e-6, 100e-6, 10}, {Allocation::waterfilling, Allocation::flat});
    const auto wf = r.series("C_proposed_bps@waterfilling");
    const auto flat = r.series("C_proposed_bps@flat");
    const auto conv = r.series("C_conventional_bps@waterfilling");
    for (std::size_t i = 0; i < wf.size(); ++i) {
        CHECK(wf[i] >= flat[i]);
        CHECK(wf[i] <= conv[i]);
        if (i) CHECK(wf[i] <= wf[i - 1]);
    }
}

TEST_CASE("capacity against frequency") {
    const auto s = water_vapor();
    const auto r = sweep_capacity_vs_frequency(s, {1e12, 2e12, 11});
    for (const auto& row : r.rows) CHECK(row.values[0] <= row.values[1]);
}

TEST_CASE("CSV layout") {
    SweepResult r{"frequency", "Hz", {"a", "b"}, {}};
    r.rows.push_back({1e12, {1.5, -2.0}, false, ""});
    r.rows.push_back({2e12, {NAN, 3.0}, true, "opaque"});
    CHECK(csv(r) ==
          "frequency [Hz],a,b,gap,gap_reason\n"
          "1.000000000e+12,1.500000000e+00,-2.000000000e+00,0,\n"
          "2.000000000e+12,nan,3.000000000e+00,1,opaque\n");
    CHECK(r.column("b") == 1);
    CHECK_THROWS_AS(r.column("c"), std::out_of_range);
    std::ostringstream t;
    write_table(r, t);
    CHECK(t.str().find("opaque") != std::string::npos);
}
