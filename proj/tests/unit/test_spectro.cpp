#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "thz/constants.hpp"
#include "thz/errors.hpp"
#include "thz/spectro.hpp"

using namespace thz;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string fixture(const std::string& name) { return slurp(std::string(THZ_FIXTURE_DIR) + "/" + name); }

// A well-formed record with the given fields; everything else blank or zero.
std::string record(int gas, char iso, const char* wavenumber12, const char* intensity10 = " 1.000E-20",
                   const char* air5 = ".0500", const char* self5 = "0.300", const char* n4 = "0.70",
                   const char* shift8 = "-.001000") {
    std::string r = (gas < 10 ? " " : "") + std::to_string(gas);
    r += iso;
    r += wavenumber12;
    r += intensity10;
    r += " 0.000E+00";
    r += air5;
    r += self5;
    r += "  100.0000";
    r += n4;
    r += shift8;
    r.append(60, ' ');
    r.append(18, '0');
    r += "     0.0    0.0";
    REQUIRE(r.size() == catalog_record_width);
    return r;
}

const SpeciesSet water{{1, 1}};

}  // namespace

TEST_CASE("wavenumber converts to hertz with 100 c") {
    auto r = parse_line_catalog(record(1, '1', "   33.356400"), water);
    REQUIRE(r.lines.size() == 1);
    // 100 * 2.9979e8 * 33.3564, by hand
    CHECK(r.lines[0].f_c0 == doctest::Approx(9.999915156e11).epsilon(1e-12));
    CHECK(r.lines[0].f_c0 == doctest::Approx(1.0e12).epsilon(1e-5));
}

TEST_CASE("all spectral fields are converted to SI") {
    auto r = parse_line_catalog(record(1, '1', "   10.000000", " 2.500E-19", ".0926", "0.461", "0.76", "-.001115"),
                                water);
    REQUIRE(r.lines.size() == 1);
    const auto& l = r.lines[0];
    const double k = 100.0 * 2.9979e8;
    CHECK(l.gas_id == 1);
    CHECK(l.iso_id == 1);
    CHECK(l.f_c0 == doctest::Approx(10.0 * k));
    CHECK(l.alpha_air == doctest::Approx(0.0926 * k));
    CHECK(l.alpha_self == doctest::Approx(0.461 * k));
    CHECK(l.temp_exponent == doctest::Approx(0.76));
    CHECK(l.pressure_shift == doctest::Approx(-0.001115 * k));
    // cm^-1/(molecule cm^-2) -> Hz m^2 per molecule
    CHECK(l.line_intensity == doctest::Approx(2.5e-19 * k * 1e-4));
}

TEST_CASE("unit conversion is linear in the wavenumber") {
    auto a = parse_line_catalog(record(1, '1', "   12.345000"), water).lines.at(0);
    auto b = parse_line_catalog(record(1, '1', "   24.690000"), water).lines.at(0);
    CHECK(b.f_c0 == doctest::Approx(2.0 * a.f_c0).epsilon(1e-15));
}

TEST_CASE("species outside the wanted set are excluded") {
    const std::string text = record(1, '1', "   10.000000") + "\n" + record(2, '1', "   11.000000") + "\n";
    auto r = parse_line_catalog(text, water);
    CHECK(r.records == 2);
    REQUIRE(r.lines.size() == 1);
    CHECK(r.lines[0].gas_id == 1);
}

TEST_CASE("filtering commutes with parsing") {
    const auto text = fixture("valid_mixed.par");
    const SpeciesSet all{{1, 1}, {7, 1}, {1, 10}, {1, 11}, {2, 1}};
    auto everything = parse_line_catalog(text, all);
    for (const auto& s : all) {
        auto filtered = parse_line_catalog(text, {s});
        std::vector<SpectralLine> expect;
        for (const auto& l : everything.lines)
            if (l.species() == s) expect.push_back(l);
        REQUIRE(filtered.lines.size() == expect.size());
        for (std::size_t i = 0; i < expect.size(); ++i) CHECK(filtered.lines[i].f_c0 == expect[i].f_c0);
    }
}

TEST_CASE("CRLF endings, blank lines and letter isotopologue codes") {
    auto r = parse_line_catalog(fixture("valid_mixed.par"), {{1, 1}, {1, 10}, {1, 11}, {7, 1}});
    CHECK(r.records == 5);
    CHECK(r.lines.size() == 4);
    CHECK(r.warnings.empty());
    bool saw10 = false, saw11 = false;
    for (const auto& l : r.lines) {
        saw10 |= l.iso_id == 10;
        saw11 |= l.iso_id == 11;
    }
    CHECK(saw10);
    CHECK(saw11);
}

TEST_CASE("a wanted species with no lines is a warning") {
    auto r = parse_line_catalog(record(1, '1', "   10.000000"), {{1, 1}, {3, 1}});
    CHECK(r.lines.size() == 1);
    REQUIRE(r.warnings.size() == 1);
    CHECK(r.warnings[0].find("gas 3") != std::string::npos);
}

TEST_CASE("lines below the intensity floor are dropped") {
    const std::string text =
        record(1, '1', "   10.000000", " 1.000E-31") + "\n" + record(1, '1', "   11.000000", " 1.000E-29");
    auto r = parse_line_catalog(text, water);
    CHECK(r.lines.size() == 1);
    CHECK(r.below_floor == 1);
    auto all = parse_line_catalog(text, water, CatalogOptions{0.0});
    CHECK(all.lines.size() == 2);
}

TEST_CASE("159-character record is a positioned parse error") {
    auto r = record(1, '1', "   10.000000");
    r.pop_back();
    try {
        parse_line_catalog(record(1, '1', "   11.000000") + "\n" + r + "\n", water);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.first_column() == 1);
        CHECK(e.last_column() == 159);
    }
}

TEST_CASE("malformed fixtures report line and column span") {
    const auto manifest = nlohmann::json::parse(fixture("malformed.json"));
    REQUIRE(manifest.size() >= 10);
    for (const auto& entry : manifest) {
        const auto name = entry["file"].get<std::string>();
        CAPTURE(name);
        try {
            parse_line_catalog(fixture(name), {});
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            CHECK(e.line() == entry["line"].get<std::size_t>());
            CHECK(e.first_column() == entry["first_column"].get<std::size_t>());
            CHECK(e.last_column() == entry["last_column"].get<std::size_t>());
            CHECK(std::string(e.what()).find("line ") == 0);
        }
    }
}

TEST_CASE("format_line_record reproduces consumed fields") {
    const auto src = record(1, 'A', "  123.456789", " 3.210E-21", ".0926", "0.461", "0.76", "-.001115");
    auto line = parse_line_catalog(src, {{1, 11}}).lines.at(0);
    const auto out = format_line_record(line);
    REQUIRE(out.size() == catalog_record_width);
    for (auto [first, last] : {std::pair{1, 3}, {4, 15}, {16, 25}, {36, 40}, {41, 45}, {56, 59}, {60, 67}})
        CHECK(out.substr(first - 1, last - first + 1) == src.substr(first - 1, last - first + 1));
}

TEST_CASE("the bundled catalog round-trips record by record") {
    const auto text = slurp(std::string(THZ_SOURCE_DIR) + "/data/catalog/h2o_o2_thz.par");
    auto r = parse_line_catalog(text, {{1, 1}, {7, 1}}, CatalogOptions{0.0});
    REQUIRE(r.lines.size() == r.records);
    std::istringstream in(text);
    std::string src;
    std::size_t i = 0;
    while (std::getline(in, src)) {
        const auto out = format_line_record(r.lines.at(i++));
        for (auto [first, last] : {std::pair{1, 3}, {4, 15}, {16, 25}, {36, 40}, {41, 45}, {56, 59}, {60, 67}})
            CHECK(out.substr(first - 1, last - first + 1) == src.substr(first - 1, last - first + 1));
    }
    CHECK(i == r.records);
}

TEST_CASE("load_medium accepts a well-formed composition") {
    auto catalog = parse_line_catalog(record(1, '1', "   10.000000") + "\n" + record(2, '1', "   11.000000"),
                                      {{1, 1}, {2, 1}})
                       .lines;
    auto doc = nlohmann::json::parse(R"({"epsilon_r": 1.0, "composition": [{"gas_id": 1, "iso_id": 1, "q": 0.01}]})");
    auto m = load_medium(doc, catalog);
    CHECK(m.lines.size() == 1);
    CHECK(m.mixing_ratio({1, 1}) == 0.01);
    CHECK(m.mixing_ratio({2, 1}) == 0.0);
    CHECK_FALSE(m.transparent());
}

TEST_CASE("empty composition is the transparent baseline") {
    auto m = load_medium(nlohmann::json::parse(R"({"epsilon_r": 1.0, "composition": []})"), {});
    CHECK(m.transparent());
    CHECK(conventional_medium(m).transparent());
}

TEST_CASE("load_medium lists every violation") {
    auto doc = nlohmann::json::parse(R"({"epsilon_r": 0.5, "composition": [
        {"gas_id": 1, "iso_id": 1, "q": 1.2},
        {"gas_id": 2, "iso_id": 1, "q": 0.7},
        {"gas_id": 3, "iso_id": 1, "q": 0.6},
        {"gas_id": 2, "iso_id": 1, "q": 0.1},
        {"gas_id": "x"}]})");
    try {
        load_medium(doc, {});
        FAIL("expected validation error");
    } catch (const ValidationError& e) {
        const auto& v = e.violations();
        CHECK(v.size() == 5);
        const std::string all = e.what();
        CHECK(all.find("epsilon_r") != std::string::npos);
        CHECK(all.find("1.2") != std::string::npos);
        CHECK(all.find("sum") != std::string::npos);
        CHECK(all.find("twice") != std::string::npos);
    }
    CHECK_THROWS_AS(load_medium(nlohmann::json::parse("{}"), {}), ValidationError);
}

TEST_CASE("make_medium rejects q outside [0, 1]") {
    CHECK_THROWS_AS(make_medium({{{1, 1}, 1.2}}, 1.0, {}), ValidationError);
    CHECK_THROWS_AS(make_medium({{{1, 1}, -0.1}}, 1.0, {}), ValidationError);
    CHECK_THROWS_AS(make_medium({}, 0.99, {}), ValidationError);
    CHECK_NOTHROW(make_medium({{{1, 1}, 0.01}}, 1.0, {}));
}
