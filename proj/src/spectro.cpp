#include "thz/spectro.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "thz/constants.hpp"
#include "thz/errors.hpp"

namespace thz {

namespace {

// 1-based inclusive column spans of the consumed fields.
struct Field {
    std::size_t first;
    std::size_t last;
    const char* name;
};

constexpr Field kMolecule{1, 2, "molecule id"};
constexpr Field kIsotopologue{3, 3, "isotopologue id"};
constexpr Field kWavenumber{4, 15, "wavenumber"};
constexpr Field kIntensity{16, 25, "intensity"};
constexpr Field kAirWidth{36, 40, "air-broadened half-width"};
constexpr Field kSelfWidth{41, 45, "self-broadened half-width"};
constexpr Field kTempExponent{56, 59, "temperature exponent"};
constexpr Field kShift{60, 67, "pressure shift"};

// cm^-1/(molecule cm^-2) -> m^2 Hz / molecule
constexpr double kIntensityToSi = constants::hz_per_wavenumber * 1e-4;

std::string_view slice(std::string_view record, const Field& f) {
    return record.substr(f.first - 1, f.last - f.first + 1);
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    return s;
}

double read_real(std::string_view record, const Field& f, std::size_t line_no) {
    auto text = trim(slice(record, f));
    double value = 0.0;
    if (!text.empty()) {
        auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec == std::errc{} && end == text.data() + text.size() && std::isfinite(value))
            return value;
    }
    throw ParseError(line_no, f.first, f.last,
                     fmt::format("{} is not a number: '{}'", f.name, slice(record, f)));
}

int read_integer(std::string_view record, const Field& f, std::size_t line_no) {
    auto text = trim(slice(record, f));
    int value = 0;
    if (!text.empty()) {
        auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec == std::errc{} && end == text.data() + text.size() && value > 0) return value;
    }
    throw ParseError(line_no, f.first, f.last,
                     fmt::format("{} is not a positive integer: '{}'", f.name, slice(record, f)));
}

// Single-character isotopologue code: 1-9, then 0 for 10 and A, B, ... for 11, 12, ...
int read_isotopologue(std::string_view record, std::size_t line_no) {
    const char ch = record[kIsotopologue.first - 1];
    if (ch >= '1' && ch <= '9') return ch - '0';
    if (ch == '0') return 10;
    if (ch >= 'A' && ch <= 'Z') return 11 + (ch - 'A');
    throw ParseError(line_no, kIsotopologue.first, kIsotopologue.last,
                     fmt::format("isotopologue id is not a valid code: '{}'", ch));
}

char isotopologue_code(int iso) {
    if (iso >= 1 && iso <= 9) return static_cast<char>('0' + iso);
    if (iso == 10) return '0';
    if (iso >= 11 && iso <= 36) return static_cast<char>('A' + (iso - 11));
    throw DomainError(fmt::format("isotopologue id {} has no catalog code", iso));
}

void require(bool ok, std::size_t line_no, const Field& f, const char* rule) {
    if (!ok) throw ParseError(line_no, f.first, f.last, fmt::format("{} must be {}", f.name, rule));
}

struct ParsedRecord {
    SpectralLine line;
    double catalog_intensity;
};

ParsedRecord parse_record(std::string_view record, std::size_t line_no) {
    if (record.size() != catalog_record_width) {
        throw ParseError(line_no, 1, std::max<std::size_t>(record.size(), 1),
                         fmt::format("record is {} characters wide, expected {}", record.size(),
                                     catalog_record_width));
    }
    SpectralLine line;
    line.gas_id = read_integer(record, kMolecule, line_no);
    line.iso_id = read_isotopologue(record, line_no);
    const double wavenumber = read_real(record, kWavenumber, line_no);
    const double intensity = read_real(record, kIntensity, line_no);
    const double gamma_air = read_real(record, kAirWidth, line_no);
    const double gamma_self = read_real(record, kSelfWidth, line_no);
    line.temp_exponent = read_real(record, kTempExponent, line_no);
    const double shift = read_real(record, kShift, line_no);

    require(wavenumber > 0.0, line_no, kWavenumber, "positive");
    require(intensity >= 0.0, line_no, kIntensity, "non-negative");
    require(gamma_air > 0.0, line_no, kAirWidth, "positive");
    require(gamma_self >= 0.0, line_no, kSelfWidth, "non-negative");

    line.f_c0 = wavenumber * constants::hz_per_wavenumber;
    line.line_intensity = intensity * kIntensityToSi;
    line.alpha_air = gamma_air * constants::hz_per_wavenumber;
    line.alpha_self = gamma_self * constants::hz_per_wavenumber;
    line.pressure_shift = shift * constants::hz_per_wavenumber;
    return {line, intensity};
}

// Fortran Fw.d output; drops the leading zero when the value would not fit,
// which is how the catalog writes e.g. .0926 and -.001115.
std::string fortran_fixed(double value, int width, int decimals) {
    auto text = fmt::format("{:{}.{}f}", value, width, decimals);
    if (static_cast<int>(text.size()) > width) {
        if (auto pos = text.find("0."); pos != std::string::npos) text.erase(pos, 1);
    }
    if (static_cast<int>(text.size()) != width) {
        throw DomainError(fmt::format("{} does not fit F{}.{}", value, width, decimals));
    }
    return text;
}

}  // namespace

CatalogParse parse_line_catalog(std::string_view raw_text, const SpeciesSet& wanted,
                                const CatalogOptions& options) {
    CatalogParse out;
    std::map<SpeciesId, std::size_t> found;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < raw_text.size()) {
        auto nl = raw_text.find('\n', pos);
        auto record = raw_text.substr(pos, nl == std::string_view::npos ? raw_text.npos : nl - pos);
        pos = (nl == std::string_view::npos) ? raw_text.size() : nl + 1;
        ++line_no;
        if (!record.empty() && record.back() == '\r') record.remove_suffix(1);
        if (record.empty()) continue;

        auto parsed = parse_record(record, line_no);
        ++out.records;
        if (!wanted.contains(parsed.line.species())) continue;
        if (parsed.catalog_intensity < options.intensity_floor) {
            ++out.below_floor;
            continue;
        }
        ++found[parsed.line.species()];
        out.lines.push_back(parsed.line);
    }
    for (const auto& s : wanted) {
        if (!found.contains(s)) {
            out.warnings.push_back(fmt::format(
                "no catalog lines for gas {} isotopologue {}", s.gas_id, s.iso_id));
        }
    }
    return out;
}

CatalogParse load_line_catalog(const std::string& path, const SpeciesSet& wanted,
                               const CatalogOptions& options) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open line catalog: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_line_catalog(buf.str(), wanted, options);
}

std::string format_line_record(const SpectralLine& line) {
    if (line.gas_id < 1 || line.gas_id > 99)
        throw DomainError(fmt::format("molecule id {} does not fit the catalog field", line.gas_id));
    std::string out;
    out.reserve(catalog_record_width);
    out += fmt::format("{:2d}", line.gas_id);
    out += isotopologue_code(line.iso_id);
    out += fmt::format("{:12.6f}", line.f_c0 / constants::hz_per_wavenumber);
    out += fmt::format("{:10.3E}", line.line_intensity / kIntensityToSi);
    out += fmt::format("{:10.3E}", 0.0);  // Einstein A
    out += fortran_fixed(line.alpha_air / constants::hz_per_wavenumber, 5, 4);
    out += fortran_fixed(line.alpha_self / constants::hz_per_wavenumber, 5, 3);
    out += fmt::format("{:10.4f}", 0.0);  // lower-state energy
    out += fortran_fixed(line.temp_exponent, 4, 2);
    out += fortran_fixed(line.pressure_shift / constants::hz_per_wavenumber, 8, 6);
    out.append(60, ' ');                  // quanta
    out.append(18, '0');                  // uncertainty and reference codes
    out += ' ';
    out += fmt::format("{:7.1f}{:7.1f}", 0.0, 0.0);
    return out;
}

double Medium::mixing_ratio(SpeciesId s) const {
    auto it = composition.find(s);
    return it == composition.end() ? 0.0 : it->second;
}

Medium make_medium(const std::map<SpeciesId, double>& composition, double epsilon_r,
                   std::span<const SpectralLine> catalog) {
    std::vector<std::string> violations;
    if (!(epsilon_r >= 1.0) || !std::isfinite(epsilon_r))
        violations.push_back(fmt::format("epsilon_r = {} must be >= 1", epsilon_r));
    double total = 0.0;
    for (const auto& [s, q] : composition) {
        if (!(q >= 0.0 && q <= 1.0)) {
            violations.push_back(fmt::format("mixing ratio q = {} for gas {} isotopologue {} is outside [0, 1]",
                                             q, s.gas_id, s.iso_id));
        } else {
            total += q;
        }
    }
    if (total > 1.0 + 1e-12)
        violations.push_back(fmt::format("mixing ratios sum to {} > 1", total));
    if (!violations.empty()) throw ValidationError(std::move(violations));

    Medium m;
    m.composition = composition;
    m.epsilon_r = epsilon_r;
    for (const auto& line : catalog) {
        if (composition.contains(line.species())) m.lines.push_back(line);
    }
    return m;
}

Medium load_medium(const nlohmann::json& doc, std::span<const SpectralLine> catalog) {
    std::vector<std::string> violations;
    if (!doc.is_object()) throw ValidationError({"medium config must be a JSON object"});

    double epsilon_r = 1.0;
    if (!doc.contains("epsilon_r") || !doc["epsilon_r"].is_number()) {
        violations.emplace_back("epsilon_r is missing or not a number");
    } else {
        epsilon_r = doc["epsilon_r"].get<double>();
        if (!(epsilon_r >= 1.0)) violations.push_back(fmt::format("epsilon_r = {} must be >= 1", epsilon_r));
    }

    std::map<SpeciesId, double> composition;
    double total = 0.0;
    if (!doc.contains("composition") || !doc["composition"].is_array()) {
        violations.emplace_back("composition is missing or not an array");
    } else {
        std::size_t index = 0;
        for (const auto& entry : doc["composition"]) {
            const auto where = fmt::format("composition[{}]", index++);
            if (!entry.is_object() || !entry.contains("gas_id") || !entry.contains("iso_id") ||
                !entry.contains("q") || !entry["gas_id"].is_number_integer() ||
                !entry["iso_id"].is_number_integer() || !entry["q"].is_number()) {
                violations.push_back(where + " needs integer gas_id, iso_id and numeric q");
                continue;
            }
            SpeciesId s{entry["gas_id"].get<int>(), entry["iso_id"].get<int>()};
            const double q = entry["q"].get<double>();
            if (!(q >= 0.0 && q <= 1.0)) {
                violations.push_back(fmt::format("{}: q = {} is outside [0, 1]", where, q));
                continue;
            }
            if (!composition.emplace(s, q).second) {
                violations.push_back(fmt::format("{}: gas {} isotopologue {} listed twice", where,
                                                 s.gas_id, s.iso_id));
                continue;
            }
            total += q;
        }
    }
    if (total > 1.0 + 1e-12) violations.push_back(fmt::format("mixing ratios sum to {} > 1", total));
    if (!violations.empty()) throw ValidationError(std::move(violations));
    return make_medium(composition, epsilon_r, catalog);
}

Medium conventional_medium(const Medium& medium) {
    Medium m;
    m.epsilon_r = medium.epsilon_r;
    return m;
}

SpeciesSet composition_species(const nlohmann::json& doc) {
    SpeciesSet out;
    if (!doc.is_object() || !doc.contains("composition") || !doc["composition"].is_array())
        return out;
    for (const auto& e : doc["composition"]) {
        if (e.is_object() && e.contains("gas_id") && e.contains("iso_id") &&
            e["gas_id"].is_number_integer() && e["iso_id"].is_number_integer())
            out.insert({e["gas_id"].get<int>(), e["iso_id"].get<int>()});
    }
    return out;
}

}  // namespace thz
