#pragma once

// Spectroscopic line catalog ingestion and gas-mixture definitions.

#include <compare>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace thz {

/// Identifies an isotopologue: catalog molecule number plus isotopologue number.
struct SpeciesId {
    int gas_id = 0;
    int iso_id = 0;

    auto operator<=>(const SpeciesId&) const = default;
};

using SpeciesSet = std::set<SpeciesId>;

/// One spectroscopic transition, all quantities in SI frequency units.
///
/// `line_intensity` is per molecule (m^2 Hz); the molecular number density it
/// multiplies already carries Avogadro's number.
struct SpectralLine {
    int gas_id = 0;
    int iso_id = 0;
    double f_c0 = 0.0;            // Hz, resonance at reference pressure
    double line_intensity = 0.0;  // m^2 Hz / molecule
    double alpha_air = 0.0;       // Hz/atm, air-broadened half width
    double alpha_self = 0.0;      // Hz/atm, self-broadened half width
    double temp_exponent = 0.0;   // temperature dependence of the air width
    double pressure_shift = 0.0;  // Hz/atm

    SpeciesId species() const noexcept { return {gas_id, iso_id}; }
};

struct CatalogOptions {
    /// Lines weaker than this (catalog units, cm^-1/(molecule cm^-2)) are dropped.
    double intensity_floor = 1e-30;
};

struct CatalogParse {
    std::vector<SpectralLine> lines;
    std::vector<std::string> warnings;
    std::size_t records = 0;         // records read, any species
    std::size_t below_floor = 0;     // wanted records dropped by the intensity floor
};

/// Width of one fixed-format catalog record, excluding the line terminator.
inline constexpr std::size_t catalog_record_width = 160;

/// Parses newline-delimited 160-column records and keeps those whose species
/// is in `wanted`. Every record is fully validated, wanted or not; the first
/// malformed record raises ParseError with its line number and column span.
/// A `\r` before the newline is tolerated and empty lines are not records.
CatalogParse parse_line_catalog(std::string_view raw_text, const SpeciesSet& wanted,
                                const CatalogOptions& options = {});

/// Reads a catalog file; see parse_line_catalog.
CatalogParse load_line_catalog(const std::string& path, const SpeciesSet& wanted,
                               const CatalogOptions& options = {});

/// Writes `line` back as one 160-column record (no terminator). Consumed
/// fields use the catalog's fixed formats; all other columns are blank or zero.
std::string format_line_record(const SpectralLine& line);

/// Gas mixture and host permittivity between the two antennas.
struct Medium {
    std::map<SpeciesId, double> composition;  // mixing ratio per species, in [0, 1]
    double epsilon_r = 1.0;
    std::vector<SpectralLine> lines;  // only species present in `composition`

    /// Mixing ratio of `s`, zero when absent.
    double mixing_ratio(SpeciesId s) const;
    bool transparent() const noexcept { return composition.empty() || lines.empty(); }
};

/// Builds a Medium from explicit values. Collects every violation (ratio out
/// of [0, 1], ratios summing above 1, epsilon_r < 1) into one ValidationError.
Medium make_medium(const std::map<SpeciesId, double>& composition, double epsilon_r,
                   std::span<const SpectralLine> catalog);

/// Builds a Medium from `{"epsilon_r": x, "composition": [{"gas_id", "iso_id", "q"}...]}`.
Medium load_medium(const nlohmann::json& config_doc, std::span<const SpectralLine> catalog);

/// Same permittivity, no absorbing species: the conventional two-ray channel.
Medium conventional_medium(const Medium& medium);

/// Species referenced by a medium config document, for filtering catalogs
/// before the Medium is built.
SpeciesSet composition_species(const nlohmann::json& config_doc);

}  // namespace thz
