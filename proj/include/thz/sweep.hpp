#pragma once

// One-axis experiment sweeps comparing the absorbing channel against the
// conventional (transparent) two-ray baseline.

#include <iosfwd>
#include <string>
#include <vector>

#include "thz/absorption.hpp"
#include "thz/capacity.hpp"
#include "thz/propagation.hpp"
#include "thz/spectro.hpp"

namespace thz {

/// Everything needed to evaluate the link at one point.
struct Scenario {
    LinkGeometry geom;
    Medium medium;
    Environment env{296.0, 1.0};
    double frequency = 1e12;         // Hz, operating frequency for single-point runs
    double bandwidth = 500e9;        // Hz, capacity band centered on the operating frequency
    std::size_t subbands = 128;
    double tx_power = 1e-6;          // W
    Allocation allocation = Allocation::waterfilling;
    bool baseline = false;           // treat the medium as transparent
    CapacityOptions options;

    /// Medium used for the "proposed" columns (transparent when `baseline`).
    Medium proposed_medium() const;
    BandPlan band_at(double f_center) const;
};

enum class Spacing { linear, logarithmic };

struct AxisRange {
    double from = 0.0;
    double to = 0.0;
    std::size_t points = 2;
    Spacing spacing = Spacing::linear;
};

/// Axis samples; throws DomainError on an empty or zero-width range.
/// A single point samples `from`.
std::vector<double> axis_points(const AxisRange& range);

struct SweepRow {
    double x = 0.0;
    std::vector<double> values;  // one per column; NaN where the model is undefined
    bool gap = false;
    std::string gap_reason;
};

struct SweepResult {
    std::string axis;
    std::string unit;
    std::vector<std::string> columns;
    std::vector<SweepRow> rows;

    std::size_t column(const std::string& name) const;
    std::vector<double> series(const std::string& name) const;
};

struct SweepOptions {
    unsigned threads = 0;  // 0: hardware concurrency
};

/// Total path loss in dB against frequency (Hz), one proposed/conventional pair per distance.
SweepResult sweep_pathloss_vs_frequency(const Scenario& scenario, const AxisRange& frequency,
                                        const std::vector<double>& distances,
                                        const SweepOptions& options = {});

/// Capacity (bits/s) of the band centered on each swept frequency.
SweepResult sweep_capacity_vs_frequency(const Scenario& scenario, const AxisRange& frequency,
                                        const SweepOptions& options = {});

/// Path loss and capacity against system temperature (K) at each listed frequency.
SweepResult sweep_vs_temperature(const Scenario& scenario, const AxisRange& temperature,
                                 const std::vector<double>& frequencies,
                                 const SweepOptions& options = {});

/// Path loss and capacity against ambient pressure (kPa) at each listed frequency.
SweepResult sweep_vs_pressure(const Scenario& scenario, const AxisRange& pressure_kpa,
                              const std::vector<double>& frequencies,
                              const SweepOptions& options = {});

/// Capacity against antenna separation (m) for each listed allocation.
SweepResult sweep_capacity_vs_distance(const Scenario& scenario, const AxisRange& distance,
                                       const std::vector<Allocation>& allocations,
                                       const SweepOptions& options = {});

/// CSV with `axis [unit]`, value columns, then `gap` and `gap_reason`.
/// Numbers are written in C-locale scientific notation; lines end in LF.
void write_csv(const SweepResult& result, std::ostream& out);

/// Whitespace-aligned table of the same content.
void write_table(const SweepResult& result, std::ostream& out);

std::string format_number(double value);

const char* to_string(Allocation a);

}  // namespace thz
