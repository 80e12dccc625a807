#include "thz/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <ostream>
#include <thread>

#include <fmt/format.h>

#include "thz/errors.hpp"

namespace thz {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Runs fn(i) for i in [0, n). Each index writes only its own slot, so results
// are ordered by index regardless of the thread count.
template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
    unsigned workers = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < n; i = next++) {
                    try {
                        fn(i);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                        next = n;
                    }
                }
            });
        }
    }
    if (failure) std::rethrow_exception(failure);
}

void mark_gap(SweepRow& row, const std::string& reason) {
    row.gap = true;
    if (row.gap_reason.empty()) row.gap_reason = reason;
    else if (row.gap_reason.find(reason) == std::string::npos) row.gap_reason += ";" + reason;
}

// Total path loss in dB, or NaN with the row marked as a gap.
double pathloss_cell(SweepRow& row, const LinkGeometry& geom, const Medium& medium, const Environment& env,
                     double f, const Scenario& s) {
    try {
        const auto r = total_path_loss(geom, medium, env, f, s.options.path);
        if (r.opaque) {
            mark_gap(row, "opaque");
            return kNaN;
        }
        return r.total_loss_db;
    } catch (const TwoRayNullError&) {
        mark_gap(row, "two-ray-null");
        return kNaN;
    }
}

double capacity_cell(SweepRow& row, Allocation kind, const LinkGeometry& geom, const Medium& medium,
                     const Environment& env, double f, const Scenario& s) {
    try {
        const auto alloc = allocate(kind, geom, medium, env, s.band_at(f), s.tx_power, s.options);
        if (alloc.opaque) {
            mark_gap(row, "opaque");
            return kNaN;
        }
        return alloc.capacity_bits_per_s;
    } catch (const TwoRayNullError&) {
        mark_gap(row, "two-ray-null");
        return kNaN;
    }
}

std::string tag(const char* key, double value, const char* unit) {
    return fmt::format("{}={:g}{}", key, value, unit);
}

SweepResult make_result(std::string axis, std::string unit, std::vector<std::string> columns,
                        const std::vector<double>& xs) {
    SweepResult r{std::move(axis), std::move(unit), std::move(columns), {}};
    r.rows.resize(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        r.rows[i].x = xs[i];
        r.rows[i].values.assign(r.columns.size(), kNaN);
    }
    return r;
}

// Path loss and capacity pairs at each of `frequencies` for a row whose
// environment differs from the scenario's.
void environment_cells(SweepRow& row, const Scenario& s, const Medium& proposed, const Medium& conventional,
                       const Environment& env, const std::vector<double>& frequencies) {
    std::size_t col = 0;
    for (double f : frequencies) {
        row.values[col++] = pathloss_cell(row, s.geom, proposed, env, f, s);
        row.values[col++] = pathloss_cell(row, s.geom, conventional, env, f, s);
        row.values[col++] = capacity_cell(row, s.allocation, s.geom, proposed, env, f, s);
        row.values[col++] = capacity_cell(row, s.allocation, s.geom, conventional, env, f, s);
    }
}

std::vector<std::string> environment_columns(const std::vector<double>& frequencies) {
    std::vector<std::string> cols;
    for (double f : frequencies) {
        const auto t = tag("f", f, "Hz");
        cols.push_back("L_proposed_dB@" + t);
        cols.push_back("L_conventional_dB@" + t);
        cols.push_back("C_proposed_bps@" + t);
        cols.push_back("C_conventional_bps@" + t);
    }
    return cols;
}

}  // namespace

Medium Scenario::proposed_medium() const { return baseline ? conventional_medium(medium) : medium; }

BandPlan Scenario::band_at(double f_center) const { return BandPlan::centered(f_center, bandwidth, subbands); }

std::vector<double> axis_points(const AxisRange& range) {
    if (range.points < 1) throw DomainError("a sweep needs at least one point");
    if (!std::isfinite(range.from) || !std::isfinite(range.to) || !(range.to > range.from))
        throw DomainError(fmt::format("sweep range [{}, {}] is empty or zero-width", range.from, range.to));
    if (range.spacing == Spacing::logarithmic && !(range.from > 0.0))
        throw DomainError("logarithmic spacing needs a positive start");

    std::vector<double> xs(range.points);
    if (range.points == 1) {
        xs[0] = range.from;
        return xs;
    }
    const double last = static_cast<double>(range.points - 1);
    for (std::size_t i = 0; i < range.points; ++i) {
        const double t = static_cast<double>(i) / last;
        xs[i] = range.spacing == Spacing::linear
                    ? range.from + (range.to - range.from) * t
                    : range.from * std::pow(range.to / range.from, t);
    }
    xs.back() = range.to;
    return xs;
}

std::size_t SweepResult::column(const std::string& name) const {
    auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end()) throw std::out_of_range("no sweep column named " + name);
    return static_cast<std::size_t>(it - columns.begin());
}

std::vector<double> SweepResult::series(const std::string& name) const {
    const auto c = column(name);
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(r.values[c]);
    return out;
}

SweepResult sweep_pathloss_vs_frequency(const Scenario& s, const AxisRange& frequency,
                                        const std::vector<double>& distances, const SweepOptions& options) {
    if (distances.empty()) throw DomainError("frequency sweep needs at least one distance");
    std::vector<std::string> cols;
    for (double d : distances) {
        cols.push_back("L_proposed_dB@" + tag("d", d, "m"));
        cols.push_back("L_conventional_dB@" + tag("d", d, "m"));
    }
    auto result = make_result("frequency", "Hz", std::move(cols), axis_points(frequency));
    const Medium proposed = s.proposed_medium();
    const Medium conventional = conventional_medium(s.medium);
    parallel_for(result.rows.size(), options.threads, [&](std::size_t i) {
        auto& row = result.rows[i];
        std::size_t col = 0;
        for (double d : distances) {
            LinkGeometry geom = s.geom;
            geom.distance = d;
            row.values[col++] = pathloss_cell(row, geom, proposed, s.env, row.x, s);
            row.values[col++] = pathloss_cell(row, geom, conventional, s.env, row.x, s);
        }
    });
    return result;
}

SweepResult sweep_capacity_vs_frequency(const Scenario& s, const AxisRange& frequency, const SweepOptions& options) {
    auto result = make_result("frequency", "Hz", {"C_proposed_bps", "C_conventional_bps"}, axis_points(frequency));
    const Medium proposed = s.proposed_medium();
    const Medium conventional = conventional_medium(s.medium);
    parallel_for(result.rows.size(), options.threads, [&](std::size_t i) {
        auto& row = result.rows[i];
        row.values[0] = capacity_cell(row, s.allocation, s.geom, proposed, s.env, row.x, s);
        row.values[1] = capacity_cell(row, s.allocation, s.geom, conventional, s.env, row.x, s);
    });
    return result;
}

SweepResult sweep_vs_temperature(const Scenario& s, const AxisRange& temperature,
                                 const std::vector<double>& frequencies, const SweepOptions& options) {
    if (frequencies.empty()) throw DomainError("temperature sweep needs at least one frequency");
    auto result = make_result("temperature", "K", environment_columns(frequencies), axis_points(temperature));
    const Medium proposed = s.proposed_medium();
    const Medium conventional = conventional_medium(s.medium);
    parallel_for(result.rows.size(), options.threads, [&](std::size_t i) {
        auto& row = result.rows[i];
        const Environment env(row.x, s.env.pressure());
        environment_cells(row, s, proposed, conventional, env, frequencies);
    });
    return result;
}

SweepResult sweep_vs_pressure(const Scenario& s, const AxisRange& pressure_kpa,
                              const std::vector<double>& frequencies, const SweepOptions& options) {
    if (frequencies.empty()) throw DomainError("pressure sweep needs at least one frequency");
    auto result = make_result("pressure", "kPa", environment_columns(frequencies), axis_points(pressure_kpa));
    const Medium proposed = s.proposed_medium();
    const Medium conventional = conventional_medium(s.medium);
    parallel_for(result.rows.size(), options.threads, [&](std::size_t i) {
        auto& row = result.rows[i];
        const auto env = Environment::from_kpa(s.env.temperature(), row.x);
        environment_cells(row, s, proposed, conventional, env, frequencies);
    });
    return result;
}

SweepResult sweep_capacity_vs_distance(const Scenario& s, const AxisRange& distance,
                                       const std::vector<Allocation>& allocations, const SweepOptions& options) {
    if (allocations.empty()) throw DomainError("distance sweep needs at least one allocation");
    std::vector<std::string> cols;
    for (auto a : allocations) {
        cols.push_back(fmt::format("C_proposed_bps@{}", to_string(a)));
        cols.push_back(fmt::format("C_conventional_bps@{}", to_string(a)));
    }
    auto result = make_result("distance", "m", std::move(cols), axis_points(distance));
    const Medium proposed = s.proposed_medium();
    const Medium conventional = conventional_medium(s.medium);
    parallel_for(result.rows.size(), options.threads, [&](std::size_t i) {
        auto& row = result.rows[i];
        LinkGeometry geom = s.geom;
        geom.distance = row.x;
        std::size_t col = 0;
        for (auto a : allocations) {
            row.values[col++] = capacity_cell(row, a, geom, proposed, s.env, s.frequency, s);
            row.values[col++] = capacity_cell(row, a, geom, conventional, s.env, s.frequency, s);
        }
    });
    return result;
}

std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    return fmt::format("{:.9e}", value);
}

void write_csv(const SweepResult& result, std::ostream& out) {
    std::string text = fmt::format("{} [{}]", result.axis, result.unit);
    for (const auto& c : result.columns) text += "," + c;
    text += ",gap,gap_reason\n";
    for (const auto& row : result.rows) {
        text += format_number(row.x);
        for (double v : row.values) text += "," + format_number(v);
        text += row.gap ? ",1," : ",0,";
        text += row.gap_reason;
        text += '\n';
    }
    out << text;
}

void write_table(const SweepResult& result, std::ostream& out) {
    std::vector<std::string> header{fmt::format("{} [{}]", result.axis, result.unit)};
    header.insert(header.end(), result.columns.begin(), result.columns.end());
    header.push_back("gap");
    std::vector<std::size_t> width;
    for (const auto& h : header) width.push_back(std::max<std::size_t>(h.size(), 16));
    std::string text;
    for (std::size_t i = 0; i < header.size(); ++i) text += fmt::format("{:>{}}  ", header[i], width[i]);
    text += '\n';
    for (const auto& row : result.rows) {
        text += fmt::format("{:>{}}  ", format_number(row.x), width[0]);
        for (std::size_t i = 0; i < row.values.size(); ++i)
            text += fmt::format("{:>{}}  ", format_number(row.values[i]), width[i + 1]);
        text += fmt::format("{:>{}}", row.gap ? row.gap_reason : "-", width.back());
        text += '\n';
    }
    out << text;
}

const char* to_string(Allocation a) { return a == Allocation::flat ? "flat" : "waterfilling"; }

}  // namespace thz
