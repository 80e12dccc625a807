#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "thz/config.hpp"
#include "thz/constants.hpp"
#include "thz/errors.hpp"
#include "thz/sweep.hpp"

namespace thz::cli {

namespace {

struct Args {
    std::string scenario_path;
    std::string catalog;
    std::string out_path;
    std::string format;
    bool baseline = false;
    std::string allocation;
    std::optional<double> frequency, distance, temperature, pressure_kpa, tx_power, bandwidth;
    std::optional<std::size_t> subbands;

    std::string axis;
    std::string metric = "pathloss";
    std::optional<double> from, to;
    std::size_t points = 201;
    bool log_spacing = false;
    std::vector<double> distances;
    std::vector<double> frequencies;
    unsigned threads = 0;
};

LoadedScenario load(const Args& a) {
    ScenarioOverrides o;
    o.frequency_hz = a.frequency;
    o.distance_m = a.distance;
    o.temperature_k = a.temperature;
    o.pressure_kpa = a.pressure_kpa;
    o.tx_power_w = a.tx_power;
    o.bandwidth_hz = a.bandwidth;
    o.subbands = a.subbands;
    o.baseline = a.baseline;
    if (!a.allocation.empty()) o.allocation = parse_allocation(a.allocation);

    std::optional<std::string> catalog;
    if (!a.catalog.empty()) catalog = a.catalog;
    std::optional<std::string> fallback;
    if (const char* env = std::getenv("THZ_CATALOG"); env && *env) fallback = std::string(env);

    if (a.scenario_path.empty())
        return scenario_from_json(nlohmann::json::object(), ".", o, catalog, fallback);
    return load_scenario_file(a.scenario_path, o, catalog, fallback);
}

void pathloss_report(const Scenario& s, const std::string& format, std::ostream& out) {
    const Medium medium = s.proposed_medium();
    const auto r = total_path_loss(s.geom, medium, s.env, s.frequency, s.options.path);
    const auto b = link_budget(s.geom, medium, s.env, s.frequency, s.tx_power, s.options.path);

    if (format == "csv") {
        std::string text = "quantity,value,unit\n";
        auto row = [&](const char* name, double v, const char* unit) {
            text += fmt::format("{},{},{}\n", name, format_number(v), unit);
        };
        row("frequency", s.frequency, "Hz");
        row("distance", s.geom.distance, "m");
        row("kappa", r.kappa, "1/m");
        row("L_d", r.dielectric_loss_db, "dB");
        row("L_a", r.absorption_loss_db, "dB");
        row("L", r.total_loss_db, "dB");
        row("P_T", b.tx_power_dbw, "dBW");
        row("G_T", b.tx_gain_db, "dB");
        row("G_R", b.rx_gain_db, "dB");
        row("permittivity", b.permittivity_db, "dB");
        row("spreading", b.spreading_db, "dB");
        row("absorption", b.absorption_db, "dB");
        row("P_R", b.received_dbw, "dBW");
        row("opaque", r.opaque ? 1.0 : 0.0, "-");
        out << text;
        return;
    }

    std::string text;
    text += fmt::format("model          {}\n", s.baseline || medium.transparent() ? "conventional (no absorption)"
                                                                                 : "proposed (molecular absorption)");
    text += fmt::format("frequency      {:.6e} Hz\n", s.frequency);
    text += fmt::format("distance       {:.6e} m\n", s.geom.distance);
    text += fmt::format("T_S, p         {:.2f} K, {:.4f} kPa\n", s.env.temperature(), s.env.pressure_kpa());
    text += fmt::format("kappa          {:.6e} 1/m\n", r.kappa);
    text += fmt::format("L_d            {:.6e}  ({:.6f} dB)\n", r.dielectric_loss, r.dielectric_loss_db);
    text += fmt::format("L_a            {:.6e}  ({:.6f} dB)\n", r.absorption_loss, r.absorption_loss_db);
    text += fmt::format("L              {:.6e}  ({:.6f} dB)\n", r.total_loss, r.total_loss_db);
    if (r.opaque) text += "warning: optical depth saturated; the medium is opaque at this frequency\n";
    text += "link budget\n";
    text += fmt::format("  P_T          {:+.6f} dBW\n", b.tx_power_dbw);
    text += fmt::format("  G_T          {:+.6f} dB\n", b.tx_gain_db);
    text += fmt::format("  G_R          {:+.6f} dB\n", b.rx_gain_db);
    text += fmt::format("  1/eps_r      {:+.6f} dB\n", b.permittivity_db);
    text += fmt::format("  spreading    {:+.6f} dB\n", b.spreading_db);
    text += fmt::format("  absorption   {:+.6f} dB\n", b.absorption_db);
    text += fmt::format("  P_R          {:+.6f} dBW\n", b.received_dbw);
    text += fmt::format("  P_R (linear) {:+.6f} dBW\n", b.received_dbw_linear);
    text += fmt::format("  P_R (4.343)  {:+.6f} dBW\n", b.received_dbw_rounded);
    out << text;
}

void capacity_report(const Scenario& s, const std::string& format, std::ostream& out) {
    const Medium medium = s.proposed_medium();
    const auto band = s.band_at(s.frequency);
    const auto alloc = allocate(s.allocation, s.geom, medium, s.env, band, s.tx_power, s.options);

    std::string text;
    if (format == "csv") {
        text += "k,f_k [Hz],psi_k [W],P_k [W]\n";
    } else {
        text += fmt::format("capacity       {:.9e} bit/s\n", alloc.capacity_bits_per_s);
        text += fmt::format("allocation     {}\n", to_string(s.allocation));
        if (s.allocation == Allocation::waterfilling)
            text += fmt::format("water level    {:.9e} W\n", alloc.water_level);
        text += fmt::format("total power    {:.9e} W\n", s.tx_power);
        text += fmt::format("band           {:.6e} Hz .. {:.6e} Hz, K = {}, df = {:.6e} Hz\n", band.lower_edge(),
                            band.lower_edge() + band.bandwidth(), band.subbands(), band.subband_width());
        if (alloc.opaque) text += "warning: some subbands are opaque (optical depth saturated)\n";
        text += fmt::format("{:>6}  {:>16}  {:>16}  {:>16}\n", "k", "f_k [Hz]", "psi_k [W]", "P_k [W]");
    }
    for (std::size_t k = 0; k < alloc.powers.size(); ++k) {
        const double f = band.centers()[k];
        if (format == "csv")
            text += fmt::format("{},{},{},{}\n", k, format_number(f), format_number(alloc.psi[k]),
                                format_number(alloc.powers[k]));
        else
            text += fmt::format("{:>6}  {:>16.9e}  {:>16.9e}  {:>16.9e}\n", k, f, alloc.psi[k], alloc.powers[k]);
    }
    out << text;
}

struct AxisDefaults {
    double from;
    double to;
};

AxisDefaults axis_defaults(const std::string& axis) {
    if (axis == "frequency") return {1e12, 3e12};
    if (axis == "temperature") return {250.0, 400.0};
    if (axis == "pressure") return {20.0, 200.0};
    return {10e-6, 100e-6};
}

SweepResult run_sweep(const Args& a, const Scenario& s) {
    const auto defaults = axis_defaults(a.axis);
    AxisRange range{a.from.value_or(defaults.from), a.to.value_or(defaults.to), a.points,
                    a.log_spacing ? Spacing::logarithmic : Spacing::linear};
    try {
        axis_points(range);
    } catch (const DomainError& e) {
        throw ValidationError({e.what()});
    }
    const SweepOptions options{a.threads};
    const std::vector<double> freqs = a.frequencies.empty() ? std::vector<double>{1.0e12, 1.2e12, 1.5e12}
                                                            : a.frequencies;
    if (a.axis == "frequency") {
        if (a.metric == "capacity") return sweep_capacity_vs_frequency(s, range, options);
        const std::vector<double> ds = a.distances.empty() ? std::vector<double>{s.geom.distance} : a.distances;
        return sweep_pathloss_vs_frequency(s, range, ds, options);
    }
    if (a.axis == "temperature") return sweep_vs_temperature(s, range, freqs, options);
    if (a.axis == "pressure") return sweep_vs_pressure(s, range, freqs, options);
    std::vector<Allocation> allocations{Allocation::waterfilling, Allocation::flat};
    if (!a.allocation.empty()) allocations = {s.allocation};
    return sweep_capacity_vs_distance(s, range, allocations, options);
}

void add_scenario_flags(CLI::App& cmd, Args& a) {
    cmd.add_option("--scenario", a.scenario_path, "Scenario JSON file")->check(CLI::ExistingFile);
    cmd.add_option("--catalog", a.catalog, "Line catalog (default: scenario's catalog, then $THZ_CATALOG)");
    cmd.add_option("--out", a.out_path, "Write output here instead of stdout");
    cmd.add_option("--format", a.format, "Output format")->check(CLI::IsMember({"csv", "pretty"}));
    cmd.add_flag("--baseline", a.baseline, "Drop molecular absorption (conventional two-ray channel)");
    cmd.add_option("--allocation", a.allocation, "Power allocation")->check(CLI::IsMember({"waterfilling", "flat"}));
    cmd.add_option("--frequency", a.frequency, "Operating frequency, Hz");
    cmd.add_option("--distance", a.distance, "Antenna separation, m");
    cmd.add_option("--temperature", a.temperature, "System temperature, K");
    cmd.add_option("--pressure-kpa", a.pressure_kpa, "Ambient pressure, kPa");
    cmd.add_option("--tx-power", a.tx_power, "Total transmit power, W");
    cmd.add_option("--bandwidth", a.bandwidth, "Capacity bandwidth, Hz");
    cmd.add_option("--subbands", a.subbands, "Number of capacity subbands");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Channel model for THz links between on-chip antennas", "thzlink"};
    app.require_subcommand(1);
    Args a;

    auto* pathloss = app.add_subcommand("pathloss", "Path loss and link budget at one frequency");
    auto* capacity = app.add_subcommand("capacity", "Capacity and power allocation over a band");
    auto* sweep = app.add_subcommand("sweep", "Sweep one axis and write CSV");
    for (auto* cmd : {pathloss, capacity, sweep}) add_scenario_flags(*cmd, a);
    sweep->add_option("--axis", a.axis, "Swept axis")
        ->required()
        ->check(CLI::IsMember({"frequency", "temperature", "pressure", "distance"}));
    sweep->add_option("--metric", a.metric, "Frequency axis only: pathloss or capacity")
        ->check(CLI::IsMember({"pathloss", "capacity"}));
    sweep->add_option("--from", a.from, "Axis start (Hz, K, kPa or m)");
    sweep->add_option("--to", a.to, "Axis end");
    sweep->add_option("--points", a.points, "Number of axis points")->check(CLI::PositiveNumber);
    sweep->add_flag("--log", a.log_spacing, "Logarithmic axis spacing");
    sweep->add_option("--distances", a.distances, "Frequency axis: distances in m");
    sweep->add_option("--frequencies", a.frequencies, "Temperature/pressure axes: frequencies in Hz");
    sweep->add_option("--threads", a.threads, "Worker threads (0: all cores)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_config;
    }

    try {
        const auto loaded = load(a);
        for (const auto& w : loaded.warnings) err << "warning: " << w << '\n';

        std::ofstream file;
        if (!a.out_path.empty()) {
            file.open(a.out_path, std::ios::binary);
            if (!file) throw ValidationError({fmt::format("cannot write {}", a.out_path)});
        }
        std::ostringstream buffer;
        const Scenario& s = loaded.scenario;
        if (pathloss->parsed()) {
            pathloss_report(s, a.format.empty() ? "pretty" : a.format, buffer);
        } else if (capacity->parsed()) {
            capacity_report(s, a.format.empty() ? "pretty" : a.format, buffer);
        } else {
            const auto result = run_sweep(a, s);
            if (a.format == "pretty") write_table(result, buffer);
            else write_csv(result, buffer);
        }
        (a.out_path.empty() ? out : file) << buffer.str();
        return exit_ok;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return exit_model;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_config;
    }
}

}  // namespace thz::cli
