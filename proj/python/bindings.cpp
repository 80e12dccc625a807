#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "thz/absorption.hpp"
#include "thz/capacity.hpp"
#include "thz/config.hpp"
#include "thz/constants.hpp"
#include "thz/errors.hpp"
#include "thz/propagation.hpp"
#include "thz/spectro.hpp"
#include "thz/sweep.hpp"

namespace py = pybind11;
using namespace thz;

namespace {

using Composition = std::map<std::pair<int, int>, double>;

std::map<SpeciesId, double> to_species_map(const Composition& c) {
    std::map<SpeciesId, double> out;
    for (const auto& [key, q] : c) out[{key.first, key.second}] = q;
    return out;
}

SpeciesSet to_species_set(const std::vector<std::pair<int, int>>& ids) {
    SpeciesSet out;
    for (const auto& [g, i] : ids) out.insert({g, i});
    return out;
}

}  // namespace

PYBIND11_MODULE(_thzlink, m) {
    m.doc() = "THz channel model for links between on-chip antennas";

    auto domain_error = py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<TwoRayNullError>(m, "TwoRayNullError", domain_error.ptr());
    py::register_exception<RegimeError>(m, "RegimeError", domain_error.ptr());
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);

    py::class_<SpectralLine>(m, "SpectralLine")
        .def(py::init<>())
        .def_readwrite("gas_id", &SpectralLine::gas_id)
        .def_readwrite("iso_id", &SpectralLine::iso_id)
        .def_readwrite("f_c0", &SpectralLine::f_c0)
        .def_readwrite("line_intensity", &SpectralLine::line_intensity)
        .def_readwrite("alpha_air", &SpectralLine::alpha_air)
        .def_readwrite("alpha_self", &SpectralLine::alpha_self)
        .def_readwrite("temp_exponent", &SpectralLine::temp_exponent)
        .def_readwrite("pressure_shift", &SpectralLine::pressure_shift);

    m.def(
        "parse_line_catalog",
        [](const std::string& text, const std::vector<std::pair<int, int>>& species) {
            auto r = parse_line_catalog(text, to_species_set(species));
            return py::make_tuple(r.lines, r.warnings);
        },
        py::arg("text"), py::arg("species"), "Parse catalog text; returns (lines, warnings).");
    m.def(
        "load_line_catalog",
        [](const std::string& path, const std::vector<std::pair<int, int>>& species) {
            auto r = load_line_catalog(path, to_species_set(species));
            return py::make_tuple(r.lines, r.warnings);
        },
        py::arg("path"), py::arg("species"));
    m.def("format_line_record", &format_line_record, py::arg("line"));

    py::class_<Medium>(m, "Medium")
        .def_property_readonly("epsilon_r", [](const Medium& x) { return x.epsilon_r; })
        .def_property_readonly("lines", [](const Medium& x) { return x.lines; })
        .def_property_readonly("composition",
                               [](const Medium& x) {
                                   Composition c;
                                   for (const auto& [s, q] : x.composition) c[{s.gas_id, s.iso_id}] = q;
                                   return c;
                               })
        .def("transparent", &Medium::transparent);
    m.def(
        "make_medium",
        [](const Composition& c, double eps, const std::vector<SpectralLine>& catalog) {
            return make_medium(to_species_map(c), eps, catalog);
        },
        py::arg("composition"), py::arg("epsilon_r"), py::arg("catalog"),
        "composition maps (gas_id, iso_id) to mixing ratio.");
    m.def("conventional_medium", &conventional_medium, py::arg("medium"));

    py::class_<Environment>(m, "Environment")
        .def(py::init<double, double>(), py::arg("temperature_k") = 296.0, py::arg("pressure_atm") = 1.0)
        .def_static("from_kpa", &Environment::from_kpa, py::arg("temperature_k"), py::arg("pressure_kpa"))
        .def_property_readonly("temperature", &Environment::temperature)
        .def_property_readonly("pressure", &Environment::pressure)
        .def_property_readonly("pressure_kpa", &Environment::pressure_kpa);

    py::class_<AbsorptionOptions>(m, "AbsorptionOptions")
        .def(py::init<>())
        .def_readwrite("wing_cutoff_hz", &AbsorptionOptions::wing_cutoff_hz)
        .def_readwrite("opacity_cap", &AbsorptionOptions::opacity_cap);
    py::class_<PathLossOptions>(m, "PathLossOptions")
        .def(py::init<>())
        .def_readwrite("null_tolerance", &PathLossOptions::null_tolerance)
        .def_readwrite("absorption", &PathLossOptions::absorption);

    m.def("absorption_coefficient", &absorption_coefficient, py::arg("medium"), py::arg("f"), py::arg("env"),
          py::arg("options") = AbsorptionOptions{});

    py::class_<LinkGeometry>(m, "LinkGeometry")
        .def(py::init<>())
        .def_readwrite("distance", &LinkGeometry::distance)
        .def_readwrite("tx_height", &LinkGeometry::tx_height)
        .def_readwrite("rx_height", &LinkGeometry::rx_height)
        .def_readwrite("tx_gain", &LinkGeometry::tx_gain)
        .def_readwrite("rx_gain", &LinkGeometry::rx_gain)
        .def_readwrite("package_side", &LinkGeometry::package_side)
        .def_readwrite("package_height", &LinkGeometry::package_height)
        .def("validate", &LinkGeometry::validate);

    py::class_<PathLossReport>(m, "PathLossReport")
        .def_readonly("dielectric_loss", &PathLossReport::dielectric_loss)
        .def_readonly("absorption_loss", &PathLossReport::absorption_loss)
        .def_readonly("total_loss", &PathLossReport::total_loss)
        .def_readonly("kappa", &PathLossReport::kappa)
        .def_readonly("transmittance", &PathLossReport::transmittance)
        .def_readonly("opaque", &PathLossReport::opaque)
        .def_readonly("dielectric_loss_db", &PathLossReport::dielectric_loss_db)
        .def_readonly("absorption_loss_db", &PathLossReport::absorption_loss_db)
        .def_readonly("total_loss_db", &PathLossReport::total_loss_db);
    m.def("dielectric_path_loss", &dielectric_path_loss, py::arg("geom"), py::arg("f"), py::arg("epsilon_r"),
          py::arg("options") = PathLossOptions{});
    m.def("total_path_loss", &total_path_loss, py::arg("geom"), py::arg("medium"), py::arg("env"), py::arg("f"),
          py::arg("options") = PathLossOptions{});

    py::class_<LinkBudget>(m, "LinkBudget")
        .def_readonly("tx_power_dbw", &LinkBudget::tx_power_dbw)
        .def_readonly("tx_gain_db", &LinkBudget::tx_gain_db)
        .def_readonly("rx_gain_db", &LinkBudget::rx_gain_db)
        .def_readonly("permittivity_db", &LinkBudget::permittivity_db)
        .def_readonly("spreading_db", &LinkBudget::spreading_db)
        .def_readonly("absorption_db", &LinkBudget::absorption_db)
        .def_readonly("received_dbw", &LinkBudget::received_dbw)
        .def_readonly("received_dbw_linear", &LinkBudget::received_dbw_linear);
    m.def("link_budget", &link_budget, py::arg("geom"), py::arg("medium"), py::arg("env"), py::arg("f"),
          py::arg("tx_power_w"), py::arg("options") = PathLossOptions{});

    py::class_<BandPlan>(m, "BandPlan")
        .def(py::init<double, double, std::size_t>(), py::arg("f_lo"), py::arg("bandwidth"), py::arg("subbands"))
        .def_static("centered", &BandPlan::centered, py::arg("f_center"), py::arg("bandwidth"),
                    py::arg("subbands"))
        .def_property_readonly("lower_edge", &BandPlan::lower_edge)
        .def_property_readonly("bandwidth", &BandPlan::bandwidth)
        .def_property_readonly("subband_width", &BandPlan::subband_width)
        .def_property_readonly("centers", &BandPlan::centers);

    py::enum_<Allocation>(m, "Allocation")
        .value("waterfilling", Allocation::waterfilling)
        .value("flat", Allocation::flat);
    py::class_<CapacityOptions>(m, "CapacityOptions")
        .def(py::init<>())
        .def_readwrite("path", &CapacityOptions::path);
    py::class_<PowerAllocation>(m, "PowerAllocation")
        .def_readonly("powers", &PowerAllocation::powers)
        .def_readonly("water_level", &PowerAllocation::water_level)
        .def_readonly("psi", &PowerAllocation::psi)
        .def_readonly("capacity", &PowerAllocation::capacity_bits_per_s)
        .def_readonly("opaque", &PowerAllocation::opaque);

    m.def(
        "water_filling", [](const std::vector<double>& psi, double p) { return water_filling(psi, p); },
        py::arg("psi"), py::arg("total_power"));
    m.def(
        "psi_coefficients",
        [](const LinkGeometry& g, const Medium& med, const Environment& e, const BandPlan& b,
           const CapacityOptions& o) { return psi_coefficients(g, med, e, b, o); },
        py::arg("geom"), py::arg("medium"), py::arg("env"), py::arg("band"), py::arg("options") = CapacityOptions{});
    m.def("channel_capacity", &channel_capacity, py::arg("geom"), py::arg("medium"), py::arg("env"),
          py::arg("band"), py::arg("total_power"), py::arg("options") = CapacityOptions{});
    m.def("flat_allocation", &flat_allocation, py::arg("geom"), py::arg("medium"), py::arg("env"),
          py::arg("band"), py::arg("total_power"), py::arg("options") = CapacityOptions{});
    m.def("approx_capacity_small_antenna", &approx_capacity_small_antenna, py::arg("geom"), py::arg("medium"),
          py::arg("env"), py::arg("band"), py::arg("total_power"), py::arg("options") = AbsorptionOptions{});
    m.def("noise_power", &noise_power, py::arg("medium"), py::arg("env"), py::arg("band"), py::arg("distance"),
          py::arg("options") = AbsorptionOptions{});

    py::class_<Scenario>(m, "Scenario")
        .def(py::init<>())
        .def_readwrite("geom", &Scenario::geom)
        .def_readwrite("medium", &Scenario::medium)
        .def_readwrite("env", &Scenario::env)
        .def_readwrite("frequency", &Scenario::frequency)
        .def_readwrite("bandwidth", &Scenario::bandwidth)
        .def_readwrite("subbands", &Scenario::subbands)
        .def_readwrite("tx_power", &Scenario::tx_power)
        .def_readwrite("allocation", &Scenario::allocation)
        .def_readwrite("baseline", &Scenario::baseline)
        .def_readwrite("options", &Scenario::options);
    m.def(
        "load_scenario",
        [](const std::string& path, std::optional<std::string> catalog) {
            return load_scenario_file(path, {}, catalog).scenario;
        },
        py::arg("path"), py::arg("catalog") = py::none());

    py::enum_<Spacing>(m, "Spacing").value("linear", Spacing::linear).value("logarithmic", Spacing::logarithmic);
    py::class_<AxisRange>(m, "AxisRange")
        .def(py::init([](double from, double to, std::size_t points, Spacing spacing) {
                 return AxisRange{from, to, points, spacing};
             }),
             py::arg("start"), py::arg("stop"), py::arg("points") = 2, py::arg("spacing") = Spacing::linear);
    m.def("axis_points", &axis_points, py::arg("range"));

    py::class_<SweepResult>(m, "SweepResult")
        .def_readonly("axis", &SweepResult::axis)
        .def_readonly("unit", &SweepResult::unit)
        .def_readonly("columns", &SweepResult::columns)
        .def_property_readonly("x",
                               [](const SweepResult& r) {
                                   std::vector<double> xs;
                                   for (const auto& row : r.rows) xs.push_back(row.x);
                                   return xs;
                               })
        .def_property_readonly("gaps",
                               [](const SweepResult& r) {
                                   std::vector<std::string> g;
                                   for (const auto& row : r.rows) g.push_back(row.gap_reason);
                                   return g;
                               })
        .def("series", &SweepResult::series, py::arg("column"))
        .def("to_csv", [](const SweepResult& r) {
            std::ostringstream os;
            write_csv(r, os);
            return os.str();
        });

    py::class_<SweepOptions>(m, "SweepOptions")
        .def(py::init([](unsigned threads) { return SweepOptions{threads}; }), py::arg("threads") = 0);
    const SweepOptions default_sweep{};
    m.def("sweep_pathloss_vs_frequency", &sweep_pathloss_vs_frequency, py::arg("scenario"), py::arg("frequency"),
          py::arg("distances"), py::arg("options") = default_sweep);
    m.def("sweep_capacity_vs_frequency", &sweep_capacity_vs_frequency, py::arg("scenario"), py::arg("frequency"),
          py::arg("options") = default_sweep);
    m.def("sweep_vs_temperature", &sweep_vs_temperature, py::arg("scenario"), py::arg("temperature"),
          py::arg("frequencies"), py::arg("options") = default_sweep);
    m.def("sweep_vs_pressure", &sweep_vs_pressure, py::arg("scenario"), py::arg("pressure_kpa"),
          py::arg("frequencies"), py::arg("options") = default_sweep);
    m.def("sweep_capacity_vs_distance", &sweep_capacity_vs_distance, py::arg("scenario"), py::arg("distance"),
          py::arg("allocations"), py::arg("options") = default_sweep);

    m.attr("SPEED_OF_LIGHT") = constants::light_speed;
    m.attr("BOLTZMANN") = constants::boltzmann;
}
