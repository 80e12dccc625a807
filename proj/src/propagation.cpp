#include "thz/propagation.hpp"

#include <cmath>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "thz/constants.hpp"
#include "thz/errors.hpp"

namespace thz {

namespace c = constants;

void LinkGeometry::validate() const {
    std::vector<std::string> v;
    auto positive = [&](double x, const char* name) {
        if (!(x > 0.0) || !std::isfinite(x)) v.push_back(fmt::format("{} = {} must be positive", name, x));
    };
    positive(distance, "distance");
    positive(tx_height, "tx_height");
    positive(rx_height, "rx_height");
    positive(tx_gain, "tx_gain");
    positive(rx_gain, "rx_gain");
    positive(package_side, "package_side");
    positive(package_height, "package_height");
    if (distance > package_side)
        v.push_back(fmt::format("distance {} m exceeds the package side {} m", distance, package_side));
    if (tx_height > package_height)
        v.push_back(fmt::format("tx_height {} m exceeds the package height {} m", tx_height, package_height));
    if (rx_height > package_height)
        v.push_back(fmt::format("rx_height {} m exceeds the package height {} m", rx_height, package_height));
    if (!v.empty()) throw ValidationError(std::move(v));
}

double to_db(double linear) { return 10.0 * std::log10(linear); }

double phase_velocity(double epsilon_r) {
    if (!(epsilon_r >= 1.0)) throw DomainError(fmt::format("epsilon_r = {} must be >= 1", epsilon_r));
    return c::light_speed / std::sqrt(epsilon_r);
}

double phase_difference(const LinkGeometry& geom, double f, double epsilon_r) {
    return 4.0 * c::pi * geom.tx_height * geom.rx_height * f / (phase_velocity(epsilon_r) * geom.distance);
}

double two_ray_argument(const LinkGeometry& geom, double f, double epsilon_r) {
    if (!(epsilon_r >= 1.0)) throw DomainError(fmt::format("epsilon_r = {} must be >= 1", epsilon_r));
    return 2.0 * c::pi * geom.tx_height * geom.rx_height * f * std::sqrt(epsilon_r) /
           (c::light_speed * geom.distance);
}

namespace {

double spreading_factor(const LinkGeometry& geom, double f) {
    return 2.0 * c::pi * geom.distance * f / c::light_speed;
}

// sin of the two-ray argument, rejecting nulls.
double two_ray_sine(const LinkGeometry& geom, double f, double epsilon_r, const PathLossOptions& options) {
    const double x = two_ray_argument(geom, f, epsilon_r);
    const double s = std::sin(x);
    if (!(std::abs(s) > options.null_tolerance)) throw TwoRayNullError(x, f);
    return s;
}

}  // namespace

double dielectric_path_loss(const LinkGeometry& geom, double f, double epsilon_r,
                            const PathLossOptions& options) {
    if (!(f > 0.0)) throw DomainError(fmt::format("frequency {} Hz must be positive", f));
    const double s = two_ray_sine(geom, f, epsilon_r, options);
    const double k = spreading_factor(geom, f);
    return k * k * (epsilon_r / (geom.tx_gain * geom.rx_gain)) / (s * s);
}

PathLossReport total_path_loss(const LinkGeometry& geom, const Medium& medium, const Environment& env,
                               double f, const PathLossOptions& options) {
    geom.validate();
    PathLossReport r;
    r.dielectric_loss = dielectric_path_loss(geom, f, medium.epsilon_r, options);
    const auto a = maa(medium, f, env, geom.distance, options.absorption);
    r.absorption_loss = a.loss;
    r.kappa = a.kappa;
    r.transmittance = a.transmittance;
    r.opaque = a.opaque;
    r.total_loss = r.dielectric_loss * r.absorption_loss;
    r.dielectric_loss_db = to_db(r.dielectric_loss);
    r.absorption_loss_db = c::db_per_neper * a.optical_depth;
    r.total_loss_db = r.dielectric_loss_db + r.absorption_loss_db;
    return r;
}

LinkBudget link_budget(const LinkGeometry& geom, const Medium& medium, const Environment& env, double f,
                       double tx_power_w, const PathLossOptions& options) {
    if (!(tx_power_w > 0.0)) throw DomainError(fmt::format("transmit power {} W must be positive", tx_power_w));
    const auto report = total_path_loss(geom, medium, env, f, options);
    const double s = two_ray_sine(geom, f, medium.epsilon_r, options);

    LinkBudget b;
    b.tx_power_dbw = to_db(tx_power_w);
    b.tx_gain_db = to_db(geom.tx_gain);
    b.rx_gain_db = to_db(geom.rx_gain);
    b.permittivity_db = 0.0 - to_db(medium.epsilon_r);
    b.spreading_db = -20.0 * std::log10(spreading_factor(geom, f) / std::abs(s));
    const double depth = std::log(report.absorption_loss);
    b.absorption_db = -c::db_per_neper * depth;
    b.absorption_db_rounded = -c::db_per_neper_rounded * depth;

    const double common = b.tx_power_dbw + b.tx_gain_db + b.rx_gain_db + b.permittivity_db + b.spreading_db;
    b.received_dbw = common + b.absorption_db;
    b.received_dbw_rounded = common + b.absorption_db_rounded;
    b.received_dbw_linear = to_db(tx_power_w / report.total_loss);
    return b;
}

double link_budget_db(const LinkGeometry& geom, const Medium& medium, const Environment& env, double f,
                      double tx_power_w, const PathLossOptions& options) {
    return link_budget(geom, medium, env, f, tx_power_w, options).received_dbw;
}

}  // namespace thz
