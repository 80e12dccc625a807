#include "thz/absorption.hpp"

#include <cmath>

#include <fmt/format.h>

#include "thz/constants.hpp"
#include "thz/errors.hpp"

namespace thz {

namespace c = constants;

Environment::Environment(double system_temperature_k, double pressure_atm)
    : temperature_(system_temperature_k), pressure_(pressure_atm) {
    if (!(temperature_ > 0.0) || !std::isfinite(temperature_))
        throw DomainError(fmt::format("system temperature T_S = {} K must be positive", temperature_));
    if (!(pressure_ > 0.0) || !std::isfinite(pressure_))
        throw DomainError(fmt::format("ambient pressure p = {} atm must be positive", pressure_));
}

Environment Environment::from_kpa(double system_temperature_k, double pressure_kpa) {
    return Environment(system_temperature_k, pressure_kpa / c::kpa_per_atm);
}

double Environment::pressure_kpa() const noexcept { return pressure_ * c::kpa_per_atm; }

double lorentz_half_width(const SpectralLine& line, double q, const Environment& env) {
    if (!(q >= 0.0 && q <= 1.0)) throw DomainError(fmt::format("mixing ratio {} outside [0, 1]", q));
    const double broadening = (1.0 - q) * line.alpha_air + q * line.alpha_self;
    const double width = broadening * (env.pressure() / c::reference_pressure) *
                         std::pow(c::reference_temperature / env.temperature(), line.temp_exponent);
    if (!(width > 0.0))
        throw DomainError(fmt::format("Lorentz half width of the {:.6e} Hz line is not positive", line.f_c0));
    return width;
}

double shifted_resonance(const SpectralLine& line, const Environment& env) {
    const double fc = line.f_c0 + line.pressure_shift * (env.pressure() / c::reference_pressure);
    if (!(fc > 0.0))
        throw DomainError(fmt::format("pressure shift moves the {:.6e} Hz line to {:.6e} Hz", line.f_c0, fc));
    return fc;
}

namespace {

double vvw(double f, double fc, double alpha) {
    const double a2 = alpha * alpha;
    const double below = f - fc;
    const double above = f + fc;
    return (alpha / c::pi) * (f / fc) * (1.0 / (below * below + a2) + 1.0 / (above * above + a2));
}

double radiation_correction(double f, double fc, double temperature) {
    const double scale = c::planck / (2.0 * c::boltzmann * temperature);
    return (f / fc) * std::tanh(scale * f) / std::tanh(scale * fc);
}

double line_kappa(const SpectralLine& line, double q, double f, const Environment& env) {
    if (q == 0.0) return 0.0;
    const double fc = shifted_resonance(line, env);
    const double alpha = lorentz_half_width(line, q, env);
    const double shape = radiation_correction(f, fc, env.temperature()) * vvw(f, fc, alpha);
    const double prefactor = (env.pressure() / c::reference_pressure) *
                             (c::standard_temperature / env.temperature());
    return prefactor * number_density(q, env) * line.line_intensity * shape;
}

bool within_cutoff(const SpectralLine& line, double f, const AbsorptionOptions& options) {
    return options.wing_cutoff_hz <= 0.0 || std::abs(f - line.f_c0) <= options.wing_cutoff_hz;
}

void require_positive_frequency(double f) {
    if (!(f > 0.0)) throw DomainError(fmt::format("frequency {} Hz must be positive", f));
}

}  // namespace

double vvw_line_shape(const SpectralLine& line, double f, const Environment& env, double q) {
    require_positive_frequency(f);
    return vvw(f, shifted_resonance(line, env), lorentz_half_width(line, q, env));
}

double spectral_line_shape(const SpectralLine& line, double f, const Environment& env, double q) {
    require_positive_frequency(f);
    const double fc = shifted_resonance(line, env);
    return radiation_correction(f, fc, env.temperature()) * vvw(f, fc, lorentz_half_width(line, q, env));
}

double number_density(double q, const Environment& env) {
    return env.pressure() * q * c::avogadro / (c::gas_constant * env.temperature());
}

double line_absorption(const SpectralLine& line, double q, double f, const Environment& env) {
    require_positive_frequency(f);
    if (!(q >= 0.0 && q <= 1.0)) throw DomainError(fmt::format("mixing ratio {} outside [0, 1]", q));
    return line_kappa(line, q, f, env);
}

AbsorptionBreakdown medium_kappa(const Medium& medium, double f, const Environment& env,
                                 const AbsorptionOptions& options) {
    require_positive_frequency(f);
    AbsorptionBreakdown out;
    for (std::size_t i = 0; i < medium.lines.size(); ++i) {
        const auto& line = medium.lines[i];
        if (!within_cutoff(line, f, options)) continue;
        const double kappa = line_kappa(line, medium.mixing_ratio(line.species()), f, env);
        out.per_line.push_back({line.species(), i, kappa});
        out.total_kappa += kappa;
    }
    return out;
}

double absorption_coefficient(const Medium& medium, double f, const Environment& env,
                              const AbsorptionOptions& options) {
    require_positive_frequency(f);
    double total = 0.0;
    for (const auto& line : medium.lines) {
        if (!within_cutoff(line, f, options)) continue;
        total += line_kappa(line, medium.mixing_ratio(line.species()), f, env);
    }
    return total;
}

Attenuation attenuation(double kappa, double distance_m, const AbsorptionOptions& options) {
    if (!(distance_m >= 0.0)) throw DomainError(fmt::format("distance {} m must be >= 0", distance_m));
    if (!(kappa >= 0.0)) throw DomainError(fmt::format("absorption coefficient {} must be >= 0", kappa));
    Attenuation a;
    a.kappa = kappa;
    a.optical_depth = kappa * distance_m;
    if (a.optical_depth > options.opacity_cap) {
        a.opaque = true;
        a.optical_depth = options.opacity_cap;
    }
    a.loss = std::exp(a.optical_depth);
    a.transmittance = std::exp(-a.optical_depth);
    return a;
}

Attenuation maa(const Medium& medium, double f, const Environment& env, double distance_m,
                const AbsorptionOptions& options) {
    return attenuation(absorption_coefficient(medium, f, env, options), distance_m, options);
}

}  // namespace thz
