#include "thz/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <fmt/format.h>

#include "thz/constants.hpp"
#include "thz/errors.hpp"

namespace thz {

namespace c = constants;

BandPlan::BandPlan(double f_lo, double bandwidth, std::size_t subbands)
    : f_lo_(f_lo), bandwidth_(bandwidth) {
    if (subbands < 1) throw DomainError("band plan needs at least one subband");
    if (!(bandwidth > 0.0) || !std::isfinite(bandwidth))
        throw DomainError(fmt::format("bandwidth {} Hz must be positive", bandwidth));
    if (!(f_lo > 0.0)) throw DomainError(fmt::format("band lower edge {} Hz must be positive", f_lo));
    const double df = bandwidth / static_cast<double>(subbands);
    centers_.resize(subbands);
    for (std::size_t k = 0; k < subbands; ++k)
        centers_[k] = f_lo + (static_cast<double>(k) + 0.5) * df;
}

BandPlan BandPlan::centered(double f_center, double bandwidth, std::size_t subbands) {
    return BandPlan(f_center - 0.5 * bandwidth, bandwidth, subbands);
}

double molecular_noise_temperature(const Medium& medium, const Environment& env, double f, double distance_m,
                                   const AbsorptionOptions& options) {
    const auto a = maa(medium, f, env, distance_m, options);
    return c::reference_temperature * (1.0 - a.transmittance);
}

NoiseModel noise_model(const Medium& medium, const Environment& env, const BandPlan& band, double distance_m,
                       const AbsorptionOptions& options) {
    NoiseModel n;
    n.system_temperature = env.temperature();
    for (double f : band.centers()) {
        const double tm = molecular_noise_temperature(medium, env, f, distance_m, options);
        n.molecular_temperature.push_back(tm);
        n.total_temperature.push_back(env.temperature() + tm);
    }
    return n;
}

double noise_power(const Medium& medium, const Environment& env, const BandPlan& band, double distance_m,
                   const AbsorptionOptions& options) {
    const auto n = noise_model(medium, env, band, distance_m, options);
    const double sum = std::accumulate(n.total_temperature.begin(), n.total_temperature.end(), 0.0);
    return c::boltzmann * sum * band.subband_width();
}

std::vector<double> psi_coefficients(const LinkGeometry& geom, const Medium& medium, const Environment& env,
                                     const BandPlan& band, const CapacityOptions& options, bool* any_opaque) {
    geom.validate();
    if (any_opaque) *any_opaque = false;
    const double df = band.subband_width();
    const double ts = env.temperature();
    std::vector<double> psi(band.subbands());
    for (std::size_t k = 0; k < psi.size(); ++k) {
        const double f = band.centers()[k];
        double dielectric = 0.0;
        try {
            dielectric = dielectric_path_loss(geom, f, medium.epsilon_r, options.path);
        } catch (const TwoRayNullError& e) {
            throw TwoRayNullError(e.sine_argument(), f, k);
        }
        const auto a = maa(medium, f, env, geom.distance, options.path.absorption);
        if (any_opaque && a.opaque) *any_opaque = true;
        const double bracket = (ts + c::reference_temperature) * a.loss - c::reference_temperature;
        psi[k] = c::boltzmann * dielectric * df * bracket;
    }
    return psi;
}

PowerAllocation water_filling(std::span<const double> psi, double total_power) {
    if (psi.empty()) throw DomainError("water filling needs at least one subband");
    if (!(total_power >= 0.0) || !std::isfinite(total_power))
        throw DomainError(fmt::format("total power {} W must be >= 0", total_power));
    for (std::size_t k = 0; k < psi.size(); ++k) {
        if (!(psi[k] > 0.0) || !std::isfinite(psi[k]))
            throw DomainError(fmt::format("noise floor psi[{}] = {} must be positive", k, psi[k]));
    }

    std::vector<double> sorted(psi.begin(), psi.end());
    std::sort(sorted.begin(), sorted.end());

    // Level with the m lowest floors active: (P_T + sum of those floors) / m.
    // The active set is the largest prefix whose level clears its top floor.
    double level = sorted.front();
    double prefix = 0.0;
    for (std::size_t m = 1; m <= sorted.size(); ++m) {
        prefix += sorted[m - 1];
        const double candidate = (total_power + prefix) / static_cast<double>(m);
        if (candidate > sorted[m - 1]) level = candidate;
        else break;
    }

    PowerAllocation out;
    out.water_level = level;
    out.psi.assign(psi.begin(), psi.end());
    out.powers.resize(psi.size());
    for (std::size_t k = 0; k < psi.size(); ++k) out.powers[k] = std::max(0.0, level - psi[k]);
    return out;
}

double allocation_capacity(std::span<const double> powers, std::span<const double> psi, double subband_width) {
    if (powers.size() != psi.size()) throw DomainError("powers and floors differ in length");
    double sum = 0.0;
    for (std::size_t k = 0; k < powers.size(); ++k) sum += std::log1p(powers[k] / psi[k]);
    return subband_width * sum / std::log(2.0);
}

PowerAllocation channel_capacity(const LinkGeometry& geom, const Medium& medium, const Environment& env,
                                 const BandPlan& band, double total_power, const CapacityOptions& options) {
    bool opaque = false;
    const auto psi = psi_coefficients(geom, medium, env, band, options, &opaque);
    auto alloc = water_filling(psi, total_power);
    alloc.opaque = opaque;
    alloc.capacity_bits_per_s = allocation_capacity(alloc.powers, alloc.psi, band.subband_width());
    return alloc;
}

PowerAllocation flat_allocation(const LinkGeometry& geom, const Medium& medium, const Environment& env,
                                const BandPlan& band, double total_power, const CapacityOptions& options) {
    if (!(total_power >= 0.0)) throw DomainError(fmt::format("total power {} W must be >= 0", total_power));
    PowerAllocation alloc;
    alloc.psi = psi_coefficients(geom, medium, env, band, options, &alloc.opaque);
    alloc.powers.assign(alloc.psi.size(), total_power / static_cast<double>(alloc.psi.size()));
    alloc.water_level = std::numeric_limits<double>::quiet_NaN();
    alloc.capacity_bits_per_s = allocation_capacity(alloc.powers, alloc.psi, band.subband_width());
    return alloc;
}

double flat_allocation_capacity(const LinkGeometry& geom, const Medium& medium, const Environment& env,
                                const BandPlan& band, double total_power, const CapacityOptions& options) {
    return flat_allocation(geom, medium, env, band, total_power, options).capacity_bits_per_s;
}

PowerAllocation allocate(Allocation kind, const LinkGeometry& geom, const Medium& medium, const Environment& env,
                         const BandPlan& band, double total_power, const CapacityOptions& options) {
    return kind == Allocation::flat ? flat_allocation(geom, medium, env, band, total_power, options)
                                    : channel_capacity(geom, medium, env, band, total_power, options);
}

double small_antenna_regime(const LinkGeometry& geom, const BandPlan& band, double epsilon_r) {
    return geom.tx_height * geom.rx_height * band.centers().back() * std::sqrt(epsilon_r) /
           (c::light_speed * geom.distance);
}

std::vector<double> phi_coefficients(const LinkGeometry& geom, const Medium& medium, const Environment& env,
                                     const BandPlan& band, const AbsorptionOptions& options) {
    geom.validate();
    const double d = geom.distance;
    const double df = band.subband_width();
    const double ts = env.temperature();
    const double hh = geom.tx_height * geom.rx_height;
    const double scale = c::boltzmann * std::pow(d, 4) * df / (hh * hh);
    std::vector<double> phi(band.subbands());
    for (std::size_t k = 0; k < phi.size(); ++k) {
        const double kappa = absorption_coefficient(medium, band.centers()[k], env, options);
        phi[k] = scale * (ts + (ts + c::reference_temperature) * kappa * d);
    }
    return phi;
}

PowerAllocation approx_capacity_small_antenna(const LinkGeometry& geom, const Medium& medium,
                                              const Environment& env, const BandPlan& band, double total_power,
                                              const AbsorptionOptions& options) {
    if (geom.tx_gain != 1.0 || geom.rx_gain != 1.0)
        throw RegimeError("small-antenna approximation assumes unit antenna gains");
    const double regime = small_antenna_regime(geom, band, medium.epsilon_r);
    if (!(regime < small_antenna_regime_limit))
        throw RegimeError(fmt::format("small-antenna regime argument {:.4g} is not below {}", regime,
                                      small_antenna_regime_limit));
    const auto phi = phi_coefficients(geom, medium, env, band, options);
    auto alloc = water_filling(phi, total_power);
    alloc.capacity_bits_per_s = allocation_capacity(alloc.powers, alloc.psi, band.subband_width());
    return alloc;
}

}  // namespace thz
