#pragma once

// Frequency-selective noise model and Shannon capacity over K parallel
// subbands with optimal (water-filling) or flat power allocation.

#include <cstddef>
#include <span>
#include <vector>

#include "thz/absorption.hpp"
#include "thz/propagation.hpp"
#include "thz/spectro.hpp"

namespace thz {

/// K equal-width subbands over [f_lo, f_lo + B]; centers sit at subband midpoints.
class BandPlan {
public:
    BandPlan(double f_lo, double bandwidth, std::size_t subbands);

    /// Band of width `bandwidth` centered on `f_center`.
    static BandPlan centered(double f_center, double bandwidth, std::size_t subbands);

    double lower_edge() const noexcept { return f_lo_; }
    double bandwidth() const noexcept { return bandwidth_; }
    std::size_t subbands() const noexcept { return centers_.size(); }
    double subband_width() const noexcept { return bandwidth_ / static_cast<double>(centers_.size()); }
    const std::vector<double>& centers() const noexcept { return centers_; }

private:
    double f_lo_;
    double bandwidth_;
    std::vector<double> centers_;
};

struct NoiseModel {
    double system_temperature = 0.0;          // T_S, K
    std::vector<double> molecular_temperature;  // T_M per subband, K
    std::vector<double> total_temperature;      // T_S + T_M per subband, K
    /// Other noise sources T' are always neglected against T_S + T_M.
    static constexpr bool other_sources_neglected = true;
};

struct PowerAllocation {
    std::vector<double> powers;  // P_k, W
    double water_level = 0.0;    // W
    std::vector<double> psi;     // noise-loss floor per subband, W
    double capacity_bits_per_s = 0.0;
    bool opaque = false;  // some subband hit the opacity cap
};

enum class Allocation { waterfilling, flat };

struct CapacityOptions {
    PathLossOptions path;
};

/// T_0 (1 - exp(-kappa d)), K.
double molecular_noise_temperature(const Medium& medium, const Environment& env, double f,
                                   double distance_m, const AbsorptionOptions& options = {});

NoiseModel noise_model(const Medium& medium, const Environment& env, const BandPlan& band,
                       double distance_m, const AbsorptionOptions& options = {});

/// Boltzmann * sum_k T_tot(f_k) * df (midpoint rule over the band), W.
double noise_power(const Medium& medium, const Environment& env, const BandPlan& band,
                   double distance_m, const AbsorptionOptions& options = {});

/// Psi_k = (k_B eps_r / G_T G_R) (2 pi d f_k / c)^2 df csc^2(.) [(T_S + T_0) e^{kappa_k d} - T_0].
/// A two-ray null at any center raises TwoRayNullError naming the subband.
std::vector<double> psi_coefficients(const LinkGeometry& geom, const Medium& medium,
                                     const Environment& env, const BandPlan& band,
                                     const CapacityOptions& options = {},
                                     bool* any_opaque = nullptr);

/// Exact water-filling: P_k = (level - psi_k)^+ with sum P_k = total_power.
/// Sorts the floors and takes the largest active prefix whose implied level
/// exceeds its highest floor. Requires total_power >= 0 and every psi_k > 0.
PowerAllocation water_filling(std::span<const double> psi, double total_power);

/// Sum over k of df * log2(1 + P_k / psi_k).
double allocation_capacity(std::span<const double> powers, std::span<const double> psi,
                           double subband_width);

/// Water-filled capacity, bits/s, with the allocation.
PowerAllocation channel_capacity(const LinkGeometry& geom, const Medium& medium,
                                 const Environment& env, const BandPlan& band, double total_power,
                                 const CapacityOptions& options = {});

/// Capacity with P_k = P_T / K on every subband.
PowerAllocation flat_allocation(const LinkGeometry& geom, const Medium& medium,
                                const Environment& env, const BandPlan& band, double total_power,
                                const CapacityOptions& options = {});

double flat_allocation_capacity(const LinkGeometry& geom, const Medium& medium,
                                const Environment& env, const BandPlan& band, double total_power,
                                const CapacityOptions& options = {});

PowerAllocation allocate(Allocation kind, const LinkGeometry& geom, const Medium& medium,
                         const Environment& env, const BandPlan& band, double total_power,
                         const CapacityOptions& options = {});

/// h_T h_R f_max sqrt(eps_r) / (c d); the small-antenna approximation requires < 0.1.
double small_antenna_regime(const LinkGeometry& geom, const BandPlan& band, double epsilon_r);

inline constexpr double small_antenna_regime_limit = 0.1;

/// Phi_k = k_B d^4 df [T_S + (T_S + T_0) kappa_k d] / (h_T^2 h_R^2).
std::vector<double> phi_coefficients(const LinkGeometry& geom, const Medium& medium,
                                     const Environment& env, const BandPlan& band,
                                     const AbsorptionOptions& options = {});

/// Water-filled capacity over the Phi_k floors. Throws RegimeError outside
/// the small-antenna regime or when either gain differs from 1.
PowerAllocation approx_capacity_small_antenna(const LinkGeometry& geom, const Medium& medium,
                                              const Environment& env, const BandPlan& band,
                                              double total_power,
                                              const AbsorptionOptions& options = {});

}  // namespace thz
