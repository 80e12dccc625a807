#pragma once

// Two-ray dielectric propagation loss inside the package, total path loss and
// the dB link budget.

#include "thz/absorption.hpp"
#include "thz/spectro.hpp"

namespace thz {

/// Antenna placement inside the package. Gains are linear.
struct LinkGeometry {
    double distance = 0.1e-3;         // d, m
    double tx_height = 0.02e-3;       // h_T, m
    double rx_height = 0.02e-3;       // h_R, m
    double tx_gain = 1.0;             // G_T
    double rx_gain = 1.0;             // G_R
    double package_side = 20e-3;      // d_C, m
    double package_height = 1e-3;     // h, m

    /// Throws ValidationError listing every broken bound
    /// (0 < d <= d_C, 0 < h_T, h_R <= h, gains > 0).
    void validate() const;
};

struct PathLossOptions {
    /// |sin| of the two-ray argument at or below this is reported as a null.
    double null_tolerance = 1e-9;
    AbsorptionOptions absorption;
};

struct PathLossReport {
    double dielectric_loss = 0.0;   // L_d
    double absorption_loss = 1.0;   // L_a
    double total_loss = 0.0;        // L = L_d * L_a
    double kappa = 0.0;             // m^-1
    double transmittance = 1.0;
    bool opaque = false;

    double dielectric_loss_db = 0.0;
    double absorption_loss_db = 0.0;
    double total_loss_db = 0.0;
};

/// Received-power ledger in dB. Each term carries its sign, so
/// received_dbw equals the sum of the first six entries.
struct LinkBudget {
    double tx_power_dbw = 0.0;
    double tx_gain_db = 0.0;
    double rx_gain_db = 0.0;
    double permittivity_db = 0.0;   // -10 log10(eps_r)
    double spreading_db = 0.0;      // -20 log10[(2 pi d f / c) |csc(.)|]
    double absorption_db = 0.0;     // -10 log10(e) * kappa d
    double received_dbw = 0.0;

    /// Absorption term with the rounded 4.343 dB/neper factor, and the
    /// received power it implies.
    double absorption_db_rounded = 0.0;
    double received_dbw_rounded = 0.0;

    /// 10 log10(P_T / L) computed in the linear domain.
    double received_dbw_linear = 0.0;
};

/// Phase velocity c / sqrt(eps_r), m/s.
double phase_velocity(double epsilon_r);

/// Phase difference between direct and reflected rays, 4 pi h_T h_R f / (v_p d), rad.
double phase_difference(const LinkGeometry& geom, double f, double epsilon_r);

/// Half the phase difference: the argument of the two-ray sine term.
double two_ray_argument(const LinkGeometry& geom, double f, double epsilon_r);

/// Dielectric propagation loss
///   L_d = (2 pi d f / c)^2 (eps_r / (G_T G_R)) csc^2(2 pi h_T h_R f sqrt(eps_r) / (c d)).
/// Throws TwoRayNullError when the sine term vanishes.
double dielectric_path_loss(const LinkGeometry& geom, double f, double epsilon_r,
                            const PathLossOptions& options = {});

/// L = L_d * L_a with dB components.
PathLossReport total_path_loss(const LinkGeometry& geom, const Medium& medium,
                               const Environment& env, double f,
                               const PathLossOptions& options = {});

/// Full dB ledger for transmit power `tx_power_w`.
LinkBudget link_budget(const LinkGeometry& geom, const Medium& medium, const Environment& env,
                       double f, double tx_power_w, const PathLossOptions& options = {});

/// Received power in dBW.
double link_budget_db(const LinkGeometry& geom, const Medium& medium, const Environment& env,
                      double f, double tx_power_w, const PathLossOptions& options = {});

double to_db(double linear);

}  // namespace thz
