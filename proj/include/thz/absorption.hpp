#pragma once

// Molecular absorption: per-line Van Vleck-Weisskopf absorption, the medium
// absorption coefficient, and Beer-Lambert attenuation.

#include <vector>

#include "thz/spectro.hpp"

namespace thz {

/// Operating conditions inside the package. Construction rejects
/// non-positive (or non-finite) temperature and pressure.
class Environment {
public:
    Environment(double system_temperature_k = 296.0, double pressure_atm = 1.0);

    static Environment from_kpa(double system_temperature_k, double pressure_kpa);

    double temperature() const noexcept { return temperature_; }
    double pressure() const noexcept { return pressure_; }
    double pressure_kpa() const noexcept;

private:
    double temperature_;  // T_S, K
    double pressure_;     // p, atm
};

struct AbsorptionOptions {
    /// Lines farther than this from the evaluation frequency are skipped.
    /// Zero or negative disables the cutoff.
    double wing_cutoff_hz = 5e12;
    /// kappa*d above this saturates to an opaque result.
    double opacity_cap = 700.0;
};

struct LineContribution {
    SpeciesId species;
    std::size_t line_index = 0;  // index into Medium::lines
    double kappa = 0.0;          // m^-1
};

struct AbsorptionBreakdown {
    double total_kappa = 0.0;  // m^-1
    std::vector<LineContribution> per_line;
};

struct Attenuation {
    double kappa = 0.0;          // m^-1
    double optical_depth = 0.0;  // kappa * d, capped when opaque
    double loss = 1.0;           // L_a = exp(kappa d), >= 1
    double transmittance = 1.0;  // 1 / L_a
    bool opaque = false;
};

/// Pressure- and temperature-scaled Lorentz half width, Hz.
double lorentz_half_width(const SpectralLine& line, double q, const Environment& env);

/// Pressure-shifted resonance f_c0 + delta*p/p0, Hz. Throws DomainError if not positive.
double shifted_resonance(const SpectralLine& line, const Environment& env);

/// Van Vleck-Weisskopf profile, 1/Hz:
///   (alpha/pi) (f/f_c) [1/((f-f_c)^2 + alpha^2) + 1/((f+f_c)^2 + alpha^2)]
double vvw_line_shape(const SpectralLine& line, double f, const Environment& env, double q);

/// VVW profile with the radiation-field correction
///   (f/f_c) tanh(h f / 2kT) / tanh(h f_c / 2kT).
double spectral_line_shape(const SpectralLine& line, double f, const Environment& env, double q);

/// Molecular number density of a species at mixing ratio q, molecules/m^3.
double number_density(double q, const Environment& env);

/// Absorption coefficient of one line, m^-1.
double line_absorption(const SpectralLine& line, double q, double f, const Environment& env);

/// Per-line contributions and their sum.
AbsorptionBreakdown medium_kappa(const Medium& medium, double f, const Environment& env,
                                 const AbsorptionOptions& options = {});

/// Same total as medium_kappa, without the breakdown.
double absorption_coefficient(const Medium& medium, double f, const Environment& env,
                              const AbsorptionOptions& options = {});

/// Beer-Lambert attenuation from a known absorption coefficient.
Attenuation attenuation(double kappa, double distance_m, const AbsorptionOptions& options = {});

/// Molecular absorption attenuation L_a over `distance_m`.
Attenuation maa(const Medium& medium, double f, const Environment& env, double distance_m,
                const AbsorptionOptions& options = {});

}  // namespace thz
