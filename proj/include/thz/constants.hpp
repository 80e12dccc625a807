#pragma once

// Physical constants at the precision the channel model is specified with.
// These intentionally match the tabulated 5-digit values rather than CODATA so
// published intermediate numbers can be reproduced.

namespace thz::constants {

inline constexpr double pi = 3.14159265358979323846;

inline constexpr double avogadro = 6.0221e23;        // mol^-1
inline constexpr double boltzmann = 1.3806e-23;      // J/K
inline constexpr double gas_constant = 8.2051e-5;    // m^3 atm / (K mol)
inline constexpr double planck = 6.6262e-34;         // J s
inline constexpr double light_speed = 2.9979e8;      // m/s

inline constexpr double standard_temperature = 273.15;  // K, temperature at standard pressure
inline constexpr double reference_temperature = 296.0;  // K, catalog reference T0
inline constexpr double reference_pressure = 1.0;       // atm

inline constexpr double kpa_per_atm = 101.325;

/// Hz per cm^-1.
inline constexpr double hz_per_wavenumber = 100.0 * light_speed;

/// 10*log10(e), the exact value behind the 4.343 dB-per-neper rule.
inline constexpr double db_per_neper = 4.3429448190325182765;
inline constexpr double db_per_neper_rounded = 4.343;

}  // namespace thz::constants
