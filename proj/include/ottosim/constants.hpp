#pragma once

#include <numbers>

namespace ottosim::constants {

// SI defining constants (2019 redefinition). hbar is derived from h so that
// h == 2*pi*hbar holds to the last bit.
inline constexpr double planck = 6.62607015e-34;               // J s
inline constexpr double hbar = planck / (2.0 * std::numbers::pi);  // J s
inline constexpr double k_boltzmann = 1.380649e-23;            // J/K

// Riemann zeta values entering the harmonically-trapped Bose gas formulas.
inline constexpr double zeta3 = 1.2020569031595943;
inline constexpr double zeta4 = 1.0823232337111382;  // pi^4/90

// CODATA-2018 atomic masses.
inline constexpr double atomic_mass_unit = 1.66053906660e-27;  // kg
inline constexpr double mass_rb87 = 86.909180531 * atomic_mass_unit;
inline constexpr double mass_cs133 = 132.905451961 * atomic_mass_unit;

}  // namespace ottosim::constants
