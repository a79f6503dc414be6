#pragma once

namespace ottosim {

enum class BathLabel { cold, hot };

// One harmonically trapped bosonic cloud. The atom number is conserved for
// the whole refrigeration run; only the temperature evolves.
struct BathState {
    double n_at;     // atom count, >= 1
    double omega_t;  // trap angular frequency [rad/s]
    double temp;     // temperature [K]
    double mass;     // atomic mass [kg]
    BathLabel label;
};

void validate(const BathState& bath);

// BEC critical temperature of an ideal Bose gas in a 3D harmonic trap,
// hbar * omega_t * n_at^{1/3} / (k_B * zeta(3)^{1/3}).
double critical_temperature(const BathState& bath);

// Heat capacity across the condensation threshold:
//   T > T_crit : 3 n_at k_B [1 + zeta(3)/8 (T_crit/T)^3]
//   T <= T_crit: 12 zeta(4)/zeta(3) n_at k_B (T/T_crit)^3
// Exactly at T_crit the condensed branch applies (tie-break; both the point
// and the choice carry no weight over a run).
double heat_capacity(const BathState& bath);

// One explicit temperature step: temp' = temp - n_wm * q / C_V(temp), the
// heat capacity evaluated at the pre-update temperature. Throws if the step
// would drive the temperature to zero or below.
BathState apply_heat(const BathState& bath, double q_per_wm_atom, double n_wm);

}  // namespace ottosim
