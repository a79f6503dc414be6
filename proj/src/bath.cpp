#include "ottosim/bath.hpp"

#include "ottosim/constants.hpp"

#include <cmath>
#include <stdexcept>

namespace ottosim {

void validate(const BathState& bath) {
    if (!(bath.n_at >= 1.0))
        throw std::domain_error("bath: atom count must be >= 1");
    if (!(bath.omega_t > 0.0))
        throw std::domain_error("bath: trap frequency must be positive");
    if (!(bath.temp > 0.0))
        throw std::domain_error("bath: temperature must be positive");
    if (!(bath.mass > 0.0))
        throw std::domain_error("bath: mass must be positive");
}

double critical_temperature(const BathState& bath) {
    validate(bath);
    return constants::hbar * bath.omega_t * std::cbrt(bath.n_at) /
           (constants::k_boltzmann * std::cbrt(constants::zeta3));
}

double heat_capacity(const BathState& bath) {
    validate(bath);
    const double t_crit = critical_temperature(bath);
    const double base = bath.n_at * constants::k_boltzmann;
    if (bath.temp > t_crit) {
        const double r = t_crit / bath.temp;
        return 3.0 * base * (1.0 + constants::zeta3 / 8.0 * r * r * r);
    }
    const double r = bath.temp / t_crit;
    return 12.0 * constants::zeta4 / constants::zeta3 * base * r * r * r;
}

BathState apply_heat(const BathState& bath, double q_per_wm_atom, double n_wm) {
    const double c_v = heat_capacity(bath);
    const double new_temp = bath.temp - n_wm * q_per_wm_atom / c_v;
    if (!(new_temp > 0.0))
        throw std::runtime_error(
            "apply_heat: temperature step drives the bath to T <= 0 "
            "(step size too large for this configuration)");
    BathState out = bath;
    out.temp = new_temp;
    return out;
}

}  // namespace ottosim
