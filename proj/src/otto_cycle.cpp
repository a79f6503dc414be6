#include "ottosim/otto_cycle.hpp"

#include "ottosim/constants.hpp"

#include <cmath>
#include <stdexcept>

namespace ottosim {

void validate(const WorkingMediumConfig& wm) {
    if (!(wm.n_wm >= 1.0))
        throw std::domain_error("working medium: atom count must be >= 1");
    if (!(wm.e_c > 0.0) || !(wm.e_h > 0.0))
        throw std::domain_error("working medium: level spacings must be positive");
    if (wm.e_c > wm.e_h)
        throw std::domain_error("working medium: requires e_c <= e_h");
}

double thermal_occupation(double spacing, double temperature) {
    if (!(spacing > 0.0))
        throw std::domain_error("thermal_occupation: spacing must be positive");
    if (!(temperature > 0.0))
        throw std::domain_error("thermal_occupation: temperature must be positive");
    return 1.0 / (std::exp(spacing / (constants::k_boltzmann * temperature)) + 1.0);
}

CycleEnergetics cycle_energetics(const WorkingMediumConfig& wm, double t_cold, double t_hot) {
    validate(wm);
    const double n_c = thermal_occupation(wm.e_c, t_cold);
    const double n_h = thermal_occupation(wm.e_h, t_hot);
    CycleEnergetics e;
    e.n_bar_c = n_c;
    e.n_bar_h = n_h;
    e.q_c = wm.e_c * (n_c - n_h);
    e.w_in = (wm.e_h - wm.e_c) * n_c;
    e.q_h = wm.e_h * (n_h - n_c);
    e.w_out = (wm.e_c - wm.e_h) * n_h;
    return e;
}

bool cooling_condition(const WorkingMediumConfig& wm, double t_cold, double t_hot) {
    validate(wm);
    return thermal_occupation(wm.e_c, t_cold) > thermal_occupation(wm.e_h, t_hot);
}

double min_temperature(const WorkingMediumConfig& wm, double t_hot) {
    validate(wm);
    if (!(t_hot > 0.0))
        throw std::domain_error("min_temperature: temperature must be positive");
    return wm.e_c / wm.e_h * t_hot;
}

}  // namespace ottosim
