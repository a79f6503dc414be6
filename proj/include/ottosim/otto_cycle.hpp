#pragma once

namespace ottosim {

// Two-level working medium shuttled between the baths. Spacings are the
// level splittings during the cold and hot isochores, in joules.
struct WorkingMediumConfig {
    double n_wm;  // atom count, >= 1
    double e_c;   // cold-stroke level spacing [J], 0 < e_c <= e_h
    double e_h;   // hot-stroke level spacing [J]
};

void validate(const WorkingMediumConfig& wm);

// Per-WM-atom energy bookkeeping of one full cycle. Signs follow the WM's
// point of view: q_c > 0 is heat absorbed from the cold bath, q_h < 0 is
// heat deposited into the hot bath, w_out < 0 is work released.
struct CycleEnergetics {
    double q_c;      // heat from cold bath [J]
    double w_in;     // compression work [J]
    double q_h;      // heat from hot bath [J]
    double w_out;    // decompression work [J]
    double n_bar_c;  // excited-level occupation after the cold isochore
    double n_bar_h;  // occupation after the hot isochore
};

// Excited-level occupation [exp(E/(k_B T)) + 1]^{-1} of the two-level medium.
double thermal_occupation(double spacing, double temperature);

// Closed-form stroke energetics. The medium's state is frozen during the
// adiabats, so the compression work is paid at the cold-isochore occupation
// and the decompression work at the hot one:
//   q_c = e_c (n_c - n_h),  w_in  = (e_h - e_c) n_c,
//   q_h = e_h (n_h - n_c),  w_out = (e_c - e_h) n_h.
// The variant with the occupations swapped in w_in/w_out is sometimes quoted
// but does not close the first law over a cycle; it is not used here.
CycleEnergetics cycle_energetics(const WorkingMediumConfig& wm, double t_cold, double t_hot);

// True iff the cycle extracts heat from the cold bath, i.e. n_c > n_h,
// equivalently e_h/t_hot > e_c/t_cold. Computed from the same occupations
// as cycle_energetics so the result always agrees with sign(q_c).
bool cooling_condition(const WorkingMediumConfig& wm, double t_cold, double t_hot);

// Lowest cold-bath temperature the cooling condition admits: (e_c/e_h) t_hot.
double min_temperature(const WorkingMediumConfig& wm, double t_hot);

}  // namespace ottosim
