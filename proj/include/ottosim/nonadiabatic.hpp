#pragma once

#include "ottosim/signed_log.hpp"

namespace ottosim {

// Dimensionless parameters of the transferred-energy series for a working
// medium dragged through a 1D thermal bath at constant speed:
//   y    = hbar*omega_t/(k_B T)          (inverse temperature in trap units)
//   zeta = omega_t/(sqrt(2)*alpha*u)     (adiabaticity parameter)
//   chi  = v0/(hbar*u)                   (coupling prefactor)
// with alpha = sqrt(m*omega_t/hbar). The series functions return the
// dimensionless sum S normalized so that <dE> = hbar*omega_t*chi^2*S.
struct NonadiabaticInput {
    double y;
    double zeta;
    double chi;
};

// SI-level description of one transport sweep through a bath.
struct SweepContext {
    double mass;     // bath atom mass [kg]
    double omega_t;  // bath trap angular frequency [rad/s]
    double temp;     // bath temperature [K]
    double speed;    // working-medium transport speed u [m/s]
    double v0;       // contact-potential strength g_IB * N_WM [J m]
};

NonadiabaticInput to_nonadiabatic_input(const SweepContext& ctx);

// Fock-basis matrix element of the displacement operator e^{i lam (a^+ + a)},
//   <n| e^{i lam (a^+ + a)} |n0> = i^{n-n0} e^{-lam^2/2} lam^{n-n0}
//                                  sqrt(n0!/n!) L_{n0}^{n-n0}(lam^2),
// for n >= n0. The signed log magnitude carries the Laguerre sign; the
// i^{n-n0} phase is reported as the quadrant (n-n0) mod 4.
struct DisplacementElement {
    SignedLogValue amplitude;
    int phase_quadrant;
};

DisplacementElement displacement_matrix_element(int n0, int n, double lam);

// Transferred-energy sum evaluated term by term over initial states n0 and
// level jumps l (the Laguerre double sum). Requires y >= 0.01 and
// zeta >= 0.05; all term assembly happens on the log scale.
double transferred_energy_bruteforce(const NonadiabaticInput& in);

// Same sum after collapsing the n0 summation with the Hille-Hardy formula:
//   S = 2 sum_l l sinh(y l/2) exp(-zeta^2 l^2 coth(y/2))
//                I_l(zeta^2 l^2 / sinh(y/2)).
// Works for any y > 0, zeta > 0; the Bessel factor is combined with the
// decaying exponential on the log scale, where the exponent reduces to
// -zeta^2 l^2 tanh(y/4) and can never overflow.
double transferred_energy_closed(const NonadiabaticInput& in);

// <dE> in joules from the closed-form sum with the SI prefactor applied.
double transferred_energy_closed_si(const SweepContext& ctx);

// <dE> in joules from the brute-force sum (oracle cross-checks).
double transferred_energy_bruteforce_si(const SweepContext& ctx);

// Deep-adiabatic estimate (2/sqrt(pi)) beta (alpha v0)^2 (u_a/u) e^{-u_a^2/u^2},
// valid for y < 0.2 and u <= u_a/2; throws outside that regime.
double transferred_energy_asymptotic(const SweepContext& ctx);

// Adiabatic transport bound u_a = omega_t * lambda_dB with
// lambda_dB = sqrt(beta hbar^2 / (8 m)).
double adiabatic_velocity(const SweepContext& ctx);

// Energy deposited by a sudden switch-on of the contact coupling,
// g_ib * n_wm * bath_density.
double quench_energy(double g_ib, double n_wm, double bath_density);

// Spontaneous-emission heating per WM atom over one stroke,
// E_R * gamma_sp * stroke_time with E_R = h^2/(2 m lambda^2).
double recoil_heating(double mass, double wavelength, double gamma_sp, double stroke_time);

// Recoil energy h^2/(2 m lambda^2) [J].
double recoil_energy(double mass, double wavelength);

}  // namespace ottosim
