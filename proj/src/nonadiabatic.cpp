#include "ottosim/nonadiabatic.hpp"

#include "ottosim/constants.hpp"
#include "ottosim/special_functions.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ottosim {

namespace {

// ln 1e14: n0 terms are dropped once their Boltzmann weight e^{-y n0} falls
// below 1e-14.
const double kTailCutoffLog = 14.0 * std::numbers::ln10;
constexpr double kTermCutoff = 1e-16;  // relative cutoff for the l series
constexpr int kN0Cap = 100000;
constexpr int kBruteLCap = 10000;
constexpr int kClosedLCap = 1000000;

void validate_context(const SweepContext& ctx) {
    if (!(ctx.mass > 0.0) || !(ctx.omega_t > 0.0) || !(ctx.temp > 0.0))
        throw std::domain_error("sweep context: mass, omega_t and temp must be positive");
    if (!(ctx.speed > 0.0))
        throw std::domain_error("sweep context: transport speed must be positive");
    if (!(ctx.v0 >= 0.0))
        throw std::domain_error("sweep context: potential strength v0 must be non-negative");
}

double inverse_length_alpha(const SweepContext& ctx) {
    return std::sqrt(ctx.mass * ctx.omega_t / constants::hbar);
}

}  // namespace

NonadiabaticInput to_nonadiabatic_input(const SweepContext& ctx) {
    validate_context(ctx);
    NonadiabaticInput in;
    in.y = constants::hbar * ctx.omega_t / (constants::k_boltzmann * ctx.temp);
    in.zeta = ctx.omega_t / (std::numbers::sqrt2 * inverse_length_alpha(ctx) * ctx.speed);
    in.chi = ctx.v0 / (constants::hbar * ctx.speed);
    return in;
}

DisplacementElement displacement_matrix_element(int n0, int n, double lam) {
    if (n0 < 0 || n < n0)
        throw std::domain_error("displacement_matrix_element: requires n >= n0 >= 0");
    if (!std::isfinite(lam))
        throw std::domain_error("displacement_matrix_element: lam must be finite");
    const int jump = n - n0;
    DisplacementElement out;
    out.phase_quadrant = jump % 4;
    if (lam == 0.0) {
        // identity displacement: delta_{n n0}
        out.amplitude = jump == 0 ? SignedLogValue::from_value(1.0) : SignedLogValue::zero();
        return out;
    }
    const double lam2 = lam * lam;
    const SignedLogValue laguerre = assoc_laguerre(n0, jump, lam2);
    if (laguerre.is_zero()) {
        out.amplitude = SignedLogValue::zero();
        return out;
    }
    double log_mag = -0.5 * lam2 + jump * std::log(std::abs(lam)) +
                     0.5 * log_factorial_ratio(n0, jump) + laguerre.log_magnitude;
    int sign = laguerre.sign;
    if (lam < 0.0 && jump % 2 != 0) sign = -sign;
    out.amplitude = {log_mag, sign};
    return out;
}

double transferred_energy_bruteforce(const NonadiabaticInput& in) {
    if (!(in.y >= 0.01))
        throw std::domain_error("transferred_energy_bruteforce: requires y >= 0.01");
    if (!(in.zeta >= 0.05))
        throw std::domain_error("transferred_energy_bruteforce: requires zeta >= 0.05");

    const double y = in.y;
    const int n0_max = static_cast<int>(kTailCutoffLog / y) + 1;
    if (n0_max > kN0Cap)
        throw std::runtime_error("transferred_energy_bruteforce: n0 range exceeds cap");

    double total = 0.0;
    bool converged = false;
    for (int l = 1; l <= kBruteLCap; ++l) {
        const double x = in.zeta * in.zeta * static_cast<double>(l) * l;
        // l (1 - e^{-y l}) x^l e^{-x}, on the log scale
        const double base =
            std::log(static_cast<double>(l)) + std::log1p(-std::exp(-y * l)) +
            l * std::log(x) - x;

        // March n0 upward carrying the Laguerre pair, the rescale exponent
        // and ln(n0!/(n0+l)!) incrementally.
        double block = 0.0;
        double lag_prev = 0.0;             // L_{n0-1}^l(x)
        double lag_cur = 1.0;              // L_{n0}^l(x), starting at n0 = 0
        double lag_scale = 0.0;
        double lfr = -std::lgamma(l + 1.0);  // ln(0!/l!)
        for (int n0 = 0; y * n0 <= kTailCutoffLog; ++n0) {
            if (n0 >= kN0Cap)
                throw std::runtime_error("transferred_energy_bruteforce: n0 cap exceeded");
            if (lag_cur != 0.0) {
                const double term_log = base - y * n0 + lfr +
                                        2.0 * (std::log(std::abs(lag_cur)) + lag_scale);
                block += std::exp(term_log);
            }
            const double lag_next =
                ((2.0 * n0 + l + 1.0 - x) * lag_cur - (n0 + static_cast<double>(l)) * lag_prev) /
                (n0 + 1.0);
            lag_prev = lag_cur;
            lag_cur = lag_next;
            const double mag = std::max(std::abs(lag_prev), std::abs(lag_cur));
            if (mag > 1e280) {
                lag_prev *= 1e-280;
                lag_cur *= 1e-280;
                lag_scale += 280.0 * std::numbers::ln10;
            } else if (mag > 0.0 && mag < 1e-280) {
                lag_prev *= 1e280;
                lag_cur *= 1e280;
                lag_scale -= 280.0 * std::numbers::ln10;
            }
            lfr += std::log((n0 + 1.0) / (n0 + 1.0 + l));
        }

        total += block;
        if (l >= 2 && block <= kTermCutoff * total) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw std::runtime_error("transferred_energy_bruteforce: l series did not converge "
                                 "within the cap (l <= 1e4)");
    return -std::expm1(-y) * total;  // (1 - e^{-y}) * double sum
}

double transferred_energy_closed(const NonadiabaticInput& in) {
    if (!(in.y > 0.0))
        throw std::domain_error("transferred_energy_closed: requires y > 0");
    if (!(in.zeta > 0.0))
        throw std::domain_error("transferred_energy_closed: requires zeta > 0");

    const double y = in.y;
    const double sinh_half = std::sinh(0.5 * y);
    // coth(y/2) - csch(y/2) = tanh(y/4) > 0; the Bessel growth never wins.
    const double tanh_quarter = std::tanh(0.25 * y);

    double total = 0.0;
    for (int l = 1; l <= kClosedLCap; ++l) {
        const double x = in.zeta * in.zeta * static_cast<double>(l) * l;
        const double a = 0.5 * y * l;
        // ln sinh(a), overflow-safe for large a
        const double log_sinh = a > 350.0 ? a - std::numbers::ln2 : std::log(std::sinh(a));
        const double term_log = std::log(2.0 * static_cast<double>(l)) + log_sinh -
                                x * tanh_quarter + log_bessel_i_exp_scaled(l, x / sinh_half);
        const double term = std::exp(term_log);
        total += term;
        if (l >= 2 && term <= kTermCutoff * total) return total;
    }
    throw std::runtime_error("transferred_energy_closed: l series did not converge");
}

double transferred_energy_closed_si(const SweepContext& ctx) {
    const NonadiabaticInput in = to_nonadiabatic_input(ctx);
    if (in.chi == 0.0) return 0.0;  // no coupling, nothing deposited
    return constants::hbar * ctx.omega_t * in.chi * in.chi * transferred_energy_closed(in);
}

double transferred_energy_bruteforce_si(const SweepContext& ctx) {
    const NonadiabaticInput in = to_nonadiabatic_input(ctx);
    if (in.chi == 0.0) return 0.0;
    return constants::hbar * ctx.omega_t * in.chi * in.chi * transferred_energy_bruteforce(in);
}

double transferred_energy_asymptotic(const SweepContext& ctx) {
    validate_context(ctx);
    const double y = constants::hbar * ctx.omega_t / (constants::k_boltzmann * ctx.temp);
    const double u_a = adiabatic_velocity(ctx);
    if (!(y < 0.2))
        throw std::domain_error("transferred_energy_asymptotic: outside validity, "
                                "requires y = hbar*omega/(k_B T) < 0.2");
    if (!(ctx.speed <= 0.5 * u_a))
        throw std::domain_error("transferred_energy_asymptotic: outside validity, "
                                "requires u <= u_a/2");
    const double beta = 1.0 / (constants::k_boltzmann * ctx.temp);
    const double alpha_v0 = inverse_length_alpha(ctx) * ctx.v0;
    const double ratio = u_a / ctx.speed;
    return 2.0 / std::sqrt(std::numbers::pi) * beta * alpha_v0 * alpha_v0 * ratio *
           std::exp(-ratio * ratio);
}

double adiabatic_velocity(const SweepContext& ctx) {
    if (!(ctx.mass > 0.0) || !(ctx.omega_t > 0.0) || !(ctx.temp > 0.0))
        throw std::domain_error("adiabatic_velocity: mass, omega_t and temp must be positive");
    const double lambda_db =
        constants::hbar / std::sqrt(8.0 * ctx.mass * constants::k_boltzmann * ctx.temp);
    return ctx.omega_t * lambda_db;
}

double quench_energy(double g_ib, double n_wm, double bath_density) {
    if (g_ib < 0.0 || n_wm < 0.0 || bath_density < 0.0)
        throw std::domain_error("quench_energy: inputs must be non-negative");
    return g_ib * n_wm * bath_density;
}

double recoil_energy(double mass, double wavelength) {
    if (!(mass > 0.0) || !(wavelength > 0.0))
        throw std::domain_error("recoil_energy: mass and wavelength must be positive");
    return constants::planck * constants::planck / (2.0 * mass * wavelength * wavelength);
}

double recoil_heating(double mass, double wavelength, double gamma_sp, double stroke_time) {
    if (gamma_sp < 0.0 || stroke_time < 0.0)
        throw std::domain_error("recoil_heating: rate and duration must be non-negative");
    return recoil_energy(mass, wavelength) * gamma_sp * stroke_time;
}

}  // namespace ottosim
