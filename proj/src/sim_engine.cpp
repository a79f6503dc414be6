#include "ottosim/sim_engine.hpp"

#include "ottosim/constants.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace ottosim {

namespace {

// Pinned working-medium optics for the recoil audit: Rb at its D2 line and a
// few-Hz scattering rate, as in the feasibility discussion. Not exposed in
// the config schema.
constexpr double kWmMass = constants::mass_rb87;
constexpr double kWmWavelength = 780e-9;            // [m]
constexpr double kWmScatterRate = 3.0;              // [1/s]
constexpr double kOccupancyLimit = 0.05;
constexpr double kRecoilMargin = 0.1;               // recoil must stay below 10% of q_c
constexpr double kMinStrokeTime = 1e-3;             // [s]
constexpr double kStepGuardFraction = 0.01;

std::string format_detail(const char* fmt, double a, double b) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), fmt, a, b);
    return buf;
}

}  // namespace

Spacings spacing_at(const RampSchedule& ramp, std::int64_t cycle) {
    if (cycle < 1)
        throw std::domain_error("spacing_at: cycle index starts at 1");
    if (cycle >= ramp.ramp_cycles)
        return {ramp.e_c_final, ramp.e_h_final};
    const double f = static_cast<double>(cycle - 1) / static_cast<double>(ramp.ramp_cycles - 1);
    return {ramp.e_c_initial + f * (ramp.e_c_final - ramp.e_c_initial),
            ramp.e_h_initial + f * (ramp.e_h_final - ramp.e_h_initial)};
}

void validate(const SimConfig& cfg) {
    validate(cfg.cold);
    validate(cfg.hot);
    validate(cfg.wm);
    if (cfg.cold.label != BathLabel::cold || cfg.hot.label != BathLabel::hot)
        throw std::domain_error("sim config: bath labels do not match their roles");
    if (!(cfg.ramp.e_c_initial > 0.0) || !(cfg.ramp.e_c_final > 0.0) ||
        !(cfg.ramp.e_h_initial > 0.0) || !(cfg.ramp.e_h_final > 0.0))
        throw std::domain_error("sim config: ramp spacings must be positive");
    if (cfg.ramp.ramp_cycles < 1)
        throw std::domain_error("sim config: ramp length must be >= 1 cycle");
    // Both ramps are linear, so e_c <= e_h holds for every cycle iff it
    // holds at both endpoints.
    if (cfg.ramp.e_c_initial > cfg.ramp.e_h_initial ||
        cfg.ramp.e_c_final > cfg.ramp.e_h_final)
        throw std::domain_error("sim config: ramp requires e_c <= e_h at both endpoints");
    if (cfg.max_cycles < 1)
        throw std::domain_error("sim config: max_cycles must be >= 1");
    if (!(cfg.stop_mode_spacing_factor > 0.0))
        throw std::domain_error("sim config: stop factor must be positive");
    if (!(cfg.cycle_time > 0.0))
        throw std::domain_error("sim config: cycle time must be positive");
    if (!(cfg.max_intensity_ratio > 0.0))
        throw std::domain_error("sim config: max intensity ratio must be positive");
}

std::string to_string(TerminationReason reason) {
    switch (reason) {
        case TerminationReason::max_cycles: return "max-cycles";
        case TerminationReason::mode_spacing: return "mode-spacing stop";
        case TerminationReason::no_cooling: return "no-cooling halt";
    }
    return "unknown";
}

Trajectory run_simulation(const SimConfig& cfg) {
    validate(cfg);

    BathState cold = cfg.cold;
    BathState hot = cfg.hot;
    const double t_crit_cold = critical_temperature(cold);
    const double t_crit_hot = critical_temperature(hot);
    const double stop_temp = cfg.stop_mode_spacing_factor * constants::hbar *
                             cfg.cold.omega_t / constants::k_boltzmann;

    Trajectory out;
    out.records.reserve(static_cast<std::size_t>(std::min<std::int64_t>(cfg.max_cycles, 1 << 20)));
    for (std::int64_t n = 1; n <= cfg.max_cycles; ++n) {
        const Spacings sp = spacing_at(cfg.ramp, n);
        const WorkingMediumConfig wm{cfg.wm.n_wm, sp.e_c, sp.e_h};
        const bool cooling = cooling_condition(wm, cold.temp, hot.temp);
        const CycleEnergetics en = cycle_energetics(wm, cold.temp, hot.temp);

        const BathState cold_next = apply_heat(cold, en.q_c, cfg.wm.n_wm);
        const BathState hot_next = apply_heat(hot, en.q_h, cfg.wm.n_wm);
        if (std::abs(cold_next.temp - cold.temp) > kStepGuardFraction * cold.temp ||
            std::abs(hot_next.temp - hot.temp) > kStepGuardFraction * hot.temp) {
            ++out.step_guard_violations;
            if (out.first_step_guard_cycle == 0) out.first_step_guard_cycle = n;
        }
        cold = cold_next;
        hot = hot_next;

        out.records.push_back({n, cold.temp, hot.temp, sp.e_c, sp.e_h, en.n_bar_c, en.n_bar_h,
                               en.q_c, en.w_in, en.q_h, en.w_out, t_crit_cold, t_crit_hot,
                               cold.temp < t_crit_cold, hot.temp < t_crit_hot, cooling});

        if (cold.temp <= stop_temp) {
            out.reason = TerminationReason::mode_spacing;
            return out;
        }
        if (!cooling && cfg.halt_on_no_cooling) {
            out.reason = TerminationReason::no_cooling;
            return out;
        }
    }
    out.reason = TerminationReason::max_cycles;
    return out;
}

bool FeasibilityReport::all_applicable_pass() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const FeasibilityCheck& c) { return !c.applicable || c.pass; });
}

FeasibilityReport feasibility_report(const SimConfig& cfg,
                                     const std::optional<SweepContext>& transport,
                                     const Trajectory* precomputed) {
    validate(cfg);
    Trajectory local;
    if (precomputed == nullptr) {
        local = run_simulation(cfg);
        precomputed = &local;
    }
    const Trajectory& traj = *precomputed;
    if (traj.records.empty())
        throw std::runtime_error("feasibility_report: trajectory has no records");

    FeasibilityReport rep;

    // (a) spacing ratio vs laser tunability, E ~ sqrt(I)
    rep.spacing_ratio_limit = std::sqrt(cfg.max_intensity_ratio);
    for (const CycleRecord& r : traj.records) {
        const double ratio = r.e_h / r.e_c;
        rep.max_spacing_ratio = std::max(rep.max_spacing_ratio, ratio);
        if (ratio > rep.spacing_ratio_limit && rep.first_ratio_violation_cycle == 0)
            rep.first_ratio_violation_cycle = r.cycle;
    }
    {
        const bool ok = rep.first_ratio_violation_cycle == 0;
        std::string detail = format_detail("max e_h/e_c = %.6g, limit sqrt(I_h/I_c) = %.6g",
                                           rep.max_spacing_ratio, rep.spacing_ratio_limit);
        if (!ok)
            detail += " (first exceeded at cycle " +
                      std::to_string(rep.first_ratio_violation_cycle) + ")";
        rep.checks.push_back({"spacing-ratio", true, ok, detail});
    }

    // (b) two-level treatment needs few-percent occupancy
    for (const CycleRecord& r : traj.records) {
        const double occ = std::max(r.n_bar_c, r.n_bar_h);
        if (occ > rep.max_occupation) {
            rep.max_occupation = occ;
            rep.max_occupation_cycle = r.cycle;
        }
    }
    rep.checks.push_back({"occupancy", true, rep.max_occupation <= kOccupancyLimit,
                          format_detail("max upper-level occupation = %.4g, limit %.2g",
                                        rep.max_occupation, kOccupancyLimit)});

    // (c) transport speed vs adiabatic bound, at the initial temperatures
    if (transport.has_value()) {
        SweepContext ctx = *transport;
        ctx.mass = cfg.cold.mass;
        ctx.omega_t = cfg.cold.omega_t;
        ctx.temp = cfg.cold.temp;
        rep.u_a_cold = adiabatic_velocity(ctx);
        ctx.mass = cfg.hot.mass;
        ctx.omega_t = cfg.hot.omega_t;
        ctx.temp = cfg.hot.temp;
        rep.u_a_hot = adiabatic_velocity(ctx);
        rep.transport_speed = transport->speed;
        const double bound = 0.5 * std::min(rep.u_a_cold, rep.u_a_hot);
        rep.checks.push_back(
            {"transport-speed", true, rep.transport_speed <= bound,
             format_detail("u = %.4g um/s, bound u_a/2 = %.4g um/s",
                           rep.transport_speed / 1e-6, bound / 1e-6)});
    } else {
        rep.checks.push_back({"transport-speed", false, false, "not configured"});
    }

    // (d) recoil heating per stroke vs the heat drawn per cycle
    rep.stroke_time = cfg.cycle_time / 4.0;
    rep.recoil_per_stroke = recoil_heating(kWmMass, kWmWavelength, kWmScatterRate,
                                           rep.stroke_time);
    rep.first_cycle_q_c = traj.records.front().q_c;
    rep.checks.push_back(
        {"recoil-heat", true,
         rep.first_cycle_q_c > 0.0 &&
             rep.recoil_per_stroke < kRecoilMargin * rep.first_cycle_q_c,
         format_detail("Q_sp/k_B = %.4g nK per stroke vs first-cycle q_c/k_B = %.4g nK",
                       rep.recoil_per_stroke / constants::k_boltzmann / 1e-9,
                       rep.first_cycle_q_c / constants::k_boltzmann / 1e-9)});

    // (e) adiabatic strokes need at least ~1 ms
    rep.checks.push_back({"stroke-time", true, rep.stroke_time >= kMinStrokeTime,
                          format_detail("stroke = %.4g ms, floor %.4g ms",
                                        rep.stroke_time / 1e-3, kMinStrokeTime / 1e-3)});

    return rep;
}

}  // namespace ottosim
