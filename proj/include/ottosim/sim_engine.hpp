#pragma once

#include "ottosim/bath.hpp"
#include "ottosim/nonadiabatic.hpp"
#include "ottosim/otto_cycle.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ottosim {

enum class RampShape { linear };

// Per-cycle schedule of the two level spacings. Linear interpolation between
// the endpoints over cycles 1..ramp_cycles, frozen at the final values
// afterwards.
struct RampSchedule {
    double e_c_initial;  // [J]
    double e_c_final;
    double e_h_initial;
    double e_h_final;
    std::int64_t ramp_cycles;
    RampShape shape = RampShape::linear;
};

struct Spacings {
    double e_c;
    double e_h;
};

Spacings spacing_at(const RampSchedule& ramp, std::int64_t cycle);

struct SimConfig {
    BathState cold;
    BathState hot;
    WorkingMediumConfig wm;  // e_c/e_h are the initial spacings
    RampSchedule ramp;
    std::int64_t max_cycles = 1500;
    double stop_mode_spacing_factor = 7.0;  // stop once k_B T_c <= factor * hbar * omega_cold
    double cycle_time = 10e-3;              // [s], used for rate reporting only
    double max_intensity_ratio = 100.0;     // laser intensity tunability I_h/I_c
    bool halt_on_no_cooling = false;
};

void validate(const SimConfig& cfg);

// State after one completed cycle: bath temperatures already updated, the
// energetics and occupations of the cycle that produced them, and the
// constant per-bath critical temperatures for convenience.
struct CycleRecord {
    std::int64_t cycle;
    double t_cold;   // [K], post-update
    double t_hot;    // [K], post-update
    double e_c;      // [J]
    double e_h;      // [J]
    double n_bar_c;
    double n_bar_h;
    double q_c;      // [J] per WM atom
    double w_in;
    double q_h;
    double w_out;
    double t_crit_cold;  // [K]
    double t_crit_hot;   // [K]
    bool condensed_cold;
    bool condensed_hot;
    bool cooling_active;
};

enum class TerminationReason { max_cycles, mode_spacing, no_cooling };

std::string to_string(TerminationReason reason);

struct Trajectory {
    std::vector<CycleRecord> records;
    TerminationReason reason = TerminationReason::max_cycles;
    // Cycles where |dT|/T exceeded 1% on either bath (the explicit update
    // assumes small steps; violations are reported, not fatal).
    std::int64_t step_guard_violations = 0;
    std::int64_t first_step_guard_cycle = 0;  // 0 when none
};

// Cycle-by-cycle refrigeration loop: spacings from the ramp, closed-form
// cycle energetics, explicit bath temperature updates. Heat moves between
// the baths only through the working medium. Deterministic: identical
// configs produce identical trajectories.
Trajectory run_simulation(const SimConfig& cfg);

// One feasibility check row: name, whether the inputs needed for it were
// configured, the verdict and a preformatted detail line.
struct FeasibilityCheck {
    std::string name;
    bool applicable;
    bool pass;
    std::string detail;
};

struct FeasibilityReport {
    // (a) spacing-ratio tunability
    double max_spacing_ratio = 0.0;
    double spacing_ratio_limit = 0.0;  // sqrt(max_intensity_ratio)
    std::int64_t first_ratio_violation_cycle = 0;  // 0 when none
    // (b) occupancy guard
    double max_occupation = 0.0;
    std::int64_t max_occupation_cycle = 0;
    // (c) transport adiabaticity (needs transport context)
    double u_a_cold = 0.0;
    double u_a_hot = 0.0;
    double transport_speed = 0.0;
    // (d) recoil heating vs first-cycle cold heat
    double recoil_per_stroke = 0.0;  // [J]
    double first_cycle_q_c = 0.0;    // [J]
    // (e) stroke duration
    double stroke_time = 0.0;  // [s], cycle_time / 4
    std::vector<FeasibilityCheck> checks;
    bool all_applicable_pass() const;
};

// Audits a configuration against the experimental constraints discussed in
// the source analysis: (a) spacing ratio within the laser-intensity
// tunability, (b) upper-level occupancy below 5%, (c) transport speed below
// half the adiabatic bound, (d) per-stroke recoil heat below 10% of the
// first-cycle cold heat, (e) strokes at least 1 ms. Purely diagnostic.
// Reuses `precomputed` when the caller already ran the simulation.
FeasibilityReport feasibility_report(const SimConfig& cfg,
                                     const std::optional<SweepContext>& transport,
                                     const Trajectory* precomputed = nullptr);

}  // namespace ottosim
