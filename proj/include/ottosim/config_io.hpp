#pragma once

#include "ottosim/sim_engine.hpp"

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ottosim {

// Validation failure with the offending key path in the message.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Transport section of the config document, SI units.
struct TransportConfig {
    double speed;         // [m/s]
    double v0;            // [J m]
    double g_ib;          // [J m^3]
    double bath_density;  // [1/m^3]
};

struct ParsedConfig {
    SimConfig sim;
    std::optional<TransportConfig> transport;
    // Normalized source document (defaults materialized). Re-parsing it
    // reproduces the SI values above bit-exactly.
    std::string document;
};

// Sweep context for transporting the WM through the given bath.
SweepContext sweep_context_for(const BathState& bath, const TransportConfig& transport);

// Parses and validates a config document (JSON text). The schema is strict:
// unknown keys are rejected, units are encoded in the key names
// (temp_uK, trap_freq_hz, e_c_uK, cycle_time_ms, speed_um_s, ...).
ParsedConfig parse_config(const std::string& json_text);
ParsedConfig load_config_file(const std::string& path);

// Canonical document for a parsed config; parse_config(serialize_config(c))
// reproduces c bit-exactly.
std::string serialize_config(const ParsedConfig& cfg);

// Bundled parameter sets. "as-text" wires the cold bath to the 80 Hz trap
// and the hot bath to 150 Hz as the narrative states; "paper-repro" swaps
// the two frequencies, which is the assignment that reproduces the quoted
// critical temperatures (395 nK / 617 nK). Which one was intended upstream
// is unresolved, so both ship.
std::vector<std::string> preset_names();
std::string preset_document(const std::string& name);
ParsedConfig preset_config(const std::string& name);

// Delimited per-cycle table with the fixed header
// cycle,T_c_nK,T_h_nK,E_c_uK,E_h_uK,n_bar_c,n_bar_h,q_c_uKkB,w_in_uKkB,
// q_h_uKkB,w_out_uKkB,T_crit_c_nK,T_crit_h_nK,condensed_c,condensed_h,
// cooling_active. Numbers carry 9 significant digits, flags are 0/1.
extern const char* const kTrajectoryHeader;
void write_trajectory_table(std::ostream& os, const Trajectory& traj);
void write_trajectory_file(const std::string& path, const Trajectory& traj);

// Reads a trajectory table back (units converted to SI). Termination reason
// and guard metadata are not part of the table and stay defaulted.
std::vector<CycleRecord> parse_trajectory_table(std::istream& is);

}  // namespace ottosim
