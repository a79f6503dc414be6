#include "ottosim/config_io.hpp"
#include "ottosim/constants.hpp"
#include "ottosim/nonadiabatic.hpp"
#include "ottosim/sim_engine.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <future>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace ottosim;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitCheckFailed = 3;

struct ConfigSource {
    std::string path;
    std::string preset;
};

ParsedConfig load(const ConfigSource& src) {
    if (!src.path.empty() && !src.preset.empty())
        throw ConfigError("config: give either --config or --preset, not both");
    if (!src.path.empty()) return load_config_file(src.path);
    if (!src.preset.empty()) return preset_config(src.preset);
    throw ConfigError("config: one of --config or --preset is required");
}

void add_config_options(CLI::App* cmd, ConfigSource& src) {
    cmd->add_option("--config", src.path, "path to a config document (JSON)");
    cmd->add_option("--preset", src.preset, "bundled parameter set: as-text | paper-repro");
}

std::optional<SweepContext> transport_context(const ParsedConfig& cfg) {
    if (!cfg.transport.has_value()) return std::nullopt;
    return sweep_context_for(cfg.sim.cold, *cfg.transport);
}

double nk(double kelvin) { return kelvin / 1e-9; }

std::int64_t crossing_cycle(const Trajectory& traj) {
    for (const CycleRecord& r : traj.records)
        if (r.condensed_cold) return r.cycle;
    return 0;
}

void print_summary(const ParsedConfig& cfg, const Trajectory& traj) {
    const CycleRecord& last = traj.records.back();
    const std::int64_t n = last.cycle;
    const double rate_nk_per_ms =
        (cfg.sim.cold.temp - last.t_cold) / 1e-9 / (n * cfg.sim.cycle_time / 1e-3);
    const WorkingMediumConfig final_wm{cfg.sim.wm.n_wm, last.e_c, last.e_h};

    std::printf("cycles run:             %lld\n", static_cast<long long>(n));
    std::printf("termination:            %s\n", to_string(traj.reason).c_str());
    std::printf("final T_c:              %.6g nK (T_crit^c = %.6g nK)\n", nk(last.t_cold),
                nk(last.t_crit_cold));
    std::printf("final T_h:              %.6g nK (T_crit^h = %.6g nK)\n", nk(last.t_hot),
                nk(last.t_crit_hot));
    const std::int64_t cross = crossing_cycle(traj);
    if (cross > 0)
        std::printf("threshold crossing:     cycle %lld\n", static_cast<long long>(cross));
    else
        std::printf("threshold crossing:     not crossed\n");
    std::printf("attainable T_c^min:     %.6g nK (from final spacings and T_h)\n",
                nk(min_temperature(final_wm, last.t_hot)));
    std::printf("mean cooling rate:      %.4g nK/ms (at %.4g ms per cycle)\n", rate_nk_per_ms,
                cfg.sim.cycle_time / 1e-3);
    if (traj.step_guard_violations > 0)
        std::printf("step-size guard:        |dT|/T > 1%% in %lld cycle(s), first at cycle %lld\n",
                    static_cast<long long>(traj.step_guard_violations),
                    static_cast<long long>(traj.first_step_guard_cycle));
    else
        std::printf("step-size guard:        ok (|dT|/T <= 1%% everywhere)\n");
}

int cmd_simulate(const ConfigSource& src, const std::string& out_path) {
    const ParsedConfig cfg = load(src);
    const Trajectory traj = run_simulation(cfg.sim);
    write_trajectory_file(out_path, traj);
    std::printf("trajectory written to:  %s (%zu records)\n", out_path.c_str(),
                traj.records.size());
    print_summary(cfg, traj);
    return kExitOk;
}

int cmd_oracle_compare(std::vector<double> grid_y, std::vector<double> grid_zeta) {
    if (grid_y.empty()) grid_y = {0.05, 0.1, 0.5, 1.0};
    if (grid_zeta.empty()) grid_zeta = {0.5, 1.0, 2.0, 5.0};

    std::printf("%-10s %-10s %-24s %-24s %-12s %s\n", "y", "zeta", "sigma_bruteforce",
                "sigma_closed", "rel_dev", "status");
    double max_dev = 0.0;
    bool any_precondition = false;
    bool any_nonpositive = false;
    for (double y : grid_y) {
        for (double zeta : grid_zeta) {
            const NonadiabaticInput in{y, zeta, 1.0};
            const double closed = transferred_energy_closed(in);
            try {
                const double brute = transferred_energy_bruteforce(in);
                const double dev = std::abs(brute - closed) / closed;
                max_dev = std::max(max_dev, dev);
                if (!(brute > 0.0) || !(closed > 0.0)) any_nonpositive = true;
                std::printf("%-10.4g %-10.4g %-24.16g %-24.16g %-12.3e %s\n", y, zeta, brute,
                            closed, dev, dev <= 1e-8 ? "ok" : "DEVIATES");
            } catch (const std::domain_error& e) {
                any_precondition = true;
                std::printf("%-10.4g %-10.4g %-24s %-24s %-12s %s\n", y, zeta, "-", "-", "-",
                            "precondition violated");
            }
        }
    }
    std::printf("max relative deviation: %.3e (tolerance 1e-8)\n", max_dev);
    std::fflush(stdout);
    if (any_precondition) {
        std::fprintf(stderr, "oracle-compare: some grid points violate the brute-force "
                             "preconditions (y >= 0.01, zeta >= 0.05)\n");
        return kExitValidation;
    }
    if (max_dev > 1e-8 || any_nonpositive) return kExitCheckFailed;
    return kExitOk;
}

int cmd_budget(const ConfigSource& src) {
    const ParsedConfig cfg = load(src);
    const Trajectory traj = run_simulation(cfg.sim);
    const std::optional<SweepContext> transport = transport_context(cfg);
    const FeasibilityReport rep = feasibility_report(cfg.sim, transport, &traj);

    const double er = recoil_energy(constants::mass_rb87, 780e-9);
    std::printf("recoil energy:        E_R/k_B = %.6g nK (Rb-87 at 780 nm)\n",
                nk(er / constants::k_boltzmann));
    std::printf("recoil heat/stroke:   Q_sp/k_B = %.4g nK (gamma = 3 Hz, stroke = %.4g ms)\n",
                nk(rep.recoil_per_stroke / constants::k_boltzmann), rep.stroke_time / 1e-3);

    SweepContext ua_ctx{cfg.sim.cold.mass, cfg.sim.cold.omega_t, cfg.sim.cold.temp, 1.0, 1.0};
    std::printf("adiabatic velocity:   u_a(cold bath) = %.4g um/s\n",
                adiabatic_velocity(ua_ctx) / 1e-6);
    ua_ctx = {cfg.sim.hot.mass, cfg.sim.hot.omega_t, cfg.sim.hot.temp, 1.0, 1.0};
    std::printf("                      u_a(hot bath)  = %.4g um/s\n",
                adiabatic_velocity(ua_ctx) / 1e-6);

    if (cfg.transport.has_value()) {
        std::printf("transport speed:      u = %.4g um/s\n", cfg.transport->speed / 1e-6);
        const double quench =
            quench_energy(cfg.transport->g_ib, cfg.sim.wm.n_wm, cfg.transport->bath_density);
        const double extracted = cfg.sim.wm.n_wm * traj.records.front().q_c;
        std::printf("quench energy:        dE = %.6g J (per-cycle extracted heat "
                    "N_WM q_c = %.6g J)\n", quench, extracted);
    } else {
        std::fprintf(stderr, "budget: transport section not configured; transport rows "
                             "skipped\n");
        std::printf("transport speed:      not configured\n");
        std::printf("quench energy:        not configured\n");
    }

    std::printf("feasibility report:\n");
    for (const FeasibilityCheck& c : rep.checks) {
        const char* verdict = !c.applicable ? " -- " : (c.pass ? " ok " : "FAIL");
        std::printf("  [%s] %-16s %s\n", verdict, c.name.c_str(), c.detail.c_str());
    }
    return kExitOk;
}

int cmd_sweep(const ConfigSource& src, const std::string& param,
              const std::vector<double>& values, const std::string& out_dir) {
    if (values.empty()) throw ConfigError("sweep: --values must not be empty");
    const ParsedConfig base = load(src);
    nlohmann::json base_doc = nlohmann::json::parse(serialize_config(base));

    // Resolve the dotted path once so typos fail before any run starts.
    std::vector<std::string> keys;
    {
        std::string k;
        std::stringstream ss(param);
        while (std::getline(ss, k, '.')) keys.push_back(k);
    }
    if (keys.empty()) throw ConfigError("sweep: --param must name a config key");

    std::vector<std::string> docs;
    for (double v : values) {
        nlohmann::json doc = base_doc;
        nlohmann::json* node = &doc;
        for (std::size_t i = 0; i + 1 < keys.size(); ++i) {
            if (!node->is_object() || node->find(keys[i]) == node->end())
                throw ConfigError("sweep: config has no key '" + param + "'");
            node = &(*node)[keys[i]];
        }
        if (!node->is_object() || node->find(keys.back()) == node->end() ||
            !(*node)[keys.back()].is_number())
            throw ConfigError("sweep: config has no numeric key '" + param + "'");
        (*node)[keys.back()] = v;
        docs.push_back(doc.dump());
    }

    // Validate all points up front, then fan the runs out; results are
    // gathered and reported in parameter order regardless of finish order.
    std::vector<ParsedConfig> cfgs;
    for (const std::string& text : docs) cfgs.push_back(parse_config(text));

    std::vector<std::future<Trajectory>> futures;
    futures.reserve(cfgs.size());
    for (const ParsedConfig& cfg : cfgs)
        futures.push_back(std::async(std::launch::async,
                                     [&cfg]() { return run_simulation(cfg.sim); }));

    std::filesystem::create_directories(out_dir);
    std::printf("%-6s %-14s %-8s %-14s %-10s %s\n", "idx", param.c_str(), "cycles",
                "final_T_c_nK", "crossing", "termination");
    for (std::size_t i = 0; i < futures.size(); ++i) {
        const Trajectory traj = futures[i].get();
        char name[64];
        std::snprintf(name, sizeof(name), "sweep_%03zu.csv", i);
        const std::string path = (std::filesystem::path(out_dir) / name).string();
        write_trajectory_file(path, traj);
        const CycleRecord& last = traj.records.back();
        const std::int64_t cross = crossing_cycle(traj);
        std::printf("%-6zu %-14.6g %-8lld %-14.6g %-10lld %s\n", i, values[i],
                    static_cast<long long>(last.cycle), nk(last.t_cold),
                    static_cast<long long>(cross), to_string(traj.reason).c_str());
    }
    std::printf("trajectories written to %s/\n", out_dir.c_str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantized Otto refrigeration cycle simulator for a two-species "
                 "cold-atom mixture"};
    app.require_subcommand(1);

    ConfigSource sim_src;
    std::string sim_out = "trajectory.csv";
    CLI::App* simulate = app.add_subcommand(
        "simulate", "run the cycle-by-cycle refrigeration loop and write the trajectory");
    add_config_options(simulate, sim_src);
    simulate->add_option("--out", sim_out, "trajectory output path (CSV)");

    std::vector<double> grid_y, grid_zeta;
    CLI::App* oracle = app.add_subcommand(
        "oracle-compare",
        "evaluate the transferred-energy sum via the Laguerre double sum and the "
        "Bessel closed form and compare");
    oracle->add_option("--grid-y", grid_y, "y grid points (default 0.05,0.1,0.5,1)")
        ->delimiter(',');
    oracle->add_option("--grid-zeta", grid_zeta, "zeta grid points (default 0.5,1,2,5)")
        ->delimiter(',');

    ConfigSource budget_src;
    CLI::App* budget = app.add_subcommand(
        "budget", "print recoil, adiabatic-velocity and quench budgets plus the "
                  "feasibility report");
    add_config_options(budget, budget_src);

    ConfigSource sweep_src;
    std::string sweep_param;
    std::vector<double> sweep_values;
    std::string sweep_out = "sweep_out";
    CLI::App* sweep = app.add_subcommand(
        "sweep", "run one simulation per value of a config key (concurrent, "
                 "deterministically merged)");
    add_config_options(sweep, sweep_src);
    sweep->add_option("--param", sweep_param, "dotted config key, e.g. wm.e_h_uK")
        ->required();
    sweep->add_option("--values", sweep_values, "comma-separated values")
        ->required()
        ->delimiter(',');
    sweep->add_option("--out", sweep_out, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) return cmd_simulate(sim_src, sim_out);
        if (oracle->parsed()) return cmd_oracle_compare(grid_y, grid_zeta);
        if (budget->parsed()) return cmd_budget(budget_src);
        if (sweep->parsed()) return cmd_sweep(sweep_src, sweep_param, sweep_values, sweep_out);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return kExitValidation;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "validation error: %s\n", e.what());
        return kExitValidation;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitRuntime;
    }
    return kExitValidation;
}
