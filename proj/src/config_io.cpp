#include "ottosim/config_io.hpp"

#include "ottosim/constants.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

namespace ottosim {

using nlohmann::json;

namespace {

constexpr double kMicro = 1e-6;
constexpr double kNano = 1e-9;
constexpr double kMilli = 1e-3;

[[noreturn]] void fail(const std::string& msg) { throw ConfigError("config: " + msg); }

const json& member(const json& j, const std::string& path, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) fail("missing required key '" + path + key + "'");
    return *it;
}

void check_object(const json& j, const std::string& name) {
    if (!j.is_object()) fail("section '" + name + "' must be an object");
}

void check_known_keys(const json& j, const std::string& path,
                      std::initializer_list<const char*> known) {
    for (const auto& item : j.items()) {
        bool ok = false;
        for (const char* k : known)
            if (item.key() == k) { ok = true; break; }
        if (!ok) fail("unknown key '" + path + item.key() + "'");
    }
}

double as_number(const json& j, const std::string& full_key) {
    if (!j.is_number()) fail("key '" + full_key + "' must be a number");
    return j.get<double>();
}

double require_number(const json& j, const std::string& path, const char* key) {
    return as_number(member(j, path, key), path + key);
}

double require_positive(const json& j, const std::string& path, const char* key) {
    const double v = require_number(j, path, key);
    if (!(v > 0.0)) fail("key '" + path + key + "' must be positive");
    return v;
}

double optional_positive(const json& j, const std::string& path, const char* key,
                         double fallback) {
    if (j.find(key) == j.end()) return fallback;
    return require_positive(j, path, key);
}

BathState parse_bath(const json& j, const std::string& path, BathLabel label) {
    check_object(j, path);
    check_known_keys(j, path + ".", {"atoms", "trap_freq_hz", "temp_uK", "species", "mass_kg"});
    const std::string prefix = path + ".";
    BathState bath;
    bath.label = label;
    bath.n_at = require_positive(j, prefix, "atoms");
    if (bath.n_at < 1.0) fail("key '" + prefix + "atoms' must be >= 1");
    bath.omega_t = 2.0 * std::numbers::pi * require_positive(j, prefix, "trap_freq_hz");
    bath.temp = kMicro * require_positive(j, prefix, "temp_uK");

    const bool has_species = j.find("species") != j.end();
    const bool has_mass = j.find("mass_kg") != j.end();
    if (has_species && has_mass)
        fail("'" + prefix + "species' and '" + prefix + "mass_kg' are mutually exclusive");
    if (has_species) {
        const json& sp = j.at("species");
        if (!sp.is_string()) fail("key '" + prefix + "species' must be a string");
        const std::string name = sp.get<std::string>();
        if (name == "Rb87") bath.mass = constants::mass_rb87;
        else if (name == "Cs133") bath.mass = constants::mass_cs133;
        else fail("key '" + prefix + "species' must be Rb87 or Cs133 (got '" + name + "')");
    } else if (has_mass) {
        bath.mass = require_positive(j, prefix, "mass_kg");
    } else {
        fail("bath '" + path + "' needs either 'species' or 'mass_kg'");
    }
    return bath;
}

json bath_to_json(const BathState& bath) {
    json j;
    j["atoms"] = bath.n_at;
    j["trap_freq_hz"] = bath.omega_t / (2.0 * std::numbers::pi);
    j["temp_uK"] = bath.temp / kMicro;
    if (bath.mass == constants::mass_rb87) j["species"] = "Rb87";
    else if (bath.mass == constants::mass_cs133) j["species"] = "Cs133";
    else j["mass_kg"] = bath.mass;
    return j;
}

ParsedConfig parse_document(const json& doc) {
    check_object(doc, "<root>");
    check_known_keys(doc, "", {"baths", "wm", "ramp", "run", "transport"});

    const json& baths = member(doc, "", "baths");
    check_object(baths, "baths");
    check_known_keys(baths, "baths.", {"cold", "hot"});

    ParsedConfig out;
    out.sim.cold = parse_bath(member(baths, "baths.", "cold"), "baths.cold", BathLabel::cold);
    out.sim.hot = parse_bath(member(baths, "baths.", "hot"), "baths.hot", BathLabel::hot);

    const json& wm = member(doc, "", "wm");
    check_object(wm, "wm");
    check_known_keys(wm, "wm.", {"atoms", "e_c_uK", "e_h_uK"});
    out.sim.wm.n_wm = require_positive(wm, "wm.", "atoms");
    out.sim.wm.e_c = constants::k_boltzmann * kMicro * require_positive(wm, "wm.", "e_c_uK");
    out.sim.wm.e_h = constants::k_boltzmann * kMicro * require_positive(wm, "wm.", "e_h_uK");

    const json& ramp = member(doc, "", "ramp");
    check_object(ramp, "ramp");
    check_known_keys(ramp, "ramp.", {"e_c_final_uK", "e_h_final_uK", "cycles", "shape"});
    out.sim.ramp.e_c_initial = out.sim.wm.e_c;
    out.sim.ramp.e_h_initial = out.sim.wm.e_h;
    out.sim.ramp.e_c_final =
        constants::k_boltzmann * kMicro * require_positive(ramp, "ramp.", "e_c_final_uK");
    out.sim.ramp.e_h_final =
        constants::k_boltzmann * kMicro * require_positive(ramp, "ramp.", "e_h_final_uK");
    const double cycles = require_positive(ramp, "ramp.", "cycles");
    if (cycles != std::floor(cycles)) fail("key 'ramp.cycles' must be an integer");
    out.sim.ramp.ramp_cycles = static_cast<std::int64_t>(cycles);
    if (ramp.find("shape") != ramp.end()) {
        const json& shape = ramp.at("shape");
        if (!shape.is_string() || shape.get<std::string>() != "linear")
            fail("key 'ramp.shape' must be \"linear\"");
    }
    out.sim.ramp.shape = RampShape::linear;

    if (doc.find("run") != doc.end()) {
        const json& run = doc.at("run");
        check_object(run, "run");
        check_known_keys(run, "run.", {"max_cycles", "stop_factor", "cycle_time_ms",
                                       "max_intensity_ratio", "halt_on_no_cooling"});
        const double mc = optional_positive(run, "run.", "max_cycles", 1500.0);
        if (mc != std::floor(mc)) fail("key 'run.max_cycles' must be an integer");
        out.sim.max_cycles = static_cast<std::int64_t>(mc);
        out.sim.stop_mode_spacing_factor = optional_positive(run, "run.", "stop_factor", 7.0);
        out.sim.cycle_time = kMilli * optional_positive(run, "run.", "cycle_time_ms", 10.0);
        out.sim.max_intensity_ratio =
            optional_positive(run, "run.", "max_intensity_ratio", 100.0);
        if (run.find("halt_on_no_cooling") != run.end()) {
            const json& halt = run.at("halt_on_no_cooling");
            if (!halt.is_boolean()) fail("key 'run.halt_on_no_cooling' must be a boolean");
            out.sim.halt_on_no_cooling = halt.get<bool>();
        }
    }

    if (doc.find("transport") != doc.end()) {
        const json& tr = doc.at("transport");
        check_object(tr, "transport");
        check_known_keys(tr, "transport.",
                         {"speed_um_s", "v0_Jm", "g_ib_Jm3", "bath_density_m3"});
        TransportConfig t;
        t.speed = kMicro * require_positive(tr, "transport.", "speed_um_s");
        t.v0 = require_positive(tr, "transport.", "v0_Jm");
        t.g_ib = require_positive(tr, "transport.", "g_ib_Jm3");
        t.bath_density = require_positive(tr, "transport.", "bath_density_m3");
        out.transport = t;
    }

    validate(out.sim);

    // Normalized document: source values untouched, defaults materialized.
    json normalized = doc;
    normalized["ramp"]["shape"] = "linear";
    json& run = normalized["run"];
    if (!run.is_object()) run = json::object();
    if (run.find("max_cycles") == run.end())
        run["max_cycles"] = static_cast<double>(out.sim.max_cycles);
    if (run.find("stop_factor") == run.end())
        run["stop_factor"] = out.sim.stop_mode_spacing_factor;
    if (run.find("cycle_time_ms") == run.end())
        run["cycle_time_ms"] = out.sim.cycle_time / kMilli;
    if (run.find("max_intensity_ratio") == run.end())
        run["max_intensity_ratio"] = out.sim.max_intensity_ratio;
    if (run.find("halt_on_no_cooling") == run.end())
        run["halt_on_no_cooling"] = out.sim.halt_on_no_cooling;
    out.document = normalized.dump(2) + "\n";
    return out;
}

json document_for(const ParsedConfig& cfg) {
    json doc;
    doc["baths"]["cold"] = bath_to_json(cfg.sim.cold);
    doc["baths"]["hot"] = bath_to_json(cfg.sim.hot);
    doc["wm"]["atoms"] = cfg.sim.wm.n_wm;
    doc["wm"]["e_c_uK"] = cfg.sim.wm.e_c / (constants::k_boltzmann * kMicro);
    doc["wm"]["e_h_uK"] = cfg.sim.wm.e_h / (constants::k_boltzmann * kMicro);
    doc["ramp"]["e_c_final_uK"] = cfg.sim.ramp.e_c_final / (constants::k_boltzmann * kMicro);
    doc["ramp"]["e_h_final_uK"] = cfg.sim.ramp.e_h_final / (constants::k_boltzmann * kMicro);
    doc["ramp"]["cycles"] = static_cast<double>(cfg.sim.ramp.ramp_cycles);
    doc["ramp"]["shape"] = "linear";
    doc["run"]["max_cycles"] = static_cast<double>(cfg.sim.max_cycles);
    doc["run"]["stop_factor"] = cfg.sim.stop_mode_spacing_factor;
    doc["run"]["cycle_time_ms"] = cfg.sim.cycle_time / kMilli;
    doc["run"]["max_intensity_ratio"] = cfg.sim.max_intensity_ratio;
    doc["run"]["halt_on_no_cooling"] = cfg.sim.halt_on_no_cooling;
    if (cfg.transport.has_value()) {
        doc["transport"]["speed_um_s"] = cfg.transport->speed / kMicro;
        doc["transport"]["v0_Jm"] = cfg.transport->v0;
        doc["transport"]["g_ib_Jm3"] = cfg.transport->g_ib;
        doc["transport"]["bath_density_m3"] = cfg.transport->bath_density;
    }
    return doc;
}

}  // namespace

SweepContext sweep_context_for(const BathState& bath, const TransportConfig& transport) {
    return {bath.mass, bath.omega_t, bath.temp, transport.speed, transport.v0};
}

ParsedConfig parse_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: not valid JSON: ") + e.what());
    }
    return parse_document(doc);
}

ParsedConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string serialize_config(const ParsedConfig& cfg) {
    if (!cfg.document.empty()) return cfg.document;
    return document_for(cfg).dump(2) + "\n";
}

std::vector<std::string> preset_names() { return {"as-text", "paper-repro"}; }

std::string preset_document(const std::string& name) {
    // Shared everything except the frequency assignment; see the header note.
    const auto make = [](double cold_hz, double hot_hz) {
        json doc;
        doc["baths"]["cold"] = {{"atoms", 2e5}, {"trap_freq_hz", cold_hz},
                                {"temp_uK", 1.0}, {"species", "Cs133"}};
        doc["baths"]["hot"] = {{"atoms", 5e6}, {"trap_freq_hz", hot_hz},
                               {"temp_uK", 1.0}, {"species", "Cs133"}};
        doc["wm"] = {{"atoms", 1e4}, {"e_c_uK", 2.0}, {"e_h_uK", 4.0}};
        doc["ramp"] = {{"e_c_final_uK", 0.1}, {"e_h_final_uK", 4.0},
                       {"cycles", 1000.0}, {"shape", "linear"}};
        doc["run"] = {{"max_cycles", 1500.0}, {"stop_factor", 7.0}, {"cycle_time_ms", 10.0},
                      {"max_intensity_ratio", 100.0}, {"halt_on_no_cooling", false}};
        return doc.dump(2) + "\n";
    };
    if (name == "as-text") return make(80.0, 150.0);
    if (name == "paper-repro") return make(150.0, 80.0);
    throw ConfigError("config: unknown preset '" + name + "' (available: as-text, paper-repro)");
}

ParsedConfig preset_config(const std::string& name) {
    return parse_config(preset_document(name));
}

const char* const kTrajectoryHeader =
    "cycle,T_c_nK,T_h_nK,E_c_uK,E_h_uK,n_bar_c,n_bar_h,q_c_uKkB,w_in_uKkB,q_h_uKkB,"
    "w_out_uKkB,T_crit_c_nK,T_crit_h_nK,condensed_c,condensed_h,cooling_active";

namespace {

void append_number(std::string& line, double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    line += buf;
}

}  // namespace

void write_trajectory_table(std::ostream& os, const Trajectory& traj) {
    const double kb = constants::k_boltzmann;
    os << kTrajectoryHeader << '\n';
    std::string line;
    for (const CycleRecord& r : traj.records) {
        line.clear();
        line += std::to_string(r.cycle);
        const double columns[] = {
            r.t_cold / kNano,        r.t_hot / kNano,
            r.e_c / (kb * kMicro),   r.e_h / (kb * kMicro),
            r.n_bar_c,               r.n_bar_h,
            r.q_c / (kb * kMicro),   r.w_in / (kb * kMicro),
            r.q_h / (kb * kMicro),   r.w_out / (kb * kMicro),
            r.t_crit_cold / kNano,   r.t_crit_hot / kNano,
        };
        for (double v : columns) {
            line += ',';
            append_number(line, v);
        }
        line += r.condensed_cold ? ",1" : ",0";
        line += r.condensed_hot ? ",1" : ",0";
        line += r.cooling_active ? ",1" : ",0";
        os << line << '\n';
    }
}

void write_trajectory_file(const std::string& path, const Trajectory& traj) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
    write_trajectory_table(out, traj);
    if (!out) throw std::runtime_error("failed writing trajectory to '" + path + "'");
}

std::vector<CycleRecord> parse_trajectory_table(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != kTrajectoryHeader)
        throw std::runtime_error("trajectory table: bad or missing header");
    const double kb = constants::k_boltzmann;
    std::vector<CycleRecord> records;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string f;
        while (std::getline(ss, f, ',')) fields.push_back(f);
        if (fields.size() != 16)
            throw std::runtime_error("trajectory table: expected 16 columns");
        CycleRecord r;
        r.cycle = std::stoll(fields[0]);
        r.t_cold = std::stod(fields[1]) * kNano;
        r.t_hot = std::stod(fields[2]) * kNano;
        r.e_c = std::stod(fields[3]) * kb * kMicro;
        r.e_h = std::stod(fields[4]) * kb * kMicro;
        r.n_bar_c = std::stod(fields[5]);
        r.n_bar_h = std::stod(fields[6]);
        r.q_c = std::stod(fields[7]) * kb * kMicro;
        r.w_in = std::stod(fields[8]) * kb * kMicro;
        r.q_h = std::stod(fields[9]) * kb * kMicro;
        r.w_out = std::stod(fields[10]) * kb * kMicro;
        r.t_crit_cold = std::stod(fields[11]) * kNano;
        r.t_crit_hot = std::stod(fields[12]) * kNano;
        r.condensed_cold = fields[13] == "1";
        r.condensed_hot = fields[14] == "1";
        r.cooling_active = fields[15] == "1";
        records.push_back(r);
    }
    return records;
}

}  // namespace ottosim
