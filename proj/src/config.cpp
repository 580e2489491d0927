#include "crt/config.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

namespace crt {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    cur = trim(cur);
    if (!cur.empty()) out.push_back(cur);
    return out;
}

double to_double(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("");
        return d;
    } catch (const std::exception&) {
        throw ConfigError("config: bad number for '" + key + "': " + v);
    }
}

int to_int(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        long d = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("");
        return static_cast<int>(d);
    } catch (const std::exception&) {
        throw ConfigError("config: bad integer for '" + key + "': " + v);
    }
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ConfigError("config: bad boolean for '" + key + "': " + v);
}

std::string fmtd(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

using SectionMap = std::map<std::string, std::map<std::string, std::string>>;

SectionMap parse_sections(const std::string& text) {
    SectionMap sections;
    std::string section = "experiment";
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t hash = line.find_first_of("#;");
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("config line " + std::to_string(lineno) +
                                  ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty())
                throw ConfigError("config line " + std::to_string(lineno) + ": empty section");
            continue;
        }
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
        sections[section][key] = val;
    }
    return sections;
}

void apply_shell_preset(ExperimentConfig& cfg, const std::string& name) {
    if (name == "iridium")
        cfg.shell = iridium_shell();
    else if (name == "starlink")
        cfg.shell = starlink_shell();
    else
        throw ConfigError("config: unknown constellation preset '" + name + "'");
}

}  // namespace

std::vector<std::string> preset_names() {
    return {"iridium-default", "starlink-default", "handover-400", "scalability"};
}

ExperimentConfig preset_config(const std::string& name) {
    ExperimentConfig cfg;
    cfg.seeds = {1, 2, 3, 4, 5};
    if (name == "iridium-default") {
        cfg.shell = iridium_shell();
        cfg.num_slots = 10;
        cfg.slot_duration_s = 10.0;
        cfg.traffic.n_flows = 400;
        cfg.traffic.deadline = iridium_deadline_policy();
        cfg.algorithms = {Algorithm::CrtFast, Algorithm::Spf, Algorithm::Lag,
                          Algorithm::StrictNonOverlap};
    } else if (name == "starlink-default") {
        cfg.shell = starlink_shell();
        cfg.traffic.n_flows = 1000;
        cfg.traffic.deadline = starlink_deadline_policy();
        cfg.algorithms = {Algorithm::CrtFast};
    } else if (name == "handover-400") {
        cfg.shell = iridium_shell();
        cfg.num_slots = 11;
        cfg.traffic.n_flows = 400;
        cfg.traffic.deadline = iridium_deadline_policy();
        cfg.algorithms = {Algorithm::CrtFast, Algorithm::Spf, Algorithm::Lag};
        PerturbationConfig p;
        p.link_fail_fraction = 0.03;
        p.delay_perturb_fraction = 0.15;
        p.delay_perturb_magnitude = 0.15;
        cfg.perturbation = p;
    } else if (name == "scalability") {
        cfg.shell = starlink_shell();
        cfg.traffic.deadline = starlink_deadline_policy();
        cfg.algorithms = {Algorithm::CrtFast};
        cfg.sweep.param = SweepParameter::NumFlows;
        cfg.sweep.values = {1000, 2000, 4000};
        cfg.seeds = {1};
    } else {
        throw ConfigError("unknown preset '" + name + "'");
    }
    return cfg;
}

ExperimentConfig parse_config_text(const std::string& text) {
    SectionMap sections = parse_sections(text);

    ExperimentConfig cfg;
    cfg.traffic.deadline = iridium_deadline_policy();
    {
        auto ex = sections.find("experiment");
        if (ex != sections.end()) {
            auto p = ex->second.find("preset");
            if (p != ex->second.end()) cfg = preset_config(p->second);
        }
    }
    // Constellation preset and shell fields resolve before everything else so
    // the derived ISL rule sees the final shell.
    {
        auto cs = sections.find("constellation");
        if (cs != sections.end()) {
            auto p = cs->second.find("preset");
            if (p != cs->second.end()) apply_shell_preset(cfg, p->second);
            for (const auto& [key, val] : cs->second) {
                const std::string where = "constellation." + key;
                if (key == "planes")
                    cfg.shell.planes = to_int(where, val);
                else if (key == "sats_per_plane")
                    cfg.shell.sats_per_plane = to_int(where, val);
                else if (key == "altitude_km")
                    cfg.shell.altitude_km = to_double(where, val);
                else if (key == "inclination_deg")
                    cfg.shell.inclination_deg = to_double(where, val);
                else if (key == "phasing_offset")
                    cfg.shell.phasing_offset = to_double(where, val);
                else if (key == "raan_span_deg")
                    cfg.shell.raan_span_deg = to_double(where, val);
                else if (key == "epoch_s")
                    cfg.shell.epoch_s = to_double(where, val);
            }
        }
    }

    IslConfig isl = cfg.effective_isl();
    bool isl_touched = false;

    for (const auto& [section, kv] : sections) {
        for (const auto& [key, val] : kv) {
            const std::string where = section + "." + key;
            if (section == "experiment") {
                if (key == "preset") continue;
                if (key == "output_dir")
                    cfg.output_dir = val;
                else if (key == "write_packets")
                    cfg.write_packets = to_bool(where, val);
                else if (key == "write_svg")
                    cfg.write_svg = to_bool(where, val);
                else
                    throw ConfigError("config: unknown key '" + where + "'");
            } else if (section == "constellation") {
                if (key == "preset")
                    continue;  // applied in the pre-pass
                else if (key == "planes")
                    cfg.shell.planes = to_int(where, val);
                else if (key == "sats_per_plane")
                    cfg.shell.sats_per_plane = to_int(where, val);
                else if (key == "altitude_km")
                    cfg.shell.altitude_km = to_double(where, val);
                else if (key == "inclination_deg")
                    cfg.shell.inclination_deg = to_double(where, val);
                else if (key == "phasing_offset")
                    cfg.shell.phasing_offset = to_double(where, val);
                else if (key == "raan_span_deg")
                    cfg.shell.raan_span_deg = to_double(where, val);
                else if (key == "epoch_s")
                    cfg.shell.epoch_s = to_double(where, val);
                else if (key == "isl_bandwidth_bps") {
                    isl.bandwidth_bps = to_double(where, val);
                    isl_touched = true;
                } else if (key == "isl_wrap_seam") {
                    isl.wrap_seam = to_bool(where, val);
                    isl_touched = true;
                } else if (key == "isl_inter_plane") {
                    isl.inter_plane = to_bool(where, val);
                    isl_touched = true;
                } else if (key == "isl_polar_lat_threshold_deg") {
                    isl.polar_lat_threshold_deg = to_double(where, val);
                    isl_touched = true;
                } else {
                    throw ConfigError("config: unknown key '" + where + "'");
                }
            } else if (section == "horizon") {
                if (key == "num_slots")
                    cfg.num_slots = to_int(where, val);
                else if (key == "slot_duration_s")
                    cfg.slot_duration_s = to_double(where, val);
                else
                    throw ConfigError("config: unknown key '" + where + "'");
            } else if (section == "traffic") {
                if (key == "n_flows")
                    cfg.traffic.n_flows = to_int(where, val);
                else if (key == "frame_bytes")
                    cfg.traffic.frame_bytes = to_double(where, val);
                else if (key == "period_s")
                    cfg.traffic.period_s = to_double(where, val);
                else if (key == "deadline_alpha")
                    cfg.traffic.deadline.alpha = to_double(where, val);
                else if (key == "deadline_buffer_s")
                    cfg.traffic.deadline.delta_buf_s = to_double(where, val);
                else if (key == "deadline_max_s")
                    cfg.traffic.deadline.d_max_s = to_double(where, val);
                else
                    throw ConfigError("config: unknown key '" + where + "'");
            } else if (section == "paths") {
                if (key == "k")
                    cfg.k = to_int(where, val);
                else
                    throw ConfigError("config: unknown key '" + where + "'");
            } else if (section == "node") {
                if (key == "d_proc_s")
                    cfg.node.d_proc_s = to_double(where, val);
                else if (key == "t_buffer_max_s")
                    cfg.node.t_buffer_max_s = to_double(where, val);
                else
                    throw ConfigError("config: unknown key '" + where + "'");
            } else if (section == "run") {
                if (key == "algorithms") {
                    cfg.algorithms.clear();
                    for (const auto& name : split_list(val)) {
                        auto a = algorithm_from_name(name);
                        if (!a) throw ConfigError("config: unknown algorithm '" + name + "'");
                        cfg.algorithms.push_back(*a);
                    }
                } else if (key == "seeds") {
                    cfg.seeds.clear();
                    for (const auto& s : split_list(val))
                        cfg.seeds.push_back(static_cast<uint64_t>(to_int(where, s)));
                } else {
                    throw ConfigError("config: unknown key '" + where + "'");
                }
            } else if (section == "sweep") {
                if (key == "parameter") {
                    if (val == "none")
                        cfg.sweep.param = SweepParameter::None;
                    else if (val == "n_flows")
                        cfg.sweep.param = SweepParameter::NumFlows;
                    else if (val == "deadline_s")
                        cfg.sweep.param = SweepParameter::Deadline;
                    else
                        throw ConfigError("config: unknown sweep parameter '" + val + "'");
                } else if (key == "values") {
                    cfg.sweep.values.clear();
                    for (const auto& s : split_list(val))
                        cfg.sweep.values.push_back(to_double(where, s));
                } else {
                    throw ConfigError("config: unknown key '" + where + "'");
                }
            } else if (section == "perturbation") {
                if (!cfg.perturbation) cfg.perturbation = PerturbationConfig{};
                if (key == "link_fail_fraction")
                    cfg.perturbation->link_fail_fraction = to_double(where, val);
                else if (key == "delay_perturb_fraction")
                    cfg.perturbation->delay_perturb_fraction = to_double(where, val);
                else if (key == "delay_perturb_magnitude")
                    cfg.perturbation->delay_perturb_magnitude = to_double(where, val);
                else
                    throw ConfigError("config: unknown key '" + where + "'");
            } else if (section == "simulation") {
                if (key == "enabled")
                    cfg.simulation.enabled = to_bool(where, val);
                else if (key == "horizon_s")
                    cfg.simulation.horizon_s = to_double(where, val);
                else if (key == "max_clock_offset_s")
                    cfg.simulation.max_clock_offset_s = to_double(where, val);
                else if (key == "max_clock_drift")
                    cfg.simulation.max_clock_drift = to_double(where, val);
                else
                    throw ConfigError("config: unknown key '" + where + "'");
            } else {
                throw ConfigError("config: unknown section '" + section + "'");
            }
        }
    }
    if (isl_touched) cfg.isl = isl;
    validate_config(cfg);
    return cfg;
}

std::string config_to_text(const ExperimentConfig& cfg) {
    std::ostringstream out;
    out << "[experiment]\n";
    out << "output_dir = " << cfg.output_dir << "\n";
    out << "write_packets = " << (cfg.write_packets ? "true" : "false") << "\n";
    out << "write_svg = " << (cfg.write_svg ? "true" : "false") << "\n";
    out << "\n[constellation]\n";
    out << "planes = " << cfg.shell.planes << "\n";
    out << "sats_per_plane = " << cfg.shell.sats_per_plane << "\n";
    out << "altitude_km = " << fmtd(cfg.shell.altitude_km) << "\n";
    out << "inclination_deg = " << fmtd(cfg.shell.inclination_deg) << "\n";
    out << "phasing_offset = " << fmtd(cfg.shell.phasing_offset) << "\n";
    out << "raan_span_deg = " << fmtd(cfg.shell.raan_span_deg) << "\n";
    out << "epoch_s = " << fmtd(cfg.shell.epoch_s) << "\n";
    IslConfig isl = cfg.effective_isl();
    out << "isl_bandwidth_bps = " << fmtd(isl.bandwidth_bps) << "\n";
    out << "isl_wrap_seam = " << (isl.wrap_seam ? "true" : "false") << "\n";
    out << "isl_inter_plane = " << (isl.inter_plane ? "true" : "false") << "\n";
    if (isl.polar_lat_threshold_deg)
        out << "isl_polar_lat_threshold_deg = " << fmtd(*isl.polar_lat_threshold_deg) << "\n";
    out << "\n[horizon]\n";
    out << "num_slots = " << cfg.num_slots << "\n";
    out << "slot_duration_s = " << fmtd(cfg.slot_duration_s) << "\n";
    out << "\n[traffic]\n";
    out << "n_flows = " << cfg.traffic.n_flows << "\n";
    out << "frame_bytes = " << fmtd(cfg.traffic.frame_bytes) << "\n";
    out << "period_s = " << fmtd(cfg.traffic.period_s) << "\n";
    out << "deadline_alpha = " << fmtd(cfg.traffic.deadline.alpha) << "\n";
    out << "deadline_buffer_s = " << fmtd(cfg.traffic.deadline.delta_buf_s) << "\n";
    out << "deadline_max_s = " << fmtd(cfg.traffic.deadline.d_max_s) << "\n";
    out << "\n[paths]\n";
    out << "k = " << cfg.k << "\n";
    out << "\n[node]\n";
    out << "d_proc_s = " << fmtd(cfg.node.d_proc_s) << "\n";
    out << "t_buffer_max_s = " << fmtd(cfg.node.t_buffer_max_s) << "\n";
    out << "\n[run]\n";
    out << "algorithms = ";
    for (size_t i = 0; i < cfg.algorithms.size(); ++i)
        out << (i ? "," : "") << algorithm_name(cfg.algorithms[i]);
    out << "\n";
    out << "seeds = ";
    for (size_t i = 0; i < cfg.seeds.size(); ++i) out << (i ? "," : "") << cfg.seeds[i];
    out << "\n";
    out << "\n[sweep]\n";
    out << "parameter = "
        << (cfg.sweep.param == SweepParameter::None
                ? "none"
                : cfg.sweep.param == SweepParameter::NumFlows ? "n_flows" : "deadline_s")
        << "\n";
    out << "values = ";
    for (size_t i = 0; i < cfg.sweep.values.size(); ++i)
        out << (i ? "," : "") << fmtd(cfg.sweep.values[i]);
    out << "\n";
    if (cfg.perturbation) {
        out << "\n[perturbation]\n";
        out << "link_fail_fraction = " << fmtd(cfg.perturbation->link_fail_fraction) << "\n";
        out << "delay_perturb_fraction = " << fmtd(cfg.perturbation->delay_perturb_fraction)
            << "\n";
        out << "delay_perturb_magnitude = " << fmtd(cfg.perturbation->delay_perturb_magnitude)
            << "\n";
    }
    out << "\n[simulation]\n";
    out << "enabled = " << (cfg.simulation.enabled ? "true" : "false") << "\n";
    out << "horizon_s = " << fmtd(cfg.simulation.horizon_s) << "\n";
    out << "max_clock_offset_s = " << fmtd(cfg.simulation.max_clock_offset_s) << "\n";
    out << "max_clock_drift = " << fmtd(cfg.simulation.max_clock_drift) << "\n";
    return out.str();
}

void validate_config(const ExperimentConfig& cfg) {
    if (cfg.algorithms.empty()) throw ConfigError("config: at least one algorithm required");
    if (cfg.seeds.empty()) throw ConfigError("config: at least one seed required");
    if (cfg.shell.planes < 1 || cfg.shell.sats_per_plane < 2)
        throw ConfigError("config: constellation needs >= 1 plane and >= 2 sats per plane");
    if (cfg.num_slots < 1) throw ConfigError("config: num_slots must be >= 1");
    if (cfg.slot_duration_s <= 0) throw ConfigError("config: slot_duration_s must be positive");
    if (cfg.k < 1) throw ConfigError("config: k must be >= 1");
    if (cfg.traffic.n_flows < 1 && cfg.sweep.param != SweepParameter::NumFlows)
        throw ConfigError("config: n_flows must be >= 1");
    if (cfg.traffic.period_s <= 0 || cfg.traffic.frame_bytes <= 0)
        throw ConfigError("config: traffic period and frame size must be positive");
    if (cfg.node.d_proc_s < 0 || cfg.node.t_buffer_max_s < cfg.node.d_proc_s)
        throw ConfigError("config: node params need 0 <= d_proc_s <= t_buffer_max_s");
    if (cfg.sweep.param != SweepParameter::None && cfg.sweep.values.empty())
        throw ConfigError("config: sweep requested but no values given");
    for (double v : cfg.sweep.values)
        if (v <= 0) throw ConfigError("config: sweep values must be positive");
    if (cfg.perturbation) {
        const auto& p = *cfg.perturbation;
        if (p.link_fail_fraction < 0 || p.link_fail_fraction > 1 ||
            p.delay_perturb_fraction < 0 || p.delay_perturb_fraction > 1 ||
            p.delay_perturb_magnitude < 0 || p.delay_perturb_magnitude >= 1)
            throw ConfigError("config: perturbation fractions out of range");
    }
    if (cfg.simulation.horizon_s <= 0)
        throw ConfigError("config: simulation horizon must be positive");
    if (cfg.simulation.max_clock_drift < 0 || cfg.simulation.max_clock_drift >= 1e-3 ||
        cfg.simulation.max_clock_offset_s < 0)
        throw ConfigError("config: clock bounds out of range");
    if (cfg.output_dir.empty()) throw ConfigError("config: output_dir must not be empty");
}

}  // namespace crt
