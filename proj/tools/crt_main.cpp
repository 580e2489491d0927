// crtsched: scheduling toolkit for time-triggered traffic over dynamic
// satellite constellations. Subcommands cover the full pipeline: schedule,
// simulate, sweep, verify, gen-topology.
//
// Exit codes: 0 success, 1 config error, 2 verifier violation, 3 I/O error.

#include <cctype>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "crt/config.hpp"
#include "crt/experiment.hpp"
#include "crt/kpaths.hpp"
#include "crt/oracle.hpp"
#include "crt/serialize.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitVerifier = 2;
constexpr int kExitIo = 3;

struct GlobalOpts {
    std::string config_path;
    std::string preset;
    std::string out_dir;
    std::string algos;
    int64_t seed = -1;
};

crt::ExperimentConfig load_config(const GlobalOpts& g) {
    if (!g.config_path.empty() && !g.preset.empty())
        throw crt::ConfigError("use either --config or --preset, not both");
    crt::ExperimentConfig cfg;
    if (!g.config_path.empty()) {
        std::string text;
        try {
            text = crt::read_text_file(g.config_path);
        } catch (const std::runtime_error& e) {
            throw crt::ConfigError(std::string("cannot read config: ") + e.what());
        }
        cfg = crt::parse_config_text(text);
    } else if (!g.preset.empty()) {
        cfg = crt::preset_config(g.preset);
    } else {
        throw crt::ConfigError("missing --config <file> or --preset <name>");
    }
    if (g.seed >= 0) cfg.seeds = {static_cast<uint64_t>(g.seed)};
    if (!g.out_dir.empty()) cfg.output_dir = g.out_dir;
    if (!g.algos.empty()) {
        cfg.algorithms.clear();
        std::string cur;
        auto flush = [&] {
            if (cur.empty()) return;
            auto a = crt::algorithm_from_name(cur);
            if (!a) throw crt::ConfigError("unknown algorithm '" + cur + "'");
            cfg.algorithms.push_back(*a);
            cur.clear();
        };
        for (char c : g.algos) {
            if (c == ',')
                flush();
            else if (!isspace(static_cast<unsigned char>(c)))
                cur += c;
        }
        flush();
    }
    crt::validate_config(cfg);
    return cfg;
}

int run_pipeline(const crt::ExperimentConfig& cfg) {
    crt::ExperimentResult res = crt::run_experiment(cfg);
    crt::write_experiment_files(res, cfg.output_dir);
    for (const auto& cell : res.cells) {
        if (!cell.violations.empty()) {
            std::cerr << "VERIFIER FAILURE: " << cell.algo << " seed=" << cell.seed
                      << " sweep=" << cell.sweep_param << ": " << cell.violations.size()
                      << " violation(s)\n";
            for (size_t i = 0; i < cell.violations.size() && i < 10; ++i)
                std::cerr << "  " << cell.violations[i].detail << "\n";
            continue;
        }
        const auto& r = cell.report;
        std::printf(
            "%-8s seed=%llu sweep=%g flows=%d success=%.4f max_overlap=%d "
            "p99_jitter=%.6gs resched=%.2f wall=%.3fs\n",
            r.algo.c_str(), static_cast<unsigned long long>(r.seed), r.sweep_param, r.n_flows,
            r.success_rate, r.max_overlap, r.p99_jitter_s, r.resched_mean, r.wall_time_s);
    }
    std::printf("artifacts written to %s (%zu files)\n", cfg.output_dir.c_str(),
                res.files.size());
    return res.any_violation ? kExitVerifier : kExitOk;
}

int run_verify(const crt::ExperimentConfig& cfg, const std::string& schedule_path,
               int sweep_index) {
    const uint64_t seed = cfg.seeds.front();
    double sweep_value = 0.0;
    if (cfg.sweep.param != crt::SweepParameter::None) {
        if (sweep_index < 0 || sweep_index >= static_cast<int>(cfg.sweep.values.size()))
            throw crt::ConfigError("--sweep-index out of range for configured sweep");
        sweep_value = cfg.sweep.values[sweep_index];
    }
    auto snaps = crt::build_snapshots(cfg, seed);
    auto flows = crt::build_flows(cfg, snaps, seed, sweep_value);
    crt::Schedule sched = crt::schedule_from_json(crt::read_text_file(schedule_path));
    auto violations =
        crt::verify_schedule(sched, snaps, flows, cfg.node, cfg.traffic.frame_bytes);
    if (violations.empty()) {
        std::printf("OK: %s verifies clean (%d flows, %d slots, seed %llu)\n",
                    schedule_path.c_str(), static_cast<int>(flows.size()), sched.num_slots,
                    static_cast<unsigned long long>(seed));
        return kExitOk;
    }
    std::cerr << violations.size() << " violation(s) in " << schedule_path << ":\n";
    for (const auto& v : violations)
        std::cerr << "  flow " << v.flow_id << " slot " << v.slot << " ["
                  << crt::violation_kind_name(v.kind) << "] " << v.detail << "\n";
    return kExitVerifier;
}

int run_gen_topology(const crt::ExperimentConfig& cfg) {
    const uint64_t seed = cfg.seeds.front();
    auto snaps = crt::build_snapshots(cfg, seed);
    namespace fs = std::filesystem;
    fs::create_directories(cfg.output_dir);
    for (const auto& snap : snaps) {
        std::string name = cfg.output_dir + "/topology_slot" + std::to_string(snap.slot) +
                           ".json";
        crt::write_text_file(name, crt::topology_to_json(snap));
        std::printf("%s: %d nodes, %zu directed links\n", name.c_str(), snap.num_nodes,
                    snap.links.size());
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"deterministic TT-flow scheduling over dynamic satellite topologies"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--config", g.config_path, "experiment config file")->expected(1);
    app.add_option("--preset", g.preset, "named preset (iridium-default, starlink-default, "
                                         "handover-400, scalability)");
    app.add_option("--seed", g.seed, "override: run only this seed");
    app.add_option("--out", g.out_dir, "override: output directory");
    app.add_option("--algo", g.algos, "override: comma-separated algorithms "
                                      "(crt_fast,spf,lag,strict)");

    auto* sub_schedule =
        app.add_subcommand("schedule", "run the scheduling pipeline (no simulation)");
    auto* sub_simulate =
        app.add_subcommand("simulate", "schedule + packet-level simulation with packet logs");
    auto* sub_sweep = app.add_subcommand("sweep", "run the configured parameter sweep");
    auto* sub_verify = app.add_subcommand("verify", "re-verify a schedule artifact");
    std::string schedule_path;
    int sweep_index = 0;
    sub_verify->add_option("schedule", schedule_path, "schedule JSON to verify")->required();
    sub_verify->add_option("--sweep-index", sweep_index, "sweep point the artifact belongs to");
    auto* sub_gen =
        app.add_subcommand("gen-topology", "emit the per-slot topology snapshots as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        crt::ExperimentConfig cfg = load_config(g);
        if (sub_schedule->parsed()) {
            cfg.simulation.enabled = false;
            return run_pipeline(cfg);
        }
        if (sub_simulate->parsed()) {
            cfg.simulation.enabled = true;
            cfg.write_packets = true;
            return run_pipeline(cfg);
        }
        if (sub_sweep->parsed()) {
            if (cfg.sweep.param == crt::SweepParameter::None)
                throw crt::ConfigError("sweep subcommand requires a configured [sweep] section");
            return run_pipeline(cfg);
        }
        if (sub_verify->parsed()) return run_verify(cfg, schedule_path, sweep_index);
        if (sub_gen->parsed()) return run_gen_topology(cfg);
        throw crt::ConfigError("no subcommand");
    } catch (const crt::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
}
