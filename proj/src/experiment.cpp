#include "crt/experiment.hpp"

#include <chrono>
#include <filesystem>
#include <map>

#include "crt/kpaths.hpp"
#include "crt/rng.hpp"
#include "crt/serialize.hpp"
#include "crt/simulator.hpp"
#include "crt/svg.hpp"
#include "crt/traffic.hpp"

namespace crt {

namespace {

constexpr uint64_t kFlowStream = 0x666c6f77u;     // traffic draws
constexpr uint64_t kPerturbStream = 0x70657274u;  // per-slot topology perturbation

std::string cell_stem(const ExperimentConfig& cfg, Algorithm a, uint64_t seed, size_t vi) {
    std::string stem = algorithm_name(a);
    stem += "_s" + std::to_string(seed);
    if (cfg.sweep.param != SweepParameter::None) stem += "_v" + std::to_string(vi);
    return stem;
}

}  // namespace

std::vector<TopologySnapshot> build_snapshots(const ExperimentConfig& cfg, uint64_t seed) {
    const ConstellationModel model = build_constellation(cfg.shell, cfg.effective_isl());
    std::vector<TopologySnapshot> snaps =
        snapshot_sequence(model, cfg.num_slots, cfg.slot_duration_s);
    if (cfg.perturbation) {
        for (int t = 0; t < cfg.num_slots; ++t)
            snaps[t] = apply_perturbation(snaps[t], *cfg.perturbation,
                                          substream(seed, kPerturbStream + uint64_t(t)));
    }
    return snaps;
}

std::vector<TtFlow> build_flows(const ExperimentConfig& cfg,
                                const std::vector<TopologySnapshot>& snaps, uint64_t seed,
                                double sweep_value) {
    int n = cfg.traffic.n_flows;
    if (cfg.sweep.param == SweepParameter::NumFlows) n = static_cast<int>(sweep_value + 0.5);
    std::vector<TtFlow> flows =
        generate_flows(n, snaps[0], cfg.traffic.deadline, cfg.traffic.frame_bytes,
                       cfg.traffic.period_s, substream(seed, kFlowStream));
    if (cfg.sweep.param == SweepParameter::Deadline)
        for (auto& f : flows) f.deadline_s = sweep_value;
    return flows;
}

std::string strip_wall_time_column(const std::string& metrics_csv) {
    std::string out;
    size_t start = 0;
    while (start < metrics_csv.size()) {
        size_t end = metrics_csv.find('\n', start);
        if (end == std::string::npos) end = metrics_csv.size();
        std::string line = metrics_csv.substr(start, end - start);
        size_t comma = line.rfind(',');
        if (comma != std::string::npos) line = line.substr(0, comma + 1);
        out += line;
        out += '\n';
        start = end + 1;
    }
    return out;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    validate_config(cfg);
    ExperimentResult res;
    const std::string config_text = config_to_text(cfg);
    res.files.push_back({"config.txt", config_text});

    std::vector<double> sweep_values = cfg.sweep.values;
    if (cfg.sweep.param == SweepParameter::None) sweep_values = {0.0};

    SchedulerConfig scfg;
    scfg.node = cfg.node;
    scfg.max_frame_bytes = cfg.traffic.frame_bytes;

    std::string csv = metrics_csv_header();

    for (uint64_t seed : cfg.seeds) {
        const std::vector<TopologySnapshot> snaps = build_snapshots(cfg, seed);

        CandidateTable cands;
        bool have_candidates = false;

        for (size_t vi = 0; vi < sweep_values.size(); ++vi) {
            const double v = sweep_values[vi];
            std::vector<TtFlow> flows = build_flows(cfg, snaps, seed, v);
            // candidates depend on endpoints only, so a deadline sweep reuses them
            if (!have_candidates || cfg.sweep.param == SweepParameter::NumFlows) {
                cands = CandidateTable::build(snaps, flows, cfg.k);
                have_candidates = true;
            }

            for (Algorithm a : cfg.algorithms) {
                CellResult cell;
                cell.algo = algorithm_name(a);
                cell.seed = seed;
                cell.sweep_index = static_cast<int>(vi);
                cell.sweep_param = v;

                const auto t0 = std::chrono::steady_clock::now();
                Schedule sched = run_algorithm(a, snaps, flows, cands, scfg);
                const double wall =
                    std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

                cell.violations =
                    verify_schedule(sched, snaps, flows, cfg.node, cfg.traffic.frame_bytes);
                if (!cell.violations.empty()) {
                    res.any_violation = true;
                    res.cells.push_back(std::move(cell));
                    continue;
                }

                SimResult sim;
                const SimResult* simp = nullptr;
                if (cfg.simulation.enabled) {
                    ClockModel clocks = ClockModel::randomized(
                        snaps[0].num_nodes, cfg.simulation.max_clock_offset_s,
                        cfg.simulation.max_clock_drift, seed);
                    SimConfig sc;
                    sc.horizon_s = cfg.simulation.horizon_s;
                    sim = simulate_run(sched, snaps, flows, clocks, sc, seed);
                    simp = &sim;
                }

                cell.report = build_report(cell.algo, seed, v, sched, snaps, flows, simp, wall);
                csv += metrics_csv_row(cell.report);

                const std::string stem = cell_stem(cfg, a, seed, vi);
                res.files.push_back(
                    {"schedules/" + stem + ".json", schedule_to_json(sched, cell.algo)});
                if (cfg.write_packets && simp != nullptr)
                    res.files.push_back({"packets_" + stem + ".csv", packets_to_csv(sim.packets)});

                res.cells.push_back(std::move(cell));
            }
        }
    }

    res.metrics_csv = csv;
    res.files.push_back({"metrics.csv", csv});

    if (cfg.write_svg && cfg.sweep.param != SweepParameter::None) {
        // mean success rate per algorithm across seeds, per sweep point
        std::vector<SvgSeries> series;
        for (Algorithm a : cfg.algorithms) {
            SvgSeries s;
            s.name = algorithm_name(a);
            for (size_t vi = 0; vi < sweep_values.size(); ++vi) {
                double sum = 0.0;
                int n = 0;
                for (const auto& c : res.cells) {
                    if (c.algo == s.name && c.sweep_index == static_cast<int>(vi) &&
                        c.violations.empty()) {
                        sum += c.report.success_rate;
                        ++n;
                    }
                }
                if (n > 0) s.points.push_back({sweep_values[vi], sum / n});
            }
            series.push_back(std::move(s));
        }
        const char* xl =
            cfg.sweep.param == SweepParameter::NumFlows ? "number of flows" : "deadline (s)";
        res.files.push_back({"charts/success_rate.svg",
                             svg_line_chart("scheduling success rate", xl, "success rate",
                                            series)});
    }

    // Manifest hashes: wall time is the one legitimately nondeterministic
    // value, so metrics.csv is hashed with that column blanked.
    std::vector<std::pair<std::string, std::string>> hashables;
    for (const auto& [name, content] : res.files)
        hashables.push_back(
            {name, name == "metrics.csv" ? strip_wall_time_column(content) : content});
    res.files.push_back({"manifest.json", manifest_json(hashables, config_text, cfg.seeds)});
    return res;
}

void write_experiment_files(const ExperimentResult& result, const std::string& out_dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw std::runtime_error("cannot create output dir: " + out_dir);
    for (const auto& [name, content] : result.files) {
        fs::path p = fs::path(out_dir) / name;
        if (p.has_parent_path()) {
            fs::create_directories(p.parent_path(), ec);
            if (ec) throw std::runtime_error("cannot create dir: " + p.parent_path().string());
        }
        write_text_file(p.string(), content);
    }
}

}  // namespace crt
