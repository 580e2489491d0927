#pragma once

#include <string>
#include <vector>

#include "crt/config.hpp"
#include "crt/metrics.hpp"
#include "crt/oracle.hpp"

namespace crt {

// One (sweep point, seed, algorithm) cell of a run.
struct CellResult {
    std::string algo;
    uint64_t seed = 0;
    int sweep_index = 0;
    double sweep_param = 0.0;
    MetricsReport report;
    // Nonempty means the produced schedule failed verification; the cell is
    // excluded from metrics and the run exits with the verifier status.
    std::vector<Violation> violations;
};

struct ExperimentResult {
    std::vector<CellResult> cells;
    // artifact files relative to the output dir, in write order
    std::vector<std::pair<std::string, std::string>> files;
    std::string metrics_csv;
    bool any_violation = false;
};

// Snapshot sequence for one seed, including the configured per-slot
// perturbation. The exact construction every pipeline stage shares.
std::vector<TopologySnapshot> build_snapshots(const ExperimentConfig& cfg, uint64_t seed);

// Traffic for one (seed, sweep value) cell: sweep_value resizes the flow set
// or overrides every deadline, depending on the swept parameter.
std::vector<TtFlow> build_flows(const ExperimentConfig& cfg,
                                const std::vector<TopologySnapshot>& snaps, uint64_t seed,
                                double sweep_value);

// Full pipeline: constellation -> snapshots (+ per-slot perturbation) ->
// flows -> candidate paths -> scheduler(s) -> verification -> optional
// simulation -> metrics + artifacts. Every schedule is verified before any
// metric is recorded. Deterministic for a fixed config.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

// Materializes result.files under out_dir, creating directories as needed.
void write_experiment_files(const ExperimentResult& result, const std::string& out_dir);

// The metrics CSV with the wall_time_s column blanked, used for
// reproducibility hashing (wall time is the only nondeterministic output).
std::string strip_wall_time_column(const std::string& metrics_csv);

}  // namespace crt
