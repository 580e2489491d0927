#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "crt/constellation.hpp"
#include "crt/scheduler.hpp"
#include "crt/traffic.hpp"
#include "crt/types.hpp"

namespace crt {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TrafficConfig {
    int n_flows = 400;
    double frame_bytes = 1500.0;
    double period_s = 0.010;
    DeadlinePolicy deadline;
};

enum class SweepParameter { None, NumFlows, Deadline };

struct SweepConfig {
    SweepParameter param = SweepParameter::None;
    std::vector<double> values;
};

struct SimulationConfig {
    bool enabled = false;
    double horizon_s = 1.0;
    double max_clock_offset_s = 0.010;
    double max_clock_drift = 20e-6;
};

struct ExperimentConfig {
    ShellParams shell;
    std::optional<IslConfig> isl;  // absent -> rule derived from the shell
    int num_slots = 1;
    double slot_duration_s = 10.0;
    TrafficConfig traffic;
    int k = 5;
    NodeParams node;
    std::vector<Algorithm> algorithms;
    std::optional<PerturbationConfig> perturbation;
    SweepConfig sweep;
    SimulationConfig simulation;
    std::vector<uint64_t> seeds;
    std::string output_dir = "out";
    bool write_packets = false;
    bool write_svg = false;

    IslConfig effective_isl() const { return isl ? *isl : default_isl_config(shell); }
};

// Named starting points for the bundled experiment suites.
ExperimentConfig preset_config(const std::string& name);
std::vector<std::string> preset_names();

// Plain sectioned key/value text (see README for the schema). A file may set
// `preset` under [experiment] to start from a preset and override fields.
ExperimentConfig parse_config_text(const std::string& text);

// Effective config rendered back to the same text format (deterministic).
std::string config_to_text(const ExperimentConfig& cfg);

// Throws ConfigError on invalid combinations (empty algorithms/seeds, ...).
void validate_config(const ExperimentConfig& cfg);

}  // namespace crt
