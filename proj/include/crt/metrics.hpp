#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "crt/scheduler.hpp"
#include "crt/simulator.hpp"
#include "crt/types.hpp"

namespace crt {

struct OverlapStats {
    int max_overlap = 0;
    // distinct-source count per (slot, directed link) -> number of such pairs,
    // over pairs carrying at least one scheduled flow
    std::map<int, int> histogram;
    // (count value, cumulative fraction of counted pairs), ascending
    std::vector<std::pair<int, double>> cdf;
    double fraction_at_one = 0.0;  // share of loaded (slot, link) pairs with exactly one source
};

OverlapStats overlap_stats(const Schedule& schedule,
                           const std::vector<TopologySnapshot>& snapshots,
                           const std::vector<TtFlow>& flows);

// CDF over per-link distinct-source counts (entries with n >= 1 only).
std::vector<std::pair<int, double>> overlap_cdf(const std::vector<int>& counts);

// Flows whose forwarding changed when entering slot τ (τ >= 1): a different
// path than in slot τ-1, or dropped exactly at τ.
int rescheduling_count(const Schedule& schedule, int slot);

// Mean rescheduling count over slots 1..m-1 (0 when the horizon has one slot).
double rescheduling_mean(const Schedule& schedule);

// Nearest-rank percentile of an unsorted sample; q in (0, 1].
double percentile(std::vector<double> values, double q);

struct MetricsReport {
    std::string algo;
    uint64_t seed = 0;
    double sweep_param = 0.0;
    int n_flows = 0;
    double success_rate = 0.0;
    int max_overlap = 0;
    double p50_jitter_s = 0.0;
    double p99_jitter_s = 0.0;
    double resched_mean = 0.0;
    double wall_time_s = 0.0;
};

// Assembles the per-run report. If per-packet results are available, jitter
// percentiles are taken across per-flow delay spreads from the run; otherwise
// the schedule's worst-case queueing bounds stand in as the spread proxy.
MetricsReport build_report(const std::string& algo, uint64_t seed, double sweep_param,
                           const Schedule& schedule,
                           const std::vector<TopologySnapshot>& snapshots,
                           const std::vector<TtFlow>& flows, const SimResult* sim,
                           double wall_time_s);

}  // namespace crt
