#pragma once

#include <optional>

#include "crt/scheduler.hpp"
#include "crt/timing.hpp"
#include "crt/types.hpp"

namespace crt {

// Per-node unsynchronized clocks: local(t) = t * (1 + drift) + offset.
struct ClockModel {
    std::vector<double> offset_s;
    std::vector<double> drift_rate;

    double to_local(NodeId n, double t_global) const {
        return t_global * (1.0 + drift_rate[n]) + offset_s[n];
    }
    double to_global(NodeId n, double t_local) const {
        return (t_local - offset_s[n]) / (1.0 + drift_rate[n]);
    }

    static ClockModel synchronized(int num_nodes);
    static ClockModel randomized(int num_nodes, double max_offset_s, double max_drift,
                                 uint64_t seed);
};

struct SimConfig {
    double horizon_s = 1.0;
    // Models a non-preemptible best-effort remnant ahead of every TT
    // transmission (worst case, constant per hop). Off by default.
    bool model_remnant_blocking = false;
    double remnant_bytes = 127.0;
};

struct PacketRecord {
    int flow_id = 0;
    int64_t seq = 0;
    int slot = 0;  // slot active at emission; pins path and delays end-to-end
    double emit_s = 0.0;
    double delivered_s = 0.0;
    double e2e_delay_s = 0.0;
    double queue_wait_total_s = 0.0;
    std::vector<double> arrival_per_hop_s;     // arrival at each path vertex
    std::vector<double> queue_wait_per_hop_s;  // egress wait at each transmitting vertex
    bool delivered = false;
};

struct SimResult {
    std::vector<PacketRecord> packets;
    // realized per-flow emission phases (local source time, after the
    // same-source serialization pass)
    std::vector<double> phases_s;
};

// Packet-level run. Frames are emitted on each source's local clock from a
// seeded random phase; intermediate vertices hold each frame for the
// scheduled residence; every directed link is a FIFO server in release order.
SimResult simulate_run(const Schedule& schedule, const std::vector<TopologySnapshot>& snapshots,
                       const std::vector<TtFlow>& flows, const ClockModel& clocks,
                       const SimConfig& cfg, uint64_t seed);

struct JitterStats {
    int flow_id = 0;
    int count = 0;
    double min_s = 0.0, max_s = 0.0, spread_s = 0.0, p50_s = 0.0, p99_s = 0.0;
};
std::vector<JitterStats> measure_jitter(const std::vector<PacketRecord>& packets);

// Closed-form first-contention prediction for two flows sharing a directed
// link (slot-0 analysis): relative source clock drift slides their phase gap
// until the transmission windows meet. Requires equal nominal periods.
CollisionTime predict_first_collision(const Schedule& schedule,
                                      const std::vector<TopologySnapshot>& snapshots,
                                      const std::vector<TtFlow>& flows, int flow_a, int flow_b,
                                      NodeId link_u, NodeId link_v, const ClockModel& clocks,
                                      const std::vector<double>& phases_s);

// Earliest moment a frame had to wait for the link, from a finished run.
std::optional<double> first_contention_time(const SimResult& result, const Schedule& schedule,
                                            NodeId link_u, NodeId link_v);

}  // namespace crt
