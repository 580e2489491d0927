#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>

#include "crt/kpaths.hpp"
#include "crt/timing.hpp"
#include "crt/types.hpp"

namespace crt {

struct SchedulerConfig {
    NodeParams node;
    // Largest TT frame the slice carries; sets c_max per link.
    double max_frame_bytes = 1500.0;
    // Prefer the previous slot's path when it is still valid and feasible.
    bool path_continuity = true;
    std::optional<int> layer_cap;
};

enum class Algorithm { CrtFast, Spf, Lag, StrictNonOverlap };
const char* algorithm_name(Algorithm a);
std::optional<Algorithm> algorithm_from_name(const std::string& s);

struct ScheduleEntry {
    int flow_id = 0;
    bool scheduled = false;
    std::vector<Path> path_per_slot;               // size num_slots when scheduled
    double d_target_s = 0.0;                       // one stable target across all slots
    std::vector<std::vector<double>> residence_s;  // per slot, per intermediate vertex
    std::vector<double> wcd_total_s;               // per slot, from final counters
    // Slot at which a previously committed flow lost feasibility during
    // scheduling (feeds the rescheduling metric). Unset for admitted flows
    // and post-processing drops.
    std::optional<int> dropped_at_slot;
};

struct Schedule {
    int num_slots = 0;
    std::vector<ScheduleEntry> entries;        // indexed by flow id
    std::vector<LinkLoadState> load_per_slot;  // final counters, admitted flows only
    int scheduled_count() const {
        int c = 0;
        for (const auto& e : entries) c += e.scheduled;
        return c;
    }
};

// Residence-time allocation for one flow given final per-slot overlap
// counters: d_target = max slot fixed delay, the slack of every other slot is
// spread evenly over that slot's intermediate hops.
struct ResidenceAllocation {
    bool feasible = false;
    double d_target_s = 0.0;
    std::vector<std::vector<double>> residence_s;
    std::vector<double> wcd_total_s;
    std::string reason;
};

ResidenceAllocation allocate_residence(const TtFlow& flow, const std::vector<Path>& path_per_slot,
                                       const std::vector<TopologySnapshot>& snapshots,
                                       const std::vector<LinkLoadState>& load_per_slot,
                                       const NodeParams& np, double max_frame_bytes);

// Incremental scheduling state shared by all four algorithms: per-slot
// distinct-source overlap counters, per-link bandwidth reservations, and
// per-committed-flow deadline margins. Exposed so the layer construction and
// the feasibility check can be driven directly by tests.
class SlotScheduler {
public:
    SlotScheduler(const std::vector<TopologySnapshot>& snapshots,
                  const std::vector<TtFlow>& flows, const CandidateTable& candidates,
                  const SchedulerConfig& cfg);
    ~SlotScheduler();
    SlotScheduler(const SlotScheduler&) = delete;
    SlotScheduler& operator=(const SlotScheduler&) = delete;

    // One greedy layer for `slot` over the given unscheduled flows: flows are
    // ranked by conflict degree (distinct-source link counts over their
    // candidate unions), then admitted onto mutually edge-disjoint paths,
    // trying previous-slot path, best-conflict-degree candidate, then the
    // rest. Accepted flows are committed. Returns the layer.
    std::vector<std::pair<int, Path>> find_max_feasible_layer(
        int slot, const std::vector<int>& unscheduled);

    // True if inserting (flow, path) into `slot` keeps every committed flow
    // and the candidate itself within deadline, buffer and bandwidth limits.
    // Leaves all load state unmodified.
    bool check_global_feasibility(int flow_id, const Path& p, int slot) const;

    // check_global_feasibility + counter/margin updates. False if infeasible.
    bool commit(int flow_id, const Path& p, int slot);
    // Removes the flow from every slot it is committed to.
    void release_flow(int flow_id);

    const Path* committed_path(int flow_id, int slot) const;
    const LinkLoadState& load(int slot) const;
    int num_slots() const;

    // Residence allocation for every fully committed flow; flows failing it
    // are released. Produces the final schedule with refreshed per-slot WCDs.
    Schedule finalize(const std::map<int, int>& dropped_at_slot);

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

Schedule crt_fast(const std::vector<TopologySnapshot>& snapshots, const std::vector<TtFlow>& flows,
                  const CandidateTable& candidates, const SchedulerConfig& cfg);
Schedule spf_schedule(const std::vector<TopologySnapshot>& snapshots,
                      const std::vector<TtFlow>& flows, const CandidateTable& candidates,
                      const SchedulerConfig& cfg);
Schedule lag_schedule(const std::vector<TopologySnapshot>& snapshots,
                      const std::vector<TtFlow>& flows, const CandidateTable& candidates,
                      const SchedulerConfig& cfg);
Schedule strict_nonoverlap_schedule(const std::vector<TopologySnapshot>& snapshots,
                                    const std::vector<TtFlow>& flows,
                                    const CandidateTable& candidates, const SchedulerConfig& cfg);

Schedule run_algorithm(Algorithm a, const std::vector<TopologySnapshot>& snapshots,
                       const std::vector<TtFlow>& flows, const CandidateTable& candidates,
                       const SchedulerConfig& cfg);

}  // namespace crt
