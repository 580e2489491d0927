#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "crt/types.hpp"

namespace crt {

// Serialization time of a frame on a link: 8 * bytes / bandwidth.
double transmission_time_s(double frame_bytes, double bandwidth_bps);

// Fixed one-hop delay: propagation + transmission of this flow's frame.
// Throws std::invalid_argument if the directed link is absent.
double link_delay_s(const TopologySnapshot& snap, NodeId u, NodeId v, double frame_bytes);

// Fixed path delay: sum of link delays plus d_proc at every intermediate
// vertex (endpoints contribute nothing).
double path_fixed_delay_s(const TopologySnapshot& snap, const Path& p, double frame_bytes,
                          const NodeParams& np);

// Worst-case interference a frame can suffer on one link when `overlap`
// distinct source nodes are scheduled across it: (overlap-1) * c_max.
double wcd_link_s(int overlap, double c_max_s);

// Exact-set interference bound: sum of the interferers' own transmission
// times. The simplified per-link bound above dominates this whenever the
// interferer count is < overlap and every c_j <= c_max.
double wcd_exact_s(const std::vector<double>& interferer_tx_s);

// First time two periodic flows with relative clock drift collide on a shared
// link (closed form). phase_gap_s is the current emission phase gap, c_s the
// transmission window, drift_rate the relative drift (dimensionless, >= 0
// meaning the gap closes at that rate).
struct CollisionNever {};
struct CollisionImmediate {};
using CollisionTime = std::variant<CollisionNever, CollisionImmediate, double>;
CollisionTime drift_collision_time(double phase_gap_s, double c_s, double drift_rate);

// Per-link load bookkeeping for one slot: which distinct sources are
// scheduled across each link, total reserved bandwidth, and which flows.
// Indexed by the snapshot's link index.
class LinkLoadState {
public:
    LinkLoadState() = default;
    explicit LinkLoadState(size_t num_links) : entries_(num_links) {}

    struct Entry {
        std::vector<int> sources;   // sorted distinct source node ids
        std::vector<int> flow_ids;  // insertion order
        double util_bps = 0.0;
    };

    size_t num_links() const { return entries_.size(); }
    const Entry& entry(int link_idx) const { return entries_[link_idx]; }
    int overlap(int link_idx) const { return static_cast<int>(entries_[link_idx].sources.size()); }
    bool has_source(int link_idx, NodeId src) const;

    // Adds a flow crossing the link. Returns true if this introduced a new
    // distinct source (i.e. the overlap counter was bumped).
    bool add_flow(int link_idx, int flow_id, NodeId src, double rate_bps);
    // Removes a flow. Returns true if the source left the link (counter
    // decremented). remaining_same_source must reflect other flows.
    bool remove_flow(int link_idx, int flow_id, NodeId src, double rate_bps,
                     bool source_still_present);

private:
    std::vector<Entry> entries_;
};

}  // namespace crt
