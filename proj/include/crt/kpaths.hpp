#pragma once

#include <unordered_map>

#include "crt/types.hpp"

namespace crt {

// Deterministic Dijkstra, weight = propagation delay only. Empty path if
// unreachable. Ties resolved toward smaller node ids.
Path shortest_path(const TopologySnapshot& snap, NodeId src, NodeId dst);

// Propagation-only distance from src to every node (+inf if unreachable).
std::vector<double> shortest_distances(const TopologySnapshot& snap, NodeId src);

// Yen's K shortest loopless paths. Results sorted by (weight, vertex
// sequence), so equal-weight paths come out in lexicographic order and the
// whole list is deterministic. May return fewer than k paths.
std::vector<Path> k_shortest_paths(const TopologySnapshot& snap, NodeId src, NodeId dst, int k);

// Candidate paths per (src,dst) pair per slot, shared by all flows with the
// same endpoints. Slots are computed in parallel; contents are deterministic.
class CandidateTable {
public:
    static CandidateTable build(const std::vector<TopologySnapshot>& snapshots,
                                const std::vector<TtFlow>& flows, int k);

    std::span<const Path> paths(NodeId src, NodeId dst, int slot) const;
    std::span<const Path> paths_for(const TtFlow& f, int slot) const {
        return paths(f.src, f.dst, slot);
    }
    int num_slots() const { return num_slots_; }
    int k() const { return k_; }

private:
    int num_slots_ = 0;
    int k_ = 0;
    // pair key -> per-slot candidate lists
    std::unordered_map<LinkKey, std::vector<std::vector<Path>>> table_;
};

}  // namespace crt
