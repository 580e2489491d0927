#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace crt {

using NodeId = int32_t;

// Directed link key packing (u,v) into one 64-bit value. Node ids are dense
// and far below 2^31, so this is collision-free.
using LinkKey = int64_t;
inline LinkKey link_key(NodeId u, NodeId v) {
    return (static_cast<int64_t>(u) << 32) | static_cast<uint32_t>(v);
}
inline NodeId link_key_u(LinkKey k) { return static_cast<NodeId>(k >> 32); }
inline NodeId link_key_v(LinkKey k) { return static_cast<NodeId>(k & 0xffffffff); }

// Satellite address inside a Walker shell: node id = plane * sats_per_plane + index.
struct SatelliteId {
    int plane = 0;
    int index = 0;
    bool operator==(const SatelliteId&) const = default;
};

// One time-triggered flow. src/dst are node ids of the constellation graph.
struct TtFlow {
    int id = 0;
    NodeId src = 0;
    NodeId dst = 0;
    double period_s = 0.010;
    double frame_bytes = 1500.0;
    double deadline_s = 0.0;
};

// A simple vertex path. weight_s caches the total propagation delay used as
// the routing metric (flow-independent).
struct Path {
    std::vector<NodeId> nodes;
    double weight_s = 0.0;

    bool empty() const { return nodes.empty(); }
    int hop_count() const { return nodes.empty() ? 0 : static_cast<int>(nodes.size()) - 1; }
    // Intermediate vertices: everything except the two endpoints.
    int intermediate_count() const {
        return nodes.size() < 3 ? 0 : static_cast<int>(nodes.size()) - 2;
    }
    bool operator==(const Path& o) const { return nodes == o.nodes; }
};

// Topology of one scheduling slot. Directed links stored in CSR order
// (sorted by (u,v)), so per-node out-links are contiguous and lookups are
// binary searches inside a node's range.
struct TopologySnapshot {
    struct Link {
        NodeId u = 0;
        NodeId v = 0;
        double prop_delay_s = 0.0;
        double bandwidth_bps = 0.0;
    };

    int slot = 0;
    double duration_s = 0.0;
    double sample_time_s = 0.0;
    int num_nodes = 0;
    std::vector<Link> links;      // sorted by (u,v)
    std::vector<int> adj_offset;  // size num_nodes+1, CSR offsets into links

    void build_index();  // sorts links and rebuilds adj_offset

    std::span<const Link> out_links(NodeId u) const {
        return {links.data() + adj_offset[u], links.data() + adj_offset[u + 1]};
    }
    // Index into links for directed (u,v), or -1 if absent.
    int link_index(NodeId u, NodeId v) const;
    const Link* find_link(NodeId u, NodeId v) const {
        int i = link_index(u, v);
        return i < 0 ? nullptr : &links[i];
    }
    bool has_path_links(const Path& p) const {
        for (size_t i = 0; i + 1 < p.nodes.size(); ++i)
            if (link_index(p.nodes[i], p.nodes[i + 1]) < 0) return false;
        return true;
    }
};

// Per-node forwarding parameters shared by scheduler, verifier and simulator.
struct NodeParams {
    double d_proc_s = 0.001;
    double t_buffer_max_s = 0.050;
};

}  // namespace crt
