#pragma once

// Shared fixture builders for the unit and property tests: small hand-made
// topologies with exact link delays, so expected values can be computed by
// hand and asserted exactly.

#include <string>
#include <utility>
#include <vector>

#include "crt/kpaths.hpp"
#include "crt/rng.hpp"
#include "crt/scheduler.hpp"
#include "crt/traffic.hpp"
#include "crt/types.hpp"

namespace crt::test {

struct LinkSpec {
    NodeId u;
    NodeId v;
    double prop_s;
    double bw_bps = 100e6;
};

// Directed links exactly as listed (call twice or use both_ways for symmetry).
inline TopologySnapshot make_snapshot(int num_nodes, const std::vector<LinkSpec>& links,
                                      int slot = 0, double duration_s = 10.0) {
    TopologySnapshot s;
    s.slot = slot;
    s.duration_s = duration_s;
    s.sample_time_s = slot * duration_s;
    s.num_nodes = num_nodes;
    for (const auto& l : links) s.links.push_back({l.u, l.v, l.prop_s, l.bw_bps});
    s.build_index();
    return s;
}

inline std::vector<LinkSpec> both_ways(const std::vector<LinkSpec>& links) {
    std::vector<LinkSpec> out;
    for (const auto& l : links) {
        out.push_back(l);
        out.push_back({l.v, l.u, l.prop_s, l.bw_bps});
    }
    return out;
}

inline TtFlow make_flow(int id, NodeId src, NodeId dst, double deadline_s,
                        double period_s = 0.010, double frame_bytes = 1500.0) {
    TtFlow f;
    f.id = id;
    f.src = src;
    f.dst = dst;
    f.deadline_s = deadline_s;
    f.period_s = period_s;
    f.frame_bytes = frame_bytes;
    return f;
}

// Three sources funnelled through one shared middle link, then fanned out:
//   0,1,2 -> 3 -> 4 -> 5,6,7   (all props 1 ms, 100 Mbps)
// Every flow i: src i, dst 5+i has exactly one simple path, fixed delay
// 3*(1 + 0.12) + 2*1 = 5.36 ms with the default 1 ms processing delay.
inline TopologySnapshot bottleneck_snapshot() {
    std::vector<LinkSpec> ls;
    for (NodeId s : {0, 1, 2}) ls.push_back({s, 3, 1e-3});
    ls.push_back({3, 4, 1e-3});
    for (NodeId d : {5, 6, 7}) ls.push_back({4, d, 1e-3});
    return make_snapshot(8, both_ways(ls));
}

inline std::vector<TtFlow> bottleneck_flows(double d0, double d1, double d2) {
    return {make_flow(0, 0, 5, d0), make_flow(1, 1, 6, d1), make_flow(2, 2, 7, d2)};
}

// Diamond 0 -> {1,2} -> 3, all edges 1 ms: two equal-cost disjoint routes.
inline TopologySnapshot diamond_snapshot() {
    return make_snapshot(
        4, both_ways({{0, 1, 1e-3}, {0, 2, 1e-3}, {1, 3, 1e-3}, {2, 3, 1e-3}}));
}

inline SchedulerConfig default_scheduler_config() { return SchedulerConfig{}; }

// Random instance inside the exhaustive solver's size bounds (<= 12 nodes,
// <= 2 slots, <= 6 flows, <= 3 candidates). Mixes loose and tight deadlines
// so both admission outcomes appear.
struct SmallInstance {
    std::vector<TopologySnapshot> snaps;
    std::vector<TtFlow> flows;
};

inline SmallInstance random_small_instance(uint64_t seed) {
    Rng rng(seed);
    int n = 6 + static_cast<int>(rng.uniform_int(7));  // 6..12 nodes

    auto draw_links = [&]() {
        std::vector<LinkSpec> ls;
        for (NodeId u = 0; u < n; ++u)
            ls.push_back({u, static_cast<NodeId>((u + 1) % n), rng.uniform(0.5e-3, 2.5e-3)});
        int chords = n / 2;
        for (int c = 0; c < chords; ++c) {
            NodeId u = static_cast<NodeId>(rng.uniform_int(n));
            NodeId v = static_cast<NodeId>(rng.uniform_int(n));
            if (u == v || v == (u + 1) % n || u == (v + 1) % n) continue;
            ls.push_back({u, v, rng.uniform(0.5e-3, 3e-3)});
        }
        return ls;
    };

    SmallInstance inst;
    int slots = 1 + static_cast<int>(rng.uniform_int(2));
    for (int t = 0; t < slots; ++t)
        inst.snaps.push_back(make_snapshot(n, both_ways(draw_links()), t));

    DeadlinePolicy policy;
    policy.alpha = std::vector<double>{1.05, 1.3, 2.0}[rng.uniform_int(3)];
    policy.delta_buf_s = std::vector<double>{1.5e-3, 3e-3, 8e-3}[rng.uniform_int(3)];
    policy.d_max_s = 0.05;

    int f = 2 + static_cast<int>(rng.uniform_int(5));  // 2..6 flows
    for (int i = 0; i < f; ++i) {
        NodeId src = static_cast<NodeId>(rng.uniform_int(n));
        NodeId dst = static_cast<NodeId>(rng.uniform_int(n));
        if (src == dst) dst = (dst + 1) % n;
        auto sp = shortest_path(inst.snaps[0], src, dst);
        double d_phy = sp.empty() ? 5e-3 : sp.weight_s;
        inst.flows.push_back(make_flow(i, src, dst, compute_deadline(d_phy, policy)));
    }
    return inst;
}

}  // namespace crt::test
