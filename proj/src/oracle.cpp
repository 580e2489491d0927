#include "crt/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace crt {

namespace {
constexpr double kVerifyEps = 1e-9;
constexpr double kVerifyBandwidthEpsBps = 1e-2;
}  // namespace

const char* violation_kind_name(ViolationKind k) {
    switch (k) {
        case ViolationKind::PathValidity: return "path_validity";
        case ViolationKind::PathUniqueness: return "path_uniqueness";
        case ViolationKind::BaselineConsistency: return "baseline_consistency";
        case ViolationKind::Bandwidth: return "bandwidth";
        case ViolationKind::BufferBounds: return "buffer_bounds";
        case ViolationKind::MinResidence: return "min_residence";
        case ViolationKind::DeadlineMargin: return "deadline_margin";
    }
    return "?";
}

std::vector<Violation> verify_schedule(const Schedule& schedule,
                                       const std::vector<TopologySnapshot>& snapshots,
                                       const std::vector<TtFlow>& flows, const NodeParams& np,
                                       double max_frame_bytes) {
    std::vector<Violation> out;
    const int m = static_cast<int>(snapshots.size());
    auto add = [&](int flow, int slot, ViolationKind k, std::string detail) {
        out.push_back({flow, slot, k, std::move(detail)});
    };
    if (schedule.num_slots != m) {
        add(-1, -1, ViolationKind::PathUniqueness, "schedule slot count mismatch");
        return out;
    }
    if (schedule.entries.size() != flows.size()) {
        add(-1, -1, ViolationKind::PathUniqueness, "schedule entry count mismatch");
        return out;
    }

    // overlap counters and bandwidth sums rebuilt from scratch
    std::vector<LinkLoadState> load;
    for (int t = 0; t < m; ++t) load.emplace_back(snapshots[t].links.size());
    for (const auto& e : schedule.entries) {
        if (!e.scheduled) continue;
        const TtFlow& f = flows[e.flow_id];
        double rate = 8.0 * f.frame_bytes / f.period_s;
        if (static_cast<int>(e.path_per_slot.size()) != m) continue;  // flagged below
        for (int t = 0; t < m; ++t) {
            const Path& p = e.path_per_slot[t];
            for (size_t i = 0; i + 1 < p.nodes.size(); ++i) {
                int li = snapshots[t].link_index(p.nodes[i], p.nodes[i + 1]);
                if (li >= 0) load[t].add_flow(li, e.flow_id, f.src, rate);
            }
        }
    }

    for (const auto& e : schedule.entries) {
        if (!e.scheduled) continue;
        const TtFlow& f = flows[e.flow_id];
        if (static_cast<int>(e.path_per_slot.size()) != m ||
            static_cast<int>(e.residence_s.size()) != m) {
            add(e.flow_id, -1, ViolationKind::PathUniqueness,
                "scheduled flow must carry one path and residence vector per slot");
            continue;
        }
        for (int t = 0; t < m; ++t) {
            const Path& p = e.path_per_slot[t];
            const TopologySnapshot& snap = snapshots[t];
            if (p.nodes.size() < 2 || p.nodes.front() != f.src || p.nodes.back() != f.dst) {
                add(e.flow_id, t, ViolationKind::PathValidity, "endpoints do not match the flow");
                continue;
            }
            std::set<NodeId> seen(p.nodes.begin(), p.nodes.end());
            if (seen.size() != p.nodes.size()) {
                add(e.flow_id, t, ViolationKind::PathValidity, "path revisits a vertex");
                continue;
            }
            bool links_ok = true;
            double fixed = 0.0, wcd = 0.0;
            for (size_t i = 0; i + 1 < p.nodes.size(); ++i) {
                int li = snap.link_index(p.nodes[i], p.nodes[i + 1]);
                if (li < 0) {
                    add(e.flow_id, t, ViolationKind::PathValidity,
                        "link (" + std::to_string(p.nodes[i]) + "," +
                            std::to_string(p.nodes[i + 1]) + ") absent in this slot");
                    links_ok = false;
                    break;
                }
                const auto& link = snap.links[li];
                if (transmission_time_s(f.frame_bytes, link.bandwidth_bps) >= f.period_s)
                    add(e.flow_id, t, ViolationKind::Bandwidth,
                        "frame transmission time exceeds the flow period");
                fixed += link.prop_delay_s +
                         transmission_time_s(f.frame_bytes, link.bandwidth_bps);
                wcd += wcd_link_s(load[t].overlap(li),
                                  transmission_time_s(max_frame_bytes, link.bandwidth_bps));
            }
            if (!links_ok) continue;

            const auto& res = e.residence_s[t];
            if (static_cast<int>(res.size()) != p.intermediate_count()) {
                add(e.flow_id, t, ViolationKind::PathUniqueness,
                    "residence vector does not match the path's intermediate vertices");
                continue;
            }
            double res_sum = 0.0;
            for (double dt : res) {
                res_sum += dt;
                if (dt < np.d_proc_s - kVerifyEps)
                    add(e.flow_id, t, ViolationKind::MinResidence,
                        "residence below processing delay");
                if (dt > np.t_buffer_max_s + kVerifyEps)
                    add(e.flow_id, t, ViolationKind::BufferBounds,
                        "residence exceeds buffer limit");
            }
            if (std::abs(fixed + res_sum - e.d_target_s) > kVerifyEps)
                add(e.flow_id, t, ViolationKind::BaselineConsistency,
                    "link delays plus residences do not reproduce d_target");
            if (e.d_target_s + wcd > f.deadline_s + kVerifyEps)
                add(e.flow_id, t, ViolationKind::DeadlineMargin,
                    "d_target plus worst-case interference exceeds the deadline");
        }
    }

    for (int t = 0; t < m; ++t)
        for (size_t li = 0; li < snapshots[t].links.size(); ++li) {
            const auto& entry = load[t].entry(static_cast<int>(li));
            if (entry.util_bps > snapshots[t].links[li].bandwidth_bps + kVerifyBandwidthEpsBps)
                add(-1, t, ViolationKind::Bandwidth,
                    "reserved rate exceeds capacity on link (" +
                        std::to_string(snapshots[t].links[li].u) + "," +
                        std::to_string(snapshots[t].links[li].v) + ")");
        }
    return out;
}

// ---------------------------------------------------------------------------

namespace {

struct SolverState {
    const std::vector<TopologySnapshot>& snaps;
    const std::vector<TtFlow>& flows;
    const SchedulerConfig& cfg;
    int m;

    // chosen[f] = per-slot paths for scheduled flows
    std::vector<std::optional<std::vector<const Path*>>> chosen;
    std::vector<LinkLoadState> load;

    int best_j1 = -1;
    int best_z = 0;
    std::vector<std::optional<std::vector<const Path*>>> best_choice;

    SolverState(const std::vector<TopologySnapshot>& s, const std::vector<TtFlow>& f,
                const SchedulerConfig& c)
        : snaps(s), flows(f), cfg(c), m(static_cast<int>(s.size())) {
        chosen.resize(flows.size());
        for (int t = 0; t < m; ++t) load.emplace_back(snaps[t].links.size());
    }

    double c_max(int slot, int li) const {
        return transmission_time_s(cfg.max_frame_bytes, snaps[slot].links[li].bandwidth_bps);
    }

    // d_target for a flow given its own paths (max fixed delay), plus its
    // buffer feasibility; independent of other flows.
    bool own_feasible(int fid, const std::vector<const Path*>& paths, double& d_target) const {
        const TtFlow& f = flows[fid];
        double dmax = 0.0;
        for (int t = 0; t < m; ++t)
            dmax = std::max(dmax,
                            path_fixed_delay_s(snaps[t], *paths[t], f.frame_bytes, cfg.node));
        for (int t = 0; t < m; ++t) {
            double fixed = path_fixed_delay_s(snaps[t], *paths[t], f.frame_bytes, cfg.node);
            double slack = dmax - fixed;
            int h = paths[t]->intermediate_count();
            if (h == 0) {
                if (slack > 1e-9) return false;
            } else if (cfg.node.d_proc_s + slack / h > cfg.node.t_buffer_max_s + 1e-12) {
                return false;
            }
        }
        d_target = dmax;
        return true;
    }

    double wcd_of(int fid, int slot) const {
        const Path& p = *(*chosen[fid])[slot];
        double w = 0.0;
        for (size_t i = 0; i + 1 < p.nodes.size(); ++i) {
            int li = snaps[slot].link_index(p.nodes[i], p.nodes[i + 1]);
            w += wcd_link_s(load[slot].overlap(li), c_max(slot, li));
        }
        return w;
    }

    // deadline check over every currently assigned flow (counters already
    // include the newest insertion); overlap growth is monotone so a failure
    // here prunes the whole subtree
    bool all_deadlines_hold() const {
        for (size_t f = 0; f < flows.size(); ++f) {
            if (!chosen[f]) continue;
            double d_target;
            std::vector<const Path*> paths = *chosen[f];
            if (!own_feasible(static_cast<int>(f), paths, d_target)) return false;
            for (int t = 0; t < m; ++t)
                if (d_target + wcd_of(static_cast<int>(f), t) >
                    flows[f].deadline_s + 1e-12)
                    return false;
        }
        return true;
    }

    bool bandwidth_holds(int fid) const {
        for (int t = 0; t < m; ++t) {
            const Path& p = *(*chosen[fid])[t];
            for (size_t i = 0; i + 1 < p.nodes.size(); ++i) {
                int li = snaps[t].link_index(p.nodes[i], p.nodes[i + 1]);
                if (load[t].entry(li).util_bps >
                    snaps[t].links[li].bandwidth_bps + 1e-3)
                    return false;
            }
        }
        return true;
    }

    void insert(int fid, const std::vector<const Path*>& paths) {
        chosen[fid] = paths;
        const TtFlow& f = flows[fid];
        double rate = 8.0 * f.frame_bytes / f.period_s;
        for (int t = 0; t < m; ++t)
            for (size_t i = 0; i + 1 < paths[t]->nodes.size(); ++i)
                load[t].add_flow(snaps[t].link_index(paths[t]->nodes[i], paths[t]->nodes[i + 1]),
                                 fid, f.src, rate);
    }

    void remove(int fid) {
        const TtFlow& f = flows[fid];
        double rate = 8.0 * f.frame_bytes / f.period_s;
        const auto& paths = *chosen[fid];
        for (int t = 0; t < m; ++t)
            for (size_t i = 0; i + 1 < paths[t]->nodes.size(); ++i) {
                int li = snaps[t].link_index(paths[t]->nodes[i], paths[t]->nodes[i + 1]);
                bool still = false;
                for (int j : load[t].entry(li).flow_ids)
                    if (j != fid && flows[j].src == f.src) {
                        still = true;
                        break;
                    }
                load[t].remove_flow(li, fid, f.src, rate, still);
            }
        chosen[fid].reset();
    }

    int current_z() const {
        int z = 0;
        for (int t = 0; t < m; ++t)
            for (size_t li = 0; li < load[t].num_links(); ++li)
                z = std::max(z, load[t].overlap(static_cast<int>(li)));
        return z;
    }

    void dfs(size_t depth, int j1, const CandidateTable& cands) {
        int remaining = static_cast<int>(flows.size() - depth);
        int z_now = current_z();
        if (j1 + remaining < best_j1) return;
        if (j1 + remaining == best_j1 && z_now >= best_z && best_j1 >= 0) return;
        if (depth == flows.size()) {
            if (j1 > best_j1 || (j1 == best_j1 && z_now < best_z)) {
                best_j1 = j1;
                best_z = z_now;
                best_choice = chosen;
            }
            return;
        }
        int fid = static_cast<int>(depth);

        // every per-slot candidate combination
        std::vector<std::span<const Path>> per_slot(m);
        bool has_all = true;
        for (int t = 0; t < m; ++t) {
            per_slot[t] = cands.paths_for(flows[fid], t);
            if (per_slot[t].empty()) has_all = false;
        }
        if (has_all) {
            std::vector<size_t> idx(m, 0);
            while (true) {
                std::vector<const Path*> paths(m);
                for (int t = 0; t < m; ++t) paths[t] = &per_slot[t][idx[t]];
                double d_target;
                if (own_feasible(fid, paths, d_target)) {
                    insert(fid, paths);
                    if (bandwidth_holds(fid) && all_deadlines_hold())
                        dfs(depth + 1, j1 + 1, cands);
                    remove(fid);
                }
                int t = m - 1;
                while (t >= 0 && ++idx[t] == per_slot[t].size()) idx[t--] = 0;
                if (t < 0) break;
            }
        }
        // y = 0 branch
        dfs(depth + 1, j1, cands);
    }
};

}  // namespace

OracleResult exact_lex_solve(const std::vector<TopologySnapshot>& snapshots,
                             const std::vector<TtFlow>& flows, const CandidateTable& candidates,
                             const SchedulerConfig& cfg) {
    if (flows.size() > 6 || snapshots.size() > 2 || candidates.k() > 3)
        throw std::invalid_argument(
            "instance too large for the exhaustive solver (max 6 flows, 2 slots, k=3)");

    SolverState st(snapshots, flows, cfg);
    st.dfs(0, 0, candidates);

    OracleResult res;
    res.j1 = std::max(0, st.best_j1);
    res.j2_max_overlap = st.best_j1 >= 0 ? st.best_z : 0;

    // materialize the witness schedule
    const int m = static_cast<int>(snapshots.size());
    Schedule w;
    w.num_slots = m;
    w.entries.resize(flows.size());
    std::vector<LinkLoadState> load;
    for (int t = 0; t < m; ++t) load.emplace_back(snapshots[t].links.size());
    for (size_t f = 0; f < flows.size(); ++f) {
        w.entries[f].flow_id = static_cast<int>(f);
        if (st.best_j1 < 0 || !st.best_choice[f]) continue;
        double rate = 8.0 * flows[f].frame_bytes / flows[f].period_s;
        for (int t = 0; t < m; ++t) {
            const Path* p = (*st.best_choice[f])[t];
            for (size_t i = 0; i + 1 < p->nodes.size(); ++i)
                load[t].add_flow(snapshots[t].link_index(p->nodes[i], p->nodes[i + 1]),
                                 static_cast<int>(f), flows[f].src, rate);
        }
    }
    for (size_t f = 0; f < flows.size(); ++f) {
        if (st.best_j1 < 0 || !st.best_choice[f]) continue;
        std::vector<Path> paths(m);
        for (int t = 0; t < m; ++t) paths[t] = *(*st.best_choice[f])[t];
        ResidenceAllocation alloc = allocate_residence(flows[f], paths, snapshots, load, cfg.node,
                                                       cfg.max_frame_bytes);
        if (!alloc.feasible)
            throw std::logic_error("oracle witness failed residence allocation: " + alloc.reason);
        ScheduleEntry& e = w.entries[f];
        e.scheduled = true;
        e.path_per_slot = std::move(paths);
        e.d_target_s = alloc.d_target_s;
        e.residence_s = std::move(alloc.residence_s);
        e.wcd_total_s = std::move(alloc.wcd_total_s);
    }
    w.load_per_slot = std::move(load);
    res.witness = std::move(w);
    return res;
}

}  // namespace crt
