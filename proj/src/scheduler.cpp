#include "crt/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace crt {

namespace {
// Admission works at tighter tolerances than the verifier (1e-9) so verified
// schedules never sit on the edge.
constexpr double kDeadlineEps = 1e-12;
constexpr double kBufferEps = 1e-12;
constexpr double kBandwidthEpsBps = 1e-3;
constexpr double kInf = std::numeric_limits<double>::infinity();

double flow_rate_bps(const TtFlow& f) { return 8.0 * f.frame_bytes / f.period_s; }
}  // namespace

const char* algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::CrtFast: return "crt_fast";
        case Algorithm::Spf: return "spf";
        case Algorithm::Lag: return "lag";
        case Algorithm::StrictNonOverlap: return "strict";
    }
    return "?";
}

std::optional<Algorithm> algorithm_from_name(const std::string& s) {
    if (s == "crt_fast") return Algorithm::CrtFast;
    if (s == "spf") return Algorithm::Spf;
    if (s == "lag") return Algorithm::Lag;
    if (s == "strict") return Algorithm::StrictNonOverlap;
    return std::nullopt;
}

ResidenceAllocation allocate_residence(const TtFlow& flow, const std::vector<Path>& path_per_slot,
                                       const std::vector<TopologySnapshot>& snapshots,
                                       const std::vector<LinkLoadState>& load_per_slot,
                                       const NodeParams& np, double max_frame_bytes) {
    ResidenceAllocation out;
    const int m = static_cast<int>(snapshots.size());
    if (static_cast<int>(path_per_slot.size()) != m ||
        static_cast<int>(load_per_slot.size()) != m)
        throw std::invalid_argument("path/load lists must cover every slot");

    std::vector<double> d_fixed(m), wcd(m);
    for (int t = 0; t < m; ++t) {
        const Path& p = path_per_slot[t];
        if (p.nodes.size() < 2) {
            out.reason = "missing path in slot " + std::to_string(t);
            return out;
        }
        d_fixed[t] = path_fixed_delay_s(snapshots[t], p, flow.frame_bytes, np);
        double w = 0.0;
        for (size_t i = 0; i + 1 < p.nodes.size(); ++i) {
            int li = snapshots[t].link_index(p.nodes[i], p.nodes[i + 1]);
            if (li < 0) {
                out.reason = "path uses a link absent from slot " + std::to_string(t);
                return out;
            }
            double c_max = transmission_time_s(max_frame_bytes, snapshots[t].links[li].bandwidth_bps);
            w += wcd_link_s(load_per_slot[t].overlap(li), c_max);
        }
        wcd[t] = w;
    }

    double d_target = *std::max_element(d_fixed.begin(), d_fixed.end());
    out.residence_s.resize(m);
    for (int t = 0; t < m; ++t) {
        if (d_target + wcd[t] > flow.deadline_s + kDeadlineEps) {
            out.reason = "deadline margin exceeded in slot " + std::to_string(t);
            out.residence_s.clear();
            return out;
        }
        double slack = d_target - d_fixed[t];
        int h = path_per_slot[t].intermediate_count();
        if (h == 0) {
            if (slack > 1e-9) {
                out.reason = "no intermediate hop to absorb slack in slot " + std::to_string(t);
                out.residence_s.clear();
                return out;
            }
            continue;  // empty residence vector for this slot
        }
        double dt = np.d_proc_s + slack / h;
        if (dt > np.t_buffer_max_s + kBufferEps) {
            out.reason = "buffer bound exceeded in slot " + std::to_string(t);
            out.residence_s.clear();
            return out;
        }
        out.residence_s[t].assign(h, dt);
    }
    out.feasible = true;
    out.d_target_s = d_target;
    out.wcd_total_s = wcd;
    return out;
}

// ---------------------------------------------------------------------------

struct SlotScheduler::Impl {
    const std::vector<TopologySnapshot>& snaps;
    const std::vector<TtFlow>& flows;
    const CandidateTable& cands;
    SchedulerConfig cfg;
    int m;

    std::vector<std::vector<double>> c_max;  // [slot][link]
    std::vector<LinkLoadState> load;         // [slot]

    struct Committed {
        Path path;
        std::vector<int> link_idx;
        double d_fixed = 0.0;
        double wcd = 0.0;     // kept in sync with the counters
        double margin = 0.0;  // deadline - d_fixed - wcd
    };
    std::vector<std::vector<std::optional<Committed>>> committed;  // [flow][slot]

    struct FlowState {
        double rate_bps = 0.0;
        // running cross-slot buffer guard over the flow's committed slots
        double max_dfixed = 0.0;
        double buf_cap_min = kInf;  // min over slots of d_fixed + h*(t_buf - d_proc)
        int committed_count = 0;
    };
    std::vector<FlowState> fstate;

    Impl(const std::vector<TopologySnapshot>& s, const std::vector<TtFlow>& f,
         const CandidateTable& c, const SchedulerConfig& k)
        : snaps(s), flows(f), cands(c), cfg(k), m(static_cast<int>(s.size())) {
        if (m == 0) throw std::invalid_argument("no snapshots");
        if (static_cast<int>(cands.num_slots()) != m)
            throw std::invalid_argument("candidate table does not match slot count");
        c_max.resize(m);
        load.reserve(m);
        for (int t = 0; t < m; ++t) {
            c_max[t].resize(snaps[t].links.size());
            for (size_t i = 0; i < snaps[t].links.size(); ++i)
                c_max[t][i] = transmission_time_s(cfg.max_frame_bytes,
                                                  snaps[t].links[i].bandwidth_bps);
            load.emplace_back(snaps[t].links.size());
        }
        committed.assign(flows.size(), std::vector<std::optional<Committed>>(m));
        fstate.resize(flows.size());
        for (size_t i = 0; i < flows.size(); ++i) {
            if (flows[i].id != static_cast<int>(i))
                throw std::invalid_argument("flow ids must be dense and in order");
            fstate[i].rate_bps = flow_rate_bps(flows[i]);
        }
    }

    struct InsertPlan {
        std::vector<int> link_idx;
        std::vector<char> new_src;  // per link
        double d_fixed = 0.0;
        double wcd = 0.0;
    };

    std::optional<InsertPlan> eval_insert(int flow_id, const Path& p, int slot) const {
        const TopologySnapshot& snap = snaps[slot];
        const TtFlow& f = flows[flow_id];
        if (p.nodes.size() < 2 || p.nodes.front() != f.src || p.nodes.back() != f.dst)
            return std::nullopt;
        InsertPlan plan;
        const size_t hops = p.nodes.size() - 1;
        plan.link_idx.reserve(hops);
        plan.new_src.reserve(hops);
        double rate = fstate[flow_id].rate_bps;

        double d_fixed = np().d_proc_s * p.intermediate_count();
        for (size_t i = 0; i < hops; ++i) {
            int li = snap.link_index(p.nodes[i], p.nodes[i + 1]);
            if (li < 0) return std::nullopt;  // path invalid in this slot
            const auto& link = snap.links[li];
            if (load[slot].entry(li).util_bps + rate > link.bandwidth_bps + kBandwidthEpsBps)
                return std::nullopt;
            d_fixed += link.prop_delay_s + transmission_time_s(f.frame_bytes, link.bandwidth_bps);
            plan.link_idx.push_back(li);
            bool is_new = !load[slot].has_source(li, f.src);
            plan.new_src.push_back(is_new);
            plan.wcd += wcd_link_s(load[slot].overlap(li) + (is_new ? 1 : 0), c_max[slot][li]);
        }
        plan.d_fixed = d_fixed;

        // committed flows sharing a link whose overlap counter would grow
        // must keep a nonnegative deadline margin
        std::vector<std::pair<int, double>> deltas;  // (flow, added wcd)
        for (size_t i = 0; i < hops; ++i) {
            if (!plan.new_src[i]) continue;
            for (int j : load[slot].entry(plan.link_idx[i]).flow_ids) {
                auto it = std::find_if(deltas.begin(), deltas.end(),
                                       [j](const auto& d) { return d.first == j; });
                if (it == deltas.end())
                    deltas.emplace_back(j, c_max[slot][plan.link_idx[i]]);
                else
                    it->second += c_max[slot][plan.link_idx[i]];
            }
        }
        for (const auto& [j, d] : deltas)
            if (committed[j][slot]->margin < d - kDeadlineEps) return std::nullopt;

        // candidate's own deadline margin
        double slack = f.deadline_s - plan.wcd - plan.d_fixed;
        if (slack < -kDeadlineEps) return std::nullopt;

        // running buffer guard: the provisional target (max fixed delay over
        // slots assigned so far) must stay absorbable in every assigned slot
        double pad = np().t_buffer_max_s - np().d_proc_s;
        double cap_here = plan.d_fixed + p.intermediate_count() * pad;
        double new_target = std::max(fstate[flow_id].max_dfixed, plan.d_fixed);
        if (new_target > std::min(fstate[flow_id].buf_cap_min, cap_here) + kBufferEps)
            return std::nullopt;
        return plan;
    }

    void apply(int flow_id, const Path& p, int slot, InsertPlan&& plan) {
        const TtFlow& f = flows[flow_id];
        double rate = fstate[flow_id].rate_bps;
        for (size_t i = 0; i < plan.link_idx.size(); ++i) {
            int li = plan.link_idx[i];
            if (plan.new_src[i]) {
                // existing flows on the link gain one interfering source
                for (int j : load[slot].entry(li).flow_ids) {
                    Committed& cj = *committed[j][slot];
                    cj.wcd += c_max[slot][li];
                    cj.margin -= c_max[slot][li];
                }
            }
            load[slot].add_flow(li, flow_id, f.src, rate);
        }
        Committed c;
        c.path = p;
        c.link_idx = std::move(plan.link_idx);
        c.d_fixed = plan.d_fixed;
        c.wcd = plan.wcd;
        c.margin = f.deadline_s - plan.d_fixed - plan.wcd;
        committed[flow_id][slot] = std::move(c);

        FlowState& fs = fstate[flow_id];
        double pad = np().t_buffer_max_s - np().d_proc_s;
        fs.max_dfixed = std::max(fs.max_dfixed, plan.d_fixed);
        fs.buf_cap_min = std::min(fs.buf_cap_min, plan.d_fixed + p.intermediate_count() * pad);
        fs.committed_count++;
    }

    void release(int flow_id) {
        const TtFlow& f = flows[flow_id];
        double rate = fstate[flow_id].rate_bps;
        for (int t = 0; t < m; ++t) {
            if (!committed[flow_id][t]) continue;
            for (int li : committed[flow_id][t]->link_idx) {
                const auto& entry = load[t].entry(li);
                bool source_still = false;
                for (int j : entry.flow_ids)
                    if (j != flow_id && flows[j].src == f.src) {
                        source_still = true;
                        break;
                    }
                bool removed = load[t].remove_flow(li, flow_id, f.src, rate, source_still);
                if (removed) {
                    for (int j : load[t].entry(li).flow_ids) {
                        Committed& cj = *committed[j][t];
                        cj.wcd -= c_max[t][li];
                        cj.margin += c_max[t][li];
                    }
                }
            }
            committed[flow_id][t].reset();
        }
        fstate[flow_id].max_dfixed = 0.0;
        fstate[flow_id].buf_cap_min = kInf;
        fstate[flow_id].committed_count = 0;
    }

    const NodeParams& np() const { return cfg.node; }
};

SlotScheduler::SlotScheduler(const std::vector<TopologySnapshot>& snapshots,
                             const std::vector<TtFlow>& flows, const CandidateTable& candidates,
                             const SchedulerConfig& cfg)
    : impl_(std::make_unique<Impl>(snapshots, flows, candidates, cfg)) {}
SlotScheduler::~SlotScheduler() = default;

int SlotScheduler::num_slots() const { return impl_->m; }
const LinkLoadState& SlotScheduler::load(int slot) const { return impl_->load[slot]; }

const Path* SlotScheduler::committed_path(int flow_id, int slot) const {
    const auto& c = impl_->committed[flow_id][slot];
    return c ? &c->path : nullptr;
}

bool SlotScheduler::check_global_feasibility(int flow_id, const Path& p, int slot) const {
    return impl_->eval_insert(flow_id, p, slot).has_value();
}

bool SlotScheduler::commit(int flow_id, const Path& p, int slot) {
    if (impl_->committed[flow_id][slot])
        throw std::logic_error("flow already committed in this slot");
    auto plan = impl_->eval_insert(flow_id, p, slot);
    if (!plan) return false;
    impl_->apply(flow_id, p, slot, std::move(*plan));
    return true;
}

void SlotScheduler::release_flow(int flow_id) { impl_->release(flow_id); }

std::vector<std::pair<int, Path>> SlotScheduler::find_max_feasible_layer(
    int slot, const std::vector<int>& unscheduled) {
    Impl& im = *impl_;
    const TopologySnapshot& snap = im.snaps[slot];
    const size_t L = snap.links.size();

    // distinct-source link counts over the union of every unscheduled flow's
    // candidate paths
    std::vector<int> counts(L, 0);
    std::vector<std::vector<NodeId>> seen(L);
    for (int fid : unscheduled) {
        NodeId src = im.flows[fid].src;
        for (const Path& p : im.cands.paths_for(im.flows[fid], slot)) {
            for (size_t i = 0; i + 1 < p.nodes.size(); ++i) {
                int li = snap.link_index(p.nodes[i], p.nodes[i + 1]);
                if (li < 0) continue;
                auto& s = seen[li];
                if (std::find(s.begin(), s.end(), src) == s.end()) {
                    s.push_back(src);
                    counts[li]++;
                }
            }
        }
    }

    // Per flow: conflict score pc per candidate; cd = min pc, attained by the
    // preferred path p*. Ties in the argmin go to the earlier (shorter)
    // candidate so the result is deterministic.
    struct Item {
        int flow;
        long long cd;
        int pstar;  // candidate index attaining cd
    };
    std::vector<Item> items;
    items.reserve(unscheduled.size());
    for (int fid : unscheduled) {
        auto paths = im.cands.paths_for(im.flows[fid], slot);
        if (paths.empty()) continue;
        long long best_pc = 0;
        int best_idx = -1;
        for (size_t pi = 0; pi < paths.size(); ++pi) {
            long long pc = 0;
            bool ok = true;
            for (size_t i = 0; i + 1 < paths[pi].nodes.size(); ++i) {
                int li = snap.link_index(paths[pi].nodes[i], paths[pi].nodes[i + 1]);
                if (li < 0) {
                    ok = false;
                    break;
                }
                pc += counts[li] - 1;
            }
            if (ok && (best_idx < 0 || pc < best_pc)) {
                best_pc = pc;
                best_idx = static_cast<int>(pi);
            }
        }
        if (best_idx < 0) continue;
        items.push_back({fid, best_pc, best_idx});
    }
    std::sort(items.begin(), items.end(), [&](const Item& a, const Item& b) {
        if (a.cd != b.cd) return a.cd < b.cd;
        double da = im.flows[a.flow].deadline_s, db = im.flows[b.flow].deadline_s;
        if (da != db) return da < db;
        return a.flow < b.flow;
    });

    // Intra-layer conflicts are tracked per directed link at source
    // granularity: same-source flows are serialized at the ingress and never
    // collide, so they may share layer links without raising any overlap
    // counter (the +1-per-layer growth bound still holds).
    constexpr NodeId kFree = -1;
    std::vector<NodeId> layer_owner(L, kFree);
    std::vector<std::pair<int, Path>> layer;

    auto disjoint = [&](NodeId src, const Path& p) {
        for (size_t i = 0; i + 1 < p.nodes.size(); ++i) {
            int li = snap.link_index(p.nodes[i], p.nodes[i + 1]);
            if (li < 0 || (layer_owner[li] != kFree && layer_owner[li] != src)) return false;
        }
        return true;
    };
    auto try_admit = [&](int fid, const Path& p) {
        NodeId src = im.flows[fid].src;
        if (!disjoint(src, p)) return false;
        if (!commit(fid, p, slot)) return false;
        for (size_t i = 0; i + 1 < p.nodes.size(); ++i)
            layer_owner[snap.link_index(p.nodes[i], p.nodes[i + 1])] = src;
        layer.emplace_back(fid, p);
        return true;
    };

    for (const Item& it : items) {
        // previous-slot path first: temporal consistency
        if (im.cfg.path_continuity && slot > 0 && im.committed[it.flow][slot - 1]) {
            const Path& prev = im.committed[it.flow][slot - 1]->path;
            if (snap.has_path_links(prev) && try_admit(it.flow, prev)) continue;
        }
        // then the minimum-conflict path, then the remaining candidates in
        // shortest-first order
        auto paths = im.cands.paths_for(im.flows[it.flow], slot);
        if (try_admit(it.flow, paths[it.pstar])) continue;
        for (size_t pi = 0; pi < paths.size(); ++pi) {
            if (static_cast<int>(pi) == it.pstar) continue;
            if (try_admit(it.flow, paths[pi])) break;
        }
    }
    return layer;
}

Schedule SlotScheduler::finalize(const std::map<int, int>& dropped_at_slot) {
    Impl& im = *impl_;
    Schedule out;
    out.num_slots = im.m;
    out.entries.resize(im.flows.size());

    std::vector<int> fully;
    for (size_t f = 0; f < im.flows.size(); ++f) {
        out.entries[f].flow_id = static_cast<int>(f);
        if (im.fstate[f].committed_count == im.m) fully.push_back(static_cast<int>(f));
    }

    // residence allocation against frozen counters; failures drop afterwards
    std::vector<int> drops;
    for (int f : fully) {
        std::vector<Path> paths(im.m);
        for (int t = 0; t < im.m; ++t) paths[t] = im.committed[f][t]->path;
        ResidenceAllocation alloc = allocate_residence(im.flows[f], paths, im.snaps, im.load,
                                                       im.np(), im.cfg.max_frame_bytes);
        if (!alloc.feasible) {
            drops.push_back(f);
            continue;
        }
        ScheduleEntry& e = out.entries[f];
        e.scheduled = true;
        e.path_per_slot = std::move(paths);
        e.d_target_s = alloc.d_target_s;
        e.residence_s = std::move(alloc.residence_s);
        e.wcd_total_s = std::move(alloc.wcd_total_s);
    }
    for (int f : drops) im.release(f);

    // refresh per-slot WCDs from the final counters
    for (auto& e : out.entries) {
        if (!e.scheduled) continue;
        for (int t = 0; t < im.m; ++t) {
            double w = 0.0;
            for (int li : im.committed[e.flow_id][t]->link_idx)
                w += wcd_link_s(im.load[t].overlap(li), im.c_max[t][li]);
            e.wcd_total_s[t] = w;
        }
    }
    for (const auto& [f, slot] : dropped_at_slot)
        out.entries[f].dropped_at_slot = slot;
    out.load_per_slot = im.load;
    return out;
}

// ---------------------------------------------------------------------------

Schedule crt_fast(const std::vector<TopologySnapshot>& snapshots, const std::vector<TtFlow>& flows,
                  const CandidateTable& candidates, const SchedulerConfig& cfg) {
    SlotScheduler ss(snapshots, flows, candidates, cfg);
    const int m = static_cast<int>(snapshots.size());
    std::vector<int> alive(flows.size());
    for (size_t i = 0; i < flows.size(); ++i) alive[i] = static_cast<int>(i);
    std::map<int, int> dropped_at;

    for (int t = 0; t < m; ++t) {
        std::vector<int> unscheduled = alive;
        int layers = 0;
        while (!unscheduled.empty()) {
            if (cfg.layer_cap && layers >= *cfg.layer_cap) break;
            auto layer = ss.find_max_feasible_layer(t, unscheduled);
            if (layer.empty()) break;
            layers++;
            std::vector<char> got(flows.size(), 0);
            for (const auto& [f, p] : layer) got[f] = 1;
            std::erase_if(unscheduled, [&](int f) { return got[f]; });
        }
        // flows without a slot-t path lose global feasibility
        for (int f : unscheduled) {
            ss.release_flow(f);
            if (t > 0) dropped_at[f] = t;
        }
        std::vector<char> dead(flows.size(), 0);
        for (int f : unscheduled) dead[f] = 1;
        std::erase_if(alive, [&](int f) { return dead[f]; });
    }
    return ss.finalize(dropped_at);
}

namespace {

// Shared flow-sequential driver for the baselines: per flow, per slot, pick a
// path via `choose`; release the whole flow when any slot fails.
template <typename Chooser>
Schedule sequential_schedule(const std::vector<TopologySnapshot>& snapshots,
                             const std::vector<TtFlow>& flows, const CandidateTable& candidates,
                             const SchedulerConfig& cfg, Chooser&& choose) {
    SlotScheduler ss(snapshots, flows, candidates, cfg);
    const int m = static_cast<int>(snapshots.size());
    std::map<int, int> dropped_at;
    for (const TtFlow& f : flows) {
        bool ok = true;
        for (int t = 0; t < m && ok; ++t) {
            if (!choose(ss, f, t)) {
                if (t > 0) dropped_at[f.id] = t;
                ok = false;
            }
        }
        if (!ok) ss.release_flow(f.id);
    }
    return ss.finalize(dropped_at);
}

}  // namespace

Schedule spf_schedule(const std::vector<TopologySnapshot>& snapshots,
                      const std::vector<TtFlow>& flows, const CandidateTable& candidates,
                      const SchedulerConfig& cfg) {
    return sequential_schedule(snapshots, flows, candidates, cfg,
                               [&](SlotScheduler& ss, const TtFlow& f, int t) {
                                   auto paths = candidates.paths_for(f, t);
                                   if (paths.empty()) return false;
                                   return ss.commit(f.id, paths[0], t);
                               });
}

Schedule lag_schedule(const std::vector<TopologySnapshot>& snapshots,
                      const std::vector<TtFlow>& flows, const CandidateTable& candidates,
                      const SchedulerConfig& cfg) {
    NodeParams np = cfg.node;
    return sequential_schedule(
        snapshots, flows, candidates, cfg, [&, np](SlotScheduler& ss, const TtFlow& f, int t) {
            auto paths = candidates.paths_for(f, t);
            if (paths.empty()) return false;
            // least-aggregate-overlap first, shorter fixed delay on ties
            struct Ranked {
                long long congestion;
                double delay;
                int idx;
            };
            std::vector<Ranked> order;
            order.reserve(paths.size());
            for (size_t pi = 0; pi < paths.size(); ++pi) {
                long long cong = 0;
                for (size_t i = 0; i + 1 < paths[pi].nodes.size(); ++i) {
                    int li = snapshots[t].link_index(paths[pi].nodes[i], paths[pi].nodes[i + 1]);
                    if (li >= 0) cong += ss.load(t).overlap(li);
                }
                order.push_back(
                    {cong, path_fixed_delay_s(snapshots[t], paths[pi], f.frame_bytes, np),
                     static_cast<int>(pi)});
            }
            std::sort(order.begin(), order.end(), [](const Ranked& a, const Ranked& b) {
                if (a.congestion != b.congestion) return a.congestion < b.congestion;
                if (a.delay != b.delay) return a.delay < b.delay;
                return a.idx < b.idx;
            });
            for (const Ranked& r : order)
                if (ss.commit(f.id, paths[r.idx], t)) return true;
            return false;
        });
}

Schedule strict_nonoverlap_schedule(const std::vector<TopologySnapshot>& snapshots,
                                    const std::vector<TtFlow>& flows,
                                    const CandidateTable& candidates,
                                    const SchedulerConfig& cfg) {
    return sequential_schedule(
        snapshots, flows, candidates, cfg, [&](SlotScheduler& ss, const TtFlow& f, int t) {
            auto paths = candidates.paths_for(f, t);
            for (const Path& p : paths) {
                bool conflict_free = true;
                for (size_t i = 0; i + 1 < p.nodes.size() && conflict_free; ++i) {
                    int li = snapshots[t].link_index(p.nodes[i], p.nodes[i + 1]);
                    if (li < 0) {
                        conflict_free = false;
                        break;
                    }
                    int ov = ss.load(t).overlap(li);
                    if (ov > 1 || (ov == 1 && !ss.load(t).has_source(li, f.src)))
                        conflict_free = false;
                }
                if (conflict_free && ss.commit(f.id, p, t)) return true;
            }
            return false;
        });
}

Schedule run_algorithm(Algorithm a, const std::vector<TopologySnapshot>& snapshots,
                       const std::vector<TtFlow>& flows, const CandidateTable& candidates,
                       const SchedulerConfig& cfg) {
    switch (a) {
        case Algorithm::CrtFast: return crt_fast(snapshots, flows, candidates, cfg);
        case Algorithm::Spf: return spf_schedule(snapshots, flows, candidates, cfg);
        case Algorithm::Lag: return lag_schedule(snapshots, flows, candidates, cfg);
        case Algorithm::StrictNonOverlap:
            return strict_nonoverlap_schedule(snapshots, flows, candidates, cfg);
    }
    throw std::invalid_argument("unknown algorithm");
}

}  // namespace crt
