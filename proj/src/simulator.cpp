#include "crt/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <stdexcept>
#include <unordered_map>

#include "crt/rng.hpp"

namespace crt {

namespace {

constexpr uint64_t kPhaseStream = 0x70686173u;   // phase draws
constexpr uint64_t kClockStream = 0x636c6f63u;   // clock draws
constexpr double kStaggerPad = 1e-6;             // guard band around forbidden arcs

double wrap(double x, double period) {
    double r = std::fmod(x, period);
    if (r < 0.0) r += period;
    return r;
}

// Cumulative offset from emission to the release instant on each hop of a
// path, assuming no queueing: sums transmission + propagation of prior links
// plus residences at prior intermediate vertices.
std::vector<double> hop_release_offsets(const Path& p, const TopologySnapshot& snap,
                                        const std::vector<double>& residence, double frame_bytes) {
    const size_t hops = p.nodes.size() - 1;
    std::vector<double> off(hops, 0.0);
    double acc = 0.0;
    for (size_t h = 0; h < hops; ++h) {
        off[h] = acc;
        int li = snap.link_index(p.nodes[h], p.nodes[h + 1]);
        if (li < 0) throw std::logic_error("hop_release_offsets: path link missing");
        const auto& lk = snap.links[li];
        acc += transmission_time_s(frame_bytes, lk.bandwidth_bps) + lk.prop_delay_s;
        if (h + 1 < hops) acc += residence[h];  // residence at vertex h+1
    }
    return off;
}

struct Arc {
    double lo, hi;  // forbidden phase interval, may need wrapping into [0, T)
};

// Shifts phi to the nearest point outside all forbidden arcs on the circle
// [0, period). Empty result when the arcs cover the whole circle.
std::optional<double> resolve_phase(double phi, const std::vector<Arc>& arcs, double period) {
    std::vector<std::pair<double, double>> ivs;
    for (const Arc& a : arcs) {
        if (a.hi - a.lo >= period) return std::nullopt;
        double lo = wrap(a.lo, period), hi = wrap(a.hi, period);
        if (lo <= hi) {
            ivs.push_back({lo, hi});
        } else {  // wraps around 0
            ivs.push_back({lo, period});
            ivs.push_back({0.0, hi});
        }
    }
    std::sort(ivs.begin(), ivs.end());
    std::vector<std::pair<double, double>> merged;
    for (const auto& iv : ivs) {
        if (!merged.empty() && iv.first <= merged.back().second)
            merged.back().second = std::max(merged.back().second, iv.second);
        else
            merged.push_back(iv);
    }
    double covered = 0.0;
    for (const auto& iv : merged) covered += iv.second - iv.first;
    if (covered >= period) return std::nullopt;
    for (const auto& iv : merged) {
        if (phi >= iv.first && phi < iv.second) {
            phi = wrap(iv.second, period);
            // after wrapping we may land in the first interval; rescan once
            for (const auto& iv2 : merged)
                if (phi >= iv2.first && phi < iv2.second) phi = wrap(iv2.second, period);
            break;
        }
    }
    return phi;
}

// Last-resort placement when no point guarantees separation: the midpoint of
// the widest gap between consecutive arc starts, i.e. maximal nominal
// clearance from every sibling window.
double widest_gap_phase(const std::vector<Arc>& arcs, double period) {
    std::vector<double> starts;
    for (const Arc& a : arcs) starts.push_back(wrap(a.lo, period));
    std::sort(starts.begin(), starts.end());
    double best_gap = starts.front() + period - starts.back();
    double best_at = wrap(starts.back() + 0.5 * best_gap, period);
    for (size_t i = 0; i + 1 < starts.size(); ++i) {
        const double gap = starts[i + 1] - starts[i];
        if (gap > best_gap) {
            best_gap = gap;
            best_at = starts[i] + 0.5 * gap;
        }
    }
    return best_at;
}

// Worst-case queueing a frame can have accrued through each hop of its path
// (the per-link allowances up to and including hop h). acc[h] bounds how late
// the frame can still occupy hop h's link relative to its nominal offset, so
// it sets the stagger needed in front of a same-source sibling.
std::vector<double> accrued_wait_bounds(const Path& p, const TopologySnapshot& snap,
                                        const LinkLoadState& load, double frame_bytes) {
    const size_t hops = p.nodes.size() - 1;
    std::vector<double> acc(hops, 0.0);
    double sum = 0.0;
    for (size_t h = 0; h < hops; ++h) {
        int li = snap.link_index(p.nodes[h], p.nodes[h + 1]);
        if (li < 0) throw std::logic_error("accrued_wait_bounds: path link missing");
        double c = transmission_time_s(frame_bytes, snap.links[li].bandwidth_bps);
        sum += wcd_link_s(load.overlap(li), c);
        acc[h] = sum;
    }
    return acc;
}

// Frames from the same source are emitted back-to-back on one uplink, so two
// flows of one source can never release simultaneously onto a shared link.
// Random phases do not model that serialization; this pass nudges phases so
// that, for every shared directed link, the flows' transmission windows stay
// apart. The guaranteed arcs account for the worst queueing shift the leading
// frame can still carry at the shared hop (one-sided, since each frame only
// ever shifts later); when no point satisfies all of them the pass falls back
// to the nominal (shift-free) windows, then to maximal clearance.
void serialize_same_source_phases(std::vector<double>& phases, const Schedule& schedule,
                                  const std::vector<TopologySnapshot>& snapshots,
                                  const std::vector<TtFlow>& flows, double frame_bytes) {
    std::map<NodeId, std::vector<int>> by_src;
    for (const auto& f : flows)
        if (schedule.entries[f.id].scheduled) by_src[f.src].push_back(f.id);

    for (auto& [src, ids] : by_src) {
        std::sort(ids.begin(), ids.end());
        for (size_t k = 1; k < ids.size(); ++k) {
            const int fb = ids[k];
            const double period = flows[fb].period_s;
            std::vector<Arc> strong, nominal;
            for (size_t j = 0; j < k; ++j) {
                const int fa = ids[j];
                if (std::abs(flows[fa].period_s - period) > 1e-15) continue;
                for (int t = 0; t < schedule.num_slots; ++t) {
                    const auto& ea = schedule.entries[fa];
                    const auto& eb = schedule.entries[fb];
                    if (ea.path_per_slot[t].empty() || eb.path_per_slot[t].empty()) continue;
                    const Path& pa = ea.path_per_slot[t];
                    const Path& pb = eb.path_per_slot[t];
                    auto offa = hop_release_offsets(pa, snapshots[t], ea.residence_s[t],
                                                    frame_bytes);
                    auto offb = hop_release_offsets(pb, snapshots[t], eb.residence_s[t],
                                                    frame_bytes);
                    auto acca = accrued_wait_bounds(pa, snapshots[t],
                                                    schedule.load_per_slot[t], frame_bytes);
                    auto accb = accrued_wait_bounds(pb, snapshots[t],
                                                    schedule.load_per_slot[t], frame_bytes);
                    for (size_t ha = 0; ha + 1 < pa.nodes.size(); ++ha) {
                        for (size_t hb = 0; hb + 1 < pb.nodes.size(); ++hb) {
                            if (pa.nodes[ha] != pb.nodes[hb] ||
                                pa.nodes[ha + 1] != pb.nodes[hb + 1])
                                continue;
                            int li = snapshots[t].link_index(pa.nodes[ha], pa.nodes[ha + 1]);
                            double c = transmission_time_s(frame_bytes,
                                                           snapshots[t].links[li].bandwidth_bps);
                            // release gap on the link == phase gap (same source clock)
                            double center = phases[fa] + offa[ha] - offb[hb];
                            // fb behind fa: gap must outlast fa's latest
                            // occupancy; fb ahead of fa: symmetric with fb's
                            strong.push_back({center - (c + accb[hb] + kStaggerPad),
                                              center + (c + acca[ha] + kStaggerPad)});
                            nominal.push_back({center - (c + kStaggerPad),
                                               center + (c + kStaggerPad)});
                        }
                    }
                }
            }
            if (strong.empty()) continue;
            if (auto p = resolve_phase(phases[fb], strong, period)) {
                phases[fb] = *p;
            } else if (auto q = resolve_phase(phases[fb], nominal, period)) {
                phases[fb] = *q;
            } else {
                phases[fb] = widest_gap_phase(nominal, period);
            }
        }
    }
}

struct Frame {
    int flow = 0;
    int64_t seq = 0;
    int slot = 0;
    int rec = 0;  // index into records
};

enum class EvKind : int8_t { Emit = 0, Release = 1, Arrive = 2 };

struct Event {
    double t = 0.0;
    EvKind kind = EvKind::Emit;
    int flow = 0;
    int64_t seq = 0;
    int16_t hop = 0;
    int rec = -1;

    bool operator>(const Event& o) const {
        if (t != o.t) return t > o.t;
        if (kind != o.kind) return kind > o.kind;
        if (flow != o.flow) return flow > o.flow;
        if (seq != o.seq) return seq > o.seq;
        return hop > o.hop;
    }
};

}  // namespace

ClockModel ClockModel::synchronized(int num_nodes) {
    ClockModel m;
    m.offset_s.assign(num_nodes, 0.0);
    m.drift_rate.assign(num_nodes, 0.0);
    return m;
}

ClockModel ClockModel::randomized(int num_nodes, double max_offset_s, double max_drift,
                                  uint64_t seed) {
    ClockModel m;
    m.offset_s.resize(num_nodes);
    m.drift_rate.resize(num_nodes);
    Rng rng(substream(seed, kClockStream));
    for (int i = 0; i < num_nodes; ++i) m.offset_s[i] = rng.uniform(0.0, max_offset_s);
    for (int i = 0; i < num_nodes; ++i) m.drift_rate[i] = rng.uniform(-max_drift, max_drift);
    return m;
}

SimResult simulate_run(const Schedule& schedule, const std::vector<TopologySnapshot>& snapshots,
                       const std::vector<TtFlow>& flows, const ClockModel& clocks,
                       const SimConfig& cfg, uint64_t seed) {
    if (snapshots.empty()) throw std::invalid_argument("simulate_run: no snapshots");
    if (static_cast<int>(snapshots.size()) != schedule.num_slots)
        throw std::invalid_argument("simulate_run: snapshot/schedule slot mismatch");
    if (schedule.entries.size() != flows.size())
        throw std::invalid_argument("simulate_run: schedule/flow count mismatch");
    const int num_nodes = snapshots[0].num_nodes;
    if (static_cast<int>(clocks.offset_s.size()) != num_nodes ||
        static_cast<int>(clocks.drift_rate.size()) != num_nodes)
        throw std::invalid_argument("simulate_run: clock model size mismatch");
    const double slot_dur = snapshots[0].duration_s;
    const int num_slots = schedule.num_slots;

    SimResult result;
    result.phases_s.assign(flows.size(), 0.0);
    {
        Rng rng(substream(seed, kPhaseStream));
        for (size_t i = 0; i < flows.size(); ++i)
            result.phases_s[i] = rng.uniform(0.0, flows[i].period_s);
    }
    double max_frame = 1500.0;
    for (const auto& f : flows) max_frame = std::max(max_frame, f.frame_bytes);
    serialize_same_source_phases(result.phases_s, schedule, snapshots, flows, max_frame);

    std::priority_queue<Event, std::vector<Event>, std::greater<Event>> pq;
    std::vector<PacketRecord> records;
    std::vector<int64_t> next_seq(flows.size(), 0);

    // first emission per flow: smallest n >= 0 with global emission time >= 0
    auto emission_global = [&](int fid, int64_t n) {
        const auto& f = flows[fid];
        return clocks.to_global(f.src, result.phases_s[fid] + double(n) * f.period_s);
    };
    auto push_next_emission = [&](int fid) {
        while (true) {
            double g = emission_global(fid, next_seq[fid]);
            if (g < 0.0) {
                ++next_seq[fid];
                continue;
            }
            if (g >= cfg.horizon_s) return;
            pq.push(Event{g, EvKind::Emit, fid, next_seq[fid], 0, -1});
            return;
        }
    };
    for (size_t i = 0; i < flows.size(); ++i)
        if (schedule.entries[i].scheduled) push_next_emission(static_cast<int>(i));

    std::unordered_map<LinkKey, double> free_at;
    free_at.reserve(snapshots[0].links.size() * 2);

    auto slot_of = [&](double t) {
        int s = static_cast<int>(std::floor(t / slot_dur));
        return std::min(std::max(s, 0), num_slots - 1);
    };

    auto release_hop = [&](double t, int rec_idx) {
        PacketRecord& rec = records[rec_idx];
        const auto& entry = schedule.entries[rec.flow_id];
        const Path& p = entry.path_per_slot[rec.slot];
        const auto& snap = snapshots[rec.slot];
        const int hop = static_cast<int>(rec.queue_wait_per_hop_s.size());
        int li = snap.link_index(p.nodes[hop], p.nodes[hop + 1]);
        const auto& lk = snap.links[li];
        LinkKey key = link_key(p.nodes[hop], p.nodes[hop + 1]);
        double start = t;
        auto it = free_at.find(key);
        if (it != free_at.end()) start = std::max(start, it->second);
        if (cfg.model_remnant_blocking)
            start += transmission_time_s(cfg.remnant_bytes, lk.bandwidth_bps);
        const double c = transmission_time_s(flows[rec.flow_id].frame_bytes, lk.bandwidth_bps);
        rec.queue_wait_per_hop_s.push_back(start - t);
        rec.queue_wait_total_s += start - t;
        free_at[key] = start + c;
        pq.push(Event{start + c + lk.prop_delay_s, EvKind::Arrive, rec.flow_id, rec.seq,
                      static_cast<int16_t>(hop + 1), rec_idx});
    };

    while (!pq.empty()) {
        Event ev = pq.top();
        pq.pop();
        switch (ev.kind) {
            case EvKind::Emit: {
                const int fid = ev.flow;
                const int slot = slot_of(ev.t);
                ++next_seq[fid];
                push_next_emission(fid);
                const auto& entry = schedule.entries[fid];
                if (entry.path_per_slot[slot].empty()) break;  // not forwarded in this slot
                PacketRecord rec;
                rec.flow_id = fid;
                rec.seq = ev.seq;
                rec.slot = slot;
                rec.emit_s = ev.t;
                rec.arrival_per_hop_s.push_back(ev.t);
                records.push_back(std::move(rec));
                release_hop(ev.t, static_cast<int>(records.size()) - 1);
                break;
            }
            case EvKind::Release:
                release_hop(ev.t, ev.rec);
                break;
            case EvKind::Arrive: {
                PacketRecord& rec = records[ev.rec];
                const auto& entry = schedule.entries[rec.flow_id];
                const Path& p = entry.path_per_slot[rec.slot];
                rec.arrival_per_hop_s.push_back(ev.t);
                if (ev.hop == static_cast<int16_t>(p.nodes.size()) - 1) {
                    rec.delivered = true;
                    rec.delivered_s = ev.t;
                    rec.e2e_delay_s = ev.t - rec.emit_s;
                } else {
                    // intermediate vertex: hold for the scheduled residence
                    const double dt = entry.residence_s[rec.slot][ev.hop - 1];
                    pq.push(Event{ev.t + dt, EvKind::Release, rec.flow_id, rec.seq, ev.hop,
                                  ev.rec});
                }
                break;
            }
        }
    }

    result.packets = std::move(records);
    return result;
}

std::vector<JitterStats> measure_jitter(const std::vector<PacketRecord>& packets) {
    std::map<int, std::vector<double>> by_flow;
    for (const auto& p : packets)
        if (p.delivered) by_flow[p.flow_id].push_back(p.e2e_delay_s);
    std::vector<JitterStats> out;
    out.reserve(by_flow.size());
    for (auto& [fid, v] : by_flow) {
        std::sort(v.begin(), v.end());
        JitterStats s;
        s.flow_id = fid;
        s.count = static_cast<int>(v.size());
        s.min_s = v.front();
        s.max_s = v.back();
        s.spread_s = s.max_s - s.min_s;
        auto rank = [&](double q) {
            size_t r = static_cast<size_t>(std::ceil(q * double(v.size())));
            return v[std::min(std::max<size_t>(r, 1), v.size()) - 1];
        };
        s.p50_s = rank(0.50);
        s.p99_s = rank(0.99);
        out.push_back(s);
    }
    return out;
}

CollisionTime predict_first_collision(const Schedule& schedule,
                                      const std::vector<TopologySnapshot>& snapshots,
                                      const std::vector<TtFlow>& flows, int flow_a, int flow_b,
                                      NodeId link_u, NodeId link_v, const ClockModel& clocks,
                                      const std::vector<double>& phases_s) {
    if (snapshots.empty()) throw std::invalid_argument("predict_first_collision: no snapshots");
    const auto& ea = schedule.entries.at(flow_a);
    const auto& eb = schedule.entries.at(flow_b);
    if (!ea.scheduled || !eb.scheduled || ea.path_per_slot[0].empty() ||
        eb.path_per_slot[0].empty())
        throw std::invalid_argument("predict_first_collision: flow not scheduled in slot 0");
    const auto& fa = flows.at(flow_a);
    const auto& fb = flows.at(flow_b);
    if (std::abs(fa.period_s - fb.period_s) > 1e-15)
        throw std::invalid_argument("predict_first_collision: periods differ");
    const auto& snap = snapshots[0];

    auto link_offset = [&](const ScheduleEntry& e, const TtFlow& f) {
        const Path& p = e.path_per_slot[0];
        auto off = hop_release_offsets(p, snap, e.residence_s[0], f.frame_bytes);
        for (size_t h = 0; h + 1 < p.nodes.size(); ++h)
            if (p.nodes[h] == link_u && p.nodes[h + 1] == link_v) return off[h];
        throw std::invalid_argument("predict_first_collision: link not on flow path");
    };
    const double off_a = link_offset(ea, fa);
    const double off_b = link_offset(eb, fb);

    auto first_emit = [&](const TtFlow& f, double phase) {
        int64_t n = 0;
        while (clocks.to_global(f.src, phase + double(n) * f.period_s) < 0.0) ++n;
        return clocks.to_global(f.src, phase + double(n) * f.period_s);
    };
    const double a0 = first_emit(fa, phases_s[flow_a]) + off_a;
    const double b0 = first_emit(fb, phases_s[flow_b]) + off_b;
    const double pa = fa.period_s / (1.0 + clocks.drift_rate[fa.src]);
    const double pb = fb.period_s / (1.0 + clocks.drift_rate[fb.src]);

    int li = snap.link_index(link_u, link_v);
    if (li < 0) throw std::invalid_argument("predict_first_collision: link absent in slot 0");
    const double bw = snap.links[li].bandwidth_bps;
    const double ca = transmission_time_s(fa.frame_bytes, bw);
    const double cb = transmission_time_s(fb.frame_bytes, bw);

    // Position of flow-a release n within flow-b's release grid.
    auto pos_of = [&](int64_t n) { return wrap(a0 + double(n) * pa - b0, pb); };
    auto contends = [&](int64_t n) {
        double pos = pos_of(n);
        return pos < cb || pos > pb - ca;
    };
    const double delta = pa - pb;  // per-release slide of the gap

    if (contends(0)) return CollisionImmediate{};
    if (delta == 0.0) return CollisionNever{};

    // Distance (in flow-b grid phase) from the current gap to the contention
    // window, closing at |delta| per flow-a release.
    const double pos0 = pos_of(0);
    CollisionTime base = (delta < 0.0) ? drift_collision_time(pos0, cb, -delta)
                                       : drift_collision_time(pb - pos0, ca, delta);
    if (std::holds_alternative<CollisionImmediate>(base)) return a0;
    const double n_est = std::get<double>(base);  // releases until the window is reached

    const int64_t n_lo = std::max<int64_t>(0, static_cast<int64_t>(std::floor(n_est)) - 2);
    const int64_t n_cap = n_lo + 10'000'000;
    for (int64_t n = n_lo; n <= n_cap; ++n)
        if (contends(n)) return a0 + double(n) * pa;
    throw std::runtime_error("predict_first_collision: no contention found near estimate");
}

std::optional<double> first_contention_time(const SimResult& result, const Schedule& schedule,
                                            NodeId link_u, NodeId link_v) {
    std::optional<double> best;
    for (const auto& rec : result.packets) {
        const auto& entry = schedule.entries[rec.flow_id];
        if (entry.path_per_slot[rec.slot].empty()) continue;
        const Path& p = entry.path_per_slot[rec.slot];
        for (size_t h = 0; h < rec.queue_wait_per_hop_s.size(); ++h) {
            if (p.nodes[h] != link_u || p.nodes[h + 1] != link_v) continue;
            if (rec.queue_wait_per_hop_s[h] <= 1e-12) continue;
            double release = rec.arrival_per_hop_s[h] +
                             (h > 0 ? entry.residence_s[rec.slot][h - 1] : 0.0);
            if (!best || release < *best) best = release;
        }
    }
    return best;
}

}  // namespace crt
