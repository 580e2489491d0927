#include "crt/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "crt/timing.hpp"

namespace crt {

OverlapStats overlap_stats(const Schedule& schedule,
                           const std::vector<TopologySnapshot>& snapshots,
                           const std::vector<TtFlow>& flows) {
    OverlapStats st;
    for (int t = 0; t < schedule.num_slots; ++t) {
        std::unordered_map<LinkKey, std::vector<NodeId>> sources;
        for (const auto& e : schedule.entries) {
            if (!e.scheduled || e.path_per_slot[t].empty()) continue;
            const Path& p = e.path_per_slot[t];
            const NodeId src = flows[e.flow_id].src;
            for (size_t h = 0; h + 1 < p.nodes.size(); ++h) {
                auto& v = sources[link_key(p.nodes[h], p.nodes[h + 1])];
                if (std::find(v.begin(), v.end(), src) == v.end()) v.push_back(src);
            }
        }
        (void)snapshots;
        for (const auto& [key, v] : sources) {
            const int n = static_cast<int>(v.size());
            ++st.histogram[n];
            st.max_overlap = std::max(st.max_overlap, n);
        }
    }
    int total = 0;
    for (const auto& [n, c] : st.histogram) total += c;
    int acc = 0;
    for (const auto& [n, c] : st.histogram) {
        acc += c;
        st.cdf.push_back({n, total > 0 ? double(acc) / double(total) : 0.0});
    }
    if (total > 0) {
        auto it = st.histogram.find(1);
        st.fraction_at_one = it == st.histogram.end() ? 0.0 : double(it->second) / double(total);
    }
    return st;
}

std::vector<std::pair<int, double>> overlap_cdf(const std::vector<int>& counts) {
    std::map<int, int> hist;
    for (int n : counts)
        if (n >= 1) ++hist[n];
    int total = 0;
    for (const auto& [n, c] : hist) total += c;
    std::vector<std::pair<int, double>> cdf;
    int acc = 0;
    for (const auto& [n, c] : hist) {
        acc += c;
        cdf.push_back({n, double(acc) / double(total)});
    }
    return cdf;
}

int rescheduling_count(const Schedule& schedule, int slot) {
    if (slot < 1 || slot >= schedule.num_slots)
        throw std::invalid_argument("rescheduling_count: slot out of range");
    int count = 0;
    for (const auto& e : schedule.entries) {
        if (e.dropped_at_slot && *e.dropped_at_slot == slot) {
            ++count;
            continue;
        }
        if (!e.scheduled) continue;
        const Path& prev = e.path_per_slot[slot - 1];
        const Path& cur = e.path_per_slot[slot];
        if (prev.empty() != cur.empty() || (!prev.empty() && !(prev.nodes == cur.nodes))) ++count;
    }
    return count;
}

double rescheduling_mean(const Schedule& schedule) {
    if (schedule.num_slots <= 1) return 0.0;
    double sum = 0.0;
    for (int t = 1; t < schedule.num_slots; ++t) sum += rescheduling_count(schedule, t);
    return sum / double(schedule.num_slots - 1);
}

double percentile(std::vector<double> values, double q) {
    if (values.empty()) throw std::invalid_argument("percentile: empty sample");
    if (q <= 0.0 || q > 1.0) throw std::invalid_argument("percentile: q out of (0,1]");
    std::sort(values.begin(), values.end());
    size_t r = static_cast<size_t>(std::ceil(q * double(values.size())));
    r = std::min(std::max<size_t>(r, 1), values.size());
    return values[r - 1];
}

MetricsReport build_report(const std::string& algo, uint64_t seed, double sweep_param,
                           const Schedule& schedule,
                           const std::vector<TopologySnapshot>& snapshots,
                           const std::vector<TtFlow>& flows, const SimResult* sim,
                           double wall_time_s) {
    MetricsReport r;
    r.algo = algo;
    r.seed = seed;
    r.sweep_param = sweep_param;
    r.n_flows = static_cast<int>(flows.size());
    r.success_rate =
        flows.empty() ? 0.0 : double(schedule.scheduled_count()) / double(flows.size());
    r.max_overlap = overlap_stats(schedule, snapshots, flows).max_overlap;
    r.resched_mean = rescheduling_mean(schedule);
    r.wall_time_s = wall_time_s;

    std::vector<double> spreads;
    if (sim != nullptr) {
        for (const auto& js : measure_jitter(sim->packets)) spreads.push_back(js.spread_s);
    } else {
        for (const auto& e : schedule.entries) {
            if (!e.scheduled) continue;
            double worst = 0.0;
            for (double w : e.wcd_total_s) worst = std::max(worst, w);
            spreads.push_back(worst);
        }
    }
    if (!spreads.empty()) {
        r.p50_jitter_s = percentile(spreads, 0.50);
        r.p99_jitter_s = percentile(spreads, 0.99);
    }
    return r;
}

}  // namespace crt
