#include "crt/timing.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace crt {

double transmission_time_s(double frame_bytes, double bandwidth_bps) {
    if (frame_bytes < 0) throw std::invalid_argument("negative frame size");
    if (bandwidth_bps <= 0) throw std::invalid_argument("nonpositive bandwidth");
    return 8.0 * frame_bytes / bandwidth_bps;
}

double link_delay_s(const TopologySnapshot& snap, NodeId u, NodeId v, double frame_bytes) {
    const TopologySnapshot::Link* l = snap.find_link(u, v);
    if (!l) throw std::invalid_argument("link (" + std::to_string(u) + "," + std::to_string(v) +
                                        ") not present in slot " + std::to_string(snap.slot));
    return l->prop_delay_s + transmission_time_s(frame_bytes, l->bandwidth_bps);
}

double path_fixed_delay_s(const TopologySnapshot& snap, const Path& p, double frame_bytes,
                          const NodeParams& np) {
    if (p.nodes.size() < 2) throw std::invalid_argument("path needs at least two vertices");
    double d = 0.0;
    for (size_t i = 0; i + 1 < p.nodes.size(); ++i)
        d += link_delay_s(snap, p.nodes[i], p.nodes[i + 1], frame_bytes);
    d += np.d_proc_s * p.intermediate_count();
    return d;
}

double wcd_link_s(int overlap, double c_max_s) {
    if (overlap <= 1) return 0.0;
    return (overlap - 1) * c_max_s;
}

double wcd_exact_s(const std::vector<double>& interferer_tx_s) {
    return std::accumulate(interferer_tx_s.begin(), interferer_tx_s.end(), 0.0);
}

CollisionTime drift_collision_time(double phase_gap_s, double c_s, double drift_rate) {
    if (phase_gap_s < 0) throw std::invalid_argument("negative phase gap");
    if (phase_gap_s < c_s) return CollisionImmediate{};
    if (drift_rate <= 0.0) return CollisionNever{};
    return (phase_gap_s - c_s) / drift_rate;
}

bool LinkLoadState::has_source(int link_idx, NodeId src) const {
    const auto& s = entries_[link_idx].sources;
    return std::binary_search(s.begin(), s.end(), src);
}

bool LinkLoadState::add_flow(int link_idx, int flow_id, NodeId src, double rate_bps) {
    Entry& e = entries_[link_idx];
    e.flow_ids.push_back(flow_id);
    e.util_bps += rate_bps;
    auto it = std::lower_bound(e.sources.begin(), e.sources.end(), src);
    if (it != e.sources.end() && *it == src) return false;
    e.sources.insert(it, src);
    return true;
}

bool LinkLoadState::remove_flow(int link_idx, int flow_id, NodeId src, double rate_bps,
                                bool source_still_present) {
    Entry& e = entries_[link_idx];
    auto fit = std::find(e.flow_ids.begin(), e.flow_ids.end(), flow_id);
    if (fit == e.flow_ids.end()) throw std::logic_error("remove_flow: flow not on link");
    e.flow_ids.erase(fit);
    e.util_bps -= rate_bps;
    if (source_still_present) return false;
    auto it = std::lower_bound(e.sources.begin(), e.sources.end(), src);
    if (it == e.sources.end() || *it != src) throw std::logic_error("remove_flow: source missing");
    e.sources.erase(it);
    return true;
}

}  // namespace crt
