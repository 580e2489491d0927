#include "crt/traffic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

#include "crt/kpaths.hpp"
#include "crt/rng.hpp"
#include "crt/timing.hpp"

namespace crt {

DeadlinePolicy iridium_deadline_policy() { return {1.5, 0.030, 0.100}; }
DeadlinePolicy starlink_deadline_policy() { return {2.0, 0.080, 0.500}; }

double compute_deadline(double d_phy_s, const DeadlinePolicy& policy) {
    if (d_phy_s <= 0) throw std::invalid_argument("nonpositive physical delay");
    if (policy.alpha < 1.0 || policy.delta_buf_s < 0 || policy.d_max_s <= 0)
        throw std::invalid_argument("bad deadline policy");
    return std::min({policy.alpha * d_phy_s, d_phy_s + policy.delta_buf_s, policy.d_max_s});
}

std::vector<TtFlow> generate_flows(int n, const TopologySnapshot& snap0,
                                   const DeadlinePolicy& policy, double frame_bytes,
                                   double period_s, uint64_t seed) {
    if (n < 0) throw std::invalid_argument("negative flow count");
    if (frame_bytes <= 0 || period_s <= 0)
        throw std::invalid_argument("nonpositive frame size or period");
    if (snap0.num_nodes < 2) throw std::invalid_argument("need at least two nodes");

    // frames must fit in a period on the slowest link
    double min_bw = std::numeric_limits<double>::infinity();
    for (const auto& l : snap0.links) min_bw = std::min(min_bw, l.bandwidth_bps);
    if (!snap0.links.empty() && transmission_time_s(frame_bytes, min_bw) >= period_s)
        throw std::invalid_argument("frame transmission time exceeds the period");

    Rng rng(seed);
    std::unordered_map<NodeId, std::vector<double>> dist_cache;
    std::vector<TtFlow> flows;
    flows.reserve(n);
    const int max_attempts = 1000 + 100 * n;
    int attempts = 0;
    while (static_cast<int>(flows.size()) < n) {
        if (++attempts > max_attempts)
            throw std::runtime_error("could not sample reachable flow endpoints; "
                                     "topology too disconnected");
        NodeId src = static_cast<NodeId>(rng.uniform_int(snap0.num_nodes));
        NodeId dst = static_cast<NodeId>(rng.uniform_int(snap0.num_nodes - 1));
        if (dst >= src) dst++;
        auto it = dist_cache.find(src);
        if (it == dist_cache.end())
            it = dist_cache.emplace(src, shortest_distances(snap0, src)).first;
        double d_phy = it->second[dst];
        if (!std::isfinite(d_phy)) continue;
        TtFlow f;
        f.id = static_cast<int>(flows.size());
        f.src = src;
        f.dst = dst;
        f.period_s = period_s;
        f.frame_bytes = frame_bytes;
        f.deadline_s = compute_deadline(d_phy, policy);
        flows.push_back(f);
    }
    return flows;
}

}  // namespace crt
