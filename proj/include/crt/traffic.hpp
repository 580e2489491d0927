#pragma once

#include <vector>

#include "crt/types.hpp"

namespace crt {

// Deadline rule: D = min(alpha * d_phy, d_phy + delta_buf, d_max).
struct DeadlinePolicy {
    double alpha = 1.5;
    double delta_buf_s = 0.030;
    double d_max_s = 0.100;
};

DeadlinePolicy iridium_deadline_policy();   // (1.5, 30 ms, 100 ms)
DeadlinePolicy starlink_deadline_policy();  // (2.0, 80 ms, 500 ms)

double compute_deadline(double d_phy_s, const DeadlinePolicy& policy);

// n random flows with distinct endpoints sampled uniformly (with replacement
// across flows). d_phy is the propagation-only shortest-path delay on snap0.
// Unreachable pairs are resampled; throws if the graph leaves no options.
std::vector<TtFlow> generate_flows(int n, const TopologySnapshot& snap0,
                                   const DeadlinePolicy& policy, double frame_bytes,
                                   double period_s, uint64_t seed);

}  // namespace crt
