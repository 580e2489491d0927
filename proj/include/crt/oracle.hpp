#pragma once

#include <string>

#include "crt/scheduler.hpp"
#include "crt/types.hpp"

namespace crt {

// The six constraint families an emitted schedule must satisfy.
enum class ViolationKind {
    PathValidity,         // simple path, right endpoints, links present
    PathUniqueness,       // exactly one path (and residence vector) per slot
    BaselineConsistency,  // sum of link delays + residences == d_target
    Bandwidth,            // per-link reserved rate within capacity
    BufferBounds,         // residence within t_buffer_max
    MinResidence,         // residence at least d_proc
    DeadlineMargin,       // d_target + recomputed WCD within the deadline
};
const char* violation_kind_name(ViolationKind k);

struct Violation {
    int flow_id = -1;
    int slot = -1;
    ViolationKind kind;
    std::string detail;
};

// Recomputes overlap counters, bandwidth sums and delay arithmetic from
// scratch and reports every constraint violation. Empty result == valid.
std::vector<Violation> verify_schedule(const Schedule& schedule,
                                       const std::vector<TopologySnapshot>& snapshots,
                                       const std::vector<TtFlow>& flows, const NodeParams& np,
                                       double max_frame_bytes);

// Exhaustive lexicographic optimum: maximize the number of scheduled flows,
// then minimize the maximum overlap degree. Only for desk-size instances
// (<= 6 flows, <= 2 slots, <= 3 candidates per pair); throws above that.
struct OracleResult {
    int j1 = 0;           // scheduled flows at the optimum
    int j2_max_overlap = 0;
    Schedule witness;     // one optimal schedule, passes verify_schedule
};

OracleResult exact_lex_solve(const std::vector<TopologySnapshot>& snapshots,
                             const std::vector<TtFlow>& flows, const CandidateTable& candidates,
                             const SchedulerConfig& cfg);

}  // namespace crt
