#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "crt/oracle.hpp"
#include "crt/rng.hpp"
#include "crt/scheduler.hpp"
#include "crt/serialize.hpp"
#include "crt/traffic.hpp"
#include "test_util.hpp"

using namespace crt;
using namespace crt::test;

namespace {

// Two sources forced through one shared middle link:
//   0,1 -> 2 -> 3 -> 4,5   (props 1 ms, fixed delay 5.36 ms per flow)
std::vector<TopologySnapshot> funnel_snaps() {
    std::vector<LinkSpec> ls{{0, 2, 1e-3}, {1, 2, 1e-3}, {2, 3, 1e-3}, {3, 4, 1e-3},
                             {3, 5, 1e-3}};
    return {make_snapshot(6, both_ways(ls))};
}

}  // namespace

TEST_CASE("empty instance solves to zero flows, zero overlap") {
    auto snaps = funnel_snaps();
    std::vector<TtFlow> flows;
    auto table = CandidateTable::build(snaps, flows, 3);
    auto res = exact_lex_solve(snaps, flows, table, default_scheduler_config());
    CHECK(res.j1 == 0);
    CHECK(res.j2_max_overlap == 0);
}

TEST_CASE("shared mandatory link, loose deadlines: both flows fit at overlap two") {
    auto snaps = funnel_snaps();
    std::vector<TtFlow> flows = {make_flow(0, 0, 4, 10e-3), make_flow(1, 1, 5, 10e-3)};
    auto table = CandidateTable::build(snaps, flows, 3);
    auto res = exact_lex_solve(snaps, flows, table, default_scheduler_config());
    CHECK(res.j1 == 2);
    CHECK(res.j2_max_overlap == 2);
    CHECK(verify_schedule(res.witness, snaps, flows, NodeParams{}, 1500.0).empty());
}

TEST_CASE("shared mandatory link, tight deadlines: only one flow fits") {
    // 5.36 + 0.12 = 5.48 ms breaches a 5.4 ms deadline, alone 5.36 fits
    auto snaps = funnel_snaps();
    std::vector<TtFlow> flows = {make_flow(0, 0, 4, 5.4e-3), make_flow(1, 1, 5, 5.4e-3)};
    auto table = CandidateTable::build(snaps, flows, 3);
    auto res = exact_lex_solve(snaps, flows, table, default_scheduler_config());
    CHECK(res.j1 == 1);
    CHECK(res.j2_max_overlap == 1);
    CHECK(verify_schedule(res.witness, snaps, flows, NodeParams{}, 1500.0).empty());
}

TEST_CASE("the exhaustive solver refuses oversized instances") {
    auto snaps = funnel_snaps();
    std::vector<TtFlow> seven;
    for (int i = 0; i < 7; ++i) seven.push_back(make_flow(i, 0, 4, 10e-3));
    auto table7 = CandidateTable::build(snaps, seven, 3);
    CHECK_THROWS_AS(exact_lex_solve(snaps, seven, table7, default_scheduler_config()),
                    std::invalid_argument);

    std::vector<TtFlow> two = {make_flow(0, 0, 4, 10e-3), make_flow(1, 1, 5, 10e-3)};
    auto table4 = CandidateTable::build(snaps, two, 4);  // too many candidates
    CHECK_THROWS_AS(exact_lex_solve(snaps, two, table4, default_scheduler_config()),
                    std::invalid_argument);

    std::vector<TopologySnapshot> three_slots = {snaps[0], snaps[0], snaps[0]};
    auto table3 = CandidateTable::build(three_slots, two, 3);
    CHECK_THROWS_AS(exact_lex_solve(three_slots, two, table3, default_scheduler_config()),
                    std::invalid_argument);
}

TEST_CASE("solver results are reproducible") {
    auto inst = random_small_instance(904);
    auto table = CandidateTable::build(inst.snaps, inst.flows, 3);
    auto a = exact_lex_solve(inst.snaps, inst.flows, table, default_scheduler_config());
    auto b = exact_lex_solve(inst.snaps, inst.flows, table, default_scheduler_config());
    CHECK(a.j1 == b.j1);
    CHECK(a.j2_max_overlap == b.j2_max_overlap);
    CHECK(schedule_to_json(a.witness, "x") == schedule_to_json(b.witness, "x"));
}

TEST_CASE("heuristics never beat the exhaustive optimum and always verify clean") {
    int crt_matches_optimum = 0;
    const int instances = 25;
    for (int i = 0; i < instances; ++i) {
        auto inst = random_small_instance(3000 + i);
        auto table = CandidateTable::build(inst.snaps, inst.flows, 3);
        auto cfg = default_scheduler_config();

        auto best = exact_lex_solve(inst.snaps, inst.flows, table, cfg);
        CHECK(verify_schedule(best.witness, inst.snaps, inst.flows, cfg.node,
                              cfg.max_frame_bytes)
                  .empty());

        auto crt_sched = crt_fast(inst.snaps, inst.flows, table, cfg);
        auto strict = strict_nonoverlap_schedule(inst.snaps, inst.flows, table, cfg);
        for (const Schedule* s : {&crt_sched, &strict}) {
            auto violations =
                verify_schedule(*s, inst.snaps, inst.flows, cfg.node, cfg.max_frame_bytes);
            CHECK_MESSAGE(violations.empty(), "instance seed ", 3000 + i);
        }

        CHECK(crt_sched.scheduled_count() <= best.j1);
        CHECK(strict.scheduled_count() <= crt_sched.scheduled_count());
        if (crt_sched.scheduled_count() == best.j1) {
            ++crt_matches_optimum;
            // the optimum's overlap is a floor for any heuristic that ties it
            int crt_max = 0;
            for (size_t li = 0; li < crt_sched.load_per_slot[0].num_links(); ++li)
                for (int t = 0; t < static_cast<int>(inst.snaps.size()); ++t)
                    crt_max = std::max(crt_max,
                                       crt_sched.load_per_slot[t].overlap(static_cast<int>(li)));
            CHECK(best.j2_max_overlap <= crt_max);
        }
    }
    CHECK(crt_matches_optimum > 0);
}

TEST_CASE("the verifier pinpoints a tampered per-hop hold") {
    auto fast = make_snapshot(4, {{0, 1, 5.64e-3}, {1, 2, 6e-3}, {2, 3, 6e-3}}, 0);
    auto slow = make_snapshot(4, {{0, 1, 7.64e-3}, {1, 2, 7e-3}, {2, 3, 7e-3}}, 1);
    std::vector<TopologySnapshot> snaps{fast, slow};
    std::vector<TtFlow> flows = {make_flow(0, 0, 3, 0.1)};
    auto table = CandidateTable::build(snaps, flows, 3);
    auto sched = crt_fast(snaps, flows, table, default_scheduler_config());
    REQUIRE(sched.entries[0].scheduled);
    REQUIRE(verify_schedule(sched, snaps, flows, NodeParams{}, 1500.0).empty());

    // one microsecond shaved off a padded hop: the per-slot delay equation
    // breaks while every bound-type constraint still holds
    REQUIRE(sched.entries[0].residence_s[0][0] > 2e-3);
    sched.entries[0].residence_s[0][0] -= 1e-6;
    auto violations = verify_schedule(sched, snaps, flows, NodeParams{}, 1500.0);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].kind == ViolationKind::BaselineConsistency);
    CHECK(violations[0].flow_id == 0);
    CHECK(violations[0].slot == 0);
}

TEST_CASE("the verifier flags a path using a vanished link") {
    auto snaps = funnel_snaps();
    std::vector<TtFlow> flows = {make_flow(0, 0, 4, 10e-3)};
    auto table = CandidateTable::build(snaps, flows, 3);
    auto sched = crt_fast(snaps, flows, table, default_scheduler_config());
    REQUIRE(sched.entries[0].scheduled);

    // rebuild the slot without the middle link the path relies on
    TopologySnapshot cut;
    cut.num_nodes = snaps[0].num_nodes;
    cut.slot = 0;
    cut.duration_s = snaps[0].duration_s;
    for (const auto& l : snaps[0].links)
        if (!(l.u == 2 && l.v == 3)) cut.links.push_back(l);
    cut.build_index();

    auto violations = verify_schedule(sched, {cut}, flows, NodeParams{}, 1500.0);
    REQUIRE_FALSE(violations.empty());
    CHECK(std::any_of(violations.begin(), violations.end(), [](const Violation& v) {
        return v.kind == ViolationKind::PathValidity;
    }));
}

TEST_CASE("violation kinds render to text") {
    for (ViolationKind k :
         {ViolationKind::PathValidity, ViolationKind::PathUniqueness,
          ViolationKind::BaselineConsistency, ViolationKind::Bandwidth,
          ViolationKind::BufferBounds, ViolationKind::MinResidence,
          ViolationKind::DeadlineMargin}) {
        CHECK(std::string(violation_kind_name(k)).size() > 0);
    }
}
