#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "crt/constellation.hpp"
#include "crt/oracle.hpp"
#include "crt/scheduler.hpp"
#include "crt/serialize.hpp"
#include "crt/traffic.hpp"
#include "test_util.hpp"

using namespace crt;
using namespace crt::test;

namespace {

Schedule run_crt(const std::vector<TopologySnapshot>& snaps, const std::vector<TtFlow>& flows,
                 int k = 3) {
    auto table = CandidateTable::build(snaps, flows, k);
    return crt_fast(snaps, flows, table, default_scheduler_config());
}

}  // namespace

TEST_CASE("two edge-disjoint flows schedule in one pass with zero interference") {
    auto snaps = std::vector<TopologySnapshot>{diamond_snapshot()};
    // one flow per parallel branch, distinct sources
    std::vector<TtFlow> flows = {make_flow(0, 1, 3, 0.05), make_flow(1, 2, 3, 0.05)};
    auto sched = run_crt(snaps, flows);
    REQUIRE(sched.scheduled_count() == 2);
    for (const auto& e : sched.entries) {
        REQUIRE(e.scheduled);
        CHECK(e.wcd_total_s[0] == 0.0);
    }
    for (size_t li = 0; li < sched.load_per_slot[0].num_links(); ++li)
        CHECK(sched.load_per_slot[0].overlap(static_cast<int>(li)) <= 1);
    CHECK(verify_schedule(sched, snaps, flows, NodeParams{}, 1500.0).empty());
}

TEST_CASE("three sources through one bottleneck: all admitted, interference bound 2*c_max") {
    auto snaps = std::vector<TopologySnapshot>{bottleneck_snapshot()};
    auto flows = bottleneck_flows(10e-3, 10e-3, 10e-3);
    auto sched = run_crt(snaps, flows);
    REQUIRE(sched.scheduled_count() == 3);
    int li = snaps[0].link_index(3, 4);
    CHECK(sched.load_per_slot[0].overlap(li) == 3);
    for (const auto& e : sched.entries) {
        // only the shared middle link contributes: (3-1) * 0.12 ms
        CHECK(e.wcd_total_s[0] == doctest::Approx(0.24e-3).epsilon(1e-9));
        CHECK(e.d_target_s == doctest::Approx(5.36e-3).epsilon(1e-9));
        CHECK(e.d_target_s + e.wcd_total_s[0] <= 10e-3);
    }
    CHECK(verify_schedule(sched, snaps, flows, NodeParams{}, 1500.0).empty());
}

TEST_CASE("bottleneck with one tight deadline: exactly two admitted, matching the optimum") {
    auto snaps = std::vector<TopologySnapshot>{bottleneck_snapshot()};
    // 5.36 + 2*0.12 = 5.60 ms breaches 5.5 ms, 5.36 + 0.12 = 5.48 ms fits
    auto flows = bottleneck_flows(10e-3, 10e-3, 5.5e-3);
    auto table = CandidateTable::build(snaps, flows, 3);
    auto cfg = default_scheduler_config();

    auto crt_sched = crt_fast(snaps, flows, table, cfg);
    CHECK(crt_sched.scheduled_count() == 2);
    CHECK(verify_schedule(crt_sched, snaps, flows, NodeParams{}, 1500.0).empty());

    auto oracle = exact_lex_solve(snaps, flows, table, cfg);
    CHECK(oracle.j1 == 2);
    CHECK(oracle.j2_max_overlap == 2);
    CHECK(crt_sched.scheduled_count() == oracle.j1);

    // strict non-overlapping admits a single flow through the bottleneck
    auto strict = strict_nonoverlap_schedule(snaps, flows, table, cfg);
    CHECK(strict.scheduled_count() == 1);
    CHECK(verify_schedule(strict, snaps, flows, NodeParams{}, 1500.0).empty());

    auto spf = spf_schedule(snaps, flows, table, cfg);
    CHECK(spf.scheduled_count() == 2);
    auto lag = lag_schedule(snaps, flows, table, cfg);
    CHECK(lag.scheduled_count() == 2);
}

TEST_CASE("residence allocation: single slot pins the target to the fixed delay") {
    auto snap = make_snapshot(4, {{0, 1, 5.64e-3}, {1, 2, 6e-3}, {2, 3, 6e-3}});
    std::vector<TopologySnapshot> snaps{snap};
    std::vector<LinkLoadState> load{LinkLoadState(snap.links.size())};
    auto flow = make_flow(0, 0, 3, 0.1);
    Path p{{0, 1, 2, 3}, 0.0};

    auto alloc = allocate_residence(flow, {p}, snaps, load, NodeParams{}, 1500.0);
    REQUIRE(alloc.feasible);
    CHECK(alloc.d_target_s == doctest::Approx(20e-3).epsilon(1e-9));
    REQUIRE(alloc.residence_s[0].size() == 2);
    for (double dt : alloc.residence_s[0]) CHECK(dt == doctest::Approx(1e-3).epsilon(1e-9));
    CHECK(alloc.wcd_total_s[0] == 0.0);
}

TEST_CASE("residence allocation levels a 20/24 ms split by padding the faster slot") {
    auto fast = make_snapshot(4, {{0, 1, 5.64e-3}, {1, 2, 6e-3}, {2, 3, 6e-3}}, 0);
    auto slow = make_snapshot(4, {{0, 1, 7.64e-3}, {1, 2, 7e-3}, {2, 3, 7e-3}}, 1);
    std::vector<TopologySnapshot> snaps{fast, slow};
    std::vector<LinkLoadState> load{LinkLoadState(fast.links.size()),
                                    LinkLoadState(slow.links.size())};
    auto flow = make_flow(0, 0, 3, 0.1);
    Path p{{0, 1, 2, 3}, 0.0};

    auto alloc = allocate_residence(flow, {p, p}, snaps, load, NodeParams{}, 1500.0);
    REQUIRE(alloc.feasible);
    CHECK(alloc.d_target_s == doctest::Approx(24e-3).epsilon(1e-9));
    REQUIRE(alloc.residence_s[0].size() == 2);
    REQUIRE(alloc.residence_s[1].size() == 2);
    // 4 ms of slack split across 2 intermediate hops, on top of 1 ms processing
    for (double dt : alloc.residence_s[0]) CHECK(dt == doctest::Approx(3e-3).epsilon(1e-9));
    for (double dt : alloc.residence_s[1]) CHECK(dt == doctest::Approx(1e-3).epsilon(1e-9));
}

TEST_CASE("residence allocation rejects when the slow slot's interference eats the margin") {
    // slot 1's middle link runs at 24 Mbps, so c_max there is 0.5 ms; with
    // three distinct sources the per-slot interference bound is 1.0 ms
    auto fast = make_snapshot(4, {{0, 1, 5.64e-3}, {1, 2, 6e-3}, {2, 3, 6e-3}}, 0);
    auto slow =
        make_snapshot(4, {{0, 1, 7.26e-3}, {1, 2, 7e-3, 24e6}, {2, 3, 7e-3}}, 1);
    std::vector<TopologySnapshot> snaps{fast, slow};
    std::vector<LinkLoadState> load{LinkLoadState(fast.links.size()),
                                    LinkLoadState(slow.links.size())};
    int li = slow.link_index(1, 2);
    load[1].add_flow(li, 0, /*src*/ 0, 1.2e6);
    load[1].add_flow(li, 1, /*src*/ 1, 1.2e6);
    load[1].add_flow(li, 2, /*src*/ 2, 1.2e6);
    Path p{{0, 1, 2, 3}, 0.0};

    // 24 ms target + 1.0 ms interference > 24.5 ms deadline
    auto tight = allocate_residence(make_flow(0, 0, 3, 24.5e-3), {p, p}, snaps, load,
                                    NodeParams{}, 1500.0);
    CHECK_FALSE(tight.feasible);

    // the same instance clears a 25.1 ms deadline
    auto loose = allocate_residence(make_flow(0, 0, 3, 25.1e-3), {p, p}, snaps, load,
                                    NodeParams{}, 1500.0);
    REQUIRE(loose.feasible);
    CHECK(loose.d_target_s == doctest::Approx(24e-3).epsilon(1e-9));
    CHECK(loose.wcd_total_s[1] == doctest::Approx(1.0e-3).epsilon(1e-9));
}

TEST_CASE("residence allocation rejects per-hop holds above the buffer bound") {
    auto fast = make_snapshot(4, {{0, 1, 1e-3}, {1, 2, 1e-3}, {2, 3, 1e-3}}, 0);
    auto slow = make_snapshot(4, {{0, 1, 60e-3}, {1, 2, 60e-3}, {2, 3, 60e-3}}, 1);
    std::vector<TopologySnapshot> snaps{fast, slow};
    std::vector<LinkLoadState> load{LinkLoadState(fast.links.size()),
                                    LinkLoadState(slow.links.size())};
    Path p{{0, 1, 2, 3}, 0.0};
    // slack (182.36 - 5.36) / 2 hops = 88.5 ms exceeds the 50 ms hold cap
    auto alloc =
        allocate_residence(make_flow(0, 0, 3, 0.4), {p, p}, snaps, load, NodeParams{}, 1500.0);
    CHECK_FALSE(alloc.feasible);
}

TEST_CASE("layer construction: disjoint flows land together, contenders split layers") {
    auto snaps = std::vector<TopologySnapshot>{bottleneck_snapshot()};
    auto flows = bottleneck_flows(10e-3, 10e-3, 10e-3);
    auto table = CandidateTable::build(snaps, flows, 3);
    SlotScheduler ss(snaps, flows, table, default_scheduler_config());

    // equal conflict degree and deadlines: flow id breaks the tie
    auto layer1 = ss.find_max_feasible_layer(0, {0, 1, 2});
    REQUIRE(layer1.size() == 1);
    CHECK(layer1[0].first == 0);
    auto layer2 = ss.find_max_feasible_layer(0, {1, 2});
    REQUIRE(layer2.size() == 1);
    CHECK(layer2[0].first == 1);
    auto layer3 = ss.find_max_feasible_layer(0, {2});
    REQUIRE(layer3.size() == 1);
    CHECK(layer3[0].first == 2);
    CHECK(ss.load(0).overlap(snaps[0].link_index(3, 4)) == 3);
}

TEST_CASE("a tighter deadline outranks flow id inside a layer") {
    auto snaps = std::vector<TopologySnapshot>{bottleneck_snapshot()};
    auto flows = bottleneck_flows(10e-3, 10e-3, 5.5e-3);
    auto table = CandidateTable::build(snaps, flows, 3);
    SlotScheduler ss(snaps, flows, table, default_scheduler_config());
    auto layer1 = ss.find_max_feasible_layer(0, {0, 1, 2});
    REQUIRE(layer1.size() == 1);
    CHECK(layer1[0].first == 2);  // 5.5 ms deadline goes first
}

TEST_CASE("flows sharing a source may share links inside one layer") {
    // 0 -> 3 -> 4 -> {5, 6}: both flows originate at 0 and share (0,3),(3,4)
    std::vector<LinkSpec> ls{{0, 3, 1e-3}, {3, 4, 1e-3}, {4, 5, 1e-3}, {4, 6, 1e-3}};
    auto snaps = std::vector<TopologySnapshot>{make_snapshot(7, both_ways(ls))};
    std::vector<TtFlow> flows = {make_flow(0, 0, 5, 0.05), make_flow(1, 0, 6, 0.05)};
    auto table = CandidateTable::build(snaps, flows, 3);
    SlotScheduler ss(snaps, flows, table, default_scheduler_config());
    auto layer = ss.find_max_feasible_layer(0, {0, 1});
    CHECK(layer.size() == 2);
    // shared links still count one distinct source
    CHECK(ss.load(0).overlap(snaps[0].link_index(0, 3)) == 1);
    CHECK(ss.load(0).overlap(snaps[0].link_index(3, 4)) == 1);
}

TEST_CASE("each committed layer raises any link's distinct-source count by at most one") {
    auto m = build_constellation(iridium_shell());
    std::vector<TopologySnapshot> snaps{topology_at(m, 0.0)};
    auto flows = generate_flows(60, snaps[0], iridium_deadline_policy(), 1500.0, 0.010, 11);
    auto table = CandidateTable::build(snaps, flows, 3);
    SlotScheduler ss(snaps, flows, table, default_scheduler_config());

    std::vector<int> pending(flows.size());
    for (size_t i = 0; i < flows.size(); ++i) pending[i] = static_cast<int>(i);
    std::vector<int> before(snaps[0].links.size(), 0);
    while (!pending.empty()) {
        auto layer = ss.find_max_feasible_layer(0, pending);
        if (layer.empty()) break;
        for (size_t li = 0; li < snaps[0].links.size(); ++li) {
            int now = ss.load(0).overlap(static_cast<int>(li));
            CHECK(now - before[li] <= 1);
            CHECK(now >= before[li]);
            before[li] = now;
        }
        for (const auto& [fid, path] : layer)
            pending.erase(std::find(pending.begin(), pending.end(), fid));
    }
}

TEST_CASE("an unreachable flow is left out without disturbing the rest") {
    auto base = bottleneck_snapshot();
    base.num_nodes = 9;  // node 8 exists but has no links
    base.build_index();
    std::vector<TopologySnapshot> snaps{base};
    auto flows = bottleneck_flows(10e-3, 10e-3, 10e-3);
    flows.push_back(make_flow(3, 0, 8, 0.1));
    auto sched = run_crt(snaps, flows);
    CHECK(sched.scheduled_count() == 3);
    CHECK_FALSE(sched.entries[3].scheduled);
}

TEST_CASE("bandwidth reservations cap admissions on a shared narrow link") {
    // same source twice over a 2 Mbps chain: each flow reserves 1.2 Mbps
    std::vector<LinkSpec> ls{{0, 1, 1e-3, 2e6}, {1, 2, 1e-3, 2e6}};
    auto snaps = std::vector<TopologySnapshot>{make_snapshot(3, both_ways(ls))};
    std::vector<TtFlow> flows = {make_flow(0, 0, 2, 0.1), make_flow(1, 0, 2, 0.1)};
    auto sched = run_crt(snaps, flows);
    CHECK(sched.scheduled_count() == 1);
    CHECK(verify_schedule(sched, snaps, flows, NodeParams{}, 1500.0).empty());
}

TEST_CASE("static topologies keep every flow on its first-slot path") {
    auto m = build_constellation(iridium_shell());
    auto one = topology_at(m, 0.0);
    auto two = one;
    two.slot = 1;
    two.sample_time_s = 10.0;
    std::vector<TopologySnapshot> snaps{one, two};
    auto flows = generate_flows(40, snaps[0], iridium_deadline_policy(), 1500.0, 0.010, 5);
    auto sched = run_crt(snaps, flows, 5);
    CHECK(sched.scheduled_count() >  0);
    for (const auto& e : sched.entries) {
        if (!e.scheduled) continue;
        CHECK(e.path_per_slot[0].nodes == e.path_per_slot[1].nodes);
    }
}

TEST_CASE("a still-valid previous path beats a newly opened shortcut") {
    auto slot0 = make_snapshot(4, both_ways({{0, 1, 2e-3}, {1, 3, 2e-3}}), 0);
    auto slot1 =
        make_snapshot(4, both_ways({{0, 1, 2e-3}, {1, 3, 2e-3}, {0, 3, 1e-3}}), 1);
    std::vector<TopologySnapshot> snaps{slot0, slot1};
    std::vector<TtFlow> flows = {make_flow(0, 0, 3, 0.1)};
    auto table = CandidateTable::build(snaps, flows, 3);

    auto crt_sched = crt_fast(snaps, flows, table, default_scheduler_config());
    REQUIRE(crt_sched.entries[0].scheduled);
    CHECK(crt_sched.entries[0].path_per_slot[1].nodes == std::vector<NodeId>{0, 1, 3});

    // The shortest-path baseline chases the shortcut instead. The direct hop
    // has no intermediate vertex to absorb the slack against the slot-0
    // target, so the switch strands the flow entirely.
    auto spf = spf_schedule(snaps, flows, table, default_scheduler_config());
    CHECK_FALSE(spf.entries[0].scheduled);
}

TEST_CASE("best-fit baseline steers the second same-pair flow to the idle route") {
    auto snaps = std::vector<TopologySnapshot>{
        make_snapshot(4, both_ways({{0, 1, 1e-3}, {1, 3, 1e-3}, {0, 2, 2e-3}, {2, 3, 2e-3}}))};
    std::vector<TtFlow> flows = {make_flow(0, 0, 3, 0.1), make_flow(1, 0, 3, 0.1)};
    auto table = CandidateTable::build(snaps, flows, 3);
    auto lag = lag_schedule(snaps, flows, table, default_scheduler_config());
    REQUIRE(lag.scheduled_count() == 2);
    CHECK(lag.entries[0].path_per_slot[0].nodes == std::vector<NodeId>{0, 1, 3});
    CHECK(lag.entries[1].path_per_slot[0].nodes == std::vector<NodeId>{0, 2, 3});
}

TEST_CASE("identical inputs produce byte-identical schedules") {
    auto m = build_constellation(iridium_shell());
    std::vector<TopologySnapshot> snaps{topology_at(m, 0.0)};
    auto flows = generate_flows(50, snaps[0], iridium_deadline_policy(), 1500.0, 0.010, 3);
    auto table = CandidateTable::build(snaps, flows, 5);
    auto cfg = default_scheduler_config();

    for (Algorithm a : {Algorithm::CrtFast, Algorithm::Lag, Algorithm::Spf,
                        Algorithm::StrictNonOverlap}) {
        auto s1 = run_algorithm(a, snaps, flows, table, cfg);
        auto s2 = run_algorithm(a, snaps, flows, table, cfg);
        CHECK(schedule_to_json(s1, algorithm_name(a)) == schedule_to_json(s2, algorithm_name(a)));
    }
}

TEST_CASE("algorithm names round-trip") {
    for (Algorithm a : {Algorithm::CrtFast, Algorithm::Spf, Algorithm::Lag,
                        Algorithm::StrictNonOverlap}) {
        auto back = algorithm_from_name(algorithm_name(a));
        REQUIRE(back.has_value());
        CHECK(*back == a);
    }
    CHECK_FALSE(algorithm_from_name("nonsense").has_value());
}
