#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "crt/rng.hpp"
#include "crt/timing.hpp"
#include "test_util.hpp"

using namespace crt;
using namespace crt::test;

TEST_CASE("transmission time is 8*bytes/bandwidth") {
    CHECK(transmission_time_s(1500.0, 100e6) == doctest::Approx(0.12e-3).epsilon(1e-12));
    CHECK(transmission_time_s(1500.0, 24e6) == doctest::Approx(0.5e-3).epsilon(1e-12));
    CHECK(transmission_time_s(0.0, 100e6) == 0.0);
    CHECK_THROWS_AS(transmission_time_s(1500.0, 0.0), std::invalid_argument);
}

TEST_CASE("one-hop link delay adds propagation and serialization") {
    auto snap = make_snapshot(2, {{0, 1, 3e-3}});
    CHECK(link_delay_s(snap, 0, 1, 1500.0) == doctest::Approx(3.12e-3).epsilon(1e-12));
    CHECK_THROWS_AS(link_delay_s(snap, 1, 0, 1500.0), std::invalid_argument);
}

TEST_CASE("path fixed delay charges processing at intermediate vertices only") {
    NodeParams np;  // 1 ms processing
    auto one_hop = make_snapshot(2, {{0, 1, 3e-3}});
    Path p1{{0, 1}, 3e-3};
    CHECK(path_fixed_delay_s(one_hop, p1, 1500.0, np) ==
          doctest::Approx(3.12e-3).epsilon(1e-12));

    auto two_hop = make_snapshot(3, {{0, 1, 3e-3}, {1, 2, 4e-3}});
    Path p2{{0, 1, 2}, 7e-3};
    CHECK(path_fixed_delay_s(two_hop, p2, 1500.0, np) ==
          doctest::Approx(8.24e-3).epsilon(1e-12));
}

TEST_CASE("path delay is additive over concatenation plus one joint processing delay") {
    NodeParams np;
    auto snap = make_snapshot(5, {{0, 1, 2e-3}, {1, 2, 3e-3}, {2, 3, 1e-3}, {3, 4, 5e-3}});
    Path front{{0, 1, 2}, 0.0};
    Path back{{2, 3, 4}, 0.0};
    Path whole{{0, 1, 2, 3, 4}, 0.0};
    double lhs = path_fixed_delay_s(snap, whole, 1500.0, np);
    double rhs = path_fixed_delay_s(snap, front, 1500.0, np) +
                 path_fixed_delay_s(snap, back, 1500.0, np) + np.d_proc_s;
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("per-link worst-case interference is (overlap-1)*c_max, zero floor") {
    const double c = 0.12e-3;
    CHECK(wcd_link_s(1, c) == 0.0);
    CHECK(wcd_link_s(0, c) == 0.0);
    CHECK(wcd_link_s(3, c) == doctest::Approx(0.24e-3).epsilon(1e-12));
    CHECK(wcd_link_s(5, c) == doctest::Approx(0.48e-3).epsilon(1e-12));
    // monotone nondecreasing in the overlap count
    for (int n = 0; n < 20; ++n) CHECK(wcd_link_s(n, c) <= wcd_link_s(n + 1, c));
}

TEST_CASE("worst-case interference along a path decomposes additively over links") {
    const double c = 0.12e-3;
    // overlaps {1, 2, 3} along a 3-link path
    double total = wcd_link_s(1, c) + wcd_link_s(2, c) + wcd_link_s(3, c);
    CHECK(total == doctest::Approx(0.36e-3).epsilon(1e-12));
    // a new distinct-source flow on one shared link raises the path total by c
    double after = wcd_link_s(1, c) + wcd_link_s(3, c) + wcd_link_s(3, c);
    CHECK(after - total == doctest::Approx(c).epsilon(1e-9));
}

TEST_CASE("simplified per-link bound dominates the exact interferer-set sum") {
    const double c_max = 0.12e-3;
    Rng rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 1 + static_cast<int>(rng.uniform_int(8));  // overlap degree
        int interferers = static_cast<int>(rng.uniform_int(n));  // |set| <= n-1
        std::vector<double> tx;
        for (int i = 0; i < interferers; ++i) tx.push_back(rng.uniform(0.0, c_max));
        CHECK(wcd_exact_s(tx) <= wcd_link_s(n, c_max) + 1e-15);
    }
}

TEST_CASE("drift collision closed form") {
    auto t = drift_collision_time(5e-3, 0.12e-3, 1e-5);
    REQUIRE(std::holds_alternative<double>(t));
    CHECK(std::get<double>(t) == doctest::Approx(488.0).epsilon(1e-9));

    CHECK(std::holds_alternative<CollisionImmediate>(
        drift_collision_time(0.05e-3, 0.12e-3, 1e-5)));
    CHECK(std::holds_alternative<CollisionNever>(drift_collision_time(5e-3, 0.12e-3, 0.0)));
    CHECK_THROWS_AS(drift_collision_time(-1e-3, 0.12e-3, 1e-5), std::invalid_argument);
}

TEST_CASE("link load counts distinct sources, not flows") {
    LinkLoadState load(2);
    CHECK(load.overlap(0) == 0);

    CHECK(load.add_flow(0, /*flow*/ 1, /*src*/ 7, 1.2e6));   // new source
    CHECK(load.overlap(0) == 1);
    CHECK_FALSE(load.add_flow(0, 2, 7, 1.2e6));              // same source again
    CHECK(load.overlap(0) == 1);
    CHECK(load.add_flow(0, 3, 9, 1.2e6));                    // second distinct source
    CHECK(load.overlap(0) == 2);
    CHECK(load.has_source(0, 7));
    CHECK(load.has_source(0, 9));
    CHECK_FALSE(load.has_source(0, 4));
    CHECK(load.entry(0).util_bps == doctest::Approx(3.6e6));

    // removing one of two same-source flows keeps the counter
    CHECK_FALSE(load.remove_flow(0, 1, 7, 1.2e6, /*source_still_present=*/true));
    CHECK(load.overlap(0) == 2);
    // removing the last flow of a source decrements it
    CHECK(load.remove_flow(0, 2, 7, 1.2e6, /*source_still_present=*/false));
    CHECK(load.overlap(0) == 1);
    CHECK_FALSE(load.has_source(0, 7));
    CHECK(load.entry(0).util_bps == doctest::Approx(1.2e6));
}
