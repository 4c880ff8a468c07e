#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "hvnsim/mobility.hpp"

using namespace hvnsim;

TEST_CASE("init_fleet honors count, lanes, position and speed ranges", "[mobility]") {
    HighwayConfig cfg;

    SECTION("zero vehicles") {
        cfg.vehicleCount = 0;
        CHECK(init_fleet(cfg, 1).empty());
    }
    SECTION("round-robin lanes over three vehicles") {
        cfg.vehicleCount = 3;
        const auto fleet = init_fleet(cfg, 1);
        REQUIRE(fleet.size() == 3);
        CHECK(fleet[0].lane == 0);
        CHECK(fleet[1].lane == 1);
        CHECK(fleet[2].lane == 2);
    }
    SECTION("default fleet: positions on the ring, speeds in 50..130 km/h") {
        const auto fleet = init_fleet(cfg, 7);
        REQUIRE(fleet.size() == 150);
        for (const Pose& p : fleet) {
            CHECK(p.x >= 0.0);
            CHECK(p.x < cfg.length);
            CHECK(p.speed >= Catch::Approx(50.0 / 3.6)); // 13.888.. m/s
            CHECK(p.speed <= Catch::Approx(130.0 / 3.6)); // 36.111.. m/s
        }
    }
}

TEST_CASE("init_fleet is deterministic per seed", "[mobility]") {
    HighwayConfig cfg;
    const auto a = init_fleet(cfg, 99);
    const auto b = init_fleet(cfg, 99);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].x == b[i].x);
        CHECK(a[i].speed == b[i].speed);
        CHECK(a[i].lane == b[i].lane);
    }
}

TEST_CASE("advance wraps around the ring", "[mobility]") {
    Pose p;
    p.x = 990.0;
    p.speed = 10.0;
    CHECK(advance(p, 2.0, 1000.0).x == Catch::Approx(10.0));

    p.x = 0.0;
    p.speed = 0.0;
    CHECK(advance(p, 5.0, 1000.0).x == Catch::Approx(0.0));

    p.x = 100.0;
    p.speed = 20.0;
    CHECK(advance(p, 0.5, 1000.0).x == Catch::Approx(110.0));
}

TEST_CASE("advance keeps lane and speed and stays on the ring", "[mobility]") {
    RngStream rng(3, "mobility.prop");
    for (int i = 0; i < 500; ++i) {
        Pose p;
        p.lane = static_cast<int>(rng.next_u64() % 3);
        p.x = rng.uniform(0.0, 1000.0);
        p.speed = rng.uniform(0.0, 40.0);
        const double dt = rng.uniform(0.0, 10.0);
        const Pose q = advance(p, dt, 1000.0);
        CHECK(q.lane == p.lane);
        CHECK(q.speed == p.speed);
        CHECK(q.x >= 0.0);
        CHECK(q.x < 1000.0);
    }
}

TEST_CASE("distance uses ring-shortest separation plus lane offset", "[mobility]") {
    HighwayConfig cfg;
    Pose a, b;

    SECTION("identical poses") {
        CHECK(distance(a, a, cfg) == 0.0);
    }
    SECTION("wraparound separation") {
        a.x = 0.0;
        b.x = 990.0;
        CHECK(distance(a, b, cfg) == Catch::Approx(10.0));
    }
    SECTION("pure lateral offset across two lanes") {
        b.lane = 2;
        CHECK(distance(a, b, cfg) == Catch::Approx(10.0));
    }
    SECTION("symmetry over random poses") {
        RngStream rng(11, "mobility.dist");
        for (int i = 0; i < 300; ++i) {
            a.lane = static_cast<int>(rng.next_u64() % 3);
            b.lane = static_cast<int>(rng.next_u64() % 3);
            a.x = rng.uniform(0.0, cfg.length);
            b.x = rng.uniform(0.0, cfg.length);
            CHECK(distance(a, b, cfg) == Catch::Approx(distance(b, a, cfg)));
        }
    }
}

TEST_CASE("mean longitudinal spacing per lane equals length over lane population",
          "[mobility]") {
    // On a ring the gaps around each lane sum to the ring length, so with
    // the defaults (1000 m, 150 vehicles, 3 lanes) the mean gap is 20 m for
    // every seed.
    HighwayConfig cfg;
    for (std::uint64_t seed : {1ull, 2ull, 3ull, 4ull, 5ull}) {
        const auto fleet = init_fleet(cfg, seed);
        for (int lane = 0; lane < cfg.laneCount; ++lane) {
            std::vector<double> xs;
            for (const Pose& p : fleet)
                if (p.lane == lane) xs.push_back(p.x);
            std::sort(xs.begin(), xs.end());
            REQUIRE(xs.size() == 50);
            double gapSum = 0.0;
            for (std::size_t i = 1; i < xs.size(); ++i) gapSum += xs[i] - xs[i - 1];
            gapSum += cfg.length - xs.back() + xs.front();
            const double meanGap = gapSum / static_cast<double>(xs.size());
            CHECK(meanGap == Catch::Approx(20.0));
        }
    }
}
