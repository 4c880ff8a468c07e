#include <catch2/catch_amalgamated.hpp>

#include "hvnsim/mobility.hpp"
#include "hvnsim/radio.hpp"
#include "hvnsim/rng.hpp"

using namespace hvnsim;

TEST_CASE("path_loss_db matches the hand-computed piecewise table", "[radio]") {
    // Evaluated by hand from the piecewise definition with the default
    // parameters (d0=1, d1=200, d2=500, n0=1.9, n1=n2=3.8, free-space
    // reference 47.71855987125875 dB at 1 m / 5.8 GHz).
    const PathLossModel m;
    struct Row {
        double d;
        double lossDb;
    };
    const Row table[] = {
        {1.0, 47.71855987125875},   {50.0, 79.9989899536431},
        {200.0, 91.43812978887439}, {350.0, 100.67357563895358},
        {500.0, 106.55985011841182}, {800.0, 114.31640945933697},
    };
    for (const Row& row : table)
        CHECK(path_loss_db(m, row.d) == Catch::Approx(row.lossDb).margin(1e-9));
}

TEST_CASE("path_loss_db at the reference distance is the reference loss", "[radio]") {
    PathLossModel m;
    m.refLossDb = 47.7;
    CHECK(path_loss_db(m, m.d0) == Catch::Approx(47.7).margin(1e-12));
    // One decade into the first segment adds 10 * n0 dB.
    CHECK(path_loss_db(m, 100.0) == Catch::Approx(85.7).margin(1e-12));
}

TEST_CASE("path_loss_db rejects non-positive distance", "[radio]") {
    const PathLossModel m;
    CHECK_THROWS_AS(path_loss_db(m, 0.0), std::domain_error);
    CHECK_THROWS_AS(path_loss_db(m, -5.0), std::domain_error);
}

TEST_CASE("path_loss_db is continuous at the breakpoints", "[radio]") {
    const PathLossModel m;
    const double eps = 1e-9;
    CHECK(path_loss_db(m, m.d1 + eps) - path_loss_db(m, m.d1 - eps) ==
          Catch::Approx(0.0).margin(1e-6));
    CHECK(path_loss_db(m, m.d2 + eps) - path_loss_db(m, m.d2 - eps) ==
          Catch::Approx(0.0).margin(1e-6));
}

TEST_CASE("path_loss_db is monotone non-decreasing in distance", "[radio]") {
    const PathLossModel m;
    RngStream rng(5, "radio.mono");
    for (int i = 0; i < 500; ++i) {
        const double a = rng.uniform(0.1, 1200.0);
        const double b = rng.uniform(0.1, 1200.0);
        const double lo = std::min(a, b), hi = std::max(a, b);
        CHECK(path_loss_db(m, lo) <= path_loss_db(m, hi) + 1e-12);
    }
}

TEST_CASE("reception boundary sits at 250 m with the calibrated defaults", "[radio]") {
    const PathLossModel m;
    CHECK(can_receive(m, 10.0));
    CHECK(can_receive(m, 250.0));
    CHECK_FALSE(can_receive(m, 251.0));
    CHECK_FALSE(can_receive(m, 1000.0));

    // Bisect the boundary; calibration puts it within a meter of 250.
    double lo = 1.0, hi = 1000.0;
    for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (lo + hi);
        (can_receive(m, mid) ? lo : hi) = mid;
    }
    CHECK(lo >= 249.0);
    CHECK(lo <= 251.0);
}

TEST_CASE("calibrate_sensitivity_dbm reproduces the shipped default", "[radio]") {
    const PathLossModel m;
    CHECK(calibrate_sensitivity_dbm(m, m.txPowerDbm, 250.0) ==
          Catch::Approx(m.sensitivityDbm).margin(1e-9));
}

TEST_CASE("reception is symmetric in the endpoints", "[radio]") {
    // Loss depends only on the pair distance, which is itself symmetric, so
    // a->b and b->a always agree under equal configs.
    const PathLossModel m;
    const HighwayConfig hw;
    RngStream rng(13, "radio.sym");
    for (int i = 0; i < 300; ++i) {
        Pose a, b;
        a.lane = static_cast<int>(rng.next_u64() % 3);
        b.lane = static_cast<int>(rng.next_u64() % 3);
        a.x = rng.uniform(0.0, hw.length);
        b.x = rng.uniform(0.0, hw.length);
        const double dab = std::max(distance(a, b, hw), m.d0);
        const double dba = std::max(distance(b, a, hw), m.d0);
        CHECK(can_receive(m, dab) == can_receive(m, dba));
    }
}

TEST_CASE("airtime follows the frame-bits over data-rate formula", "[radio]") {
    AdhocRadioConfig cfg;
    cfg.overheadBits = 0;
    CHECK(cfg.airtime() == Catch::Approx(800.0 / 6e6)); // 133.33 us
    cfg.overheadBits = 528;
    CHECK(cfg.airtime() == Catch::Approx(1328.0 / 6e6));
    CHECK(cfg.payload_bits() == Catch::Approx(800.0));
}

TEST_CASE("lte path latency is the sum of its components", "[radio]") {
    const LteConfig lte;
    CHECK(lte.path_latency() == Catch::Approx(0.090));
}

TEST_CASE("queue_fill_ratio spans empty to full", "[radio]") {
    TxQueue<int> q(64);
    CHECK(queue_fill_ratio(q) == 0.0);
    for (int i = 0; i < 51; ++i) REQUIRE(q.push(i));
    CHECK(queue_fill_ratio(q) == Catch::Approx(0.796875));
    for (int i = 0; i < 13; ++i) REQUIRE(q.push(i));
    CHECK(queue_fill_ratio(q) == 1.0);
}

TEST_CASE("TxQueue preserves FIFO order and rejects overflow", "[radio]") {
    TxQueue<int> q(3);
    CHECK(q.push(1));
    CHECK(q.push(2));
    CHECK(q.push(3));
    CHECK_FALSE(q.push(4)); // tail drop
    CHECK(q.pop() == 1);
    CHECK(q.pop() == 2);
    CHECK(q.push(5));
    CHECK(q.pop() == 3);
    CHECK(q.pop() == 5);
    CHECK(q.empty());
}

TEST_CASE("radio config validation flags nonsense", "[radio]") {
    PathLossModel bad;
    bad.d1 = 600.0; // d1 beyond d2
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    AdhocRadioConfig a;
    a.dataRateBps = 0.0;
    CHECK_THROWS_AS(a.validate(), std::invalid_argument);

    LteConfig l;
    l.cellCapacityBps = 0.0;
    CHECK_THROWS_AS(l.validate(), std::invalid_argument);
}
