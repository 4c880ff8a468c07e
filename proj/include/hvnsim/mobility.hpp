#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "hvnsim/rng.hpp"

namespace hvnsim {

/// Highway geometry and fleet parameters. The road is a ring: vehicles that
/// pass the end re-enter at the start, which keeps density constant over a
/// run (a stand-in for the steady in/out flow of a real segment).
struct HighwayConfig {
    double length = 1000.0;  // meters
    int laneCount = 3;
    double laneWidth = 5.0;  // meters
    int vehicleCount = 150;
    double speedMinKmh = 50.0;
    double speedMaxKmh = 130.0;

    void validate() const {
        if (!(length > 0.0)) throw std::invalid_argument("highway.length must be > 0");
        if (laneCount < 1) throw std::invalid_argument("highway.laneCount must be >= 1");
        if (laneWidth < 0.0) throw std::invalid_argument("highway.laneWidth must be >= 0");
        if (vehicleCount < 0) throw std::invalid_argument("highway.vehicleCount must be >= 0");
        if (speedMinKmh > speedMaxKmh)
            throw std::invalid_argument("highway.speedMinKmh must be <= speedMaxKmh");
    }
};

struct Pose {
    int lane = 0;
    double x = 0.0;     // meters along the ring, [0, length)
    double speed = 0.0; // m/s
};

inline constexpr double kmh_to_ms(double kmh) { return kmh / 3.6; }

/// Places vehicleCount vehicles: lanes round-robin, positions uniform over
/// the ring, speeds uniform over the configured km/h range.
inline std::vector<Pose> init_fleet(const HighwayConfig& cfg, std::uint64_t seed) {
    cfg.validate();
    std::vector<Pose> fleet;
    fleet.reserve(static_cast<std::size_t>(cfg.vehicleCount));
    for (int i = 0; i < cfg.vehicleCount; ++i) {
        RngStream rng(seed, "mobility", static_cast<std::uint64_t>(i));
        Pose p;
        p.lane = i % cfg.laneCount;
        p.x = rng.uniform(0.0, cfg.length);
        p.speed = kmh_to_ms(rng.uniform(cfg.speedMinKmh, cfg.speedMaxKmh));
        fleet.push_back(p);
    }
    return fleet;
}

/// Constant-speed motion with wraparound.
inline Pose advance(const Pose& pose, double dt, double length) {
    Pose next = pose;
    next.x = std::fmod(pose.x + pose.speed * dt, length);
    if (next.x < 0.0) next.x += length;
    return next;
}

/// Euclidean distance from ring-shortest longitudinal separation and the
/// lateral lane offset.
inline double distance(const Pose& a, const Pose& b, const HighwayConfig& cfg) {
    double dx = std::fabs(a.x - b.x);
    dx = std::min(dx, cfg.length - dx);
    const double dy = cfg.laneWidth * std::abs(a.lane - b.lane);
    return std::hypot(dx, dy);
}

} // namespace hvnsim
