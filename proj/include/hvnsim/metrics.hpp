#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

namespace hvnsim {

/// Per-run counters for the four reported metrics: handover count, packet
/// delivery ratio, latency and per-RAT goodput, plus the conservation
/// classes every generated beacon falls into.
///
/// Beacon-level classification is exclusive: generated ==
/// deliveredBeacons + lostAllBeacons + droppedQueue + droppedSaturation.
/// A beacon still queued or in flight when the run ends counts as lost.
/// droppedCollision counts per-receiver copies destroyed by overlapping
/// transmissions, not beacons.
struct RunMetrics {
    double duration = 0.0;

    std::int64_t vhoCount = 0;
    std::vector<int> vhoPerVehicle;

    std::int64_t txAdhoc = 0;
    std::int64_t txLte = 0;

    std::int64_t expectedReceptions = 0;
    std::int64_t actualReceptions = 0;
    std::int64_t rxAdhoc = 0;
    std::int64_t rxLte = 0;

    std::int64_t generated = 0;
    std::int64_t deliveredBeacons = 0;
    std::int64_t lostAllBeacons = 0;
    std::int64_t droppedQueue = 0;
    std::int64_t droppedCollision = 0;
    std::int64_t droppedSaturation = 0;

    double latencySum = 0.0;
    std::int64_t latencyCount = 0;
    double latencyMax = 0.0;

    double payloadBitsPerBeacon = 800.0;

    std::uint64_t traceHash = 0;

    void add_latency_sample(double seconds) {
        latencySum += seconds;
        latencyCount += 1;
        latencyMax = std::max(latencyMax, seconds);
    }
};

/// Delivery ratio in percent; absent when nothing was expected.
inline std::optional<double> pdr(const RunMetrics& m) {
    if (m.expectedReceptions <= 0) return std::nullopt;
    return 100.0 * static_cast<double>(m.actualReceptions) /
           static_cast<double>(m.expectedReceptions);
}

/// Mean generation-to-delivery delay over delivered copies; absent without
/// samples.
inline std::optional<double> mean_latency(const RunMetrics& m) {
    if (m.latencyCount <= 0) return std::nullopt;
    return m.latencySum / static_cast<double>(m.latencyCount);
}

struct Goodput {
    double adhocBps = 0.0;
    double lteBps = 0.0;
    double totalBps = 0.0;
};

/// Application-payload bits delivered per second, per RAT and stacked.
/// Only the 100-byte payload counts, never framing overhead.
inline Goodput goodput(const RunMetrics& m) {
    Goodput g;
    if (m.duration > 0.0) {
        g.adhocBps = static_cast<double>(m.rxAdhoc) * m.payloadBitsPerBeacon / m.duration;
        g.lteBps = static_cast<double>(m.rxLte) * m.payloadBitsPerBeacon / m.duration;
    }
    g.totalBps = g.adhocBps + g.lteBps;
    return g;
}

inline bool conservation_holds(const RunMetrics& m) {
    return m.generated ==
           m.deliveredBeacons + m.lostAllBeacons + m.droppedQueue + m.droppedSaturation;
}

/// Order statistics of one metric across replicate runs.
struct Stats {
    double min = 0.0;
    double median = 0.0;
    double max = 0.0;
    double mean = 0.0;

    static Stats of(std::vector<double> values) {
        Stats s;
        if (values.empty()) return s;
        std::sort(values.begin(), values.end());
        s.min = values.front();
        s.max = values.back();
        const std::size_t n = values.size();
        s.median = (n % 2 == 1) ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
        double sum = 0.0;
        for (double v : values) sum += v;
        s.mean = sum / static_cast<double>(n);
        return s;
    }
};

/// Replicate-level aggregation (min / median / max / mean per metric).
struct AggregateMetrics {
    int replicates = 0;
    Stats vho;
    Stats pdrPct;     // over runs where defined
    Stats latency;    // mean latency per run, seconds
    Stats goodputAdhoc;
    Stats goodputLte;
    std::vector<RunMetrics> runs;

    static AggregateMetrics of(std::vector<RunMetrics> runMetrics) {
        AggregateMetrics a;
        a.replicates = static_cast<int>(runMetrics.size());
        std::vector<double> vhos, pdrs, lats, gAd, gLte;
        for (const RunMetrics& m : runMetrics) {
            vhos.push_back(static_cast<double>(m.vhoCount));
            if (auto p = pdr(m)) pdrs.push_back(*p);
            if (auto l = mean_latency(m)) lats.push_back(*l);
            const Goodput g = goodput(m);
            gAd.push_back(g.adhocBps);
            gLte.push_back(g.lteBps);
        }
        a.vho = Stats::of(std::move(vhos));
        a.pdrPct = Stats::of(std::move(pdrs));
        a.latency = Stats::of(std::move(lats));
        a.goodputAdhoc = Stats::of(std::move(gAd));
        a.goodputLte = Stats::of(std::move(gLte));
        a.runs = std::move(runMetrics);
        return a;
    }
};

} // namespace hvnsim
