#pragma once

#include <cmath>
#include <cstdint>
#include <deque>
#include <stdexcept>

namespace hvnsim {

/// Three-log-distance propagation: three path-loss exponents over the
/// distance bands split at d1 and d2, continuous at the breakpoints,
/// referenced to the free-space loss at d0.
struct PathLossModel {
    double d0 = 1.0;    // meters
    double d1 = 200.0;  // meters
    double d2 = 500.0;  // meters
    double n0 = 1.9;
    double n1 = 3.8;
    double n2 = 3.8;
    double refLossDb = free_space_ref_loss_db(5.8e9, 1.0);
    double txPowerDbm = 20.0;
    // Calibrated so the reception boundary with the defaults above lands
    // exactly at 250 m; see calibrate_sensitivity_dbm.
    double sensitivityDbm = -75.12071028318053;

    /// Free-space loss 32.45 + 20 log10(f_MHz) + 20 log10(d_km), in dB.
    static double free_space_ref_loss_db(double freqHz, double dMeters) {
        return 32.45 + 20.0 * std::log10(freqHz / 1e6) + 20.0 * std::log10(dMeters / 1000.0);
    }

    void validate() const {
        if (!(d0 < d1 && d1 < d2))
            throw std::invalid_argument("pathloss breakpoints must satisfy d0 < d1 < d2");
        if (!(n0 > 0.0 && n1 > 0.0 && n2 > 0.0))
            throw std::invalid_argument("pathloss exponents must be > 0");
    }
};

inline double path_loss_db(const PathLossModel& m, double d) {
    if (!(d > 0.0))
        throw std::domain_error("path_loss_db requires d > 0");
    if (d <= m.d1)
        return m.refLossDb + 10.0 * m.n0 * std::log10(d / m.d0);
    const double atD1 = m.refLossDb + 10.0 * m.n0 * std::log10(m.d1 / m.d0);
    if (d <= m.d2)
        return atD1 + 10.0 * m.n1 * std::log10(d / m.d1);
    const double atD2 = atD1 + 10.0 * m.n1 * std::log10(m.d2 / m.d1);
    return atD2 + 10.0 * m.n2 * std::log10(d / m.d2);
}

inline bool can_receive(const PathLossModel& m, double txPowerDbm, double sensitivityDbm,
                        double d) {
    return txPowerDbm - path_loss_db(m, d) >= sensitivityDbm;
}

inline bool can_receive(const PathLossModel& m, double d) {
    return can_receive(m, m.txPowerDbm, m.sensitivityDbm, d);
}

/// Receiver sensitivity that puts the reception boundary exactly at
/// targetRange for the given model and transmit power. Loss is strictly
/// increasing in distance, so this is the one-dimensional search collapsed
/// to its closed form: the boundary condition tx - loss(d*) = sens solved
/// at d* = targetRange.
inline double calibrate_sensitivity_dbm(const PathLossModel& m, double txPowerDbm,
                                        double targetRange) {
    return txPowerDbm - path_loss_db(m, targetRange);
}

/// 802.11p broadcast parameters. overheadBits covers preamble/PLCP plus
/// MAC framing at the configured rate.
struct AdhocRadioConfig {
    double dataRateBps = 6e6;
    int beaconSizeBytes = 100;
    int queueCapacity = 64;
    double rangeMeters = 250.0;
    int overheadBits = 528;
    double jitterMaxSeconds = 1e-3;  // uniform jitter per transmission attempt
    double ccaSeconds = 2e-6;        // carrier-sense detection delay
    int maxDeferrals = 200;          // busy-channel retries before forcing the send

    double airtime() const {
        return (beaconSizeBytes * 8.0 + overheadBits) / dataRateBps;
    }
    double payload_bits() const { return beaconSizeBytes * 8.0; }

    void validate() const {
        if (!(dataRateBps > 0.0)) throw std::invalid_argument("adhoc.dataRateBps must be > 0");
        if (beaconSizeBytes < 1) throw std::invalid_argument("adhoc.beaconSizeBytes must be >= 1");
        if (queueCapacity < 1) throw std::invalid_argument("adhoc.queueCapacity must be >= 1");
        if (!(rangeMeters > 0.0)) throw std::invalid_argument("adhoc.rangeMeters must be > 0");
        if (overheadBits < 0) throw std::invalid_argument("adhoc.overheadBits must be >= 0");
        if (jitterMaxSeconds < 0.0 || ccaSeconds < 0.0 || maxDeferrals < 0)
            throw std::invalid_argument("adhoc MAC timing parameters must be >= 0");
    }
};

/// Abstracted single-cell LTE relay path: uplink to the eNodeB, core/ITS
/// server turnaround, downlink broadcast back to the sender's neighborhood.
/// The latency components and handover delay are modeling assumptions, not
/// measured values; all are overridable in the scenario config.
struct LteConfig {
    double uplinkLatency = 0.040;    // seconds
    double coreLatency = 0.010;      // seconds
    double downlinkLatency = 0.040;  // seconds
    double cellCapacityBps = 10e6;
    double vhoDelay = 0.5;           // seconds of handover blackout

    double path_latency() const { return uplinkLatency + coreLatency + downlinkLatency; }

    void validate() const {
        if (uplinkLatency < 0.0 || coreLatency < 0.0 || downlinkLatency < 0.0)
            throw std::invalid_argument("lte latencies must be >= 0");
        if (!(cellCapacityBps > 0.0)) throw std::invalid_argument("lte.cellCapacityBps must be > 0");
        if (vhoDelay < 0.0) throw std::invalid_argument("lte.vhoDelay must be >= 0");
    }
};

/// FIFO transmit queue with tail drop at capacity.
template <typename T>
class TxQueue {
public:
    explicit TxQueue(int capacity = 64) : capacity_(capacity) {}

    /// False when the queue is full and the item was rejected.
    bool push(T item) {
        if (static_cast<int>(items_.size()) >= capacity_) return false;
        items_.push_back(std::move(item));
        return true;
    }

    T pop() {
        T item = std::move(items_.front());
        items_.pop_front();
        return item;
    }

    bool empty() const { return items_.empty(); }
    int size() const { return static_cast<int>(items_.size()); }
    int capacity() const { return capacity_; }
    void clear() { items_.clear(); }

    auto begin() const { return items_.begin(); }
    auto end() const { return items_.end(); }

private:
    std::deque<T> items_;
    int capacity_;
};

template <typename T>
inline double queue_fill_ratio(const TxQueue<T>& q) {
    return static_cast<double>(q.size()) / static_cast<double>(q.capacity());
}

} // namespace hvnsim
