#pragma once

#include <algorithm>
#include <cassert>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <future>
#include <optional>
#include <ostream>
#include <queue>
#include <vector>

#include "hvnsim/config.hpp"
#include "hvnsim/core.hpp"
#include "hvnsim/drrm.hpp"
#include "hvnsim/metrics.hpp"
#include "hvnsim/mobility.hpp"
#include "hvnsim/radio.hpp"
#include "hvnsim/rng.hpp"

namespace hvnsim {

/// Event kinds in tie-break order at equal timestamps: receptions first so
/// queue and channel state settle before load checks, handover completions
/// last. Remaining ties resolve by scheduling sequence.
enum class EventKind {
    Reception = 0,
    TimerExpiry = 1,
    NlmEvaluation = 2,
    BeaconDue = 3,
    MobilityTick = 4,
    VhoComplete = 5,
};

enum class TimerKind { None, MacAttempt, TxEnd, BfaPhase, PeriodicToggle };

struct Event {
    double time = 0.0;
    EventKind kind = EventKind::TimerExpiry;
    TimerKind timer = TimerKind::None;
    int vehicle = -1;
    std::int64_t beacon = -1;
    std::int64_t tx = -1;    // transmission index (Reception) or MAC epoch (MacAttempt)
    double deadline = 0.0;   // staleness token for phase timers
    bool lte = false;        // reception arrived via the LTE relay
    std::uint64_t seq = 0;
};

struct EventAfter {
    bool operator()(const Event& a, const Event& b) const {
        if (a.time != b.time) return a.time > b.time;
        if (a.kind != b.kind) return static_cast<int>(a.kind) > static_cast<int>(b.kind);
        return a.seq > b.seq;
    }
};

/// Deterministic discrete-event kernel for one run. All state is owned here
/// and mutated on a single thread; replicate runs share only the (copied)
/// configuration.
class Simulator {
public:
    explicit Simulator(const ScenarioConfig& cfg) : cfg_(cfg) { cfg_.validate(); }

    /// Executes the run. Events at t == duration still execute; later ones
    /// do not. Identical (config, seed) yields an identical event sequence
    /// and therefore identical metrics and trace hash.
    RunMetrics run(std::ostream* traceOut = nullptr) {
        traceOut_ = traceOut;
        setup();
        while (!events_.empty()) {
            const Event ev = events_.top();
            if (ev.time > cfg_.run.duration) break;
            events_.pop();
            assert(ev.time >= now_ && "simulation clock went backwards");
            now_ = ev.time;
            advance_air_scan();
            dispatch(ev);
        }
        finalize();
        return metrics_;
    }

private:
    struct QueuedBeacon {
        std::int64_t id = -1;
    };

    enum class Terminal : std::uint8_t { Pending, DroppedQueue, DroppedSaturation };

    struct BeaconRecord {
        double genTime = 0.0;
        int sender = -1;
        Terminal terminal = Terminal::Pending;
        int delivered = 0;
        bool aired = false;
    };

    struct Transmission {
        int sender = -1;
        double start = 0.0;
        double end = 0.0;
        Pose senderPose;
        std::int64_t beacon = -1;
        bool requestFlag = false;
    };

    struct Vehicle {
        Pose pose;
        DrrmState drrm;
        TxQueue<QueuedBeacon> queue{64};
        bool macActive = false;     // an attempt/transmission cycle is in flight
        std::int64_t macEpoch = 0;  // bumped on handover to void stale attempts
        int deferrals = 0;
        // Sensed-channel bookkeeping (union of heard busy intervals).
        double busyAccum = 0.0;
        double lastBusyEnd = 0.0;
        double windowStart = 0.0;
        double busyFraction = 0.0;
        RngStream jitter;
        RngStream phase;

        Vehicle(std::uint64_t seed, int id, const ScenarioConfig& cfg)
            : queue(cfg.adhoc.queueCapacity),
              jitter(seed, "mac.jitter", static_cast<std::uint64_t>(id)),
              phase(seed, "phase", static_cast<std::uint64_t>(id)) {}
    };

    // --- setup ------------------------------------------------------------

    void setup() {
        const std::uint64_t seed = cfg_.run.seed;
        const auto fleet = init_fleet(cfg_.highway, seed);
        vehicles_.clear();
        vehicles_.reserve(fleet.size());
        for (int i = 0; i < static_cast<int>(fleet.size()); ++i) {
            Vehicle v(seed, i, cfg_);
            v.pose = fleet[static_cast<std::size_t>(i)];
            v.drrm.bfa = BfaState::initial(cfg_.qos);
            vehicles_.push_back(std::move(v));
        }
        metrics_ = RunMetrics{};
        metrics_.duration = cfg_.run.duration;
        metrics_.payloadBitsPerBeacon = cfg_.adhoc.payload_bits();
        metrics_.vhoPerVehicle.assign(vehicles_.size(), 0);
        records_.clear();
        air_.clear();
        airScanFrom_ = 0;
        events_ = {};
        now_ = 0.0;
        seq_ = 0;
        cellWindow_ = -1;
        cellBitsInWindow_ = 0.0;
        traceHash_ = 1469598103934665603ull;

        for (int i = 0; i < vehicle_count(); ++i) {
            Vehicle& v = vehicles_[static_cast<std::size_t>(i)];
            const double interval = beacon_interval(v.drrm.bfa);
            const double phase = cfg_.run.zeroBeaconPhase ? 0.0 : v.phase.uniform(0.0, interval);
            schedule(phase, EventKind::BeaconDue, i);
            if (cfg_.scheme.kind == SchemeKind::QosAware ||
                cfg_.scheme.kind == SchemeKind::NoBfa) {
                schedule(v.phase.uniform(0.0, cfg_.drrm.nlmInterval), EventKind::NlmEvaluation,
                         i);
            }
            if (cfg_.scheme.kind == SchemeKind::Periodic) {
                schedule_timer(v.phase.uniform(0.0, cfg_.scheme.period), TimerKind::PeriodicToggle,
                               i);
            }
        }
        if (vehicle_count() > 0)
            schedule(cfg_.run.mobilityTick, EventKind::MobilityTick, -1);
    }

    // --- event plumbing -----------------------------------------------------

    void schedule(Event ev) {
        assert(ev.time >= now_ && "event scheduled in the past");
        ev.seq = seq_++;
        events_.push(ev);
    }

    void schedule(double time, EventKind kind, int vehicle) {
        Event ev;
        ev.time = time;
        ev.kind = kind;
        ev.vehicle = vehicle;
        schedule(ev);
    }

    void schedule_timer(double time, TimerKind timer, int vehicle, std::int64_t tx = -1,
                        double deadline = 0.0) {
        Event ev;
        ev.time = time;
        ev.kind = EventKind::TimerExpiry;
        ev.timer = timer;
        ev.vehicle = vehicle;
        ev.tx = tx;
        ev.deadline = deadline;
        schedule(ev);
    }

    void dispatch(const Event& ev) {
        switch (ev.kind) {
            case EventKind::Reception: on_reception(ev); break;
            case EventKind::TimerExpiry:
                switch (ev.timer) {
                    case TimerKind::MacAttempt: on_mac_attempt(ev.vehicle, ev.tx); break;
                    case TimerKind::TxEnd: on_tx_end(ev.vehicle); break;
                    case TimerKind::BfaPhase: on_bfa_phase(ev.vehicle, ev.deadline); break;
                    case TimerKind::PeriodicToggle: on_periodic_toggle(ev.vehicle); break;
                    case TimerKind::None: break;
                }
                break;
            case EventKind::NlmEvaluation: on_nlm_evaluation(ev.vehicle); break;
            case EventKind::BeaconDue: on_beacon_due(ev.vehicle); break;
            case EventKind::MobilityTick: on_mobility_tick(); break;
            case EventKind::VhoComplete: on_vho_complete(ev.vehicle); break;
        }
    }

    // --- beacon generation ----------------------------------------------------

    void on_beacon_due(int vi) {
        Vehicle& v = vehicles_[static_cast<std::size_t>(vi)];
        const std::int64_t id = static_cast<std::int64_t>(records_.size());
        records_.push_back(BeaconRecord{now_, vi, Terminal::Pending, 0, false});
        metrics_.generated += 1;
        trace(vi, "beacon_due", "id=%lld freq=%d", static_cast<long long>(id), v.drrm.bfa.freq);

        if (!v.drrm.vho_in_progress() && v.drrm.on_lte()) {
            lte_send(vi, id);
        } else {
            // On ad hoc, or blacked out by a handover: the beacon waits in the
            // queue and leaves on whichever interface is active afterwards.
            enqueue(v, vi, id);
            if (!v.drrm.vho_in_progress()) maybe_start_mac(vi);
        }
        schedule(now_ + beacon_interval(v.drrm.bfa), EventKind::BeaconDue, vi);
    }

    void enqueue(Vehicle& v, int vi, std::int64_t id) {
        if (!v.queue.push(QueuedBeacon{id})) {
            records_[static_cast<std::size_t>(id)].terminal = Terminal::DroppedQueue;
            metrics_.droppedQueue += 1;
            trace(vi, "drop_queue", "id=%lld", static_cast<long long>(id));
        }
    }

    // --- 802.11p MAC ------------------------------------------------------------

    void maybe_start_mac(int vi) {
        Vehicle& v = vehicles_[static_cast<std::size_t>(vi)];
        if (v.macActive || v.queue.empty()) return;
        v.macActive = true;
        v.deferrals = 0;
        schedule_timer(now_ + v.jitter.uniform(0.0, cfg_.adhoc.jitterMaxSeconds),
                       TimerKind::MacAttempt, vi, v.macEpoch);
    }

    void on_mac_attempt(int vi, std::int64_t epoch) {
        Vehicle& v = vehicles_[static_cast<std::size_t>(vi)];
        if (!v.macActive || epoch != v.macEpoch) return; // superseded
        if (v.drrm.vho_in_progress() || v.drrm.on_lte() || v.queue.empty()) {
            v.macActive = false;
            return;
        }
        const auto busyUntil = sense_busy_until(vi);
        if (busyUntil && v.deferrals < cfg_.adhoc.maxDeferrals) {
            v.deferrals += 1;
            schedule_timer(*busyUntil + v.jitter.uniform(0.0, cfg_.adhoc.jitterMaxSeconds),
                           TimerKind::MacAttempt, vi, v.macEpoch);
            return;
        }
        start_transmission(vi);
    }

    /// Latest end among transmissions this vehicle can currently hear. A
    /// transmission that started less than ccaSeconds ago is not detectable
    /// yet, which is how near-simultaneous attempts end up colliding.
    std::optional<double> sense_busy_until(int vi) const {
        const Vehicle& v = vehicles_[static_cast<std::size_t>(vi)];
        std::optional<double> until;
        for (std::size_t i = airScanFrom_; i < air_.size(); ++i) {
            const Transmission& t = air_[i];
            if (t.end <= now_) continue;
            if (t.start > now_ - cfg_.adhoc.ccaSeconds) continue;
            if (distance(v.pose, t.senderPose, cfg_.highway) > cfg_.adhoc.rangeMeters) continue;
            if (!until || t.end > *until) until = t.end;
        }
        return until;
    }

    void start_transmission(int vi) {
        Vehicle& v = vehicles_[static_cast<std::size_t>(vi)];
        const QueuedBeacon qb = v.queue.pop();
        Transmission t;
        t.sender = vi;
        t.start = now_;
        t.end = now_ + cfg_.adhoc.airtime();
        t.senderPose = v.pose;
        t.beacon = qb.id;
        t.requestFlag = v.drrm.requestNeighborsFlag;
        v.drrm.requestNeighborsFlag = false;
        const std::int64_t txIdx = static_cast<std::int64_t>(air_.size());
        air_.push_back(t);

        records_[static_cast<std::size_t>(qb.id)].aired = true;
        metrics_.txAdhoc += 1;
        trace(vi, "tx_adhoc", "id=%lld%s", static_cast<long long>(qb.id),
              t.requestFlag ? " bfa_request" : "");

        for (int u = 0; u < vehicle_count(); ++u) {
            if (u == vi) continue;
            const Vehicle& rx = vehicles_[static_cast<std::size_t>(u)];
            const double d =
                std::max(distance(v.pose, rx.pose, cfg_.highway), cfg_.pathloss.d0);
            if (!can_receive(cfg_.pathloss, d)) continue;
            metrics_.expectedReceptions += 1;
            Event ev;
            ev.time = t.end;
            ev.kind = EventKind::Reception;
            ev.vehicle = u;
            ev.beacon = qb.id;
            ev.tx = txIdx;
            schedule(ev);
        }
        for (int u = 0; u < vehicle_count(); ++u) {
            Vehicle& h = vehicles_[static_cast<std::size_t>(u)];
            if (u != vi && distance(v.pose, h.pose, cfg_.highway) > cfg_.adhoc.rangeMeters)
                continue;
            accumulate_busy(h, t.start, t.end);
        }
        schedule_timer(t.end, TimerKind::TxEnd, vi, txIdx);
    }

    static void accumulate_busy(Vehicle& v, double start, double end) {
        if (end <= v.lastBusyEnd) return;
        v.busyAccum += end - std::max(start, v.lastBusyEnd);
        v.lastBusyEnd = end;
    }

    void on_tx_end(int vi) {
        Vehicle& v = vehicles_[static_cast<std::size_t>(vi)];
        if (v.drrm.vho_in_progress() || v.drrm.on_lte() || v.queue.empty()) {
            v.macActive = false;
            return;
        }
        v.deferrals = 0;
        schedule_timer(now_ + v.jitter.uniform(0.0, cfg_.adhoc.jitterMaxSeconds),
                       TimerKind::MacAttempt, vi, v.macEpoch);
    }

    void advance_air_scan() {
        const double horizon = now_ - 2.0 * cfg_.adhoc.airtime() - 1e-6;
        while (airScanFrom_ < air_.size() && air_[airScanFrom_].end < horizon) ++airScanFrom_;
    }

    // --- reception --------------------------------------------------------------

    void on_reception(const Event& ev) {
        Vehicle& rx = vehicles_[static_cast<std::size_t>(ev.vehicle)];
        if (ev.lte) {
            deliver(ev.vehicle, ev.beacon, /*viaLte=*/true);
            return;
        }
        const Transmission& t = air_[static_cast<std::size_t>(ev.tx)];
        if (collided_at(ev.vehicle, static_cast<std::size_t>(ev.tx))) {
            metrics_.droppedCollision += 1;
            trace(ev.vehicle, "rx_collision", "id=%lld", static_cast<long long>(ev.beacon));
            return;
        }
        deliver(ev.vehicle, ev.beacon, /*viaLte=*/false);
        if (t.requestFlag && cfg_.scheme.kind == SchemeKind::QosAware) {
            const ReduceOutcome out = handle_neighbor_request(cfg_.qos, rx.drrm, t.sender, now_);
            if (out == ReduceOutcome::Applied) {
                trace(ev.vehicle, "bfa_neighbor", "freq=%d", rx.drrm.bfa.freq);
                schedule_bfa_timer(ev.vehicle);
            } else if (out == ReduceOutcome::Deferred) {
                trace(ev.vehicle, "bfa_neighbor", "deferred");
            }
        }
    }

    bool collided_at(int receiver, std::size_t txIdx) const {
        const Transmission& t = air_[txIdx];
        const Vehicle& rx = vehicles_[static_cast<std::size_t>(receiver)];
        for (std::size_t i = airScanFrom_; i < air_.size(); ++i) {
            if (i == txIdx) continue;
            const Transmission& o = air_[i];
            if (o.start >= t.end || o.end <= t.start) continue;
            if (distance(rx.pose, o.senderPose, cfg_.highway) <= cfg_.adhoc.rangeMeters)
                return true;
        }
        return false;
    }

    void deliver(int receiver, std::int64_t beacon, bool viaLte) {
        BeaconRecord& rec = records_[static_cast<std::size_t>(beacon)];
        rec.delivered += 1;
        metrics_.actualReceptions += 1;
        if (viaLte)
            metrics_.rxLte += 1;
        else
            metrics_.rxAdhoc += 1;
        metrics_.add_latency_sample(now_ - rec.genTime);
        trace(receiver, viaLte ? "rx_lte" : "rx_adhoc", "id=%lld",
              static_cast<long long>(beacon));
    }

    // --- LTE relay path ------------------------------------------------------------

    void lte_send(int vi, std::int64_t id) {
        Vehicle& v = vehicles_[static_cast<std::size_t>(vi)];
        const std::int64_t win = static_cast<std::int64_t>(now_); // 1 s accounting windows
        if (win != cellWindow_) {
            cellWindow_ = win;
            cellBitsInWindow_ = 0.0;
        }
        const double bits = cfg_.adhoc.payload_bits();
        if (cellBitsInWindow_ + bits > cfg_.lte.cellCapacityBps) {
            records_[static_cast<std::size_t>(id)].terminal = Terminal::DroppedSaturation;
            metrics_.droppedSaturation += 1;
            trace(vi, "drop_saturation", "id=%lld", static_cast<long long>(id));
            return;
        }
        cellBitsInWindow_ += bits;
        records_[static_cast<std::size_t>(id)].aired = true;
        metrics_.txLte += 1;
        trace(vi, "tx_lte", "id=%lld", static_cast<long long>(id));

        const double arrival = now_ + cfg_.lte.path_latency();
        for (int u = 0; u < vehicle_count(); ++u) {
            if (u == vi) continue;
            const Vehicle& rx = vehicles_[static_cast<std::size_t>(u)];
            if (distance(v.pose, rx.pose, cfg_.highway) > cfg_.adhoc.rangeMeters) continue;
            metrics_.expectedReceptions += 1;
            Event ev;
            ev.time = arrival;
            ev.kind = EventKind::Reception;
            ev.vehicle = u;
            ev.beacon = id;
            ev.lte = true;
            schedule(ev);
        }
    }

    // --- DRRM: load evaluation and decisions ------------------------------------------

    void on_nlm_evaluation(int vi) {
        Vehicle& v = vehicles_[static_cast<std::size_t>(vi)];
        close_busy_window(v);
        const double ownShare = cfg_.qos.bFreqInitial * cfg_.adhoc.airtime();
        v.drrm.projectedAdhocNormal =
            v.busyFraction + ownShare <= cfg_.drrm.returnBusyThreshold;

        if (!v.drrm.vho_in_progress()) {
            const LoadStatus load = nlm_check(v.queue, cfg_.drrm.nlm);
            const Decision d = scheme_decide(cfg_.scheme, cfg_.qos, v.drrm, load, now_);
            apply_decision(vi, d, load);
            // While the neighbor round is open and distress persists, every
            // outgoing beacon keeps carrying the reduction request.
            if (cfg_.scheme.kind == SchemeKind::QosAware && !v.drrm.vho_in_progress() &&
                !v.drrm.on_lte() && load == LoadStatus::Overload && v.drrm.escalation >= 2)
                v.drrm.requestNeighborsFlag = true;
        }
        schedule(now_ + cfg_.drrm.nlmInterval, EventKind::NlmEvaluation, vi);
    }

    void close_busy_window(Vehicle& v) {
        const double len = now_ - v.windowStart;
        v.busyFraction = len > 0.0 ? std::min(1.0, v.busyAccum / len) : 0.0;
        v.busyAccum = 0.0;
        v.windowStart = now_;
    }

    void apply_decision(int vi, Decision d, LoadStatus load) {
        Vehicle& v = vehicles_[static_cast<std::size_t>(vi)];
        switch (d) {
            case Decision::Stay:
                if (!v.drrm.on_lte() && load == LoadStatus::Normal) {
                    v.drrm.escalation = 0;
                    v.drrm.requestNeighborsFlag = false;
                }
                break;
            case Decision::ReduceLocal: {
                const ReduceOutcome out = try_reduce(cfg_.qos, v.drrm.bfa, now_);
                if (out == ReduceOutcome::Applied) {
                    trace(vi, "bfa_local", "freq=%d", v.drrm.bfa.freq);
                    schedule_bfa_timer(vi);
                } else if (out == ReduceOutcome::Deferred) {
                    v.drrm.pendingLocalReduce = true;
                }
                v.drrm.escalation = std::max(v.drrm.escalation, 1);
                break;
            }
            case Decision::RequestNeighbors:
                v.drrm.requestNeighborsFlag = true;
                v.drrm.escalation = 2;
                if (v.drrm.bfa.dwell_blocked(now_)) v.drrm.pendingLocalReduce = true;
                trace(vi, "bfa_request", "flagged");
                break;
            case Decision::VhoToLte: start_vho(vi, RatKind::Lte); break;
            case Decision::VhoToAdhoc: start_vho(vi, RatKind::Adhoc80211p); break;
        }
    }

    // --- BFA phase timers ----------------------------------------------------------

    void schedule_bfa_timer(int vi) {
        const Vehicle& v = vehicles_[static_cast<std::size_t>(vi)];
        if (!v.drrm.bfa.phase_deadline) return;
        schedule_timer(*v.drrm.bfa.phase_deadline, TimerKind::BfaPhase, vi, -1,
                       *v.drrm.bfa.phase_deadline);
    }

    void on_bfa_phase(int vi, double deadline) {
        Vehicle& v = vehicles_[static_cast<std::size_t>(vi)];
        if (v.drrm.on_lte() || v.drrm.vho_in_progress()) return;
        if (!v.drrm.bfa.phase_deadline || *v.drrm.bfa.phase_deadline != deadline)
            return; // superseded by a later extension or reset
        const BfaPhase was = v.drrm.bfa.phase;
        // At the end of the minimum initial dwell a reduction applies if one
        // was deferred, or if the sensed channel is still too busy to carry
        // this vehicle at its initial rate (adaptation only finishes once
        // the load has actually subsided).
        const bool pending = v.drrm.pendingLocalReduce || !v.drrm.projectedAdhocNormal;
        v.drrm.bfa = bfa_on_timer(cfg_.qos, v.drrm.bfa, now_, pending);
        if (was == BfaPhase::Initial) {
            v.drrm.pendingLocalReduce = false;
            v.drrm.pendingRequesters.clear();
        }
        trace(vi, "bfa_phase", "%s freq=%d",
              v.drrm.bfa.phase == BfaPhase::Reduced ? "reduced" : "initial", v.drrm.bfa.freq);
        schedule_bfa_timer(vi);
    }

    // --- vertical handover ------------------------------------------------------------

    void start_vho(int vi, RatKind target) {
        Vehicle& v = vehicles_[static_cast<std::size_t>(vi)];
        execute_vho(v.drrm, target, now_, cfg_.lte.vhoDelay);
        v.macActive = false;
        v.macEpoch += 1;
        trace(vi, "vho_start", "target=%s", to_string(target));
        schedule(now_ + cfg_.lte.vhoDelay, EventKind::VhoComplete, vi);
    }

    void on_vho_complete(int vi) {
        Vehicle& v = vehicles_[static_cast<std::size_t>(vi)];
        complete_vho(v.drrm, cfg_.qos, now_, cfg_.drrm.lteDwell);
        metrics_.vhoCount += 1;
        metrics_.vhoPerVehicle[static_cast<std::size_t>(vi)] += 1;
        trace(vi, "vho_complete", "rat=%s", to_string(v.drrm.activeRat));
        if (v.drrm.on_lte()) {
            // Blackout backlog leaves on the new interface.
            while (!v.queue.empty()) lte_send(vi, v.queue.pop().id);
        } else {
            maybe_start_mac(vi);
        }
    }

    void on_periodic_toggle(int vi) {
        Vehicle& v = vehicles_[static_cast<std::size_t>(vi)];
        if (!v.drrm.vho_in_progress()) {
            const Decision d = scheme_decide(cfg_.scheme, cfg_.qos, v.drrm, LoadStatus::Normal,
                                             now_, /*periodicToggleDue=*/true);
            apply_decision(vi, d, LoadStatus::Normal);
        }
        schedule_timer(now_ + cfg_.scheme.period, TimerKind::PeriodicToggle, vi);
    }

    // --- mobility -----------------------------------------------------------------------

    void on_mobility_tick() {
        for (Vehicle& v : vehicles_)
            v.pose = advance(v.pose, cfg_.run.mobilityTick, cfg_.highway.length);
        trace(-1, "mobility_tick", "");
        schedule(now_ + cfg_.run.mobilityTick, EventKind::MobilityTick, -1);
    }

    // --- finalization ---------------------------------------------------------------------

    void finalize() {
        for (const BeaconRecord& rec : records_) {
            if (rec.terminal != Terminal::Pending) continue; // drops counted as they happened
            if (rec.delivered > 0)
                metrics_.deliveredBeacons += 1;
            else
                metrics_.lostAllBeacons += 1; // never delivered, incl. cutoff leftovers
        }
        metrics_.traceHash = traceHash_;
    }

    // --- trace ------------------------------------------------------------------------------

    void trace(int vehicle, const char* kind, const char* fmt, ...) {
        char detail[160];
        va_list args;
        va_start(args, fmt);
        std::vsnprintf(detail, sizeof detail, fmt, args);
        va_end(args);
        char line[224];
        const int n =
            std::snprintf(line, sizeof line, "%.9f v=%d %s %s\n", now_, vehicle, kind, detail);
        for (int i = 0; i < n; ++i) {
            traceHash_ ^= static_cast<unsigned char>(line[i]);
            traceHash_ *= 1099511628211ull;
        }
        if (traceOut_) traceOut_->write(line, n);
    }

    int vehicle_count() const { return static_cast<int>(vehicles_.size()); }

    ScenarioConfig cfg_;
    std::vector<Vehicle> vehicles_;
    std::vector<BeaconRecord> records_;
    std::vector<Transmission> air_;
    std::size_t airScanFrom_ = 0;
    std::priority_queue<Event, std::vector<Event>, EventAfter> events_;
    double now_ = 0.0;
    std::uint64_t seq_ = 0;
    std::int64_t cellWindow_ = -1;
    double cellBitsInWindow_ = 0.0;
    RunMetrics metrics_;
    std::uint64_t traceHash_ = 0;
    std::ostream* traceOut_ = nullptr;
};

/// One run with the configured seed.
inline RunMetrics run(const ScenarioConfig& cfg, std::ostream* traceOut = nullptr) {
    Simulator sim(cfg);
    return sim.run(traceOut);
}

/// Replicate runs under seeds seed+0 .. seed+replicates-1, aggregated into
/// per-metric min/median/max/mean. Runs execute concurrently and merge in
/// seed order, so the aggregate is deterministic.
inline AggregateMetrics run_replicates(const ScenarioConfig& cfg) {
    cfg.validate();
    std::vector<std::future<RunMetrics>> futures;
    futures.reserve(static_cast<std::size_t>(cfg.run.replicates));
    for (int r = 0; r < cfg.run.replicates; ++r) {
        ScenarioConfig c = cfg;
        c.run.seed = cfg.run.seed + static_cast<std::uint64_t>(r);
        futures.push_back(std::async(std::launch::async, [c] { return run(c); }));
    }
    std::vector<RunMetrics> runs;
    runs.reserve(futures.size());
    for (auto& f : futures) runs.push_back(f.get());
    return AggregateMetrics::of(std::move(runs));
}

} // namespace hvnsim
