#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "hvnsim/core.hpp"
#include "hvnsim/radio.hpp"

namespace hvnsim {

enum class LoadStatus { Normal, Overload };

/// Network Load Monitor: queue occupancy against a fixed fraction of the
/// total capacity (typically 80-90%).
struct NlmConfig {
    double threshold = 0.85;

    void validate() const {
        if (!(threshold > 0.0 && threshold <= 1.0))
            throw std::invalid_argument("drrm.nlmThreshold must be in (0,1]");
    }
};

template <typename T>
inline LoadStatus nlm_check(const TxQueue<T>& q, const NlmConfig& cfg) {
    return queue_fill_ratio(q) >= cfg.threshold ? LoadStatus::Overload : LoadStatus::Normal;
}

/// What the DRRM entity does at one load evaluation.
enum class Decision { Stay, ReduceLocal, RequestNeighbors, VhoToLte, VhoToAdhoc };

inline const char* to_string(Decision d) {
    switch (d) {
        case Decision::Stay: return "stay";
        case Decision::ReduceLocal: return "reduce_local";
        case Decision::RequestNeighbors: return "request_neighbors";
        case Decision::VhoToLte: return "vho_to_lte";
        case Decision::VhoToAdhoc: return "vho_to_adhoc";
    }
    return "?";
}

enum class SchemeKind { QosAware, Periodic, NoBfa, NoLte };

struct Scheme {
    SchemeKind kind = SchemeKind::QosAware;
    double period = 4.0; // seconds, Periodic only

    void validate() const {
        if (kind == SchemeKind::Periodic && !(period > 0.0))
            throw std::invalid_argument("drrm.period must be > 0");
    }
};

inline const char* to_string(SchemeKind k) {
    switch (k) {
        case SchemeKind::QosAware: return "qos";
        case SchemeKind::Periodic: return "periodic";
        case SchemeKind::NoBfa: return "nobfa";
        case SchemeKind::NoLte: return "nolte";
    }
    return "?";
}

struct DrrmConfig {
    NlmConfig nlm;
    double nlmInterval = 0.5;          // seconds between load evaluations
    double lteDwell = 5.0;             // minimum residence on LTE after a handover
    double returnBusyThreshold = 0.98; // sensed channel budget gating the return

    void validate() const {
        nlm.validate();
        if (!(nlmInterval > 0.0)) throw std::invalid_argument("drrm.nlmInterval must be > 0");
        if (lteDwell < 0.0) throw std::invalid_argument("drrm.lteDwell must be >= 0");
        if (!(returnBusyThreshold > 0.0))
            throw std::invalid_argument("drrm.returnBusyThreshold must be > 0");
    }
};

struct InvalidTransition : std::logic_error {
    using std::logic_error::logic_error;
};

/// Per-vehicle DRRM bookkeeping.
///
/// escalation tracks how far the overload response has progressed:
/// 0 = nothing yet, 1 = local adaptation round done, 2 = neighbors asked.
/// A handover is considered only once both rounds have run and the local
/// frequency cannot drop further.
struct DrrmState {
    RatKind activeRat = RatKind::Adhoc80211p;
    BfaState bfa;
    int escalation = 0;
    bool pendingLocalReduce = false;     // reduction deferred by the initial dwell
    std::vector<int> pendingRequesters;  // who asked while the dwell blocked us
    bool requestNeighborsFlag = false;   // next aired beacon carries the request
    std::optional<double> vhoInProgressUntil;
    std::optional<RatKind> vhoTarget;
    std::optional<double> lteDwellUntil;
    bool projectedAdhocNormal = true;    // kernel-updated channel projection

    bool vho_in_progress() const { return vhoInProgressUntil.has_value(); }
    bool on_lte() const { return activeRat == RatKind::Lte; }
};

enum class ReduceOutcome { Applied, Deferred, Ignored };

/// True when one more local step is available right now: the initial dwell
/// does not block it and the step would strictly lower the frequency (a
/// non-decreasing step, e.g. with rFactor 0, counts as exhausted).
inline bool reducible_now(const QoSProfile& profile, const BfaState& bfa, double now) {
    if (bfa.dwell_blocked(now)) return false;
    const auto next = bfa_step(profile, bfa);
    return next && *next < bfa.freq;
}

/// Applies one adaptation step if possible. Entering or extending the
/// reduced phase restarts its expiry at now + tReduced.
inline ReduceOutcome try_reduce(const QoSProfile& profile, BfaState& bfa, double now) {
    if (bfa.dwell_blocked(now)) return ReduceOutcome::Deferred;
    const auto next = bfa_step(profile, bfa);
    if (!next || *next >= bfa.freq) return ReduceOutcome::Ignored;
    bfa.freq = *next;
    bfa.phase = BfaPhase::Reduced;
    bfa.phase_deadline = now + profile.tReduced;
    return ReduceOutcome::Applied;
}

/// The QoS-aware selection flow, one decision per load evaluation.
///
/// On ad hoc under overload the response escalates: first a local frequency
/// reduction, then a reduction request to the neighbors, then — only when
/// the local frequency cannot drop any further — a handover to LTE. On LTE
/// the vehicle returns once the minimum dwell has passed and the sensed
/// ad hoc channel is projected to carry its load again.
inline Decision qos_aware_decide(const QoSProfile& profile, const DrrmState& st,
                                 LoadStatus load, double now) {
    if (st.vho_in_progress()) return Decision::Stay;
    if (st.on_lte()) {
        if (st.lteDwellUntil && now >= *st.lteDwellUntil && st.projectedAdhocNormal)
            return Decision::VhoToAdhoc;
        return Decision::Stay;
    }
    if (load == LoadStatus::Normal) return Decision::Stay;
    const bool reducible = reducible_now(profile, st.bfa, now);
    switch (st.escalation) {
        case 0: return reducible ? Decision::ReduceLocal : Decision::RequestNeighbors;
        case 1: return Decision::RequestNeighbors;
        default: return reducible ? Decision::ReduceLocal : Decision::VhoToLte;
    }
}

/// Reaction to a neighbor's piggybacked reduction request.
inline ReduceOutcome handle_neighbor_request(const QoSProfile& profile, DrrmState& st,
                                             int requester, double now) {
    if (st.on_lte() || st.vho_in_progress()) return ReduceOutcome::Ignored;
    const ReduceOutcome out = try_reduce(profile, st.bfa, now);
    if (out == ReduceOutcome::Deferred) {
        st.pendingLocalReduce = true;
        st.pendingRequesters.push_back(requester);
    }
    return out;
}

/// Baseline dispatch. Periodic toggles are timer-driven; the caller passes
/// whether a toggle is due at this instant.
inline Decision scheme_decide(const Scheme& scheme, const QoSProfile& profile,
                              const DrrmState& st, LoadStatus load, double now,
                              bool periodicToggleDue = false) {
    if (st.vho_in_progress()) return Decision::Stay;
    switch (scheme.kind) {
        case SchemeKind::QosAware:
            return qos_aware_decide(profile, st, load, now);
        case SchemeKind::Periodic:
            if (!periodicToggleDue) return Decision::Stay;
            return st.on_lte() ? Decision::VhoToAdhoc : Decision::VhoToLte;
        case SchemeKind::NoBfa:
            if (!st.on_lte())
                return load == LoadStatus::Overload ? Decision::VhoToLte : Decision::Stay;
            if (st.lteDwellUntil && now >= *st.lteDwellUntil && st.projectedAdhocNormal)
                return Decision::VhoToAdhoc;
            return Decision::Stay;
        case SchemeKind::NoLte:
            return Decision::Stay;
    }
    return Decision::Stay;
}

/// Starts a handover. Transmission on both interfaces is blacked out until
/// vhoInProgressUntil; beacons generated meanwhile are queued and flushed on
/// the target interface at completion.
inline void execute_vho(DrrmState& st, RatKind target, double now, double vhoDelay) {
    if (st.vho_in_progress())
        throw InvalidTransition("vertical handover already in progress");
    if (target == st.activeRat)
        throw InvalidTransition("vertical handover to the already-active RAT");
    st.vhoInProgressUntil = now + vhoDelay;
    st.vhoTarget = target;
}

/// Finishes a handover: activates the target RAT, resets the adaptation
/// state to the initial frequency, and on LTE opens the minimum dwell.
inline void complete_vho(DrrmState& st, const QoSProfile& profile, double now, double lteDwell) {
    st.activeRat = *st.vhoTarget;
    st.vhoInProgressUntil.reset();
    st.vhoTarget.reset();
    st.bfa = BfaState::initial(profile);
    st.escalation = 0;
    st.pendingLocalReduce = false;
    st.pendingRequesters.clear();
    st.requestNeighborsFlag = false;
    if (st.activeRat == RatKind::Lte)
        st.lteDwellUntil = now + lteDwell;
    else
        st.lteDwellUntil.reset();
}

} // namespace hvnsim
