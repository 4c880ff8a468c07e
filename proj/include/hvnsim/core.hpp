#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>

namespace hvnsim {

/// Radio access technologies of the hybrid stack. Exactly one is active
/// per vehicle at any instant; reception is possible on both.
enum class RatKind { Adhoc80211p, Lte };

inline const char* to_string(RatKind r) {
    return r == RatKind::Adhoc80211p ? "adhoc" : "lte";
}

/// An application's beaconing QoS requirements.
///
/// Frequencies are whole hertz in [1, 10]. rFactor is the per-iteration
/// reduction step and rTolerance the maximum tolerable total reduction,
/// both as fractions of bFreqInitial. tReduced bounds how long the
/// application may run below its initial frequency; tInitial is the minimum
/// dwell at the initial frequency right after a reduced epoch.
struct QoSProfile {
    int bFreqInitial = 10;    // Hz, 1..10
    double rFactor = 0.25;    // fraction of bFreqInitial, [0,1]
    double rTolerance = 0.50; // fraction of bFreqInitial, [0,1]
    double tReduced = 10.0;   // seconds, > 0
    double tInitial = 1.0;    // seconds, >= 0

    void validate() const {
        if (bFreqInitial < 1 || bFreqInitial > 10)
            throw std::invalid_argument("qos.bFreqInitial must be in [1,10] Hz");
        if (rFactor < 0.0 || rFactor > 1.0)
            throw std::invalid_argument("qos.rFactor must be in [0,1]");
        if (rTolerance < 0.0 || rTolerance > 1.0)
            throw std::invalid_argument("qos.rTolerance must be in [0,1]");
        if (!(tReduced > 0.0))
            throw std::invalid_argument("qos.tReduced must be > 0");
        if (tInitial < 0.0)
            throw std::invalid_argument("qos.tInitial must be >= 0");
    }
};

enum class BfaPhase { Initial, Reduced };

/// Per-vehicle beaconing frequency adaptation state.
///
/// Invariants: phase == Initial implies freq == profile.bFreqInitial, and
/// freq never exceeds bFreqInitial. phase_deadline is the absolute time of
/// the next phase transition (tReduced expiry while Reduced, end of the
/// minimum dwell while Initial); no deadline means the Initial phase is
/// unconstrained.
struct BfaState {
    int freq = 10; // bFreqReduced, Hz, >= 1
    BfaPhase phase = BfaPhase::Initial;
    std::optional<double> phase_deadline;

    static BfaState initial(const QoSProfile& profile) {
        return BfaState{profile.bFreqInitial, BfaPhase::Initial, std::nullopt};
    }

    bool dwell_blocked(double now) const {
        return phase == BfaPhase::Initial && phase_deadline && *phase_deadline > now;
    }
};

inline int round_half_up(double x) {
    return static_cast<int>(std::floor(x + 0.5));
}

/// One adaptation step: if the reduction applied so far is still strictly
/// within tolerance, returns the next (lower) frequency; otherwise nullopt.
///
/// Permissibility is checked before the step is applied, so the final step
/// may overshoot the tolerance; with 10 Hz, a 25% step and 50% tolerance the
/// sequence is 8, 6, 4 and then exhaustion. Results round half-up to whole
/// hertz and never drop below 1 Hz.
inline std::optional<int> bfa_step(const QoSProfile& profile, const BfaState& state) {
    const double applied =
        static_cast<double>(profile.bFreqInitial - state.freq) / profile.bFreqInitial;
    if (!(applied < profile.rTolerance))
        return std::nullopt;
    int next = round_half_up(state.freq - profile.rFactor * profile.bFreqInitial);
    if (next < 1)
        next = 1;
    return next;
}

/// Phase-timer transition, evaluated when now reaches the phase deadline.
///
/// Reduced expiry always restores the initial frequency and opens the
/// minimum initial dwell. Initial-dwell expiry admits a deferred reduction
/// request if one is pending (and the step is still permissible), entering
/// Reduced for at most tReduced; otherwise the deadline is simply cleared.
inline BfaState bfa_on_timer(const QoSProfile& profile, const BfaState& state, double now,
                             bool pending_reduction = false) {
    BfaState next = state;
    if (state.phase == BfaPhase::Reduced) {
        next.phase = BfaPhase::Initial;
        next.freq = profile.bFreqInitial;
        next.phase_deadline = now + profile.tInitial;
        return next;
    }
    next.phase_deadline.reset();
    if (pending_reduction) {
        if (auto reduced = bfa_step(profile, state); reduced && *reduced < state.freq) {
            next.freq = *reduced;
            next.phase = BfaPhase::Reduced;
            next.phase_deadline = now + profile.tReduced;
        }
    }
    return next;
}

/// Spacing between consecutive beacons at the current frequency.
inline double beacon_interval(const BfaState& state) {
    return 1.0 / static_cast<double>(state.freq);
}

} // namespace hvnsim
