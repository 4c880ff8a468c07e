#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "hvnsim/config.hpp"
#include "hvnsim/csv.hpp"
#include "hvnsim/engine.hpp"
#include "hvnsim/metrics.hpp"

namespace hvnsim {

/// One scheme's aggregate under the shared scenario and seed set.
struct SchemeResult {
    Scheme scheme;
    AggregateMetrics agg;

    std::string label() const {
        if (scheme.kind == SchemeKind::Periodic)
            return std::string("periodic(") + csv_num(scheme.period, 0) + "s)";
        return to_string(scheme.kind);
    }
    bool dual_interface() const { return scheme.kind != SchemeKind::NoLte; }
    double lte_share() const {
        const double total = agg.goodputAdhoc.mean + agg.goodputLte.mean;
        return total > 0.0 ? agg.goodputLte.mean / total : 0.0;
    }
};

/// Runs the four selection schemes (periodic at the given epochs) under an
/// identical scenario and seed set.
inline std::vector<SchemeResult> run_comparison(const ScenarioConfig& base,
                                                const std::vector<double>& periods = {2, 4, 6, 8,
                                                                                      10}) {
    std::vector<SchemeResult> results;
    auto add = [&](SchemeKind kind, double period) {
        ScenarioConfig cfg = base;
        cfg.scheme.kind = kind;
        cfg.scheme.period = period;
        results.push_back(SchemeResult{cfg.scheme, run_replicates(cfg)});
    };
    add(SchemeKind::QosAware, base.scheme.period);
    for (double p : periods) add(SchemeKind::Periodic, p);
    add(SchemeKind::NoBfa, base.scheme.period);
    add(SchemeKind::NoLte, base.scheme.period);
    return results;
}

struct TrendCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

namespace detail {

inline const SchemeResult& find(const std::vector<SchemeResult>& rs, SchemeKind kind) {
    for (const auto& r : rs)
        if (r.scheme.kind == kind) return r;
    throw std::logic_error("scheme missing from comparison");
}

inline std::string num(double v) { return csv_num(v, 3); }

} // namespace detail

/// The cross-scheme expectations: handover counts, delivery ratio, latency
/// and goodput shares. Used both by the compare command and the acceptance
/// suite.
inline std::vector<TrendCheck> check_trends(const std::vector<SchemeResult>& rs,
                                            double duration) {
    using detail::find;
    using detail::num;
    std::vector<TrendCheck> checks;
    const SchemeResult& qos = find(rs, SchemeKind::QosAware);
    const SchemeResult& nobfa = find(rs, SchemeKind::NoBfa);
    const SchemeResult& nolte = find(rs, SchemeKind::NoLte);

    {
        bool pass = true;
        for (const RunMetrics& m : nolte.agg.runs) pass = pass && m.vhoCount == 0;
        checks.push_back({"nolte_vho_zero", pass,
                          "no-LTE scheme performs no handovers (min " + num(nolte.agg.vho.min) +
                              ", max " + num(nolte.agg.vho.max) + ")"});
    }
    {
        bool pass = true;
        std::string worst;
        for (const auto& r : rs) {
            if (r.scheme.kind != SchemeKind::Periodic) continue;
            const int expected = static_cast<int>(duration / r.scheme.period);
            for (const RunMetrics& m : r.agg.runs)
                for (int c : m.vhoPerVehicle)
                    if (std::abs(c - expected) > 1) {
                        pass = false;
                        worst = r.label() + " vehicle toggled " + std::to_string(c) +
                                " times, expected " + std::to_string(expected) + " +/- 1";
                    }
        }
        checks.push_back({"periodic_toggle_count", pass,
                          pass ? "per-vehicle toggles match floor(duration/period) +/- 1"
                               : worst});
    }
    {
        bool pass = true;
        std::string detail = "qos min " + num(qos.agg.vho.min);
        for (const auto& r : rs) {
            if (r.scheme.kind == SchemeKind::QosAware || !r.dual_interface()) continue;
            detail += ", " + r.label() + " min " + num(r.agg.vho.min);
            if (!(qos.agg.vho.min < r.agg.vho.min)) pass = false;
        }
        checks.push_back({"qos_vho_min_below_baselines", pass, detail});
    }
    {
        bool pass = qos.agg.runs.size() == nobfa.agg.runs.size();
        for (std::size_t i = 0; pass && i < qos.agg.runs.size(); ++i)
            pass = qos.agg.runs[i].vhoCount <= nobfa.agg.runs[i].vhoCount;
        checks.push_back({"qos_vho_le_nobfa_per_seed", pass,
                          "qos mean " + num(qos.agg.vho.mean) + " vs nobfa mean " +
                              num(nobfa.agg.vho.mean)});
    }
    {
        bool pass = true;
        std::string detail = "nolte " + num(nolte.agg.pdrPct.mean) + "%";
        for (const auto& r : rs) {
            if (r.scheme.kind == SchemeKind::NoLte) continue;
            detail += ", " + r.label() + " " + num(r.agg.pdrPct.mean) + "%";
            if (!(nolte.agg.pdrPct.mean < r.agg.pdrPct.mean)) pass = false;
        }
        checks.push_back({"nolte_pdr_lowest", pass, detail});
    }
    {
        const double gap = std::fabs(qos.agg.pdrPct.mean - nobfa.agg.pdrPct.mean);
        checks.push_back({"qos_pdr_within_5pts_of_nobfa", gap <= 5.0,
                          "qos " + num(qos.agg.pdrPct.mean) + "% vs nobfa " +
                              num(nobfa.agg.pdrPct.mean) + "% (gap " + num(gap) + ")"});
    }
    {
        bool pass = true;
        std::string detail = "nolte " + num(nolte.agg.latency.mean * 1e3) + "ms";
        for (const auto& r : rs) {
            if (r.scheme.kind == SchemeKind::NoLte) continue;
            detail += ", " + r.label() + " " + num(r.agg.latency.mean * 1e3) + "ms";
            if (!(nolte.agg.latency.mean < r.agg.latency.mean)) pass = false;
        }
        checks.push_back({"nolte_latency_lowest", pass, detail});
    }
    checks.push_back({"qos_latency_below_nobfa",
                      qos.agg.latency.mean < nobfa.agg.latency.mean,
                      "qos " + num(qos.agg.latency.mean * 1e3) + "ms vs nobfa " +
                          num(nobfa.agg.latency.mean * 1e3) + "ms"});
    {
        bool pass = true;
        for (const auto& r : rs)
            for (const RunMetrics& m : r.agg.runs) {
                const Goodput g = goodput(m);
                if (g.totalBps != g.adhocBps + g.lteBps) pass = false;
            }
        checks.push_back({"goodput_stack_sums_exactly", pass, "total == adhoc + lte per run"});
    }
    checks.push_back({"qos_adhoc_goodput_exceeds_lte",
                      qos.agg.goodputAdhoc.mean > qos.agg.goodputLte.mean,
                      "adhoc " + num(qos.agg.goodputAdhoc.mean) + " bps vs lte " +
                          num(qos.agg.goodputLte.mean) + " bps"});
    {
        bool pass = true;
        std::string detail = "qos share " + num(qos.lte_share());
        for (const auto& r : rs) {
            if (r.scheme.kind == SchemeKind::QosAware || !r.dual_interface()) continue;
            detail += ", " + r.label() + " " + num(r.lte_share());
            if (!(qos.lte_share() < r.lte_share())) pass = false;
        }
        checks.push_back({"qos_lte_share_smallest", pass, detail});
    }
    return checks;
}

/// CSV rows for a comparison, fixed column order.
inline std::string comparison_csv(const std::vector<SchemeResult>& rs) {
    std::string out =
        "scheme,period,vho_min,vho_median,vho_max,vho_mean,pdr,latency_mean,goodput_adhoc,"
        "goodput_lte\n";
    for (const auto& r : rs) {
        out += csv_join({to_string(r.scheme.kind),
                         r.scheme.kind == SchemeKind::Periodic ? csv_num(r.scheme.period, 3)
                                                               : std::string{},
                         csv_num(r.agg.vho.min, 2), csv_num(r.agg.vho.median, 2),
                         csv_num(r.agg.vho.max, 2), csv_num(r.agg.vho.mean, 2),
                         csv_num(r.agg.pdrPct.mean, 4), csv_num(r.agg.latency.mean, 6),
                         csv_num(r.agg.goodputAdhoc.mean, 3), csv_num(r.agg.goodputLte.mean, 3)});
    }
    return out;
}

} // namespace hvnsim
