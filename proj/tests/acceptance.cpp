// Acceptance suite: runs every scenario-level expectation end to end and
// prints one PASS/FAIL line per criterion. Exit code is the number of
// failed criteria.

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "hvnsim/compare.hpp"
#include "hvnsim/config.hpp"
#include "hvnsim/core.hpp"
#include "hvnsim/csv.hpp"
#include "hvnsim/engine.hpp"
#include "hvnsim/radio.hpp"

using namespace hvnsim;

namespace {

struct Criterion {
    std::string name;
    bool pass = false;
    std::string detail;
};

std::vector<Criterion> g_results;

void report(const std::string& name, bool pass, const std::string& detail) {
    g_results.push_back({name, pass, detail});
    std::printf("[%s] %-38s %s\n", pass ? "PASS" : "FAIL", name.c_str(), detail.c_str());
    std::fflush(stdout);
}

ScenarioConfig desk_base() {
    ScenarioConfig cfg = ScenarioConfig::desk_default(); // 50 vehicles, 30 s, 5 seeds
    cfg.run.seed = 42;
    return cfg;
}

std::string fmt(double v, int decimals = 2) { return csv_num(v, decimals); }

bool non_decreasing(const std::vector<double>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] < v[i - 1]) return false;
    return true;
}

bool non_increasing(const std::vector<double>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] > v[i - 1]) return false;
    return true;
}

std::string joined(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + fmt(v[i]);
    return s;
}

std::vector<double> sweep_mean_vho(const ScenarioConfig& base, const std::string& key,
                                   const std::vector<std::string>& values) {
    std::vector<double> means;
    for (const std::string& v : values) {
        ScenarioConfig cfg = base;
        cfg.set(key, v);
        means.push_back(run_replicates(cfg).vho.mean);
    }
    return means;
}

// 1. The adaptation arithmetic: 10 Hz with a 25% step under a 50% tolerance
//    yields exactly 8, 6, 4 and then exhaustion.
void criterion_bfa_arithmetic() {
    QoSProfile p;
    p.bFreqInitial = 10;
    p.rFactor = 0.25;
    p.rTolerance = 0.50;
    BfaState st = BfaState::initial(p);
    std::vector<int> seq;
    for (int i = 0; i < 8; ++i) {
        const auto next = bfa_step(p, st);
        if (!next) break;
        seq.push_back(*next);
        st.freq = *next;
    }
    const bool pass = seq == std::vector<int>{8, 6, 4} && !bfa_step(p, st).has_value();
    std::string got = "got";
    for (int f : seq) got += " " + std::to_string(f);
    report("C01 bfa_sequence_8_6_4_exhausted", pass, got + " then exhausted");
}

// 2. More aggressive reduction steps cause more handovers. The effect shows
//    under a flexible application (large fixed tolerance): every step size
//    can reach roughly the same floor, so what differs is how quickly the
//    adaptation budget is spent.
void criterion_rfactor_trend() {
    ScenarioConfig base = desk_base();
    base.qos.rTolerance = 0.80;
    const auto means = sweep_mean_vho(base, "qos.rFactor", {"0.10", "0.25", "0.50"});
    const bool pass = non_decreasing(means) && means.front() < means.back();
    report("C02 vho_vs_rfactor_increasing", pass, "mean vho: " + joined(means));
}

// 3. A larger tolerated reduction absorbs more load locally.
void criterion_rtolerance_trend() {
    const auto means = sweep_mean_vho(desk_base(), "qos.rTolerance", {"0.20", "0.50", "0.80"});
    const bool pass = non_increasing(means) && means.front() > means.back();
    report("C03 vho_vs_rtolerance_decreasing", pass, "mean vho: " + joined(means));
}

// 4. Timer effects: longer reduced-phase budgets lower the handover count,
//    longer mandatory initial dwells raise it.
void criterion_timer_trends() {
    const auto reduced = sweep_mean_vho(desk_base(), "qos.tReduced", {"2", "6", "10"});
    const bool passReduced = non_increasing(reduced) && reduced.front() > reduced.back();
    const auto initial = sweep_mean_vho(desk_base(), "qos.tInitial", {"0", "2", "4"});
    const bool passInitial = non_decreasing(initial) && initial.front() < initial.back();
    report("C04 vho_vs_timers", passReduced && passInitial,
           "tReduced sweep: " + joined(reduced) + " | tInitial sweep: " + joined(initial));
}

bool named_check(const std::vector<TrendCheck>& checks, const std::string& name,
                 std::string& detail) {
    for (const TrendCheck& c : checks)
        if (c.name == name) {
            detail += (detail.empty() ? "" : "; ") + c.detail;
            return c.pass;
        }
    detail += "missing check " + name;
    return false;
}

// 5-8. Cross-scheme properties under the shared seed set.
void criteria_comparison(const std::vector<SchemeResult>& results, double duration) {
    const auto checks = check_trends(results, duration);

    {
        std::string d;
        const bool pass = named_check(checks, "nolte_vho_zero", d) &
                          named_check(checks, "periodic_toggle_count", d) &
                          named_check(checks, "qos_vho_min_below_baselines", d) &
                          named_check(checks, "qos_vho_le_nobfa_per_seed", d);
        report("C05 scheme_vho_counts", pass, d);
    }
    {
        std::string d;
        const bool pass = named_check(checks, "nolte_pdr_lowest", d) &
                          named_check(checks, "qos_pdr_within_5pts_of_nobfa", d);
        report("C06 scheme_pdr_trends", pass, d);
    }
    {
        std::string d;
        const bool pass = named_check(checks, "nolte_latency_lowest", d) &
                          named_check(checks, "qos_latency_below_nobfa", d);
        report("C07 scheme_latency_trends", pass, d);
    }
    {
        std::string d;
        const bool pass = named_check(checks, "goodput_stack_sums_exactly", d) &
                          named_check(checks, "qos_adhoc_goodput_exceeds_lte", d) &
                          named_check(checks, "qos_lte_share_smallest", d);
        report("C08 scheme_goodput_shares", pass, d);
    }
}

// 9. Propagation oracle and the calibrated reception boundary.
void criterion_radio_oracle() {
    const PathLossModel m;
    struct Row {
        double d, lossDb;
    };
    const Row table[] = {
        {1.0, 47.71855987125875},   {50.0, 79.9989899536431},
        {200.0, 91.43812978887439}, {350.0, 100.67357563895358},
        {500.0, 106.55985011841182}, {800.0, 114.31640945933697},
    };
    bool pass = true;
    double worst = 0.0;
    for (const Row& row : table) {
        const double err = std::fabs(path_loss_db(m, row.d) - row.lossDb);
        worst = std::max(worst, err);
        if (err > 1e-9) pass = false;
    }
    double lo = 1.0, hi = 1000.0;
    for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (lo + hi);
        (can_receive(m, mid) ? lo : hi) = mid;
    }
    const bool boundary = lo >= 249.0 && lo <= 251.0;
    report("C09 pathloss_table_and_boundary", pass && boundary,
           "max table error " + csv_num(worst, 12) + " dB, boundary " + fmt(lo) + " m");
}

// 10. Bit-level reproducibility of CSV output and trace hashes.
void criterion_determinism() {
    ScenarioConfig cfg = desk_base();
    cfg.run.replicates = 3;

    const AggregateMetrics a = run_replicates(cfg);
    const AggregateMetrics b = run_replicates(cfg);
    const std::string csvA = comparison_csv({SchemeResult{cfg.scheme, a}});
    const std::string csvB = comparison_csv({SchemeResult{cfg.scheme, b}});

    bool hashes = a.runs.size() == b.runs.size();
    for (std::size_t i = 0; hashes && i < a.runs.size(); ++i)
        hashes = a.runs[i].traceHash == b.runs[i].traceHash;

    report("C10 deterministic_csv_and_trace", csvA == csvB && hashes,
           std::string("csv bytes ") + (csvA == csvB ? "identical" : "differ") +
               ", trace hashes " + (hashes ? "identical" : "differ"));
}

// 11. Conservation across every run of the comparison set.
void criterion_conservation(const std::vector<SchemeResult>& results) {
    bool pass = true;
    std::int64_t runs = 0;
    std::string bad;
    for (const SchemeResult& r : results)
        for (const RunMetrics& m : r.agg.runs) {
            ++runs;
            if (!conservation_holds(m)) {
                pass = false;
                bad = r.label();
            }
        }
    report("C11 beacon_conservation", pass,
           pass ? "all " + std::to_string(runs) + " runs balance exactly"
                : "imbalance under " + bad);
}

} // namespace

int main() {
    std::printf("acceptance: desk scenario, 50 vehicles, 30 s, 5 seeds per point\n");

    criterion_bfa_arithmetic();
    criterion_rfactor_trend();
    criterion_rtolerance_trend();
    criterion_timer_trends();

    const ScenarioConfig base = desk_base();
    const auto comparison = run_comparison(base);
    criteria_comparison(comparison, base.run.duration);

    criterion_radio_oracle();
    criterion_determinism();
    criterion_conservation(comparison);

    int failures = 0;
    for (const Criterion& c : g_results) failures += c.pass ? 0 : 1;
    std::printf("%d/%zu criteria passed\n", static_cast<int>(g_results.size()) - failures,
                g_results.size());
    return failures;
}
