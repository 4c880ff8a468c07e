// hvnsim — hybrid vehicular network simulator CLI.
//
// Subcommands:
//   run      one scenario, replicated over seeds, summary + CSV output
//   sweep    cartesian parameter sweeps (or a named preset), one CSV row each
//   compare  all four RAT-selection schemes under one seed set, with trend checks
//
// Exit codes: 0 ok, 2 configuration error, 3 runtime failure, 4 failed trend check.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hvnsim/compare.hpp"
#include "hvnsim/config.hpp"
#include "hvnsim/csv.hpp"
#include "hvnsim/engine.hpp"

namespace {

using namespace hvnsim;

struct CommonOpts {
    std::string configPath;
    std::string schemeName;
    double period = 0.0;
    std::uint64_t seed = 0;
    int replicates = 0;
    bool paperScale = false;
    std::string tracePath;
    std::string outPath;
    std::vector<std::string> params;

    CLI::Option* schemeOpt = nullptr;
    CLI::Option* periodOpt = nullptr;
    CLI::Option* seedOpt = nullptr;
    CLI::Option* replicatesOpt = nullptr;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.configPath, "scenario config file (key=value, '#' comments)");
    o.schemeOpt = cmd->add_option("--scheme", o.schemeName,
                                  "RAT selection scheme: qos|periodic|nobfa|nolte");
    o.periodOpt = cmd->add_option("--period", o.period, "periodic scheme epoch in seconds");
    o.seedOpt = cmd->add_option("--seed", o.seed, "base RNG seed")->envname("HVNSIM_SEED");
    o.replicatesOpt = cmd->add_option("--replicates", o.replicates, "replicate runs per point");
    cmd->add_flag("--paper-scale", o.paperScale,
                  "full scale: 150 vehicles, 1 km, 100 s, 10 replicates");
    cmd->add_option("--trace", o.tracePath, "write the first replicate's event trace here");
    cmd->add_option("--out", o.outPath, "write CSV here instead of standard output");
    cmd->add_option("--param", o.params,
                    "config override key=value (sweep: key=v1,v2,... sweeps the values)");
}

// Precedence: explicit flags > HVNSIM_SEED > --param > config file > built-in defaults.
ScenarioConfig build_config(const CommonOpts& o, bool paramsAreSweeps) {
    ScenarioConfig cfg = ScenarioConfig::desk_default();
    if (!o.configPath.empty()) apply_config_file(cfg, o.configPath);
    if (!paramsAreSweeps) {
        for (const std::string& kv : o.params) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) throw ConfigError("--param expects key=value");
            cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
        }
    }
    if (o.paperScale) cfg.apply_paper_scale();
    if (o.schemeOpt->count()) cfg.scheme = parse_scheme(o.schemeName, cfg.scheme.period);
    if (o.periodOpt->count()) cfg.scheme.period = o.period;
    if (o.seedOpt->count()) cfg.run.seed = o.seed;
    if (o.replicatesOpt->count()) cfg.run.replicates = o.replicates;
    cfg.validate();
    return cfg;
}

void write_output(const std::string& outPath, const std::string& csv) {
    if (outPath.empty()) {
        std::cout << csv;
        return;
    }
    std::ofstream out(outPath, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file '" + outPath + "'");
    out << csv;
}

void maybe_trace_first_replicate(const ScenarioConfig& cfg, const std::string& tracePath) {
    if (tracePath.empty()) return;
    std::ofstream out(tracePath, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open trace file '" + tracePath + "'");
    ScenarioConfig c = cfg;
    run(c, &out);
}

std::string aggregate_csv(const ScenarioConfig& cfg, const AggregateMetrics& agg) {
    std::string csv =
        "scheme,period,vho_min,vho_median,vho_max,vho_mean,pdr,latency_mean,goodput_adhoc,"
        "goodput_lte\n";
    csv += csv_join({to_string(cfg.scheme.kind),
                     cfg.scheme.kind == SchemeKind::Periodic ? csv_num(cfg.scheme.period, 3)
                                                             : std::string{},
                     csv_num(agg.vho.min, 2), csv_num(agg.vho.median, 2),
                     csv_num(agg.vho.max, 2), csv_num(agg.vho.mean, 2),
                     csv_num(agg.pdrPct.mean, 4), csv_num(agg.latency.mean, 6),
                     csv_num(agg.goodputAdhoc.mean, 3), csv_num(agg.goodputLte.mean, 3)});
    return csv;
}

int cmd_run(const CommonOpts& o) {
    const ScenarioConfig cfg = build_config(o, /*paramsAreSweeps=*/false);
    maybe_trace_first_replicate(cfg, o.tracePath);
    const AggregateMetrics agg = run_replicates(cfg);

    std::printf("scheme=%s vehicles=%d duration=%.1fs replicates=%d seed=%llu\n",
                to_string(cfg.scheme.kind), cfg.highway.vehicleCount, cfg.run.duration,
                agg.replicates, static_cast<unsigned long long>(cfg.run.seed));
    std::printf("vho min/median/max/mean: %.0f / %.1f / %.0f / %.2f\n", agg.vho.min,
                agg.vho.median, agg.vho.max, agg.vho.mean);
    std::printf("pdr mean: %.3f %%   latency mean: %.3f ms\n", agg.pdrPct.mean,
                agg.latency.mean * 1e3);
    std::printf("goodput adhoc/lte: %.1f / %.1f bps\n", agg.goodputAdhoc.mean,
                agg.goodputLte.mean);

    write_output(o.outPath, aggregate_csv(cfg, agg));
    return 0;
}

struct SweepAxis {
    std::string key;
    std::vector<std::string> values;
};

std::vector<SweepAxis> preset_axes(const std::string& preset) {
    // fig4a fixes a flexible tolerance so the step-size effect is isolated.
    if (preset == "fig4a")
        return {{"qos.rTolerance", {"0.80"}}, {"qos.rFactor", {"0.10", "0.25", "0.50"}}};
    if (preset == "fig4b") return {{"qos.rTolerance", {"0.20", "0.50", "0.80"}}};
    if (preset == "fig4c")
        return {{"qos.rFactor", {"0.10", "0.25", "0.50"}},
                {"qos.rTolerance", {"0.20", "0.50", "0.80"}}};
    if (preset == "fig5a") return {{"qos.tReduced", {"2", "6", "10"}}};
    if (preset == "fig5b") return {{"qos.tInitial", {"0", "2", "4"}}};
    if (preset == "fig5c")
        return {{"qos.tReduced", {"2", "6", "10"}}, {"qos.tInitial", {"0", "2", "4"}}};
    throw ConfigError("unknown sweep preset '" + preset + "'");
}

std::vector<SweepAxis> parse_axes(const std::vector<std::string>& params) {
    std::vector<SweepAxis> axes;
    for (const std::string& kv : params) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw ConfigError("--param expects key=v1,v2,...");
        SweepAxis axis;
        axis.key = kv.substr(0, eq);
        std::stringstream ss(kv.substr(eq + 1));
        std::string item;
        while (std::getline(ss, item, ',')) axis.values.push_back(item);
        if (axis.values.empty()) throw ConfigError("empty value list for " + axis.key);
        axes.push_back(std::move(axis));
    }
    return axes;
}

int cmd_sweep(const CommonOpts& o, const std::string& preset) {
    const ScenarioConfig base = build_config(o, /*paramsAreSweeps=*/true);

    if (preset == "fig6") {
        const auto results = run_comparison(base);
        write_output(o.outPath, comparison_csv(results));
        return 0;
    }
    const std::vector<SweepAxis> axes =
        preset.empty() ? parse_axes(o.params) : preset_axes(preset);
    if (axes.empty()) throw ConfigError("sweep needs --preset or at least one --param");

    std::string csv;
    for (const auto& a : axes) csv += a.key + ",";
    csv += "vho_min,vho_median,vho_max,vho_mean,pdr,latency_mean,goodput_adhoc,goodput_lte\n";

    std::vector<std::size_t> idx(axes.size(), 0);
    for (;;) {
        ScenarioConfig cfg = base;
        std::vector<std::string> fields;
        for (std::size_t a = 0; a < axes.size(); ++a) {
            cfg.set(axes[a].key, axes[a].values[idx[a]]);
            fields.push_back(axes[a].values[idx[a]]);
        }
        cfg.validate();
        const AggregateMetrics agg = run_replicates(cfg);
        fields.insert(fields.end(),
                      {csv_num(agg.vho.min, 2), csv_num(agg.vho.median, 2),
                       csv_num(agg.vho.max, 2), csv_num(agg.vho.mean, 2),
                       csv_num(agg.pdrPct.mean, 4), csv_num(agg.latency.mean, 6),
                       csv_num(agg.goodputAdhoc.mean, 3), csv_num(agg.goodputLte.mean, 3)});
        csv += csv_join(fields);

        // Advance the cartesian odometer, last axis fastest.
        std::size_t a = axes.size();
        while (a > 0) {
            --a;
            if (++idx[a] < axes[a].values.size()) break;
            idx[a] = 0;
            if (a == 0) {
                write_output(o.outPath, csv);
                return 0;
            }
        }
    }
}

int cmd_compare(const CommonOpts& o) {
    const ScenarioConfig cfg = build_config(o, /*paramsAreSweeps=*/false);
    const auto results = run_comparison(cfg);

    std::printf("%-16s %8s %8s %8s %8s %9s %12s %14s %12s\n", "scheme", "vho_min", "vho_med",
                "vho_max", "vho_mean", "pdr_%", "latency_ms", "goodput_adhoc", "goodput_lte");
    for (const auto& r : results) {
        std::printf("%-16s %8.0f %8.1f %8.0f %8.2f %9.3f %12.3f %14.1f %12.1f\n",
                    r.label().c_str(), r.agg.vho.min, r.agg.vho.median, r.agg.vho.max,
                    r.agg.vho.mean, r.agg.pdrPct.mean, r.agg.latency.mean * 1e3,
                    r.agg.goodputAdhoc.mean, r.agg.goodputLte.mean);
    }
    std::printf("\n");

    bool allPass = true;
    for (const TrendCheck& c : check_trends(results, cfg.run.duration)) {
        std::printf("[%s] %-32s %s\n", c.pass ? "PASS" : "FAIL", c.name.c_str(),
                    c.detail.c_str());
        allPass = allPass && c.pass;
    }
    if (!o.outPath.empty()) write_output(o.outPath, comparison_csv(results));
    return allPass ? 0 : 4;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"hybrid vehicular network simulator (802.11p + LTE RAT selection)"};
    app.require_subcommand(1);

    CommonOpts runOpts, sweepOpts, compareOpts;
    std::string preset;

    CLI::App* runCmd = app.add_subcommand("run", "run one scenario over replicate seeds");
    add_common(runCmd, runOpts);

    CLI::App* sweepCmd = app.add_subcommand("sweep", "run a parameter sweep");
    add_common(sweepCmd, sweepOpts);
    sweepCmd->add_option("--preset", preset,
                         "named sweep: fig4a|fig4b|fig4c|fig5a|fig5b|fig5c|fig6");

    CLI::App* compareCmd =
        app.add_subcommand("compare", "compare all schemes and check the expected trends");
    add_common(compareCmd, compareOpts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (runCmd->parsed()) return cmd_run(runOpts);
        if (sweepCmd->parsed()) return cmd_sweep(sweepOpts, preset);
        if (compareCmd->parsed()) return cmd_compare(compareOpts);
    } catch (const hvnsim::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 0;
}
