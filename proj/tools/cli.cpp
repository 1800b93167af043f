#include "cli.hpp"

#include "oamncc/config.hpp"
#include "oamncc/errors.hpp"
#include "oamncc/montecarlo.hpp"
#include "oamncc/scenario.hpp"
#include "oamncc/stats.hpp"
#include "oamncc/strategy.hpp"
#include "oamncc/svg.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace oamncc::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitConfig = 2;
constexpr int kExitSampling = 3;

struct CommonArgs {
    std::string config_file;
    std::vector<std::string> overrides;
    std::string out_dir;
    bool seed_given = false;
};

void add_common(CLI::App* cmd, CommonArgs& common)
{
    cmd->add_option("--config", common.config_file, "flat key=value config file");
    cmd->add_option("--override", common.overrides, "config override, key=value (repeatable)");
    cmd->add_option("--out", common.out_dir, "output directory");
}

// Precedence: CLI flag > config file > built-in default. Flags land last.
Config resolve_config(const CommonArgs& common,
                      const std::vector<std::pair<std::string, std::string>>& flag_settings)
{
    Config cfg;
    if (!common.config_file.empty()) {
        cfg.load_file(common.config_file);
    }
    for (const auto& kv : common.overrides) {
        cfg.apply_override(kv);
    }
    for (const auto& [key, value] : flag_settings) {
        cfg.set(key, value);
    }
    if (!common.seed_given) {
        if (const char* env = std::getenv("OAMNCC_SEED")) {
            cfg.set("run.seed", env);
        }
    }
    return cfg;
}

std::uint64_t parse_seed(const std::string& text)
{
    try {
        return std::stoull(text);
    } catch (const std::exception&) {
        throw ConfigError("seed must be a non-negative integer, got '" + text + "'");
    }
}

std::vector<double> parse_grid(const std::string& text, const std::string& what)
{
    std::vector<double> out;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ',')) {
        if (token.empty()) {
            continue;
        }
        try {
            out.push_back(std::stod(token));
        } catch (const std::exception&) {
            throw ConfigError(what + " grid entry is not a number: '" + token + "'");
        }
    }
    if (out.empty()) {
        throw ConfigError(what + " grid is empty");
    }
    return out;
}

void write_file(const fs::path& path, const std::string& content)
{
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    out << content;
}

std::string default_metric(const std::string& preset)
{
    const scenario::Preset& p = scenario::preset_by_name(preset);
    switch (p.kind) {
    case sim::ScenarioKind::overboard: return "rescued";
    case sim::ScenarioKind::piracy: return "ransom_avoided";
    case sim::ScenarioKind::adrift: return "both_duties_met";
    }
    return "ransom_avoided";
}

mc::BatchSpec batch_spec_from(const Config& cfg)
{
    mc::BatchSpec spec;
    spec.preset = cfg.text("run.preset");
    spec.strategy = cfg.text("run.strategy");
    spec.n_trials = static_cast<int>(cfg.integer("run.trials"));
    spec.master_seed = parse_seed(cfg.text("run.seed"));
    spec.config = cfg;
    if (spec.preset.empty()) {
        throw ConfigError("no preset given (use --preset)");
    }
    if (spec.strategy.empty()) {
        throw ConfigError("no strategy given (use --strategy)");
    }
    return spec;
}

std::string batch_csv(const mc::BatchResult& result)
{
    std::string out = "trial,seed";
    for (const auto& name : result.metrics) {
        out += "," + name;
    }
    out += "\n";
    for (int k = 0; k < result.spec.n_trials; ++k) {
        out += std::to_string(k);
        out += ",";
        out += std::to_string(result.trial_seeds[static_cast<std::size_t>(k)]);
        for (const auto& column : result.columns) {
            out += ",";
            out += format_value(column[static_cast<std::size_t>(k)]);
        }
        out += "\n";
    }
    return out;
}

json config_echo(const Config& cfg)
{
    json echo = json::object();
    for (const auto& [key, value] : cfg.resolved()) {
        echo[key] = value;
    }
    return echo;
}

json summary_json(const mc::BatchResult& result)
{
    json metrics = json::object();
    for (std::size_t m = 0; m < result.metrics.size(); ++m) {
        const stats::Summary s = stats::summarize(result.columns[m]);
        metrics[result.metrics[m]] = {
            {"mean", s.mean}, {"median", s.median}, {"q25", s.q25},   {"q75", s.q75},
            {"min", s.min},   {"max", s.max},       {"n", s.n},
        };
    }
    return json{
        {"preset", result.spec.preset},
        {"strategy", result.spec.strategy},
        {"trials", result.spec.n_trials},
        {"seed", result.spec.master_seed},
        {"metrics", metrics},
        {"config", config_echo(result.spec.config)},
    };
}

int cmd_run(const CommonArgs& common, const Config& cfg)
{
    const mc::BatchSpec spec = batch_spec_from(cfg);
    const mc::BatchResult result = mc::run_batch(spec);

    const fs::path outdir = cfg.text("run.out");
    std::ostringstream base;
    base << spec.preset << "_" << spec.strategy << "_" << spec.master_seed;

    const std::string formats = cfg.text("run.formats");
    if (formats.find("csv") != std::string::npos) {
        write_file(outdir / (base.str() + ".csv"), batch_csv(result));
    }
    if (formats.find("json") != std::string::npos) {
        write_file(outdir / "summary.json", summary_json(result).dump(2) + "\n");
    }
    if (formats.find("svg") != std::string::npos) {
        const std::string metric = default_metric(spec.preset);
        const auto& samples = result.column(metric);
        svg::StripGroup group{spec.strategy, "#1f77b4", samples, stats::summarize(samples).mean};
        write_file(outdir / (base.str() + ".svg"),
                   svg::strip_chart(spec.preset + ": " + metric, metric, {group}));
    }
    std::cout << base.str() << ": " << spec.n_trials << " trials written to " << outdir.string()
              << "\n";
    (void)common;
    return kExitOk;
}

int cmd_sweep(const CommonArgs& common, const Config& cfg, const std::string& margins_text,
              const std::string& ratios_text)
{
    const std::string preset = cfg.text("run.preset");
    if (scenario::preset_by_name(preset).kind != sim::ScenarioKind::overboard) {
        throw ConfigError("sweep requires the overboard preset");
    }
    const std::vector<double> margins = parse_grid(margins_text, "margin");
    const std::vector<double> ratios = parse_grid(ratios_text, "ratio");
    const int trials = static_cast<int>(cfg.integer("run.trials"));
    const std::uint64_t seed = parse_seed(cfg.text("run.seed"));

    const auto cells = mc::sweep_overboard(margins, ratios, trials, seed, cfg);

    std::string csv = "margin,ratio,policy,rescues,rtb_successes,spotted,abandoned_after_spotting\n";
    for (const auto& c : cells) {
        csv += format_value(c.margin) + "," + format_value(c.ratio) + "," + c.policy + "," +
               std::to_string(c.rescues) + "," + std::to_string(c.rtb_successes) + "," +
               std::to_string(c.spotted) + "," + std::to_string(c.abandoned_after_spotting) + "\n";
    }

    static const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                     "#9467bd", "#8c564b"};
    std::vector<svg::Series> series;
    for (std::size_t mi = 0; mi < margins.size(); ++mi) {
        svg::Series dots;
        dots.label = "margin " + format_value(margins[mi]);
        dots.color = kPalette[mi % 6];
        svg::Series crosses;
        crosses.label = "duty, margin " + format_value(margins[mi]);
        crosses.color = kPalette[mi % 6];
        crosses.cross_marker = true;
        for (const auto& c : cells) {
            if (c.margin != margins[mi]) {
                continue;
            }
            const bool duty = c.policy.rfind("overboard-duty", 0) == 0;
            (duty ? crosses : dots)
                .points.emplace_back(static_cast<double>(c.rescues),
                                     static_cast<double>(c.rtb_successes));
        }
        series.push_back(std::move(dots));
        series.push_back(std::move(crosses));
    }

    const fs::path outdir = cfg.text("run.out");
    write_file(outdir / "sweep.csv", csv);
    write_file(outdir / "sweep.svg",
               svg::scatter_chart("overboard policy sweep", "successful rescues",
                                  "successful RTBs", series));
    std::cout << "sweep: " << cells.size() << " cells written to " << outdir.string() << "\n";
    (void)common;
    return kExitOk;
}

int cmd_compare(const CommonArgs& common, Config cfg_a, const std::string& strategy_b,
                const std::vector<std::string>& overrides_b, const std::string& metric_flag)
{
    Config cfg_b = cfg_a;
    if (!strategy_b.empty()) {
        cfg_b.set("run.strategy", strategy_b);
    }
    for (const auto& kv : overrides_b) {
        cfg_b.apply_override(kv);
    }

    const mc::BatchSpec spec_a = batch_spec_from(cfg_a);
    const mc::BatchSpec spec_b = batch_spec_from(cfg_b);
    const mc::BatchResult result_a = mc::run_batch(spec_a);
    const mc::BatchResult result_b = mc::run_batch(spec_b);

    const std::string metric = metric_flag.empty() ? default_metric(spec_a.preset) : metric_flag;
    const mc::ComparisonReport report =
        mc::compare(result_a.distribution(metric), result_b.distribution(metric));

    const json out = {
        {"metric", report.metric},
        {"meanA", report.mean_a},
        {"meanB", report.mean_b},
        {"medianA", report.median_a},
        {"medianB", report.median_b},
        {"D", report.d},
        {"p", report.p},
        {"alpha", report.alpha},
        {"significant", report.significant},
        {"nA", report.n_a},
        {"nB", report.n_b},
        {"labelA", spec_a.strategy},
        {"labelB", spec_b.strategy},
    };

    const fs::path outdir = cfg_a.text("run.out");
    write_file(outdir / "compare.json", out.dump(2) + "\n");

    std::vector<svg::StripGroup> groups = {
        {spec_a.strategy, "#1f77b4", result_a.column(metric), report.mean_a},
        {spec_b.strategy, "#ff7f0e", result_b.column(metric), report.mean_b},
    };
    write_file(outdir / "compare.svg",
               svg::strip_chart("comparison: " + metric, metric, groups));

    std::cout << metric << ": mean(" << spec_a.strategy << ")=" << format_value(report.mean_a)
              << " mean(" << spec_b.strategy << ")=" << format_value(report.mean_b)
              << " D=" << format_value(report.d) << " p=" << format_value(report.p)
              << (report.significant ? " significant" : " not-significant") << "\n";
    (void)common;
    return kExitOk;
}

int cmd_presets()
{
    std::cout << "scenario presets:\n";
    for (const auto& p : scenario::presets()) {
        std::cout << "  " << p.name << "\n";
    }
    std::cout << "strategies:\n";
    for (const auto& name : strategy::list_strategy_names()) {
        std::cout << "  " << name << "\n";
    }
    return kExitOk;
}

} // namespace

std::string format_value(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

int dispatch(const std::vector<std::string>& args)
{
    CLI::App app{"seeded maritime constraint-conflict simulation suite"};
    app.require_subcommand(1);

    CommonArgs common;
    std::string preset;
    std::string strategy;
    std::string strategy_b;
    std::vector<std::string> overrides_b;
    std::string metric;
    std::string margins = "0.5,0.75,0.9,0.95";
    std::string ratios = "0.1,0.5,1,2,5,10";
    long trials = -1;
    std::string seed;

    const auto add_run_flags = [&](CLI::App* cmd) {
        add_common(cmd, common);
        cmd->add_option("--preset", preset, "scenario preset name");
        cmd->add_option("--strategy", strategy, "strategy name");
        cmd->add_option("--trials", trials, "number of trials");
        cmd->add_option("--seed", seed, "master seed")->each([&](const std::string&) {
            common.seed_given = true;
        });
    };

    CLI::App* run = app.add_subcommand("run", "run one batch and write CSV + summary.json");
    add_run_flags(run);

    CLI::App* sweep = app.add_subcommand("sweep", "overboard margin/ratio sweep");
    add_run_flags(sweep);
    sweep->add_option("--margins", margins, "comma-separated safety margins");
    sweep->add_option("--ratios", ratios, "comma-separated rescue/RTB importance ratios");

    CLI::App* cmp = app.add_subcommand("compare", "compare two strategies on one preset");
    add_run_flags(cmp);
    cmp->add_option("--strategy-b", strategy_b, "second strategy name");
    cmp->add_option("--override-b", overrides_b, "extra override for the second run (repeatable)");
    cmp->add_option("--metric", metric, "metric to compare (default: preset's headline metric)");

    CLI::App* presets_cmd = app.add_subcommand("presets", "list scenario presets and strategies");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }

    try {
        std::vector<std::pair<std::string, std::string>> flag_settings;
        if (!preset.empty()) flag_settings.emplace_back("run.preset", preset);
        if (!strategy.empty()) flag_settings.emplace_back("run.strategy", strategy);
        if (trials >= 0) flag_settings.emplace_back("run.trials", std::to_string(trials));
        if (!seed.empty()) flag_settings.emplace_back("run.seed", seed);
        if (!common.out_dir.empty()) flag_settings.emplace_back("run.out", common.out_dir);

        if (presets_cmd->parsed()) {
            return cmd_presets();
        }
        const Config cfg = resolve_config(common, flag_settings);
        if (run->parsed()) {
            return cmd_run(common, cfg);
        }
        if (sweep->parsed()) {
            return cmd_sweep(common, cfg, margins, ratios);
        }
        if (cmp->parsed()) {
            return cmd_compare(common, cfg, strategy_b, overrides_b, metric);
        }
        std::cerr << "error: no subcommand\n";
        return kExitConfig;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const SamplingError& e) {
        std::cerr << "sampling failure: " << e.what() << "\n";
        return kExitSampling;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}

} // namespace oamncc::cli
