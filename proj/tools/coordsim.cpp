// coordsim: run coordination-compression experiments and write CSV/SVG results.
//
//   coordsim sweep --out results --svg
//   coordsim robustness --config baseline.cfg
//   coordsim props
//
// Exit codes: 0 success, 1 configuration error, 2 runtime error,
// 3 a proposition check failed (props only).

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "coordsim/config.hpp"
#include "coordsim/experiments.hpp"
#include "coordsim/report.hpp"

namespace fs = std::filesystem;
using namespace coordsim;

namespace {

constexpr int kConfigError = 1;
constexpr int kRuntimeError = 2;
constexpr int kPropositionFailure = 3;

constexpr SweepMetric kChartMetrics[] = {SweepMetric::output_index, SweepMetric::gini_economy,
                                         SweepMetric::gini_managers, SweepMetric::gap,
                                         SweepMetric::top10_share, SweepMetric::unemployment};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(path, "cannot open config file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int run(const RunConfig& cfg) {
    const fs::path out = cfg.out_dir;
    switch (cfg.experiment) {
        case Experiment::sweep: {
            const auto grid = make_grid(cfg.ka_min, cfg.ka_max, cfg.ka_step);
            const auto regimes = standard_regimes();
            const auto rows = run_sweep(cfg.params, regimes, grid, cfg.mode);
            write_csv(rows, out / "sweep.csv");
            std::cout << "wrote " << rows.size() << " rows to " << (out / "sweep.csv").string()
                      << '\n';
            if (cfg.emit_svg) {
                for (SweepMetric m : kChartMetrics) {
                    const auto path = out / ("sweep_" + std::string(metric_name(m)) + ".svg");
                    render_sweep_svg(rows, m, path);
                    std::cout << "wrote " << path.string() << '\n';
                }
            }
            return 0;
        }
        case Experiment::heatmap: {
            const auto betas =
                make_grid(cfg.heatmap_beta_min, cfg.heatmap_beta_max, cfg.heatmap_beta_step);
            const auto deltas =
                make_grid(cfg.heatmap_delta_min, cfg.heatmap_delta_max, cfg.heatmap_delta_step);
            const auto rows = run_heatmap(cfg.params, betas, deltas, cfg.heatmap_ka, cfg.mode);
            write_csv(rows, out / "heatmap.csv");
            std::cout << "wrote " << rows.size() << " rows to " << (out / "heatmap.csv").string()
                      << '\n';
            return 0;
        }
        case Experiment::robustness: {
            const auto report =
                run_robustness(cfg.params, cfg.robustness_alphas, cfg.robustness_ka, cfg.mode);
            write_csv(report, out / "robustness.csv");
            std::cout << "qualitative checks passed: " << report.passed() << '/' << report.total()
                      << '\n'
                      << "wrote " << (out / "robustness.csv").string() << '\n';
            return 0;
        }
        case Experiment::props: {
            const auto grid = make_grid(cfg.ka_min, cfg.ka_max, cfg.ka_step);
            const auto report = check_propositions(cfg.params, grid);
            const auto text = format_propositions(report);
            std::cout << text;
            write_text(out / "propositions.txt", text);
            return report.all_passed() ? 0 : kPropositionFailure;
        }
    }
    return kRuntimeError;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Coordination-compression simulator: sweeps, heatmaps, robustness, propositions"};
    app.require_subcommand(0, 1);

    std::string config_path;
    app.add_option("--config", config_path, "Config file of key = value lines")
        ->check(CLI::ExistingFile);
    bool svg = false;
    app.add_flag("--svg", svg, "Also render SVG line charts for the sweep");

    std::map<std::string, std::string> flag_values;
    for (const std::string& key : config_keys()) {
        if (key == "svg") continue;
        app.add_option("--" + key, flag_values[key], "Override config key '" + key + "'");
    }

    std::map<std::string, CLI::App*> commands;
    for (auto e : {Experiment::sweep, Experiment::heatmap, Experiment::robustness,
                   Experiment::props}) {
        const std::string name(experiment_name(e));
        commands[name] = app.add_subcommand(name, "Run the " + name + " experiment");
        commands[name]->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kConfigError;
    }

    RunConfig cfg;
    try {
        std::vector<ConfigOverride> overrides;
        for (const std::string& key : config_keys()) {
            if (key == "svg" || !app.count("--" + key)) continue;
            overrides.emplace_back(key, flag_values[key]);
        }
        if (svg) overrides.emplace_back("svg", "true");
        for (const auto& [name, cmd] : commands) {
            if (cmd->parsed()) overrides.emplace_back("experiment", name);
        }
        cfg = parse_config(config_path.empty() ? std::string() : read_file(config_path), overrides);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    }

    try {
        return run(cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kRuntimeError;
    }
}
