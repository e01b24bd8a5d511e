// Command line harness: landscape maps, single treatment runs, the full
// comparison experiment, and report re-rendering from persisted runs.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "regap/harness.hpp"

namespace {

std::pair<int, int> parse_resolution(const std::string& s) {
    const auto x = s.find('x');
    if (x == std::string::npos) throw std::runtime_error("resolution must look like 75x75");
    return {std::stoi(s.substr(0, x)), std::stoi(s.substr(x + 1))};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"transferability-approach experiment harness"};
    app.require_subcommand(1);

    // A config file, when given, is applied first; explicit flags then override.
    std::string config_path;
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--config") config_path = argv[i + 1];

    regap::ExperimentConfig cfg;
    if (!config_path.empty()) {
        try {
            regap::apply_config(cfg, regap::parse_config_file(config_path));
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 1;
        }
    }

    std::string treatment = "transferability";
    std::string resolution = "75x75";
    std::string map_kind = "sim_fitness";
    double overlay_threshold = 900.0;

    auto* map_cmd = app.add_subcommand("map", "map a quantity over the whole search space");
    auto* run_cmd = app.add_subcommand("run", "run a single treatment once");
    auto* exp_cmd = app.add_subcommand("experiment", "run the full treatment comparison");
    auto* rep_cmd = app.add_subcommand("report", "re-render stats and chart from summary.csv");

    for (CLI::App* cmd : {map_cmd, run_cmd, exp_cmd, rep_cmd}) {
        std::string dummy;
        cmd->add_option("--config", dummy, "flat key=value config file");
        cmd->add_option("--seed", cfg.master_seed, "master seed");
        cmd->add_option("--replicates", cfg.replicates, "replicates per treatment");
        cmd->add_option("--budget", cfg.budget, "real-evaluation budget");
        cmd->add_option("--tau", cfg.tau, "transferability selection threshold");
        cmd->add_option("--out", cfg.out_dir, "output directory");
        cmd->add_flag("--noise-free", cfg.noise_free, "disable pseudo-reality noise");
    }
    map_cmd->add_option("--resolution", resolution, "grid resolution, e.g. 75x75");
    map_cmd->add_option("--kind", map_kind,
                        "sim_fitness|real_fitness|disparity_fitness|disparity_trajectory|score");
    map_cmd->add_option("--threshold", overlay_threshold, "overlay threshold (mm)");
    run_cmd->add_option("--treatment", treatment, "treatment name");
    exp_cmd->add_option("--treatment", treatment, "restrict the experiment to one treatment")
        ->expected(0, 1);

    try {
        app.parse(argc, argv);

        namespace fs = std::filesystem;
        if (map_cmd->parsed()) {
            const auto [nx, ny] = parse_resolution(resolution);
            const regap::GridKind kind = regap::grid_kind_from_name(map_kind);
            const regap::Grid grid = regap::map_grid(kind, cfg.effective_testbed(), nx, ny,
                                                     cfg.master_seed, cfg.d_ref);
            fs::create_directories(cfg.out_dir);
            const std::string base = cfg.out_dir + "/" + map_kind;
            regap::write_grid_csv(grid, base + ".csv");
            std::ofstream svg(base + ".svg");
            if (!svg) throw std::runtime_error("cannot write: " + base + ".svg");
            svg << regap::render_heatmap(grid, overlay_threshold);
            std::cout << "wrote " << base << ".csv and " << base << ".svg ("
                      << regap::count_local_maxima(grid) << " strict local maxima)\n";
        } else if (run_cmd->parsed()) {
            const regap::RunResult result = regap::run_treatment(
                regap::treatment_from_name(treatment), cfg.effective_testbed(), cfg.evolution,
                regap::Budget{cfg.budget, 0}, cfg.tau, cfg.master_seed, cfg.d_ref);
            std::cout << regap::to_json(result).dump(2) << "\n";
        } else if (exp_cmd->parsed()) {
            if (exp_cmd->count("--treatment") > 0) cfg.treatments = {treatment};
            const regap::StatReport report = regap::run_experiment(cfg);
            for (const auto& s : report.treatments)
                std::printf("%-20s mean_real %8.1f mm  sd %7.1f  mean_sim %8.1f mm  p %.4g\n",
                            s.name.c_str(), s.mean_real, s.sd_real, s.mean_sim, s.p);
            std::cout << "artifacts in " << cfg.out_dir << "/\n";
        } else if (rep_cmd->parsed()) {
            const auto rows = regap::read_summary_csv(cfg.out_dir + "/summary.csv");
            const regap::StatReport report = regap::compute_stats(rows);
            regap::write_report(report, rows, cfg.out_dir);
            std::cout << "re-rendered stats.csv and bars.svg in " << cfg.out_dir << "/\n";
        }
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
