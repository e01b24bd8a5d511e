#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "regap/landscape.hpp"
#include "regap/stats.hpp"
#include "regap/treatments.hpp"

namespace regap {

// Full comparison experiment: which treatments, how many replicates, and the
// shared budget/threshold/testbed settings.
struct ExperimentConfig {
    std::uint64_t master_seed = 1;
    int replicates = 10;
    std::vector<std::string> treatments = all_treatment_names();
    int budget = 11;
    double tau = 0.8;
    double d_ref = kDefaultTrajectoryDref;
    bool noise_free = false;
    std::string out_dir = "out";
    TestbedConfig testbed{};
    EvolutionConfig evolution{};

    void validate() const {
        if (replicates < 1) throw std::invalid_argument("ExperimentConfig: replicates must be >= 1");
        if (treatments.empty()) throw std::invalid_argument("ExperimentConfig: no treatments");
        for (const auto& t : treatments) treatment_from_name(t);
        testbed.validate();
        evolution.validate();
    }

    TestbedConfig effective_testbed() const {
        return noise_free ? testbed.noise_free() : testbed;
    }
};

struct TreatmentStats {
    std::string name;
    double mean_real = 0.0;
    double sd_real = 0.0;
    double mean_sim = 0.0;
    double sd_sim = 0.0;
    // Welch test of this treatment's real fitness vs the transferability
    // treatment's. Zeroed (p = 1) when transferability was not run.
    double t_vs_transferability = 0.0;
    double df = 0.0;
    double p = 1.0;
};

struct StatReport {
    std::vector<TreatmentStats> treatments;
};

// One summary.csv row.
struct RunRow {
    std::string treatment;
    int replicate = 0;
    std::uint64_t seed = 0;
    double sim_fitness = 0.0;
    double real_fitness = 0.0;
    int real_evals_used = 0;
};

// Pure seed derivation; independent of which other treatments are configured.
inline std::uint64_t derive_run_seed(std::uint64_t master_seed, const std::string& treatment,
                                     int replicate) {
    return mix_seed(mix_seed(master_seed, fnv1a64(treatment.c_str())),
                    static_cast<std::uint64_t>(replicate) + 0x5eedULL);
}

// ---- flat key=value config file --------------------------------------------

inline std::map<std::string, std::string> parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    const auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t\r");
        const auto b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
    };
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config: expected key=value, got: " + line);
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

inline void apply_config(ExperimentConfig& cfg, const std::map<std::string, std::string>& kv) {
    for (const auto& [key, value] : kv) {
        if (key == "master_seed") cfg.master_seed = std::stoull(value);
        else if (key == "replicates") cfg.replicates = std::stoi(value);
        else if (key == "budget") cfg.budget = std::stoi(value);
        else if (key == "tau") cfg.tau = std::stod(value);
        else if (key == "d_ref") cfg.d_ref = std::stod(value);
        else if (key == "noise_free") cfg.noise_free = (value == "1" || value == "true");
        else if (key == "out_dir") cfg.out_dir = value;
        else if (key == "treatments") {
            cfg.treatments.clear();
            std::istringstream ss(value);
            std::string item;
            while (std::getline(ss, item, ',')) cfg.treatments.push_back(item);
        }
        else if (key == "testbed.speed_noise_sd") cfg.testbed.speed_noise_sd = std::stod(value);
        else if (key == "testbed.heading_noise_sd") cfg.testbed.heading_noise_sd = std::stod(value);
        else if (key == "testbed.base_height") cfg.testbed.base_height = std::stod(value);
        else if (key == "testbed.bob_amplitude_base") cfg.testbed.bob_amplitude_base = std::stod(value);
        else if (key == "testbed.deceptive_bob_gain") cfg.testbed.deceptive_bob_gain = std::stod(value);
        else if (key == "testbed.deceptive_bob_width") cfg.testbed.deceptive_bob_width = std::stod(value);
        else if (key == "testbed.heading_warp_gain") cfg.testbed.heading_warp_gain = std::stod(value);
        else if (key == "testbed.duration") cfg.testbed.duration = std::stod(value);
        else if (key == "testbed.dt") cfg.testbed.dt = std::stod(value);
        else if (key == "evolution.population_size") cfg.evolution.population_size = std::stoi(value);
        else if (key == "evolution.generations") cfg.evolution.generations = std::stoi(value);
        else throw std::runtime_error("config: unknown key: " + key);
    }
}

// ---- experiment ------------------------------------------------------------

inline std::vector<RunResult> run_replicates(const ExperimentConfig& cfg) {
    cfg.validate();
    const TestbedConfig testbed = cfg.effective_testbed();
    // deterministic order: by treatment name, then replicate index
    std::vector<std::string> names = cfg.treatments;
    std::sort(names.begin(), names.end());
    std::vector<RunResult> runs;
    for (const auto& name : names) {
        const Treatment kind = treatment_from_name(name);
        for (int rep = 0; rep < cfg.replicates; ++rep) {
            const std::uint64_t seed = derive_run_seed(cfg.master_seed, name, rep);
            runs.push_back(run_treatment(kind, testbed, cfg.evolution, Budget{cfg.budget, 0},
                                         cfg.tau, seed, cfg.d_ref));
        }
    }
    return runs;
}

namespace detail {

inline std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline std::pair<double, double> mean_sd(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m += x;
    m /= static_cast<double>(v.size());
    double s2 = 0.0;
    for (double x : v) s2 += (x - m) * (x - m);
    const double sd = v.size() > 1 ? std::sqrt(s2 / static_cast<double>(v.size() - 1)) : 0.0;
    return {m, sd};
}

}  // namespace detail

inline StatReport compute_stats(const std::vector<RunRow>& rows) {
    std::map<std::string, std::vector<double>> real, sim;
    std::vector<std::string> order;
    for (const auto& r : rows) {
        if (!real.count(r.treatment)) order.push_back(r.treatment);
        real[r.treatment].push_back(r.real_fitness);
        sim[r.treatment].push_back(r.sim_fitness);
    }
    std::sort(order.begin(), order.end());
    const std::string ref = "transferability";
    StatReport report;
    for (const auto& name : order) {
        TreatmentStats s;
        s.name = name;
        std::tie(s.mean_real, s.sd_real) = detail::mean_sd(real[name]);
        std::tie(s.mean_sim, s.sd_sim) = detail::mean_sd(sim[name]);
        if (real.count(ref) && real[ref].size() >= 2 && real[name].size() >= 2) {
            const WelchResult w = welch_t_test(real[name], real[ref]);
            s.t_vs_transferability = w.t;
            s.df = w.df;
            s.p = w.p;
        }
        report.treatments.push_back(std::move(s));
    }
    return report;
}

inline std::vector<RunRow> to_rows(const ExperimentConfig& cfg,
                                   const std::vector<RunResult>& runs) {
    std::vector<RunRow> rows;
    std::map<std::string, int> rep_counter;
    for (const auto& r : runs) {
        RunRow row;
        row.treatment = r.treatment;
        row.replicate = rep_counter[r.treatment]++;
        row.seed = r.master_seed;
        row.sim_fitness = r.sim_fitness;
        row.real_fitness = r.real_fitness;
        row.real_evals_used = r.real_evals_used;
        rows.push_back(std::move(row));
    }
    (void)cfg;
    return rows;
}

inline void write_summary_csv(const std::vector<RunRow>& rows, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write: " + path);
    out << "treatment,replicate,seed,sim_fitness_mm,real_fitness_mm,real_evals_used\n";
    for (const auto& r : rows)
        out << r.treatment << ',' << r.replicate << ',' << r.seed << ','
            << detail::fmt(r.sim_fitness) << ',' << detail::fmt(r.real_fitness) << ','
            << r.real_evals_used << '\n';
}

inline std::vector<RunRow> read_summary_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read: " + path);
    std::string line;
    if (!std::getline(in, line) ||
        line != "treatment,replicate,seed,sim_fitness_mm,real_fitness_mm,real_evals_used")
        throw std::runtime_error("summary csv: bad header in " + path);
    std::vector<RunRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        RunRow r;
        std::string field;
        std::getline(ss, r.treatment, ',');
        std::getline(ss, field, ','); r.replicate = std::stoi(field);
        std::getline(ss, field, ','); r.seed = std::stoull(field);
        std::getline(ss, field, ','); r.sim_fitness = std::stod(field);
        std::getline(ss, field, ','); r.real_fitness = std::stod(field);
        std::getline(ss, field, ','); r.real_evals_used = std::stoi(field);
        rows.push_back(std::move(r));
    }
    return rows;
}

inline void write_stats_csv(const StatReport& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write: " + path);
    out << "treatment,mean_real,sd_real,mean_sim,sd_sim,t_vs_transferability,df,p\n";
    for (const auto& s : report.treatments)
        out << s.name << ',' << detail::fmt(s.mean_real) << ',' << detail::fmt(s.sd_real) << ','
            << detail::fmt(s.mean_sim) << ',' << detail::fmt(s.sd_sim) << ','
            << detail::fmt(s.t_vs_transferability) << ',' << detail::fmt(s.df) << ','
            << detail::fmt(s.p) << '\n';
}

// Bar chart of mean real fitness per treatment with +/- 1 sd whiskers.
inline std::string render_bar_chart(const StatReport& report) {
    const int bar_w = 60;
    const int gap = 30;
    const int chart_h = 300;
    const int label_h = 60;
    const int n = static_cast<int>(report.treatments.size());
    const int w = gap + n * (bar_w + gap);
    const int h = chart_h + label_h;
    double top = 1.0;
    for (const auto& s : report.treatments) top = std::max(top, s.mean_real + s.sd_real);
    const double scale = (chart_h - 20.0) / top;

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
        << "\">\n";
    for (int i = 0; i < n; ++i) {
        const auto& s = report.treatments[i];
        const int x = gap + i * (bar_w + gap);
        const double bar = s.mean_real * scale;
        svg << "  <rect class=\"bar\" x=\"" << x << "\" y=\"" << detail::fmt(chart_h - bar)
            << "\" width=\"" << bar_w << "\" height=\"" << detail::fmt(bar)
            << "\" fill=\"#4878a8\"/>\n";
        const double y_lo = chart_h - std::max(0.0, s.mean_real - s.sd_real) * scale;
        const double y_hi = chart_h - (s.mean_real + s.sd_real) * scale;
        const int cx = x + bar_w / 2;
        svg << "  <line x1=\"" << cx << "\" y1=\"" << detail::fmt(y_lo) << "\" x2=\"" << cx
            << "\" y2=\"" << detail::fmt(y_hi) << "\" stroke=\"black\"/>\n";
        svg << "  <text x=\"" << x << "\" y=\"" << chart_h + 16 << "\" font-size=\"10\">"
            << s.name << "</text>\n";
        svg << "  <text x=\"" << x << "\" y=\"" << chart_h + 32 << "\" font-size=\"10\">"
            << detail::fmt(s.mean_real) << " mm</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

inline void write_run_json(const RunResult& r, int replicate, const std::string& path);

// Writes summary.csv, stats.csv and bars.svg into out_dir.
inline void write_report(const StatReport& report, const std::vector<RunRow>& rows,
                         const std::string& out_dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory: " + out_dir);
    write_summary_csv(rows, out_dir + "/summary.csv");
    write_stats_csv(report, out_dir + "/stats.csv");
    std::ofstream svg(out_dir + "/bars.svg");
    if (!svg) throw std::runtime_error("cannot write: " + out_dir + "/bars.svg");
    svg << render_bar_chart(report);
}

// Runs every configured treatment x replicate, persists artifacts, returns stats.
inline StatReport run_experiment(const ExperimentConfig& cfg,
                                 std::vector<RunResult>* out_runs = nullptr) {
    const std::vector<RunResult> runs = run_replicates(cfg);
    const std::vector<RunRow> rows = to_rows(cfg, runs);
    const StatReport report = compute_stats(rows);
    write_report(report, rows, cfg.out_dir);
    namespace fs = std::filesystem;
    fs::create_directories(cfg.out_dir + "/runs");
    std::map<std::string, int> rep_counter;
    for (const auto& r : runs) {
        const int rep = rep_counter[r.treatment]++;
        write_run_json(r, rep,
                       cfg.out_dir + "/runs/" + r.treatment + "_" + std::to_string(rep) + ".json");
    }
    if (out_runs) *out_runs = runs;
    return report;
}

}  // namespace regap

#include "regap/run_json.hpp"
