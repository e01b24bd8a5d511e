#pragma once

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "regap/behavior.hpp"
#include "regap/testbed.hpp"

namespace regap {

enum class GridKind { SimFitness, RealFitness, DisparityFitness, DisparityTrajectory, Score };

inline const char* grid_kind_name(GridKind kind) {
    switch (kind) {
        case GridKind::SimFitness: return "sim_fitness";
        case GridKind::RealFitness: return "real_fitness";
        case GridKind::DisparityFitness: return "disparity_fitness";
        case GridKind::DisparityTrajectory: return "disparity_trajectory";
        case GridKind::Score: return "score";
    }
    throw std::invalid_argument("grid_kind_name: unknown kind");
}

inline GridKind grid_kind_from_name(const std::string& name) {
    for (GridKind k : {GridKind::SimFitness, GridKind::RealFitness, GridKind::DisparityFitness,
                       GridKind::DisparityTrajectory, GridKind::Score})
        if (name == grid_kind_name(k)) return k;
    throw std::invalid_argument("unknown grid kind: " + name);
}

// Regular map of one quantity over the [0,1]^2 genotype space.
// Cell (i, j) sits at p = (i/(nx-1), j/(ny-1)); values stored row-major in i then j.
struct Grid {
    int nx = 0;
    int ny = 0;
    GridKind kind = GridKind::SimFitness;
    std::vector<double> values;

    double& at(int i, int j) { return values[static_cast<std::size_t>(i) * ny + j]; }
    double at(int i, int j) const { return values[static_cast<std::size_t>(i) * ny + j]; }

    ControlParams point(int i, int j) const {
        return {static_cast<double>(i) / (nx - 1), static_cast<double>(j) / (ny - 1)};
    }
};

// Evaluates the requested quantity at every node. Real-evaluator cells draw
// their noise from (master_seed, cell index), so maps are reproducible and
// schedule-independent.
inline Grid map_grid(GridKind kind, const TestbedConfig& cfg, int nx, int ny,
                     std::uint64_t master_seed, double d_ref = kDefaultTrajectoryDref) {
    if (nx < 2 || ny < 2) throw std::invalid_argument("map_grid: resolution must be >= 2x2");
    cfg.validate();
    Grid grid{nx, ny, kind, std::vector<double>(static_cast<std::size_t>(nx) * ny, 0.0)};
    for (int i = 0; i < nx; ++i) {
        for (int j = 0; j < ny; ++j) {
            const ControlParams p = grid.point(i, j);
            const std::uint64_t cell = static_cast<std::uint64_t>(i) * ny + j;
            double v = 0.0;
            switch (kind) {
                case GridKind::SimFitness:
                    v = covered_distance(simulate(p, cfg));
                    break;
                case GridKind::RealFitness:
                    v = covered_distance(evaluate_reality(p, cfg, {master_seed, cell}));
                    break;
                case GridKind::DisparityFitness:
                    v = disparity_fitness(simulate(p, cfg),
                                          evaluate_reality(p, cfg, {master_seed, cell}));
                    break;
                case GridKind::DisparityTrajectory:
                    v = disparity_trajectory(simulate(p, cfg),
                                             evaluate_reality(p, cfg, {master_seed, cell}));
                    break;
                case GridKind::Score:
                    v = transferability_score(
                        disparity_trajectory(simulate(p, cfg),
                                             evaluate_reality(p, cfg, {master_seed, cell})),
                        d_ref);
                    break;
            }
            grid.at(i, j) = v;
        }
    }
    return grid;
}

// Nodes strictly greater than all existing 8-neighbors; plateaus count 0.
inline int count_local_maxima(const Grid& grid) {
    int count = 0;
    for (int i = 0; i < grid.nx; ++i) {
        for (int j = 0; j < grid.ny; ++j) {
            bool is_max = true;
            for (int di = -1; di <= 1 && is_max; ++di) {
                for (int dj = -1; dj <= 1 && is_max; ++dj) {
                    if (di == 0 && dj == 0) continue;
                    const int ni = i + di;
                    const int nj = j + dj;
                    if (ni < 0 || nj < 0 || ni >= grid.nx || nj >= grid.ny) continue;
                    if (grid.at(i, j) <= grid.at(ni, nj)) is_max = false;
                }
            }
            if (is_max) ++count;
        }
    }
    return count;
}

namespace detail {

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string heat_color(double t) {
    // blue -> red through white
    const auto chan = [](double x) {
        const int c = static_cast<int>(x * 255.0 + 0.5);
        return std::clamp(c, 0, 255);
    };
    const int r = chan(t <= 0.5 ? 2.0 * t : 1.0);
    const int g = chan(t <= 0.5 ? 2.0 * t : 2.0 * (1.0 - t));
    const int b = chan(t <= 0.5 ? 1.0 : 2.0 * (1.0 - t));
    char buf[16];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
    return buf;
}

}  // namespace detail

inline void write_grid_csv(const Grid& grid, std::ostream& out) {
    out << "p1,p2,value\n";
    for (int i = 0; i < grid.nx; ++i)
        for (int j = 0; j < grid.ny; ++j) {
            const ControlParams p = grid.point(i, j);
            out << detail::format_double(p.p1()) << ',' << detail::format_double(p.p2()) << ','
                << detail::format_double(grid.at(i, j)) << '\n';
        }
}

inline void write_grid_csv(const Grid& grid, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    write_grid_csv(grid, out);
}

inline Grid read_grid_csv(std::istream& in, GridKind kind = GridKind::SimFitness) {
    std::string line;
    if (!std::getline(in, line) || line != "p1,p2,value")
        throw std::runtime_error("grid csv: bad header");
    std::vector<double> values;
    std::vector<double> p2_first_block;
    bool in_first_block = true;
    double prev_p1 = -1.0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string f1, f2, f3;
        if (!std::getline(row, f1, ',') || !std::getline(row, f2, ',') || !std::getline(row, f3))
            throw std::runtime_error("grid csv: bad row: " + line);
        const double p1 = std::stod(f1);
        if (!values.empty() && p1 != prev_p1) in_first_block = false;
        if (in_first_block) p2_first_block.push_back(std::stod(f2));
        prev_p1 = p1;
        values.push_back(std::stod(f3));
    }
    const int ny = static_cast<int>(p2_first_block.size());
    if (ny < 2 || values.size() % ny != 0)
        throw std::runtime_error("grid csv: inconsistent grid shape");
    const int nx = static_cast<int>(values.size()) / ny;
    return {nx, ny, kind, std::move(values)};
}

// Standalone SVG heatmap, 10 px per cell, linear min-max color scale, and a
// per-cell outline for values at or above the optional threshold.
inline std::string render_heatmap(const Grid& grid, std::optional<double> threshold = {}) {
    const int cell = 10;
    const int legend_w = 60;
    const int w = grid.nx * cell + legend_w;
    const int h = grid.ny * cell;
    double lo = grid.values.front();
    double hi = lo;
    for (double v : grid.values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const double range = hi - lo;

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
        << "\">\n";
    for (int i = 0; i < grid.nx; ++i) {
        for (int j = 0; j < grid.ny; ++j) {
            const double v = grid.at(i, j);
            const double t = range > 0.0 ? (v - lo) / range : 0.0;
            const bool outlined = threshold && v >= *threshold;
            // y axis points down in SVG; flip so p2 grows upward
            svg << "  <rect class=\"cell\" x=\"" << i * cell << "\" y=\""
                << (grid.ny - 1 - j) * cell << "\" width=\"" << cell << "\" height=\"" << cell
                << "\" fill=\"" << detail::heat_color(t) << "\"";
            if (outlined) svg << " stroke=\"black\" stroke-width=\"1\"";
            svg << "/>\n";
        }
    }
    // color-scale legend
    const int lx = grid.nx * cell + 10;
    const int steps = 20;
    const int step_h = std::max(1, h / steps);
    for (int s = 0; s < steps; ++s) {
        const double t = 1.0 - static_cast<double>(s) / (steps - 1);
        svg << "  <rect class=\"legend\" x=\"" << lx << "\" y=\"" << s * step_h
            << "\" width=\"12\" height=\"" << step_h << "\" fill=\"" << detail::heat_color(t)
            << "\"/>\n";
    }
    svg << "  <text x=\"" << lx + 16 << "\" y=\"12\" font-size=\"10\">"
        << detail::format_double(hi) << "</text>\n";
    svg << "  <text x=\"" << lx + 16 << "\" y=\"" << h - 2 << "\" font-size=\"10\">"
        << detail::format_double(lo) << "</text>\n";
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace regap
