#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "regap/controller.hpp"
#include "regap/rng.hpp"

namespace regap {

// Uniformly sampled 3D path of the robot's geometric center, mm.
struct Trajectory {
    std::vector<std::array<double, 3>> samples;
    double dt = 0.1;        // s
    double duration = 10.0; // s
};

struct GaussianPeak {
    std::array<double, 2> center;  // in [0,1]^2
    double amplitude;              // mm/s
    double width;                  // dimensionless
};

// Paired analytic evaluators standing in for the dynamic simulator and the
// physical robot. Defaults give a deceptive global optimum in "simulation"
// (top-left) and a single real peak at (0.70, 0.60).
struct TestbedConfig {
    std::vector<GaussianPeak> sim_peaks{
        {{0.15, 0.85}, 150.0, 0.10},  // deceptive global optimum
        {{0.70, 0.60}, 140.0, 0.12},  // shared, transferable
        {{0.45, 0.25}, 110.0, 0.10},
        {{0.85, 0.20}, 95.0, 0.08},
    };
    GaussianPeak real_peak{{0.70, 0.60}, 150.0, 0.15};

    double speed_noise_sd = 8.0;     // mm/s
    double heading_noise_sd = 0.05;  // rad
    double base_height = 60.0;       // mm
    double bob_amplitude_base = 10.0;   // mm
    double deceptive_bob_gain = 40.0;   // mm, extra body bob near the deceptive peak
    double deceptive_bob_width = 0.12;
    double heading_warp_gain = 0.6;  // rad per unit genotype distance from the real peak
    double duration = 10.0;          // s
    double dt = 0.1;                 // s

    void validate() const {
        for (const auto& pk : sim_peaks)
            if (pk.amplitude < 0.0 || pk.width <= 0.0)
                throw std::invalid_argument("TestbedConfig: bad sim peak");
        if (real_peak.amplitude < 0.0 || real_peak.width <= 0.0)
            throw std::invalid_argument("TestbedConfig: bad real peak");
        if (dt <= 0.0 || duration <= 0.0)
            throw std::invalid_argument("TestbedConfig: dt and duration must be positive");
        const double n = duration / dt;
        if (std::abs(n - std::round(n)) > 1e-9)
            throw std::invalid_argument("TestbedConfig: dt must divide duration");
    }

    TestbedConfig noise_free() const {
        TestbedConfig c = *this;
        c.speed_noise_sd = 0.0;
        c.heading_noise_sd = 0.0;
        return c;
    }
};

namespace detail {

inline double peak_value(const ControlParams& p, const GaussianPeak& pk) {
    const double dx = p.p1() - pk.center[0];
    const double dy = p.p2() - pk.center[1];
    return pk.amplitude * std::exp(-(dx * dx + dy * dy) / (2.0 * pk.width * pk.width));
}

inline std::size_t sample_count(const TestbedConfig& cfg) {
    return static_cast<std::size_t>(std::llround(cfg.duration / cfg.dt)) + 1;
}

// Straight planar ray from the origin with a |sin|-bob height profile.
inline Trajectory make_ray(double speed, double heading, double bob_amplitude,
                           const TestbedConfig& cfg) {
    Trajectory traj;
    traj.dt = cfg.dt;
    traj.duration = cfg.duration;
    const std::size_t n = sample_count(cfg);
    traj.samples.reserve(n);
    const double cx = std::cos(heading);
    const double cy = std::sin(heading);
    for (std::size_t k = 0; k < n; ++k) {
        const double t = static_cast<double>(k) * cfg.dt;
        const double z = cfg.base_height +
                         bob_amplitude * std::abs(std::sin(2.0 * std::numbers::pi * t));
        traj.samples.push_back({speed * t * cx, speed * t * cy, z});
    }
    return traj;
}

}  // namespace detail

inline double sim_heading(const ControlParams& p) {
    return (std::numbers::pi / 2.0) * (p.p1() - p.p2());
}

inline double sim_speed(const ControlParams& p, const TestbedConfig& cfg) {
    double v = 0.0;
    for (const auto& pk : cfg.sim_peaks) v += detail::peak_value(p, pk);
    return v;
}

inline double real_speed_mean(const ControlParams& p, const TestbedConfig& cfg) {
    return detail::peak_value(p, cfg.real_peak);
}

// Deterministic "simulation" evaluator.
inline Trajectory simulate(const ControlParams& p, const TestbedConfig& cfg) {
    const auto& deceptive = cfg.sim_peaks.front();
    const double dx = p.p1() - deceptive.center[0];
    const double dy = p.p2() - deceptive.center[1];
    const double bob =
        cfg.bob_amplitude_base +
        cfg.deceptive_bob_gain *
            std::exp(-(dx * dx + dy * dy) /
                     (2.0 * cfg.deceptive_bob_width * cfg.deceptive_bob_width));
    return detail::make_ray(sim_speed(p, cfg), sim_heading(p), bob, cfg);
}

// Noisy, structurally different "pseudo-reality" evaluator. Noise is drawn
// once per call from the seed.
inline Trajectory evaluate_reality(const ControlParams& p, const TestbedConfig& cfg,
                                   EvalSeed seed) {
    Rng rng(seed);
    const double eps_v = cfg.speed_noise_sd > 0.0 ? rng.normal(0.0, cfg.speed_noise_sd) : 0.0;
    const double eps_theta =
        cfg.heading_noise_sd > 0.0 ? rng.normal(0.0, cfg.heading_noise_sd) : 0.0;
    const double speed = std::max(0.0, real_speed_mean(p, cfg) + eps_v);
    const double ddx = p.p1() - cfg.real_peak.center[0];
    const double ddy = p.p2() - cfg.real_peak.center[1];
    const double heading = sim_heading(p) +
                           cfg.heading_warp_gain * std::sqrt(ddx * ddx + ddy * ddy) + eps_theta;
    return detail::make_ray(speed, heading, cfg.bob_amplitude_base, cfg);
}

// Planar Euclidean distance between the first and last samples, mm.
inline double covered_distance(const Trajectory& traj) {
    if (traj.samples.size() < 2)
        throw std::invalid_argument("covered_distance: degenerate trajectory (< 2 samples)");
    const auto& a = traj.samples.front();
    const auto& b = traj.samples.back();
    return std::hypot(b[0] - a[0], b[1] - a[1]);
}

}  // namespace regap
