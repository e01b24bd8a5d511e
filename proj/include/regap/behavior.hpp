#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "regap/testbed.hpp"

namespace regap {

// Default reference disparities for the score mapping 1/(1 + D/D_ref).
inline constexpr double kDefaultTrajectoryDref = 3.0e6;  // mm^2
inline constexpr double kDefaultFitnessDref = 300.0;     // mm

// Low-dimensional summary of one trajectory; the regression input space.
struct BehaviorDescriptor {
    double covered_distance;  // mm
    double avg_height;        // mm
    double final_heading;     // rad in (-pi, pi]

    std::vector<double> as_vector() const { return {covered_distance, avg_height, final_heading}; }
};

inline BehaviorDescriptor extract_descriptors(const Trajectory& traj) {
    if (traj.samples.size() < 2)
        throw std::invalid_argument("extract_descriptors: degenerate trajectory (< 2 samples)");
    double zsum = 0.0;
    for (const auto& s : traj.samples) zsum += s[2];
    const auto& a = traj.samples.front();
    const auto& b = traj.samples.back();
    const double dx = b[0] - a[0];
    const double dy = b[1] - a[1];
    const double dist = std::hypot(dx, dy);
    // heading of the whole displacement; 0 by convention when stationary
    const double heading = dist < 1e-9 ? 0.0 : std::atan2(dy, dx);
    return {dist, zsum / static_cast<double>(traj.samples.size()), heading};
}

// |difference in covered distance|, mm.
inline double disparity_fitness(const Trajectory& sim, const Trajectory& real) {
    return std::abs(covered_distance(sim) - covered_distance(real));
}

// Sum of squared pointwise distances between the two center paths, mm^2.
// No resampling; sampling grids must match.
inline double disparity_trajectory(const Trajectory& sim, const Trajectory& real) {
    if (sim.samples.size() != real.samples.size() || sim.dt != real.dt)
        throw std::invalid_argument("disparity_trajectory: mismatched sampling");
    double sum = 0.0;
    for (std::size_t k = 0; k < sim.samples.size(); ++k) {
        const double dx = sim.samples[k][0] - real.samples[k][0];
        const double dy = sim.samples[k][1] - real.samples[k][1];
        const double dz = sim.samples[k][2] - real.samples[k][2];
        sum += dx * dx + dy * dy + dz * dz;
    }
    return sum;
}

// Bounded monotone mapping from a disparity to a score in (0, 1].
inline double transferability_score(double disparity, double d_ref) {
    if (d_ref <= 0.0)
        throw std::invalid_argument("transferability_score: D_ref must be positive");
    if (disparity < 0.0)
        throw std::invalid_argument("transferability_score: disparity must be >= 0");
    return 1.0 / (1.0 + disparity / d_ref);
}

struct TransferabilityScore {
    double disparity;
    double score;
};

inline TransferabilityScore make_score(double disparity, double d_ref) {
    return {disparity, transferability_score(disparity, d_ref)};
}

}  // namespace regap
