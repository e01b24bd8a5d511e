#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "regap/controller.hpp"
#include "regap/rng.hpp"

namespace regap {

// One NSGA-II individual over the 2-parameter genotype. Objectives are maximized.
struct Individual {
    ControlParams genotype{0.5, 0.5};
    std::vector<double> objectives;
    int rank = 0;
    double crowding = 0.0;
};

struct EvolutionConfig {
    int population_size = 40;
    int generations = 200;
    double crossover_prob = 0.9;
    double crossover_eta = 15.0;   // SBX distribution index
    double mutation_sd = 0.05;     // per parameter
    double mutation_prob = 0.5;    // per parameter

    void validate() const {
        if (population_size < 4 || population_size % 2 != 0)
            throw std::invalid_argument("EvolutionConfig: population_size must be even and >= 4");
    }
};

using Evaluator = std::function<std::vector<double>(const ControlParams&)>;

// Pareto dominance for maximization.
inline bool dominates(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dominates: objective length mismatch");
    bool strictly = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] < b[i]) return false;
        if (a[i] > b[i]) strictly = true;
    }
    return strictly;
}

// Deb's fast non-dominated sort; fronts hold indices into the population.
inline std::vector<std::vector<std::size_t>> fast_nondominated_sort(
    const std::vector<Individual>& pop) {
    if (pop.empty()) throw std::invalid_argument("fast_nondominated_sort: empty population");
    const std::size_t n = pop.size();
    std::vector<std::vector<std::size_t>> dominated(n);
    std::vector<int> dom_count(n, 0);
    std::vector<std::vector<std::size_t>> fronts(1);
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = 0; q < n; ++q) {
            if (p == q) continue;
            if (dominates(pop[p].objectives, pop[q].objectives))
                dominated[p].push_back(q);
            else if (dominates(pop[q].objectives, pop[p].objectives))
                ++dom_count[p];
        }
        if (dom_count[p] == 0) fronts[0].push_back(p);
    }
    std::size_t k = 0;
    while (!fronts[k].empty()) {
        std::vector<std::size_t> next;
        for (std::size_t p : fronts[k])
            for (std::size_t q : dominated[p])
                if (--dom_count[q] == 0) next.push_back(q);
        fronts.push_back(std::move(next));
        ++k;
    }
    fronts.pop_back();
    return fronts;
}

// Crowding distances for one front (objective vectors only). Boundary
// individuals per objective get +infinity; zero-range objectives contribute 0.
inline std::vector<double> crowding_distance(
    const std::vector<std::vector<double>>& front) {
    if (front.empty()) throw std::invalid_argument("crowding_distance: empty front");
    const std::size_t n = front.size();
    const std::size_t m = front.front().size();
    std::vector<double> dist(n, 0.0);
    const double inf = std::numeric_limits<double>::infinity();
    if (n <= 2) return std::vector<double>(n, inf);  // every member is a boundary
    for (std::size_t obj = 0; obj < m; ++obj) {
        std::vector<std::size_t> order(n);
        for (std::size_t i = 0; i < n; ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return front[a][obj] < front[b][obj];
        });
        const double lo = front[order.front()][obj];
        const double hi = front[order.back()][obj];
        if (hi - lo <= 0.0) continue;  // zero-range objective contributes nothing
        dist[order.front()] = inf;
        dist[order.back()] = inf;
        for (std::size_t i = 1; i + 1 < n; ++i) {
            if (std::isinf(dist[order[i]])) continue;
            dist[order[i]] += (front[order[i + 1]][obj] - front[order[i - 1]][obj]) / (hi - lo);
        }
    }
    return dist;
}

// Assigns rank and crowding to every individual in place.
inline void assign_rank_crowding(std::vector<Individual>& pop) {
    const auto fronts = fast_nondominated_sort(pop);
    for (std::size_t r = 0; r < fronts.size(); ++r) {
        std::vector<std::vector<double>> objs;
        objs.reserve(fronts[r].size());
        for (std::size_t idx : fronts[r]) objs.push_back(pop[idx].objectives);
        const auto cd = crowding_distance(objs);
        for (std::size_t i = 0; i < fronts[r].size(); ++i) {
            pop[fronts[r][i]].rank = static_cast<int>(r);
            pop[fronts[r][i]].crowding = cd[i];
        }
    }
}

namespace detail {

// lower rank wins, then higher crowding; full ties resolved by coin flip
inline std::size_t tournament(const std::vector<Individual>& pop, Rng& rng) {
    const std::size_t a = rng.uniform_int(pop.size());
    const std::size_t b = rng.uniform_int(pop.size());
    if (pop[a].rank != pop[b].rank) return pop[a].rank < pop[b].rank ? a : b;
    if (pop[a].crowding != pop[b].crowding) return pop[a].crowding > pop[b].crowding ? a : b;
    return rng.bernoulli(0.5) ? a : b;
}

inline double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

// Simulated binary crossover on one variable pair, bounds [0,1].
inline void sbx_pair(double& x1, double& x2, double eta, Rng& rng) {
    if (std::abs(x1 - x2) < 1e-14) return;
    const double u = rng.uniform();
    double beta;
    if (u <= 0.5)
        beta = std::pow(2.0 * u, 1.0 / (eta + 1.0));
    else
        beta = std::pow(1.0 / (2.0 * (1.0 - u)), 1.0 / (eta + 1.0));
    const double c1 = 0.5 * ((1.0 + beta) * x1 + (1.0 - beta) * x2);
    const double c2 = 0.5 * ((1.0 - beta) * x1 + (1.0 + beta) * x2);
    x1 = clamp01(c1);
    x2 = clamp01(c2);
}

inline ControlParams mutate(const ControlParams& g, const EvolutionConfig& cfg, Rng& rng) {
    double p1 = g.p1();
    double p2 = g.p2();
    if (rng.bernoulli(cfg.mutation_prob)) p1 = clamp01(p1 + rng.normal(0.0, cfg.mutation_sd));
    if (rng.bernoulli(cfg.mutation_prob)) p2 = clamp01(p2 + rng.normal(0.0, cfg.mutation_sd));
    return {p1, p2};
}

}  // namespace detail

inline std::vector<Individual> random_population(int size, const Evaluator& evaluate, Rng& rng) {
    std::vector<Individual> pop;
    pop.reserve(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i) {
        ControlParams g{rng.uniform(), rng.uniform()};
        pop.push_back({g, evaluate(g), 0, 0.0});
    }
    assign_rank_crowding(pop);
    return pop;
}

// One NSGA-II generation: tournament selection, SBX, Gaussian mutation,
// then (mu + lambda) survival by rank and crowding.
inline std::vector<Individual> evolve_generation(std::vector<Individual> pop,
                                                 const Evaluator& evaluate,
                                                 const EvolutionConfig& cfg, Rng& rng) {
    if (static_cast<int>(pop.size()) != cfg.population_size)
        throw std::invalid_argument("evolve_generation: population size mismatch");
    assign_rank_crowding(pop);

    std::vector<Individual> offspring;
    offspring.reserve(pop.size());
    while (static_cast<int>(offspring.size()) < cfg.population_size) {
        const Individual& pa = pop[detail::tournament(pop, rng)];
        const Individual& pb = pop[detail::tournament(pop, rng)];
        double a1 = pa.genotype.p1(), a2 = pa.genotype.p2();
        double b1 = pb.genotype.p1(), b2 = pb.genotype.p2();
        if (rng.bernoulli(cfg.crossover_prob)) {
            detail::sbx_pair(a1, b1, cfg.crossover_eta, rng);
            detail::sbx_pair(a2, b2, cfg.crossover_eta, rng);
        }
        for (auto [g1, g2] : {std::pair{a1, a2}, std::pair{b1, b2}}) {
            if (static_cast<int>(offspring.size()) >= cfg.population_size) break;
            ControlParams child = detail::mutate(ControlParams{g1, g2}, cfg, rng);
            offspring.push_back({child, evaluate(child), 0, 0.0});
        }
    }

    std::vector<Individual> combined = std::move(pop);
    combined.insert(combined.end(), offspring.begin(), offspring.end());
    assign_rank_crowding(combined);

    const auto fronts = fast_nondominated_sort(combined);
    std::vector<Individual> next;
    next.reserve(static_cast<std::size_t>(cfg.population_size));
    for (const auto& front : fronts) {
        if (static_cast<int>(next.size() + front.size()) <= cfg.population_size) {
            for (std::size_t idx : front) next.push_back(combined[idx]);
        } else {
            std::vector<std::size_t> order(front.begin(), front.end());
            std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                return combined[a].crowding > combined[b].crowding;
            });
            for (std::size_t idx : order) {
                if (static_cast<int>(next.size()) >= cfg.population_size) break;
                next.push_back(combined[idx]);
            }
        }
        if (static_cast<int>(next.size()) >= cfg.population_size) break;
    }
    assign_rank_crowding(next);
    return next;
}

}  // namespace regap
