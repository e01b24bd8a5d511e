#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "regap/moea.hpp"

using namespace regap;

namespace {

Individual ind(double f1, double f2) { return {ControlParams{0.5, 0.5}, {f1, f2}, 0, 0.0}; }

// O(n^2 m) oracle: front index = longest dominance chain above the individual.
std::vector<int> brute_force_ranks(const std::vector<Individual>& pop) {
    const std::size_t n = pop.size();
    std::vector<int> rank(n, 0);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = 0; q < n; ++q)
                if (dominates(pop[q].objectives, pop[p].objectives) && rank[p] < rank[q] + 1) {
                    rank[p] = rank[q] + 1;
                    changed = true;
                }
    }
    return rank;
}

}  // namespace

TEST_CASE("pareto dominance for maximization") {
    CHECK(dominates({2, 2}, {1, 1}));
    CHECK_FALSE(dominates({1, 2}, {2, 1}));
    CHECK_FALSE(dominates({2, 1}, {1, 2}));
    CHECK_FALSE(dominates({1, 1}, {1, 1}));
    CHECK(dominates({1, 2}, {1, 1}));
    CHECK_THROWS_AS(dominates({1.0}, {1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("non-dominated sorting on small hand instances") {
    const std::vector<Individual> pop = {ind(2, 2), ind(1, 1), ind(0, 3)};
    const auto fronts = fast_nondominated_sort(pop);
    REQUIRE(fronts.size() == 2);
    CHECK(std::set<std::size_t>(fronts[0].begin(), fronts[0].end()) ==
          std::set<std::size_t>{0, 2});
    CHECK(fronts[1] == std::vector<std::size_t>{1});

    const auto one = fast_nondominated_sort({ind(1, 1), ind(1, 1), ind(1, 1)});
    CHECK(one.size() == 1);
    CHECK(one[0].size() == 3);

    const auto chain = fast_nondominated_sort({ind(1, 1), ind(2, 2), ind(3, 3)});
    REQUIRE(chain.size() == 3);
    CHECK(chain[0] == std::vector<std::size_t>{2});
    CHECK(chain[2] == std::vector<std::size_t>{0});

    CHECK_THROWS_AS(fast_nondominated_sort({}), std::invalid_argument);
}

TEST_CASE("non-dominated sorting agrees with the brute-force oracle") {
    Rng rng(77);
    for (int instance = 0; instance < 200; ++instance) {
        const int n = 2 + static_cast<int>(rng.uniform_int(49));
        const int m = 2 + static_cast<int>(rng.uniform_int(2));
        std::vector<Individual> pop;
        for (int i = 0; i < n; ++i) {
            std::vector<double> obj;
            for (int j = 0; j < m; ++j) obj.push_back(std::round(rng.uniform(0, 10)));
            pop.push_back({ControlParams{0.5, 0.5}, obj, 0, 0.0});
        }
        const auto fronts = fast_nondominated_sort(pop);
        const auto oracle = brute_force_ranks(pop);
        std::size_t total = 0;
        for (std::size_t r = 0; r < fronts.size(); ++r) {
            total += fronts[r].size();
            for (std::size_t idx : fronts[r]) CHECK(oracle[idx] == static_cast<int>(r));
        }
        CHECK(total == pop.size());
    }
}

TEST_CASE("crowding distance hand cases") {
    const double inf = std::numeric_limits<double>::infinity();
    CHECK(crowding_distance({{1, 2}}) == std::vector<double>{inf});
    CHECK(crowding_distance({{1, 2}, {2, 1}}) == std::vector<double>{inf, inf});
    // evenly spaced line: middle accumulates 1 per objective
    const auto cd = crowding_distance({{0, 0}, {1, 1}, {2, 2}});
    CHECK(cd[0] == inf);
    CHECK(cd[2] == inf);
    CHECK(cd[1] == doctest::Approx(2.0));
    // zero-range objective contributes 0, not NaN
    const auto flat = crowding_distance({{0, 5}, {1, 5}, {2, 5}});
    CHECK(flat[1] == doctest::Approx(1.0));
    CHECK_THROWS_AS(crowding_distance({}), std::invalid_argument);
}

namespace {

Evaluator sphere_eval() {
    return [](const ControlParams& g) {
        return std::vector<double>{-(g.p1() - 0.3) * (g.p1() - 0.3), -(g.p2() - 0.7) * (g.p2() - 0.7)};
    };
}

}  // namespace

TEST_CASE("one generation preserves size, bounds and elites") {
    const EvolutionConfig cfg{.population_size = 20, .generations = 1};
    const Evaluator eval = sphere_eval();
    Rng rng(5);
    auto pop = random_population(cfg.population_size, eval, rng);
    auto next = evolve_generation(pop, eval, cfg, rng);
    CHECK(next.size() == pop.size());
    for (const auto& i : next) {
        CHECK(i.genotype.p1() >= 0.0);
        CHECK(i.genotype.p1() <= 1.0);
        CHECK(i.genotype.p2() >= 0.0);
        CHECK(i.genotype.p2() <= 1.0);
    }
}

TEST_CASE("a strictly dominating parent survives") {
    const EvolutionConfig cfg{.population_size = 4, .generations = 1};
    // objectives depend only on the genotype; the champion genotype dominates
    const Evaluator eval = [](const ControlParams& g) {
        const bool champ = g.p1() > 0.99 && g.p2() > 0.99;
        return std::vector<double>{champ ? 10.0 : g.p1(), champ ? 10.0 : g.p2()};
    };
    std::vector<Individual> pop;
    for (double x : {0.1, 0.2, 0.3}) pop.push_back({ControlParams{x, x}, eval({x, x}), 0, 0.0});
    pop.push_back({ControlParams{1.0, 1.0}, eval({1.0, 1.0}), 0, 0.0});
    Rng rng(9);
    const auto next = evolve_generation(pop, eval, cfg, rng);
    const bool kept = std::any_of(next.begin(), next.end(), [](const Individual& i) {
        return i.objectives[0] == 10.0 && i.objectives[1] == 10.0;
    });
    CHECK(kept);
}

TEST_CASE("elitism: combined non-dominated set survives when it fits") {
    const EvolutionConfig cfg{.population_size = 16, .generations = 1};
    const Evaluator eval = sphere_eval();
    Rng rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        auto pop = random_population(cfg.population_size, eval, rng);
        auto parents = pop;  // survivors must cover parents' front 0 objectives
        auto next = evolve_generation(pop, eval, cfg, rng);
        const auto parent_fronts = fast_nondominated_sort(parents);
        std::set<std::pair<double, double>> next_objs;
        for (const auto& i : next) next_objs.insert({i.objectives[0], i.objectives[1]});
        if (parent_fronts[0].size() <= next.size()) {
            // every parent front-0 vector either survived or is dominated by a survivor
            for (std::size_t idx : parent_fronts[0]) {
                const auto& o = parents[idx].objectives;
                const bool covered =
                    next_objs.count({o[0], o[1]}) ||
                    std::any_of(next.begin(), next.end(), [&](const Individual& s) {
                        return dominates(s.objectives, o);
                    });
                CHECK(covered);
            }
        }
    }
}

TEST_CASE("evolution is deterministic for a fixed seed") {
    const EvolutionConfig cfg{.population_size = 12, .generations = 1};
    const Evaluator eval = sphere_eval();
    const auto run = [&] {
        Rng rng(99);
        auto pop = random_population(cfg.population_size, eval, rng);
        for (int g = 0; g < 5; ++g) pop = evolve_generation(pop, eval, cfg, rng);
        std::vector<double> flat;
        for (const auto& i : pop) {
            flat.push_back(i.genotype.p1());
            flat.push_back(i.genotype.p2());
        }
        return flat;
    };
    CHECK(run() == run());
}

TEST_CASE("monotone objective transforms preserve fronts") {
    Rng rng(55);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 3 + static_cast<int>(rng.uniform_int(20));
        std::vector<Individual> pop, warped;
        for (int i = 0; i < n; ++i) {
            const double a = rng.uniform(0, 5);
            const double b = rng.uniform(0, 5);
            pop.push_back({ControlParams{0.5, 0.5}, {a, b}, 0, 0.0});
            warped.push_back({ControlParams{0.5, 0.5}, {std::exp(a), 3.0 * b - 7.0}, 0, 0.0});
        }
        CHECK(fast_nondominated_sort(pop) == fast_nondominated_sort(warped));
    }
}
