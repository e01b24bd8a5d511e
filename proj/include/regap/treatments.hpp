#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "regap/behavior.hpp"
#include "regap/moea.hpp"
#include "regap/regression.hpp"
#include "regap/testbed.hpp"

namespace regap {

enum class Treatment {
    Transferability,
    DirectReality,
    SimOnly,
    SimPlusLocal,
    SurrogateIdw,
    SurrogateKriging,
};

inline const char* treatment_name(Treatment t) {
    switch (t) {
        case Treatment::Transferability: return "transferability";
        case Treatment::DirectReality: return "direct_reality";
        case Treatment::SimOnly: return "sim_only";
        case Treatment::SimPlusLocal: return "sim_plus_local";
        case Treatment::SurrogateIdw: return "surrogate_idw";
        case Treatment::SurrogateKriging: return "surrogate_kriging";
    }
    throw std::invalid_argument("treatment_name: unknown treatment");
}

inline Treatment treatment_from_name(const std::string& name) {
    for (Treatment t : {Treatment::Transferability, Treatment::DirectReality, Treatment::SimOnly,
                        Treatment::SimPlusLocal, Treatment::SurrogateIdw,
                        Treatment::SurrogateKriging})
        if (name == treatment_name(t)) return t;
    throw std::invalid_argument("unknown treatment: " + name);
}

inline const std::vector<std::string>& all_treatment_names() {
    static const std::vector<std::string> names = {
        "transferability", "direct_reality",  "sim_only",
        "sim_plus_local",  "surrogate_idw",   "surrogate_kriging"};
    return names;
}

// One real-world test of a candidate.
struct TransferRecord {
    ControlParams genotype{0.5, 0.5};
    BehaviorDescriptor sim_descriptor{};
    double disparity = 0.0;
    double score = 0.0;
    int generation = 0;
    EvalSeed seed{};
};

// Hard cap on expensive evaluations per run.
struct Budget {
    int max_real_evals = 11;
    int used = 0;
};

struct RunResult {
    std::string treatment;
    ControlParams selected{0.5, 0.5};
    double sim_fitness = 0.0;        // mm
    double real_fitness = 0.0;       // mm, validation
    int real_evals_used = 0;
    std::vector<TransferRecord> transfers;
    std::uint64_t master_seed = 0;
};

namespace detail {

// rng stream ids within one run
inline constexpr std::uint64_t kRealEvalStreamBase = 1000;
inline constexpr std::uint64_t kEaStream = 1;
inline constexpr std::uint64_t kValidationStream = 2;

// Ledgered access to the pseudo-reality evaluator. Every call consumes budget
// and a fresh seed stream; exceeding the cap throws.
class RealEvaluator {
  public:
    RealEvaluator(const TestbedConfig& cfg, std::uint64_t master_seed, Budget& budget)
        : cfg_(cfg), master_seed_(master_seed), budget_(budget) {}

    Trajectory operator()(const ControlParams& p) {
        if (budget_.used >= budget_.max_real_evals)
            throw std::runtime_error("real-evaluation budget exceeded");
        last_seed_ = EvalSeed{master_seed_, kRealEvalStreamBase + static_cast<std::uint64_t>(budget_.used)};
        ++budget_.used;
        return evaluate_reality(p, cfg_, last_seed_);
    }

    EvalSeed last_seed() const { return last_seed_; }
    int used() const { return budget_.used; }
    int remaining() const { return budget_.max_real_evals - budget_.used; }

  private:
    const TestbedConfig& cfg_;
    std::uint64_t master_seed_;
    Budget& budget_;
    EvalSeed last_seed_{};
};

}  // namespace detail

// Picks the population member whose sim descriptors are farthest (max-min
// distance in z-scored descriptor space) from everything already transferred.
// With no transfers yet, farthest from the population's descriptor centroid.
// Ties break to the lowest index.
inline std::size_t select_transfer_candidate(const std::vector<BehaviorDescriptor>& candidates,
                                             const std::vector<TransferRecord>& transferred,
                                             const Normalization& norm) {
    if (candidates.empty())
        throw std::invalid_argument("select_transfer_candidate: empty population");

    std::vector<std::vector<double>> refs;
    if (transferred.empty()) {
        std::vector<double> centroid(3, 0.0);
        for (const auto& c : candidates) {
            const auto v = c.as_vector();
            for (std::size_t j = 0; j < 3; ++j) centroid[j] += v[j];
        }
        for (double& x : centroid) x /= static_cast<double>(candidates.size());
        refs.push_back(norm.apply(centroid));
    } else {
        for (const auto& r : transferred) refs.push_back(norm.apply(r.sim_descriptor.as_vector()));
    }

    std::size_t best = 0;
    double best_score = -1.0;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const auto z = norm.apply(candidates[i].as_vector());
        double min_d = std::numeric_limits<double>::infinity();
        for (const auto& r : refs) min_d = std::min(min_d, detail::sq_distance(z, r));
        if (min_d > best_score) {
            best_score = min_d;
            best = i;
        }
    }
    return best;
}

// Best sim fitness among candidates whose predicted score clears tau; if none
// does, the highest-score candidate. Ties break to the lowest index.
inline std::size_t select_final_solution(const std::vector<double>& sim_fitness,
                                         const std::vector<double>& scores, double tau) {
    if (sim_fitness.empty() || sim_fitness.size() != scores.size())
        throw std::invalid_argument("select_final_solution: empty or mismatched population");
    std::size_t best = sim_fitness.size();
    for (std::size_t i = 0; i < sim_fitness.size(); ++i) {
        if (scores[i] < tau) continue;
        if (best == sim_fitness.size() || sim_fitness[i] > sim_fitness[best]) best = i;
    }
    if (best != sim_fitness.size()) return best;
    best = 0;
    for (std::size_t i = 1; i < scores.size(); ++i)
        if (scores[i] > scores[best]) best = i;
    return best;
}

// The transferability approach: NSGA-II on (sim fitness, predicted
// transferability), with a periodic transfer every 20 generations feeding an
// IDW model over sim behavior descriptors.
inline RunResult run_transferability(const TestbedConfig& testbed, const EvolutionConfig& evo,
                                     Budget budget, double tau, std::uint64_t master_seed,
                                     double d_ref = kDefaultTrajectoryDref,
                                     int transfer_period = 20) {
    testbed.validate();
    evo.validate();
    if (budget.max_real_evals < 2)
        throw std::invalid_argument("run_transferability: budget must be >= 2");

    detail::RealEvaluator real(testbed, master_seed, budget);
    std::vector<Sample> samples;
    std::vector<TransferRecord> transfers;

    const auto transfer = [&](const ControlParams& g, int generation) {
        const Trajectory sim_traj = simulate(g, testbed);
        const BehaviorDescriptor desc = extract_descriptors(sim_traj);
        const Trajectory real_traj = real(g);
        const double disp = disparity_trajectory(sim_traj, real_traj);
        const double score = transferability_score(disp, d_ref);
        samples.push_back({desc.as_vector(), score});
        transfers.push_back({g, desc, disp, score, generation, real.last_seed()});
    };

    transfer(ControlParams{0.5, 0.5}, 0);
    IdwModel model(samples);

    const auto evaluate = [&](const ControlParams& g) -> std::vector<double> {
        const Trajectory traj = simulate(g, testbed);
        const BehaviorDescriptor desc = extract_descriptors(traj);
        return {desc.covered_distance, model.predict(desc.as_vector())};
    };

    Rng rng(mix_seed(master_seed, detail::kEaStream));
    std::vector<Individual> pop = random_population(evo.population_size, evaluate, rng);
    for (int g = 1; g <= evo.generations; ++g) {
        pop = evolve_generation(pop, evaluate, evo, rng);
        if (g % transfer_period == 0 && real.remaining() > 0) {
            std::vector<BehaviorDescriptor> descs;
            std::vector<std::vector<double>> desc_vecs;
            descs.reserve(pop.size());
            for (const auto& ind : pop) {
                descs.push_back(extract_descriptors(simulate(ind.genotype, testbed)));
                desc_vecs.push_back(descs.back().as_vector());
            }
            const Normalization norm = Normalization::fit(desc_vecs);
            const std::size_t pick = select_transfer_candidate(descs, transfers, norm);
            transfer(pop[pick].genotype, g);
            model = IdwModel(samples);
            for (std::size_t i = 0; i < pop.size(); ++i)
                pop[i].objectives[1] = model.predict(desc_vecs[i]);
            assign_rank_crowding(pop);
        }
    }

    std::vector<double> fitness, scores;
    for (const auto& ind : pop) {
        fitness.push_back(ind.objectives[0]);
        scores.push_back(ind.objectives[1]);
    }
    const std::size_t sel = select_final_solution(fitness, scores, tau);

    RunResult result;
    result.treatment = treatment_name(Treatment::Transferability);
    result.selected = pop[sel].genotype;
    result.sim_fitness = fitness[sel];
    result.real_evals_used = real.used();
    result.transfers = std::move(transfers);
    result.master_seed = master_seed;
    // validation transfer, reported but outside the budget ledger
    result.real_fitness = covered_distance(
        evaluate_reality(result.selected, testbed, {master_seed, detail::kValidationStream}));
    return result;
}

namespace detail {

// Single-objective EA reusing the NSGA-II machinery with 1-element objectives.
inline std::vector<Individual> maximize(const std::function<double(const ControlParams&)>& f,
                                        const EvolutionConfig& evo, Rng& rng) {
    const Evaluator evaluate = [&](const ControlParams& g) { return std::vector<double>{f(g)}; };
    std::vector<Individual> pop = random_population(evo.population_size, evaluate, rng);
    for (int g = 1; g <= evo.generations; ++g) pop = evolve_generation(pop, evaluate, evo, rng);
    return pop;
}

inline std::size_t argmax_fitness(const std::vector<Individual>& pop) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < pop.size(); ++i)
        if (pop[i].objectives[0] > pop[best].objectives[0]) best = i;
    return best;
}

}  // namespace detail

// The four comparison treatments. The budget argument caps the surrogate
// loops; direct_reality (20 evals), sim_only (1) and sim_plus_local (11) have
// fixed structural costs.
inline RunResult run_baseline(Treatment kind, const TestbedConfig& testbed,
                              const EvolutionConfig& evo, Budget budget,
                              std::uint64_t master_seed) {
    testbed.validate();
    RunResult result;
    result.treatment = treatment_name(kind);
    result.master_seed = master_seed;
    Rng rng(mix_seed(master_seed, detail::kEaStream));

    switch (kind) {
        case Treatment::DirectReality: {
            // population 4, 5 generations, elitism of 1: exactly 20 real tests
            Budget ledger{20, 0};
            detail::RealEvaluator real(testbed, master_seed, ledger);
            EvolutionConfig small = evo;
            small.population_size = 4;
            small.generations = 4;  // plus the evaluated initial population
            const Evaluator evaluate = [&](const ControlParams& g) {
                return std::vector<double>{covered_distance(real(g))};
            };
            std::vector<Individual> pop = random_population(small.population_size, evaluate, rng);
            Individual best_seen = pop[detail::argmax_fitness(pop)];
            for (int g = 1; g <= small.generations; ++g) {
                assign_rank_crowding(pop);
                std::vector<Individual> offspring;
                for (int k = 0; k < small.population_size; ++k) {
                    const Individual& pa = pop[detail::tournament(pop, rng)];
                    ControlParams child = detail::mutate(pa.genotype, small, rng);
                    offspring.push_back({child, evaluate(child), 0, 0.0});
                }
                // elite parent joins the survival pool without re-evaluation
                offspring.push_back(pop[detail::argmax_fitness(pop)]);
                std::stable_sort(offspring.begin(), offspring.end(),
                                 [](const Individual& a, const Individual& b) {
                                     return a.objectives[0] > b.objectives[0];
                                 });
                offspring.resize(static_cast<std::size_t>(small.population_size));
                pop = std::move(offspring);
                if (pop[0].objectives[0] > best_seen.objectives[0]) best_seen = pop[0];
            }
            result.selected = best_seen.genotype;
            result.real_fitness = best_seen.objectives[0];
            result.sim_fitness = covered_distance(simulate(best_seen.genotype, testbed));
            result.real_evals_used = ledger.used;
            break;
        }
        case Treatment::SimOnly: {
            Budget ledger{1, 0};
            detail::RealEvaluator real(testbed, master_seed, ledger);
            const auto pop = detail::maximize(
                [&](const ControlParams& g) { return covered_distance(simulate(g, testbed)); },
                evo, rng);
            const Individual& best = pop[detail::argmax_fitness(pop)];
            result.selected = best.genotype;
            result.sim_fitness = best.objectives[0];
            result.real_fitness = covered_distance(real(best.genotype));
            result.real_evals_used = ledger.used;
            break;
        }
        case Treatment::SimPlusLocal: {
            // sim optimum, then 10 accept-if-better steps on the real system
            Budget ledger{11, 0};
            detail::RealEvaluator real(testbed, master_seed, ledger);
            const auto pop = detail::maximize(
                [&](const ControlParams& g) { return covered_distance(simulate(g, testbed)); },
                evo, rng);
            ControlParams current = pop[detail::argmax_fitness(pop)].genotype;
            double current_fit = covered_distance(real(current));
            for (int step = 0; step < 10; ++step) {
                ControlParams cand{detail::clamp01(current.p1() + rng.normal(0.0, 0.05)),
                                   detail::clamp01(current.p2() + rng.normal(0.0, 0.05))};
                const double f = covered_distance(real(cand));
                if (f > current_fit) {
                    current = cand;
                    current_fit = f;
                }
            }
            result.selected = current;
            result.sim_fitness = covered_distance(simulate(current, testbed));
            result.real_fitness = current_fit;
            result.real_evals_used = ledger.used;
            break;
        }
        case Treatment::SurrogateIdw:
        case Treatment::SurrogateKriging: {
            detail::RealEvaluator real(testbed, master_seed, budget);
            std::vector<Sample> samples;
            double best_fit = -1.0;
            ControlParams best{0.5, 0.5};
            const auto probe = [&](const ControlParams& g) {
                const double f = covered_distance(real(g));
                samples.push_back({{g.p1(), g.p2()}, f});
                if (f > best_fit) {
                    best_fit = f;
                    best = g;
                }
            };
            probe(ControlParams{0.5, 0.5});
            if (real.remaining() > 0) probe(ControlParams{0.25, 0.75});
            if (real.remaining() > 0) probe(ControlParams{0.75, 0.25});
            while (real.remaining() > 0) {
                std::function<double(const ControlParams&)> predict;
                if (kind == Treatment::SurrogateIdw) {
                    auto model = std::make_shared<IdwModel>(samples);
                    predict = [model](const ControlParams& g) {
                        return model->predict({g.p1(), g.p2()});
                    };
                } else {
                    auto model = std::make_shared<KrigingModel>(KrigingModel::fit(samples));
                    predict = [model](const ControlParams& g) {
                        return model->predict({g.p1(), g.p2()}).mean;
                    };
                }
                const auto pop = detail::maximize(predict, evo, rng);
                probe(pop[detail::argmax_fitness(pop)].genotype);
            }
            result.selected = best;
            result.sim_fitness = covered_distance(simulate(best, testbed));
            result.real_fitness = best_fit;
            result.real_evals_used = real.used();
            break;
        }
        case Treatment::Transferability:
            throw std::invalid_argument("run_baseline: transferability is not a baseline");
    }
    return result;
}

// Dispatcher used by the harness.
inline RunResult run_treatment(Treatment kind, const TestbedConfig& testbed,
                               const EvolutionConfig& evo, Budget budget, double tau,
                               std::uint64_t master_seed,
                               double d_ref = kDefaultTrajectoryDref) {
    if (kind == Treatment::Transferability)
        return run_transferability(testbed, evo, budget, tau, master_seed, d_ref);
    return run_baseline(kind, testbed, evo, budget, master_seed);
}

}  // namespace regap
