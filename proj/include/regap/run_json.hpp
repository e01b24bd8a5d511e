#pragma once

#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "regap/treatments.hpp"

namespace regap {

inline nlohmann::json to_json(const TransferRecord& r) {
    return {
        {"genotype", {r.genotype.p1(), r.genotype.p2()}},
        {"sim_descriptor",
         {{"covered_distance", r.sim_descriptor.covered_distance},
          {"avg_height", r.sim_descriptor.avg_height},
          {"final_heading", r.sim_descriptor.final_heading}}},
        {"disparity", r.disparity},
        {"score", r.score},
        {"generation", r.generation},
        {"seed", {{"master_seed", r.seed.master_seed}, {"stream_id", r.seed.stream_id}}},
    };
}

inline nlohmann::json to_json(const RunResult& r) {
    nlohmann::json transfers = nlohmann::json::array();
    for (const auto& t : r.transfers) transfers.push_back(to_json(t));
    return {
        {"treatment", r.treatment},
        {"selected", {r.selected.p1(), r.selected.p2()}},
        {"sim_fitness_mm", r.sim_fitness},
        {"real_fitness_mm", r.real_fitness},
        {"real_evals_used", r.real_evals_used},
        {"master_seed", r.master_seed},
        {"transfers", transfers},
    };
}

inline void write_run_json(const RunResult& r, int replicate, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write: " + path);
    nlohmann::json j = to_json(r);
    j["replicate"] = replicate;
    out << j.dump(2) << '\n';
}

}  // namespace regap
