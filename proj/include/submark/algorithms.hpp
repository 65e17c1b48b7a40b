#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "submark/problem.hpp"

namespace submark {

/// Names one of the twelve algorithms plus optional parameter overrides.
/// Every tunable constant has a default matching the documented behavior;
/// unknown names or parameter keys are rejected.
struct AlgorithmSpec {
    std::string name;
    std::map<std::string, double> parameters;
};

/// The twelve algorithm identifiers, in canonical order.
const std::vector<std::string>& algorithm_names();

bool is_algorithm_name(const std::string& name);

struct ImprovementRecord {
    int64_t evaluation = 0;  // 1-based index of the evaluation
    double fitness = 0.0;    // best-so-far fitness after that evaluation
};

/// Improvement-triggered record of one run. Records are strictly increasing
/// in both evaluation index and fitness; the first evaluation is always
/// recorded.
struct RunTrace {
    std::string algorithm;
    int problem_id = 0;
    std::string problem_name;
    int instance_id = 1;
    int dimension = 0;
    uint64_t seed = 0;
    int64_t budget = 0;
    std::vector<ImprovementRecord> records;
    double final_fitness = 0.0;
    BitString final_point;
    int64_t evaluations = 0;
};

/// Runs the named algorithm for exactly `budget` fitness evaluations
/// (population generations are truncated at the budget). The seed fully
/// determines the run: algorithm randomness and influence-simulation
/// randomness are derived substreams, so identical inputs give bit-identical
/// traces. Throws std::invalid_argument for unknown names or parameters.
RunTrace run_algorithm(const AlgorithmSpec& spec, const Problem& problem,
                       int64_t budget, uint64_t seed,
                       bool parallel_simulations = true);

/// Simulated-annealing temperature after `evaluations_done` evaluations of
/// a geometric schedule from t_start to t_end over `schedule_budget`
/// evaluations: t_start * ((t_end / t_start)^(1/schedule_budget))^k.
double sa_temperature(double t_start, double t_end, int64_t schedule_budget,
                      int64_t evaluations_done);

/// Start temperature 1/ln(10): a unit worsening is accepted with
/// probability 0.1.
double sa_start_temperature();

/// End temperature 2/ln(n): a unit worsening is accepted with probability
/// 1/sqrt(n). Falls back to the start temperature when n < 2.
double sa_end_temperature(int64_t n);

}  // namespace submark
