#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "submark/algorithms.hpp"
#include "submark/problem.hpp"

namespace submark {

/// One suite entry of a run configuration. `instance_id` is assigned while
/// loading: 1-based position among the entries of the same kind.
struct ProblemConfig {
    std::string kind;              // "max-coverage", "max-influence", "max-cut", "pwt"
    std::string instance_path;
    std::string cost;              // cost spec string; empty selects the kind default
    int64_t simulations = 100;     // influence only
    bool exact_influence = false;  // oracle use: exact expectation, no sampling
    std::optional<double> budget_override;  // pwt only: replaces the capacity
    int instance_id = 1;
};

struct RunConfig {
    std::vector<ProblemConfig> problems;
    std::vector<AlgorithmSpec> algorithms;
    int64_t runs = 30;
    int64_t budget = 100000;
    uint64_t seed = 1;
    int workers = 0;  // 0 = one per available core
    std::string output = "dataset";
};

/// Reads a JSON run configuration. Throws std::runtime_error (with the
/// offending key or value) on schema violations; unknown keys are rejected.
RunConfig load_run_config(const std::filesystem::path& path);

/// Hash of "<seed>|<algorithm>|<problem_key>|<instance>|<run>"; gives every
/// grid cell an independent, machine-stable seed so any subset of the grid
/// reruns identically.
uint64_t derive_run_seed(uint64_t base_seed, const std::string& algorithm,
                         const std::string& problem_key, int instance_id,
                         int64_t run_index);

struct BuiltProblem {
    Problem problem;
    std::string cost_string;  // canonical form recorded in meta files
    std::vector<std::string> warnings;
};

/// Loads the instance file and builds the problem for one suite entry.
BuiltProblem build_problem(const ProblemConfig& config);

/// Builds every suite entry; errors identify the entry by path.
std::vector<BuiltProblem> build_problems(const RunConfig& config);

struct GridReport {
    int64_t runs_completed = 0;
    int64_t cells_written = 0;
    // one line per quarantined run: cell description plus the error
    std::vector<std::string> failures;
};

/// Executes the full (problem x algorithm x run) grid and writes the
/// dataset under config.output. Runs execute concurrently when workers != 1
/// but results are written serially in grid order, so output bytes never
/// depend on the worker count. Existing cell files are replaced.
GridReport execute_grid(const RunConfig& config,
                        const std::vector<BuiltProblem>& problems);

}  // namespace submark
