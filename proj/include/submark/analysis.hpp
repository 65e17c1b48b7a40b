#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "submark/glicko2.hpp"
#include "submark/run_logger.hpp"

namespace submark {

/// A dataset regrouped for analysis: one group per problem id, with the
/// same algorithm list on every instance. Cells are borrowed from the
/// Dataset, which must outlive the groups.
struct ProblemGroup {
    struct Instance {
        int instance = 1;
        int64_t dimension = 0;
        int64_t budget = 0;
        std::vector<const LoadedCell*> cells;  // aligned with `algorithms`
    };

    int problem_id = 0;
    std::string problem_name;
    std::vector<std::string> algorithms;
    std::vector<Instance> instances;
};

/// Groups a dataset by problem id. Requires a full (algorithm x instance)
/// grid per problem and rejects duplicate cells.
std::vector<ProblemGroup> group_dataset(const Dataset& dataset);

/// Best fitness seen within the first `budget` evaluations; -inf when the
/// budget precedes the first record.
double best_so_far_at(const LoadedRun& run, int64_t budget);

/// First evaluation reaching fitness >= target, or -1 when the run never
/// does.
int64_t hitting_time(const LoadedRun& run, double target);

/// Expected running time: evaluations summed over all runs (full budget for
/// misses) divided by the number of successful runs; +inf without successes.
double compute_ert(const std::vector<LoadedRun>& runs, double target,
                   int64_t budget);

/// Lower (type-1) quantile: the element at index ceil(n*q) of the sorted
/// values, clamped to the first element for q near 0.
double lower_quantile(std::vector<double> values, double q);

/// The ERT target for one instance: the q-quantile of the final fitness
/// values of the algorithm with the best median final (ties by mean).
double quantile_target(const ProblemGroup& group,
                       const ProblemGroup::Instance& instance, double q);

struct EcdfResult {
    std::vector<int64_t> budgets;
    // fractions[a][t] is algorithm a's hit fraction at budgets[t].
    std::vector<std::vector<double>> fractions;
};

/// Aggregated ECDF over the group's instances. Per instance the targets are
/// `target_count` linearly spaced values between the worst and best final
/// fitness any algorithm reached there; the budget grid is log-spaced from 1
/// to the largest budget with `grid_points` entries before deduplication.
EcdfResult compute_ecdf(const ProblemGroup& group, int target_count,
                        int grid_points);

struct RankedAlgorithm {
    std::string algorithm;
    Glicko2Rating rating;
};

/// Ranks the group's algorithms by sampled games: per instance and pair,
/// `games_per_pair` games each drawing one run of either side with
/// replacement; higher final fitness wins, equal draws. Each instance is one
/// rating period. Result sorted by rating, best first.
std::vector<RankedAlgorithm> glicko2_rank(const ProblemGroup& group,
                                          int games_per_pair, uint64_t seed,
                                          double tau = 0.5);

struct WinFractionMatrix {
    std::vector<std::string> algorithms;
    // fraction[a][b]: share of pairings where a's final beats b's; ties count
    // in neither direction; diagonal fixed at 0.5.
    std::vector<std::vector<double>> fraction;
};

/// Pairwise strict-win fractions over the group. Runs are paired by index
/// unless `all_pairs`, which compares every run of one side with every run
/// of the other.
WinFractionMatrix pairwise_win_fraction(const ProblemGroup& group,
                                        bool all_pairs);

struct AnalysisOptions {
    double target_quantile = 0.02;
    int ecdf_target_count = 25;
    int ecdf_grid_points = 40;
    int games_per_pair = 25;
    bool all_pairs = false;
    uint64_t seed = 1;
};

/// Runs every analysis over the dataset and writes ert.csv, ecdf.csv,
/// glicko2.csv and winfrac.csv into `out_dir`. All tables are computed
/// before the first file is written, so failures leave no partial output.
/// Returns the written paths. Throws on an empty dataset.
std::vector<std::filesystem::path> run_analysis(
    const Dataset& dataset, const std::filesystem::path& out_dir,
    const AnalysisOptions& options = {});

}  // namespace submark
