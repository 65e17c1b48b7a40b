#include "submark/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "submark/rng.hpp"

namespace submark {

namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

std::string format_number(double value) {
    if (value == kInfinity) return "inf";
    if (value == -kInfinity) return "-inf";
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.10g", value);
    return buffer;
}

std::vector<double> collect_finals(const LoadedCell& cell) {
    std::vector<double> finals;
    finals.reserve(cell.runs.size());
    for (const auto& run : cell.runs) finals.push_back(run.final_fitness);
    return finals;
}

double median_of(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return n % 2 == 1 ? values[n / 2]
                      : (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

double mean_of(const std::vector<double>& values) {
    return std::accumulate(values.begin(), values.end(), 0.0) /
           static_cast<double>(values.size());
}

}  // namespace

std::vector<ProblemGroup> group_dataset(const Dataset& dataset) {
    struct Builder {
        std::string problem_name;
        std::set<std::string> algorithms;
        std::set<int> instances;
        std::map<std::pair<std::string, int>, const LoadedCell*> cells;
    };
    std::map<int, Builder> builders;

    for (const auto& cell : dataset.cells) {
        auto& builder = builders[cell.meta.problem_id];
        if (builder.problem_name.empty()) {
            builder.problem_name = cell.meta.problem_name;
        } else if (builder.problem_name != cell.meta.problem_name) {
            throw std::runtime_error(
                "problem id " + std::to_string(cell.meta.problem_id) +
                " maps to both '" + builder.problem_name + "' and '" +
                cell.meta.problem_name + "'");
        }
        builder.algorithms.insert(cell.meta.algorithm);
        builder.instances.insert(cell.meta.instance);
        if (!builder.cells
                 .emplace(std::make_pair(cell.meta.algorithm, cell.meta.instance),
                          &cell)
                 .second) {
            throw std::runtime_error(
                "duplicate cell: algorithm '" + cell.meta.algorithm +
                "', problem id " + std::to_string(cell.meta.problem_id) +
                ", instance " + std::to_string(cell.meta.instance));
        }
    }

    std::vector<ProblemGroup> groups;
    for (const auto& [problem_id, builder] : builders) {
        ProblemGroup group;
        group.problem_id = problem_id;
        group.problem_name = builder.problem_name;
        group.algorithms.assign(builder.algorithms.begin(), builder.algorithms.end());

        for (const int instance : builder.instances) {
            ProblemGroup::Instance row;
            row.instance = instance;
            for (const auto& algorithm : group.algorithms) {
                const auto it = builder.cells.find({algorithm, instance});
                if (it == builder.cells.end()) {
                    throw std::runtime_error(
                        "algorithm '" + algorithm + "' has no runs for problem id " +
                        std::to_string(problem_id) + " instance " +
                        std::to_string(instance));
                }
                const LoadedCell* cell = it->second;
                if (row.cells.empty()) {
                    row.dimension = cell->meta.dimension;
                } else if (row.dimension != cell->meta.dimension) {
                    throw std::runtime_error(
                        "inconsistent dimension for problem id " +
                        std::to_string(problem_id) + " instance " +
                        std::to_string(instance));
                }
                row.budget = std::max(row.budget, cell->meta.budget);
                row.cells.push_back(cell);
            }
            group.instances.push_back(std::move(row));
        }
        groups.push_back(std::move(group));
    }
    return groups;
}

double best_so_far_at(const LoadedRun& run, int64_t budget) {
    double best = -kInfinity;
    for (const auto& record : run.records) {
        if (record.evaluation > budget) break;
        best = record.fitness;
    }
    return best;
}

int64_t hitting_time(const LoadedRun& run, double target) {
    for (const auto& record : run.records) {
        if (record.fitness >= target) return record.evaluation;
    }
    return -1;
}

double compute_ert(const std::vector<LoadedRun>& runs, double target,
                   int64_t budget) {
    if (runs.empty()) throw std::invalid_argument("ERT needs at least one run");
    double total = 0.0;
    int64_t successes = 0;
    for (const auto& run : runs) {
        const int64_t hit = hitting_time(run, target);
        if (hit >= 0) {
            total += static_cast<double>(hit);
            ++successes;
        } else {
            total += static_cast<double>(budget);
        }
    }
    return successes > 0 ? total / static_cast<double>(successes) : kInfinity;
}

double lower_quantile(std::vector<double> values, double q) {
    if (values.empty()) throw std::invalid_argument("quantile of no values");
    std::sort(values.begin(), values.end());
    const auto n = static_cast<double>(values.size());
    const auto index = static_cast<std::size_t>(std::clamp(
        std::ceil(n * q), 1.0, n));
    return values[index - 1];
}

double quantile_target(const ProblemGroup& group,
                       const ProblemGroup::Instance& instance, double q) {
    std::size_t best = 0;
    double best_median = -kInfinity;
    double best_mean = -kInfinity;
    for (std::size_t a = 0; a < group.algorithms.size(); ++a) {
        const auto finals = collect_finals(*instance.cells[a]);
        const double median = median_of(finals);
        const double mean = mean_of(finals);
        if (median > best_median ||
            (median == best_median && mean > best_mean)) {
            best = a;
            best_median = median;
            best_mean = mean;
        }
    }
    return lower_quantile(collect_finals(*instance.cells[best]), q);
}

EcdfResult compute_ecdf(const ProblemGroup& group, int target_count,
                        int grid_points) {
    if (target_count < 1) throw std::invalid_argument("target count must be >= 1");
    if (grid_points < 2) throw std::invalid_argument("grid needs >= 2 points");
    if (group.instances.empty()) throw std::invalid_argument("group has no instances");

    int64_t max_budget = 1;
    for (const auto& instance : group.instances) {
        max_budget = std::max(max_budget, instance.budget);
    }

    EcdfResult result;
    const double log_max = std::log(static_cast<double>(max_budget));
    for (int k = 0; k < grid_points; ++k) {
        const double position =
            static_cast<double>(k) / static_cast<double>(grid_points - 1);
        const auto budget = static_cast<int64_t>(
            std::llround(std::exp(position * log_max)));
        result.budgets.push_back(std::clamp<int64_t>(budget, 1, max_budget));
    }
    result.budgets.erase(std::unique(result.budgets.begin(), result.budgets.end()),
                         result.budgets.end());

    // Per-instance linearly spaced targets between the worst and best finals
    // any algorithm reached there.
    std::vector<std::vector<double>> targets(group.instances.size());
    for (std::size_t i = 0; i < group.instances.size(); ++i) {
        double best = -kInfinity;
        double worst = kInfinity;
        for (const LoadedCell* cell : group.instances[i].cells) {
            for (const auto& run : cell->runs) {
                best = std::max(best, run.final_fitness);
                worst = std::min(worst, run.final_fitness);
            }
        }
        auto& list = targets[i];
        if (target_count == 1) {
            list.push_back(best);
        } else {
            for (int j = 0; j < target_count; ++j) {
                const double position =
                    static_cast<double>(j) / static_cast<double>(target_count - 1);
                list.push_back(worst + (best - worst) * position);
            }
        }
    }

    result.fractions.assign(group.algorithms.size(),
                            std::vector<double>(result.budgets.size(), 0.0));
    for (std::size_t a = 0; a < group.algorithms.size(); ++a) {
        int64_t pair_count = 0;
        for (std::size_t i = 0; i < group.instances.size(); ++i) {
            pair_count += std::ssize(group.instances[i].cells[a]->runs) *
                          std::ssize(targets[i]);
        }
        for (std::size_t t = 0; t < result.budgets.size(); ++t) {
            int64_t hits = 0;
            for (std::size_t i = 0; i < group.instances.size(); ++i) {
                const auto& list = targets[i];
                for (const auto& run : group.instances[i].cells[a]->runs) {
                    const double best = best_so_far_at(run, result.budgets[t]);
                    hits += std::upper_bound(list.begin(), list.end(), best) -
                            list.begin();
                }
            }
            result.fractions[a][t] =
                static_cast<double>(hits) / static_cast<double>(pair_count);
        }
    }
    return result;
}

std::vector<RankedAlgorithm> glicko2_rank(const ProblemGroup& group,
                                          int games_per_pair, uint64_t seed,
                                          double tau) {
    if (games_per_pair < 1) throw std::invalid_argument("games per pair must be >= 1");
    const std::size_t count = group.algorithms.size();
    std::vector<Glicko2Rating> ratings(count);

    RngStream rng(substream_seed(seed, static_cast<uint64_t>(group.problem_id)));
    for (const auto& instance : group.instances) {
        std::vector<std::vector<Glicko2Game>> games(count);
        for (std::size_t a = 0; a + 1 < count; ++a) {
            for (std::size_t b = a + 1; b < count; ++b) {
                const auto& runs_a = instance.cells[a]->runs;
                const auto& runs_b = instance.cells[b]->runs;
                for (int g = 0; g < games_per_pair; ++g) {
                    const auto& run_a =
                        runs_a[rng.next_below(static_cast<uint64_t>(runs_a.size()))];
                    const auto& run_b =
                        runs_b[rng.next_below(static_cast<uint64_t>(runs_b.size()))];
                    double score = 0.5;
                    if (run_a.final_fitness > run_b.final_fitness) score = 1.0;
                    if (run_a.final_fitness < run_b.final_fitness) score = 0.0;
                    games[a].push_back(
                        {ratings[b].rating, ratings[b].deviation, score});
                    games[b].push_back(
                        {ratings[a].rating, ratings[a].deviation, 1.0 - score});
                }
            }
        }
        // All players update from the same pre-period ratings.
        std::vector<Glicko2Rating> updated(count);
        for (std::size_t a = 0; a < count; ++a) {
            updated[a] = glicko2_update(ratings[a], games[a], tau);
        }
        ratings = std::move(updated);
    }

    std::vector<std::size_t> order(count);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (ratings[a].rating != ratings[b].rating) {
            return ratings[a].rating > ratings[b].rating;
        }
        return group.algorithms[a] < group.algorithms[b];
    });

    std::vector<RankedAlgorithm> ranked;
    ranked.reserve(count);
    for (const std::size_t a : order) {
        ranked.push_back({group.algorithms[a], ratings[a]});
    }
    return ranked;
}

WinFractionMatrix pairwise_win_fraction(const ProblemGroup& group,
                                        bool all_pairs) {
    const std::size_t count = group.algorithms.size();
    WinFractionMatrix matrix;
    matrix.algorithms = group.algorithms;
    matrix.fraction.assign(count, std::vector<double>(count, 0.5));

    for (std::size_t a = 0; a < count; ++a) {
        for (std::size_t b = 0; b < count; ++b) {
            if (a == b) continue;
            int64_t wins = 0;
            int64_t comparisons = 0;
            for (const auto& instance : group.instances) {
                const auto& runs_a = instance.cells[a]->runs;
                const auto& runs_b = instance.cells[b]->runs;
                if (all_pairs) {
                    for (const auto& run_a : runs_a) {
                        for (const auto& run_b : runs_b) {
                            wins += run_a.final_fitness > run_b.final_fitness;
                            ++comparisons;
                        }
                    }
                } else {
                    if (runs_a.size() != runs_b.size()) {
                        throw std::invalid_argument(
                            "index-paired win fractions need equal run counts "
                            "per instance");
                    }
                    for (std::size_t k = 0; k < runs_a.size(); ++k) {
                        wins += runs_a[k].final_fitness > runs_b[k].final_fitness;
                        ++comparisons;
                    }
                }
            }
            matrix.fraction[a][b] = comparisons > 0
                                        ? static_cast<double>(wins) /
                                              static_cast<double>(comparisons)
                                        : 0.0;
        }
    }
    return matrix;
}

std::vector<std::filesystem::path> run_analysis(
    const Dataset& dataset, const std::filesystem::path& out_dir,
    const AnalysisOptions& options) {
    if (dataset.cells.empty()) {
        throw std::runtime_error("dataset is empty, nothing to analyze");
    }
    const auto groups = group_dataset(dataset);

    std::string ert_csv =
        "problem_id,problem_name,instance,dimension,target,algorithm,ert,"
        "successes,runs\n";
    std::string ecdf_csv = "problem_id,problem_name,algorithm,budget,fraction\n";
    std::string glicko_csv =
        "problem_id,problem_name,rank,algorithm,rating,deviation,volatility\n";
    std::string winfrac_csv =
        "problem_id,problem_name,algorithm,opponent,win_fraction\n";

    for (const auto& group : groups) {
        const std::string prefix =
            std::to_string(group.problem_id) + "," + group.problem_name + ",";

        for (const auto& instance : group.instances) {
            const double target =
                quantile_target(group, instance, options.target_quantile);
            for (std::size_t a = 0; a < group.algorithms.size(); ++a) {
                const LoadedCell* cell = instance.cells[a];
                const double ert =
                    compute_ert(cell->runs, target, cell->meta.budget);
                int64_t successes = 0;
                for (const auto& run : cell->runs) {
                    successes += hitting_time(run, target) >= 0;
                }
                ert_csv += prefix + std::to_string(instance.instance) + "," +
                           std::to_string(instance.dimension) + "," +
                           format_number(target) + "," + group.algorithms[a] +
                           "," + format_number(ert) + "," +
                           std::to_string(successes) + "," +
                           std::to_string(cell->runs.size()) + "\n";
            }
        }

        const EcdfResult ecdf = compute_ecdf(group, options.ecdf_target_count,
                                             options.ecdf_grid_points);
        for (std::size_t a = 0; a < group.algorithms.size(); ++a) {
            for (std::size_t t = 0; t < ecdf.budgets.size(); ++t) {
                ecdf_csv += prefix + group.algorithms[a] + "," +
                            std::to_string(ecdf.budgets[t]) + "," +
                            format_number(ecdf.fractions[a][t]) + "\n";
            }
        }

        const auto ranked =
            glicko2_rank(group, options.games_per_pair, options.seed);
        for (std::size_t r = 0; r < ranked.size(); ++r) {
            glicko_csv += prefix + std::to_string(r + 1) + "," +
                          ranked[r].algorithm + "," +
                          format_number(ranked[r].rating.rating) + "," +
                          format_number(ranked[r].rating.deviation) + "," +
                          format_number(ranked[r].rating.volatility) + "\n";
        }

        const auto matrix = pairwise_win_fraction(group, options.all_pairs);
        for (std::size_t a = 0; a < matrix.algorithms.size(); ++a) {
            for (std::size_t b = 0; b < matrix.algorithms.size(); ++b) {
                winfrac_csv += prefix + matrix.algorithms[a] + "," +
                               matrix.algorithms[b] + "," +
                               format_number(matrix.fraction[a][b]) + "\n";
            }
        }
    }

    std::filesystem::create_directories(out_dir);
    const std::vector<std::pair<std::string, const std::string*>> tables = {
        {"ert.csv", &ert_csv},
        {"ecdf.csv", &ecdf_csv},
        {"glicko2.csv", &glicko_csv},
        {"winfrac.csv", &winfrac_csv},
    };
    std::vector<std::filesystem::path> written;
    for (const auto& [name, content] : tables) {
        const auto path = out_dir / name;
        std::ofstream out(path, std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + path.string());
        out << *content;
        out.flush();
        if (!out) throw std::runtime_error("write failed for " + path.string());
        written.push_back(path);
    }
    return written;
}

}  // namespace submark
