#include <cstdio>
#include <exception>
#include <string>

#include "CLI11.hpp"
#include "submark/analysis.hpp"
#include "submark/exact_oracles.hpp"
#include "submark/harness.hpp"
#include "submark/run_logger.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;

struct RunFlags {
    std::string config_path;
    int64_t budget = 0;
    int64_t runs = 0;
    uint64_t seed = 0;
    int workers = -1;
    std::string output;
};

struct AnalyzeFlags {
    std::string root;
    std::string output;
    submark::AnalysisOptions options;
};

struct OracleFlags {
    std::string kind;
    std::string instance;
    std::string cost;
    int64_t simulations = 1;
    double budget = 0.0;
    bool budget_set = false;
};

int do_run(const RunFlags& flags, const CLI::App& cmd) {
    submark::RunConfig config;
    std::vector<submark::BuiltProblem> problems;
    try {
        config = submark::load_run_config(flags.config_path);
        if (cmd.count("--budget") > 0) config.budget = flags.budget;
        if (cmd.count("--runs") > 0) config.runs = flags.runs;
        if (cmd.count("--seed") > 0) config.seed = flags.seed;
        if (cmd.count("--workers") > 0) config.workers = flags.workers;
        if (cmd.count("--output") > 0) config.output = flags.output;
        problems = submark::build_problems(config);
    } catch (const std::exception& error) {
        std::fprintf(stderr, "error: %s\n", error.what());
        return kExitConfig;
    }
    for (const auto& problem : problems) {
        for (const auto& warning : problem.warnings) {
            std::fprintf(stderr, "warning: %s\n", warning.c_str());
        }
    }

    try {
        const submark::GridReport report = submark::execute_grid(config, problems);
        std::printf("wrote %lld runs across %lld cells under %s\n",
                    static_cast<long long>(report.runs_completed),
                    static_cast<long long>(report.cells_written),
                    config.output.c_str());
        if (!report.failures.empty()) {
            for (const auto& failure : report.failures) {
                std::fprintf(stderr, "failed: %s\n", failure.c_str());
            }
            return kExitRuntime;
        }
    } catch (const std::exception& error) {
        std::fprintf(stderr, "error: %s\n", error.what());
        return kExitRuntime;
    }
    return kExitOk;
}

int do_analyze(const AnalyzeFlags& flags) {
    try {
        const submark::Dataset dataset = submark::read_dataset(flags.root);
        const std::filesystem::path out_dir =
            flags.output.empty() ? std::filesystem::path(flags.root) / "analysis"
                                 : std::filesystem::path(flags.output);
        const auto written = submark::run_analysis(dataset, out_dir, flags.options);
        for (const auto& path : written) {
            std::printf("%s\n", path.string().c_str());
        }
    } catch (const std::exception& error) {
        std::fprintf(stderr, "error: %s\n", error.what());
        return kExitRuntime;
    }
    return kExitOk;
}

int do_oracle(const OracleFlags& flags) {
    submark::ProblemConfig config;
    config.kind = flags.kind;
    config.instance_path = flags.instance;
    config.cost = flags.cost;
    config.simulations = flags.simulations;
    config.exact_influence = true;
    if (flags.budget_set) config.budget_override = flags.budget;

    std::optional<submark::BuiltProblem> built;
    try {
        if (!flags.cost.empty() &&
            (flags.kind == "max-cut" || flags.kind == "pwt")) {
            throw std::invalid_argument("--cost does not apply to " + flags.kind);
        }
        if (flags.budget_set && flags.kind != "pwt") {
            throw std::invalid_argument(
                "--budget only overrides the pwt capacity; other kinds set the "
                "budget inside --cost");
        }
        built = submark::build_problem(config);
    } catch (const std::exception& error) {
        std::fprintf(stderr, "error: %s\n", error.what());
        return kExitConfig;
    }

    const submark::Problem& problem = built->problem;
    const int n = problem.dimension();
    try {
        const submark::OptimumResult optimum = submark::brute_force_optimum(problem);
        std::string bits(static_cast<std::size_t>(n), '0');
        for (int j = 0; j < n; ++j) {
            if (optimum.point.test(static_cast<std::size_t>(j))) {
                bits[static_cast<std::size_t>(j)] = '1';
            }
        }
        std::printf("problem: %s (%s), dimension %d\n",
                    problem.problem_name().c_str(), problem.problem_key().c_str(),
                    n);
        std::printf("cost: %s\n", built->cost_string.c_str());
        std::printf("optimum: %.10g at %s\n", optimum.fitness, bits.c_str());

        if (n > 12) {
            std::printf("submodular: skipped (dimension above 12)\n");
            std::printf("monotone: skipped (dimension above 12)\n");
            return kExitOk;
        }
        std::vector<double> table;
        try {
            if (flags.kind == "max-coverage") {
                table = submark::coverage_table(problem.undirected());
            } else if (flags.kind == "max-cut") {
                table = submark::cut_table(problem.undirected());
            } else if (flags.kind == "max-influence") {
                table = submark::exact_influence_table(problem.directed());
            } else {
                table = submark::pwt_table(problem.ttp());
            }
        } catch (const std::invalid_argument& error) {
            std::printf("submodular: skipped (%s)\n", error.what());
            std::printf("monotone: skipped (%s)\n", error.what());
            return kExitOk;
        }
        const bool submodular = submark::is_submodular(table, n);
        const bool monotone = submark::is_monotone(table, n);
        std::printf("submodular: %s\n", submodular ? "yes" : "no");
        std::printf("monotone: %s\n", monotone ? "yes" : "no");

        // Raw-objective guarantees by problem family: coverage and influence
        // are submodular and monotone, cut is submodular; a counterexample
        // means a broken objective.
        bool violated = false;
        if (flags.kind == "max-coverage" || flags.kind == "max-influence") {
            violated = !submodular || !monotone;
        } else if (flags.kind == "max-cut") {
            violated = !submodular;
        }
        return violated ? kExitRuntime : kExitOk;
    } catch (const std::invalid_argument& error) {
        std::fprintf(stderr, "error: %s\n", error.what());
        return kExitConfig;
    } catch (const std::exception& error) {
        std::fprintf(stderr, "error: %s\n", error.what());
        return kExitRuntime;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"benchmark harness for constrained submodular search heuristics"};
    app.require_subcommand(1);

    RunFlags run_flags;
    CLI::App* run_cmd =
        app.add_subcommand("run", "execute a configured benchmark grid");
    run_cmd->add_option("config", run_flags.config_path, "JSON run configuration")
        ->required();
    run_cmd->add_option("--budget", run_flags.budget,
                        "evaluations per run (overrides the config)");
    run_cmd->add_option("--runs", run_flags.runs,
                        "runs per grid cell (overrides the config)");
    run_cmd->add_option("--seed", run_flags.seed,
                        "base seed (overrides the config)");
    run_cmd->add_option("--workers", run_flags.workers,
                        "worker threads, 0 = all cores (overrides the config)");
    run_cmd->add_option("--output", run_flags.output,
                        "dataset directory (overrides the config)");

    AnalyzeFlags analyze_flags;
    CLI::App* analyze_cmd =
        app.add_subcommand("analyze", "compute CSV statistics over a dataset");
    analyze_cmd->add_option("root", analyze_flags.root, "dataset directory")
        ->required();
    analyze_cmd->add_option("--output", analyze_flags.output,
                            "CSV directory (default <root>/analysis)");
    analyze_cmd->add_option("--target-quantile",
                            analyze_flags.options.target_quantile,
                            "ERT target quantile of the best algorithm's finals")
        ->capture_default_str();
    analyze_cmd->add_option("--ecdf-targets",
                            analyze_flags.options.ecdf_target_count,
                            "per-instance target count")
        ->capture_default_str();
    analyze_cmd->add_option("--ecdf-grid", analyze_flags.options.ecdf_grid_points,
                            "budget grid points")
        ->capture_default_str();
    analyze_cmd->add_option("--games-per-pair",
                            analyze_flags.options.games_per_pair,
                            "sampled games per algorithm pair and instance")
        ->capture_default_str();
    analyze_cmd->add_flag("--all-pairs", analyze_flags.options.all_pairs,
                          "win fractions over all run pairs instead of "
                          "index-paired runs");
    analyze_cmd->add_option("--seed", analyze_flags.options.seed,
                            "seed for the sampled rating games")
        ->capture_default_str();

    OracleFlags oracle_flags;
    CLI::App* oracle_cmd = app.add_subcommand(
        "oracle", "brute-force optimum and property checks for small instances");
    oracle_cmd
        ->add_option("--problem", oracle_flags.kind,
                     "max-coverage | max-influence | max-cut | pwt")
        ->required();
    oracle_cmd->add_option("--instance", oracle_flags.instance, "instance file")
        ->required();
    oracle_cmd->add_option("--cost", oracle_flags.cost,
                           "cost spec, e.g. uniform:budget=2");
    oracle_cmd->add_option("--simulations", oracle_flags.simulations,
                           "unused in exact mode, kept for symmetry");
    oracle_cmd->add_option("--budget", oracle_flags.budget,
                           "pwt capacity override");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& help) {
        return app.exit(help);
    } catch (const CLI::ParseError& error) {
        app.exit(error);
        return kExitConfig;
    }

    oracle_flags.budget_set = oracle_cmd->count("--budget") > 0;
    if (run_cmd->parsed()) return do_run(run_flags, *run_cmd);
    if (analyze_cmd->parsed()) return do_analyze(analyze_flags);
    return do_oracle(oracle_flags);
}
