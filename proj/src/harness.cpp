#include "submark/harness.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "json.hpp"
#include "submark/parsers.hpp"
#include "submark/run_logger.hpp"

namespace submark {

namespace {

using nlohmann::json;

[[noreturn]] void config_error(const std::string& message) {
    throw std::runtime_error("config: " + message);
}

void reject_unknown_keys(const json& object, const char* where,
                         std::initializer_list<const char*> known) {
    for (const auto& [key, value] : object.items()) {
        bool found = false;
        for (const char* candidate : known) {
            if (key == candidate) {
                found = true;
                break;
            }
        }
        if (!found) {
            config_error(std::string("unknown key '") + key + "' in " + where);
        }
    }
}

bool is_problem_kind(const std::string& kind) {
    return kind == "max-coverage" || kind == "max-influence" ||
           kind == "max-cut" || kind == "pwt";
}

ProblemConfig parse_problem_entry(const json& entry) {
    if (!entry.is_object()) config_error("problem entries must be objects");
    reject_unknown_keys(entry, "a problem entry",
                        {"kind", "instance", "cost", "simulations", "budget"});

    ProblemConfig config;
    if (!entry.contains("kind") || !entry["kind"].is_string()) {
        config_error("problem entry needs a string 'kind'");
    }
    config.kind = entry["kind"].get<std::string>();
    if (!is_problem_kind(config.kind)) {
        config_error("unknown problem kind '" + config.kind + "'");
    }
    if (!entry.contains("instance") || !entry["instance"].is_string()) {
        config_error("problem entry needs a string 'instance' path");
    }
    config.instance_path = entry["instance"].get<std::string>();

    if (entry.contains("cost")) {
        if (!entry["cost"].is_string()) config_error("'cost' must be a string");
        config.cost = entry["cost"].get<std::string>();
        if (config.kind == "max-cut") {
            config_error("max-cut is unconstrained; remove the 'cost' entry");
        }
        if (config.kind == "pwt") {
            config_error("pwt costs come from the instance; use 'budget' to "
                         "override the capacity");
        }
    }
    if (entry.contains("simulations")) {
        if (config.kind != "max-influence") {
            config_error("'simulations' only applies to max-influence");
        }
        if (!entry["simulations"].is_number_integer() ||
            entry["simulations"].get<int64_t>() < 1) {
            config_error("'simulations' must be a positive integer");
        }
        config.simulations = entry["simulations"].get<int64_t>();
    }
    if (entry.contains("budget")) {
        if (config.kind != "pwt") {
            config_error("per-problem 'budget' only applies to pwt; other kinds "
                         "set it inside 'cost'");
        }
        if (!entry["budget"].is_number()) config_error("'budget' must be a number");
        config.budget_override = entry["budget"].get<double>();
    }
    return config;
}

AlgorithmSpec parse_algorithm_entry(const json& entry) {
    AlgorithmSpec spec;
    if (entry.is_string()) {
        spec.name = entry.get<std::string>();
    } else if (entry.is_object()) {
        reject_unknown_keys(entry, "an algorithm entry", {"name", "parameters"});
        if (!entry.contains("name") || !entry["name"].is_string()) {
            config_error("algorithm entry needs a string 'name'");
        }
        spec.name = entry["name"].get<std::string>();
        if (entry.contains("parameters")) {
            if (!entry["parameters"].is_object()) {
                config_error("'parameters' must be an object");
            }
            for (const auto& [key, value] : entry["parameters"].items()) {
                if (!value.is_number()) {
                    config_error("parameter '" + key + "' must be a number");
                }
                spec.parameters[key] = value.get<double>();
            }
        }
    } else {
        config_error("algorithm entries must be names or objects");
    }
    if (!is_algorithm_name(spec.name)) {
        config_error("unknown algorithm '" + spec.name + "'");
    }
    return spec;
}

std::string describe_cell(const RunConfig& config, std::size_t problem_index,
                          std::size_t algorithm_index, int64_t run_index) {
    const auto& problem = config.problems[problem_index];
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, " i%d run %lld", problem.instance_id,
                  static_cast<long long>(run_index + 1));
    return config.algorithms[algorithm_index].name + " on " + problem.kind +
           ":" + problem.instance_path + buffer;
}

}  // namespace

RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file " + path.string());

    json root;
    try {
        root = json::parse(in);
    } catch (const json::parse_error& error) {
        throw std::runtime_error("config: " + std::string(error.what()));
    }
    if (!root.is_object()) config_error("top level must be an object");
    reject_unknown_keys(root, "the config",
                        {"problems", "algorithms", "runs", "budget", "seed",
                         "workers", "output"});

    RunConfig config;
    if (!root.contains("problems") || !root["problems"].is_array() ||
        root["problems"].empty()) {
        config_error("'problems' must be a nonempty array");
    }
    std::map<std::string, int> kind_counters;
    for (const auto& entry : root["problems"]) {
        ProblemConfig problem = parse_problem_entry(entry);
        problem.instance_id = ++kind_counters[problem.kind];
        config.problems.push_back(std::move(problem));
    }

    if (!root.contains("algorithms") || !root["algorithms"].is_array() ||
        root["algorithms"].empty()) {
        config_error("'algorithms' must be a nonempty array");
    }
    for (const auto& entry : root["algorithms"]) {
        config.algorithms.push_back(parse_algorithm_entry(entry));
    }

    if (root.contains("runs")) {
        if (!root["runs"].is_number_integer() || root["runs"].get<int64_t>() < 1) {
            config_error("'runs' must be a positive integer");
        }
        config.runs = root["runs"].get<int64_t>();
    }
    if (root.contains("budget")) {
        if (!root["budget"].is_number_integer() ||
            root["budget"].get<int64_t>() < 1) {
            config_error("'budget' must be a positive integer");
        }
        config.budget = root["budget"].get<int64_t>();
    }
    if (root.contains("seed")) {
        if (!root["seed"].is_number_integer()) {
            config_error("'seed' must be an integer");
        }
        config.seed = root["seed"].get<uint64_t>();
    }
    if (root.contains("workers")) {
        if (!root["workers"].is_number_integer() ||
            root["workers"].get<int64_t>() < 0) {
            config_error("'workers' must be a nonnegative integer");
        }
        config.workers = static_cast<int>(root["workers"].get<int64_t>());
    }
    if (root.contains("output")) {
        if (!root["output"].is_string()) config_error("'output' must be a string");
        config.output = root["output"].get<std::string>();
    }
    return config;
}

uint64_t derive_run_seed(uint64_t base_seed, const std::string& algorithm,
                         const std::string& problem_key, int instance_id,
                         int64_t run_index) {
    const std::string canonical = std::to_string(base_seed) + "|" + algorithm +
                                  "|" + problem_key + "|" +
                                  std::to_string(instance_id) + "|" +
                                  std::to_string(run_index);
    return stable_hash(canonical);
}

BuiltProblem build_problem(const ProblemConfig& config) {
    const bool gset = std::filesystem::path(config.instance_path).extension() ==
                      ".gset";

    if (config.kind == "max-cut") {
        UndirectedGraph graph = gset ? load_gset(config.instance_path)
                                     : load_edge_list(config.instance_path, true);
        return {Problem::max_cut(std::move(graph)), "-", {}};
    }

    if (config.kind == "pwt") {
        TTPInstance instance = load_ttp(config.instance_path);
        const double budget =
            config.budget_override.value_or(instance.capacity);
        char cost_string[64];
        std::snprintf(cost_string, sizeof cost_string, "explicit:budget=%.17g",
                      budget);
        return {Problem::pwt(std::move(instance), config.budget_override),
                cost_string,
                {}};
    }

    CostSpec spec = parse_cost_spec(config.cost.empty() ? "uniform" : config.cost);
    if (!spec.budget) spec.budget = default_budget(spec);

    if (config.kind == "max-coverage") {
        UndirectedGraph graph = gset ? load_gset(config.instance_path)
                                     : load_edge_list(config.instance_path, false);
        std::vector<int> degrees(static_cast<std::size_t>(graph.node_count));
        for (int v = 0; v < graph.node_count; ++v) degrees[v] = graph.degree(v);
        CostModel model = build_cost_model(spec, degrees);
        return {Problem::max_coverage(std::move(graph), std::move(model)),
                cost_spec_to_string(spec),
                {}};
    }

    // max-influence
    SnapParseResult loaded = load_snap_weighted(config.instance_path, true);
    CostModel model = build_cost_model(spec, loaded.graph.out_degree);
    return {Problem::max_influence(std::move(loaded.graph), std::move(model),
                                   static_cast<int>(config.simulations),
                                   config.exact_influence),
            cost_spec_to_string(spec), std::move(loaded.warnings)};
}

std::vector<BuiltProblem> build_problems(const RunConfig& config) {
    std::vector<BuiltProblem> problems;
    problems.reserve(config.problems.size());
    for (const auto& entry : config.problems) {
        try {
            problems.push_back(build_problem(entry));
        } catch (const std::exception& error) {
            throw std::runtime_error(entry.instance_path + ": " + error.what());
        }
    }
    return problems;
}

GridReport execute_grid(const RunConfig& config,
                        const std::vector<BuiltProblem>& problems) {
    if (problems.size() != config.problems.size()) {
        throw std::invalid_argument("problem list does not match the config");
    }
    const std::size_t algorithm_count = config.algorithms.size();
    const std::size_t cell_count = problems.size() * algorithm_count;
    const auto runs = static_cast<std::size_t>(config.runs);
    const std::size_t job_count = cell_count * runs;

    std::vector<RunTrace> traces(job_count);
    std::vector<std::string> errors(job_count);

    const auto execute_job = [&](std::size_t job) {
        const std::size_t cell = job / runs;
        const auto run_index = static_cast<int64_t>(job % runs);
        const std::size_t problem_index = cell / algorithm_count;
        const std::size_t algorithm_index = cell % algorithm_count;
        const auto& problem_config = config.problems[problem_index];
        const auto& spec = config.algorithms[algorithm_index];
        try {
            const uint64_t seed = derive_run_seed(
                config.seed, spec.name, problem_config.kind,
                problem_config.instance_id, run_index);
            RunTrace trace = run_algorithm(
                spec, problems[problem_index].problem, config.budget, seed);
            trace.instance_id = problem_config.instance_id;
            traces[job] = std::move(trace);
        } catch (const std::exception& error) {
            errors[job] = error.what();
        }
    };

#ifdef _OPENMP
    const int workers =
        config.workers > 0 ? config.workers : omp_get_max_threads();
#else
    const int workers = 1;
#endif
    if (workers == 1) {
        // Serial reference path, bypasses OpenMP entirely.
        for (std::size_t job = 0; job < job_count; ++job) execute_job(job);
    } else {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(workers)
        for (int64_t job = 0; job < static_cast<int64_t>(job_count); ++job) {
            execute_job(static_cast<std::size_t>(job));
        }
#endif
    }

    // Serial write phase in grid order keeps output independent of timing.
    GridReport report;
    const std::filesystem::path root(config.output);
    for (std::size_t problem_index = 0; problem_index < problems.size();
         ++problem_index) {
        const auto& problem_config = config.problems[problem_index];
        const Problem& problem = problems[problem_index].problem;
        for (std::size_t algorithm_index = 0; algorithm_index < algorithm_count;
             ++algorithm_index) {
            const auto& spec = config.algorithms[algorithm_index];
            const std::string& suite = spec.name;
            reset_cell(root, suite, problem.problem_id(), problem.problem_name(),
                       problem.dimension(), problem_config.instance_id);

            ExperimentMeta meta;
            meta.suite = suite;
            meta.algorithm = spec.name;
            meta.parameters = spec.parameters;
            meta.problem_id = problem.problem_id();
            meta.problem_name = problem.problem_name();
            meta.problem_key = problem.problem_key();
            meta.dimension = problem.dimension();
            meta.instance = problem_config.instance_id;
            meta.instance_path = problem_config.instance_path;
            meta.cost = problems[problem_index].cost_string;
            meta.budget = config.budget;

            const std::size_t cell =
                problem_index * algorithm_count + algorithm_index;
            for (std::size_t run = 0; run < runs; ++run) {
                const std::size_t job = cell * runs + run;
                if (!errors[job].empty()) {
                    report.failures.push_back(
                        describe_cell(config, problem_index, algorithm_index,
                                      static_cast<int64_t>(run)) +
                        ": " + errors[job]);
                    continue;
                }
                const RunTrace& trace = traces[job];
                write_trace(trace, root, suite);
                meta.runs.push_back(
                    {trace.seed, trace.evaluations, trace.final_fitness});
                ++report.runs_completed;
            }
            write_meta(meta, root);
            ++report.cells_written;
        }
    }
    return report;
}

}  // namespace submark
