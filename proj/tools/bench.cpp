#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "submark/harness.hpp"
#include "submark/parsers.hpp"
#include "submark/problem.hpp"
#include "submark/rng.hpp"

namespace {

using submark::BitString;
using submark::RngStream;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

submark::DirectedGraph make_random_arcs(int nodes, int arc_count, uint64_t seed) {
    RngStream rng(seed);
    std::set<std::pair<int, int>> seen;
    std::vector<submark::DirectedGraph::Arc> arcs;
    while (std::ssize(arcs) < arc_count) {
        const int from = static_cast<int>(rng.next_below(nodes));
        const int to = static_cast<int>(rng.next_below(nodes));
        if (from == to || !seen.emplace(from, to).second) continue;
        arcs.push_back({from, to, 1.0 + rng.next_double(), 0.0});
    }
    return submark::make_directed_graph(nodes, std::move(arcs));
}

void write_random_edge_list(const std::filesystem::path& path, int nodes,
                            int edge_count, uint64_t seed) {
    RngStream rng(seed);
    std::set<std::pair<int, int>> seen;
    std::vector<submark::UndirectedGraph::Edge> edges;
    while (std::ssize(edges) < edge_count) {
        const int u = static_cast<int>(rng.next_below(nodes));
        const int v = static_cast<int>(rng.next_below(nodes));
        if (u == v) continue;
        const auto key = std::minmax(u, v);
        if (!seen.insert(key).second) continue;
        edges.push_back({key.first, key.second, 1.0});
    }
    const auto graph = submark::make_undirected_graph(nodes, std::move(edges));
    std::ofstream out(path);
    submark::write_edge_list(graph, out, false);
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// Byte comparison of two dataset trees (relative layout and contents).
bool trees_identical(const std::filesystem::path& a,
                     const std::filesystem::path& b) {
    std::set<std::filesystem::path> relative;
    for (const auto& entry : std::filesystem::recursive_directory_iterator(a)) {
        if (entry.is_regular_file()) {
            relative.insert(std::filesystem::relative(entry.path(), a));
        }
    }
    std::size_t b_count = 0;
    for (const auto& entry : std::filesystem::recursive_directory_iterator(b)) {
        if (entry.is_regular_file()) ++b_count;
    }
    if (b_count != relative.size()) return false;
    for (const auto& rel : relative) {
        if (read_file(a / rel) != read_file(b / rel)) return false;
    }
    return true;
}

void print_row(const char* kernel, double serial, double parallel,
               bool identical) {
    std::printf("%-34s %9.3fs %9.3fs %7.2fx   %s\n", kernel, serial, parallel,
                serial / parallel, identical ? "yes" : "NO");
}

}  // namespace

int main() {
#ifdef _OPENMP
    const int threads = omp_get_max_threads();
#else
    const int threads = 1;
#endif
    std::printf("threads available: %d\n\n", threads);
    std::printf("%-34s %10s %10s %8s   %s\n", "kernel", "serial", "parallel",
                "speedup", "identical");

    bool all_identical = true;

    // Kernel 1: Monte Carlo influence estimation over one evaluation.
    {
        const auto graph = make_random_arcs(300, 1500, 7);
        RngStream rng(11);
        BitString seeds(300);
        for (int i = 0; i < 30; ++i) {
            seeds.set(static_cast<std::size_t>(rng.next_below(300)), true);
        }
        const int simulations = 40000;

        auto start = Clock::now();
        const double serial_value =
            submark::monte_carlo_influence(graph, seeds, simulations, 99, false);
        const double serial_time = seconds_since(start);

        start = Clock::now();
        const double parallel_value =
            submark::monte_carlo_influence(graph, seeds, simulations, 99, true);
        const double parallel_time = seconds_since(start);

        const bool identical = serial_value == parallel_value;
        all_identical = all_identical && identical;
        print_row("influence-mc 300n/1500a/40k sims", serial_time, parallel_time,
                  identical);
    }

    // Kernel 2: full benchmark grid, one worker vs all cores.
    {
        const auto base =
            std::filesystem::temp_directory_path() / "submark-bench";
        std::filesystem::remove_all(base);
        std::filesystem::create_directories(base);
        const auto instance = base / "grid.el";
        write_random_edge_list(instance, 150, 600, 21);

        submark::RunConfig config;
        config.problems.push_back(
            {"max-coverage", instance.string(), "uniform:budget=8"});
        config.algorithms = {{"1+1-ea", {}}, {"rls", {}}, {"ghc", {}}};
        config.runs = 8;
        config.budget = 4000;
        config.seed = 5;
        const auto problems = submark::build_problems(config);

        config.workers = 1;
        config.output = (base / "serial").string();
        auto start = Clock::now();
        submark::execute_grid(config, problems);
        const double serial_time = seconds_since(start);

        config.workers = threads;
        config.output = (base / "parallel").string();
        start = Clock::now();
        submark::execute_grid(config, problems);
        const double parallel_time = seconds_since(start);

        const bool identical = trees_identical(base / "serial", base / "parallel");
        all_identical = all_identical && identical;
        print_row("run-grid 3 algs x 8 runs x 4k", serial_time, parallel_time,
                  identical);
        std::filesystem::remove_all(base);
    }

    if (!all_identical) {
        std::fprintf(stderr, "parallel output diverged from the serial reference\n");
        return 1;
    }
    return 0;
}
