// Acceptance gate: ten end-to-end criteria, one PASS/FAIL line each.
// Exits nonzero when any criterion fails.

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "submark/algorithms.hpp"
#include "submark/analysis.hpp"
#include "submark/exact_oracles.hpp"
#include "submark/harness.hpp"
#include "submark/operators.hpp"
#include "submark/parsers.hpp"
#include "submark/problem.hpp"
#include "submark/rng.hpp"
#include "submark/run_logger.hpp"

using namespace submark;
namespace fs = std::filesystem;

namespace {

struct CriterionResult {
    bool ok = false;
    std::string detail;
};

// ---------------------------------------------------------------- helpers

UndirectedGraph random_graph(int n, double edge_prob, RngStream& rng,
                             bool weighted = false) {
    std::vector<UndirectedGraph::Edge> edges;
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            if (rng.next_double() < edge_prob) {
                const double w = weighted ? 0.5 + rng.next_double() : 1.0;
                edges.push_back({u, v, w});
            }
        }
    }
    return make_undirected_graph(n, std::move(edges));
}

DirectedGraph random_digraph(int n, int max_arcs, RngStream& rng) {
    std::vector<DirectedGraph::Arc> arcs;
    std::vector<std::pair<int, int>> pairs;
    for (int u = 0; u < n; ++u) {
        for (int v = 0; v < n; ++v) {
            if (u != v) pairs.emplace_back(u, v);
        }
    }
    // partial shuffle picks distinct ordered pairs
    for (std::size_t i = 0; i < pairs.size() && std::ssize(arcs) < max_arcs; ++i) {
        const std::size_t j = i + std::size_t(rng.next_below(uint64_t(pairs.size() - i)));
        std::swap(pairs[i], pairs[j]);
        if (rng.next_double() < 0.55) {
            arcs.push_back({pairs[i].first, pairs[i].second,
                            0.25 + rng.next_double(), 0.0});
        }
    }
    return make_directed_graph(n, std::move(arcs));
}

CostModel uniform_cost(int n, double budget) {
    return CostModel::deterministic(CostKind::Uniform, std::vector<double>(n, 1.0),
                                    budget);
}

double best_so_far(const RunTrace& trace, int64_t budget) {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& record : trace.records) {
        if (record.evaluation > budget) break;
        best = record.fitness;
    }
    return best;
}

// one-sided Mann-Whitney rank test: z-score for "a tends to exceed b",
// normal approximation with tie correction and continuity correction
double rank_test_z(const std::vector<double>& a, const std::vector<double>& b) {
    struct Tagged {
        double value;
        bool from_a;
    };
    std::vector<Tagged> all;
    for (double v : a) all.push_back({v, true});
    for (double v : b) all.push_back({v, false});
    std::sort(all.begin(), all.end(),
              [](const Tagged& x, const Tagged& y) { return x.value < y.value; });

    const std::size_t total = all.size();
    std::vector<double> rank(total);
    double tie_term = 0.0;
    for (std::size_t i = 0; i < total;) {
        std::size_t j = i;
        while (j < total && all[j].value == all[i].value) ++j;
        const double shared = (double(i + 1) + double(j)) / 2.0;
        for (std::size_t k = i; k < j; ++k) rank[k] = shared;
        const double ties = double(j - i);
        tie_term += ties * ties * ties - ties;
        i = j;
    }
    double rank_sum_a = 0.0;
    for (std::size_t i = 0; i < total; ++i) {
        if (all[i].from_a) rank_sum_a += rank[i];
    }
    const double na = double(a.size());
    const double nb = double(b.size());
    const double u = rank_sum_a - na * (na + 1.0) / 2.0;
    const double mean = na * nb / 2.0;
    const double n = na + nb;
    const double variance =
        na * nb / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)));
    if (variance <= 0.0) return 0.0;
    return (u - mean - 0.5) / std::sqrt(variance);
}

char scratch_template[] = "/tmp/submark-acceptance-XXXXXX";

fs::path scratch_root() {
    static fs::path root = [] {
        char buffer[sizeof scratch_template];
        std::copy(std::begin(scratch_template), std::end(scratch_template), buffer);
        if (!mkdtemp(buffer)) throw std::runtime_error("cannot create scratch dir");
        return fs::path(buffer);
    }();
    return root;
}

std::string slurp(const fs::path& file) {
    std::ifstream in(file, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

std::map<std::string, std::string> tree_snapshot(const fs::path& root) {
    std::map<std::string, std::string> snapshot;
    for (const auto& entry : fs::recursive_directory_iterator(root)) {
        if (entry.is_regular_file()) {
            snapshot[fs::relative(entry.path(), root).string()] = slurp(entry.path());
        }
    }
    return snapshot;
}

std::string format_count(const char* what, int64_t good, int64_t total) {
    char buffer[128];
    std::snprintf(buffer, sizeof buffer, "%s %lld/%lld", what,
                  static_cast<long long>(good), static_cast<long long>(total));
    return buffer;
}

// -------------------------------------------------- criterion 1: oracles

CriterionResult criterion_oracle_equivalence() {
    RngStream rng(101);
    const int instances_per_kind = 50;
    int64_t bounded = 0;
    int64_t bound_total = 0;
    int64_t rls_hits = 0;
    int64_t rls_total = 0;

    auto check_bound = [&](const Problem& problem, double optimum) {
        for (const auto& name : algorithm_names()) {
            auto trace = run_algorithm({name, {}}, problem, 200,
                                       substream_seed(rng.next_u64(), 0));
            ++bound_total;
            if (trace.final_fitness <= optimum + 1e-9) ++bounded;
        }
    };
    auto rls_campaign = [&](const Problem& problem, double optimum) {
        const int64_t budget = 50 * (int64_t(1) << problem.dimension());
        for (int run = 0; run < 30; ++run) {
            auto trace = run_algorithm({"rls", {}}, problem, budget,
                                       derive_run_seed(424242, "rls",
                                                       problem.problem_key(),
                                                       1, run));
            ++rls_total;
            if (trace.final_fitness >= optimum - 1e-9) ++rls_hits;
        }
    };

    for (int i = 0; i < instances_per_kind; ++i) {
        // coverage with a uniform mid-size budget; tiny budgets litter the
        // landscape with strict local optima no single-bit searcher can leave
        {
            const int n = 4 + int(rng.next_below(9));
            auto problem = Problem::max_coverage(random_graph(n, 0.35, rng),
                                                 uniform_cost(n, (n + 1) / 2));
            const double optimum = brute_force_optimum(problem).fitness;
            check_bound(problem, optimum);
            rls_campaign(problem, optimum);
        }
        // unit-weight max-cut; plateaus keep tie-accepting local search mobile
        {
            const int n = 4 + int(rng.next_below(9));
            auto problem = Problem::max_cut(random_graph(n, 0.5, rng));
            const double optimum = brute_force_optimum(problem).fitness;
            check_bound(problem, optimum);
            rls_campaign(problem, optimum);
        }
        // influence with the exact expectation (keeps runs comparable to the
        // enumerated optimum)
        {
            const int n = 4 + int(rng.next_below(7));
            auto problem = Problem::max_influence(
                random_digraph(n, 12, rng),
                uniform_cost(n, 1.0 + double(rng.next_below(uint64_t(n)))), 1, true);
            check_bound(problem, brute_force_optimum(problem).fitness);
        }
        // packing while traveling
        {
            const int m = 2 + int(rng.next_below(11));
            TTPInstance t;
            t.city_count = 1 + int(rng.next_below(4));
            for (int c = 0; c < t.city_count; ++c) {
                t.leg_distance.push_back(1.0 + rng.next_double() * 9.0);
            }
            std::vector<int> cities;
            for (int k = 0; k < m; ++k) {
                cities.push_back(int(rng.next_below(uint64_t(t.city_count))));
            }
            std::sort(cities.begin(), cities.end());
            double total_weight = 0.0;
            for (int k = 0; k < m; ++k) {
                const double w = 1.0 + rng.next_double() * 4.0;
                t.items.push_back({cities[k], 1.0 + rng.next_double() * 19.0, w});
                total_weight += w;
            }
            int cursor = 0;
            for (int c = 0; c < t.city_count; ++c) {
                const int first = cursor;
                while (cursor < m && t.items[cursor].city == c) ++cursor;
                t.city_items.emplace_back(first, cursor);
            }
            t.min_speed = 0.5 + rng.next_double() * 0.5;
            t.max_speed = t.min_speed + 1.0 + rng.next_double();
            t.capacity = std::max(1.0, total_weight * (0.3 + rng.next_double() * 0.4));
            t.renting_ratio = 0.5 + rng.next_double() * 1.5;
            auto problem = Problem::pwt(std::move(t));
            check_bound(problem, brute_force_optimum(problem).fitness);
        }
    }

    const double hit_rate = double(rls_hits) / double(rls_total);
    char buffer[160];
    std::snprintf(buffer, sizeof buffer,
                  "bounded %lld/%lld, rls optimum rate %.3f over %lld runs",
                  static_cast<long long>(bounded),
                  static_cast<long long>(bound_total), hit_rate,
                  static_cast<long long>(rls_total));
    return {bounded == bound_total && hit_rate >= 0.90, buffer};
}

// ---------------------------------------- criterion 2: submodularity suite

CriterionResult criterion_submodularity() {
    RngStream rng(202);
    int passed = 0;
    const int graphs = 100;
    for (int i = 0; i < graphs; ++i) {
        const int n = 3 + int(rng.next_below(6));  // 3..8
        auto undirected = random_graph(n, 0.45, rng, true);
        bool ok = is_submodular(coverage_table(undirected), n, 1e-9) &&
                  is_monotone(coverage_table(undirected), n, 1e-9) &&
                  is_submodular(cut_table(undirected), n, 1e-9);
        auto directed = random_digraph(n, 12, rng);
        auto influence = exact_influence_table(directed);
        ok = ok && is_submodular(influence, n, 1e-9) && is_monotone(influence, n, 1e-9);
        if (ok) ++passed;
    }
    return {passed == graphs, format_count("graphs", passed, graphs)};
}

// ----------------------------------------------- criterion 3: surrogates

CriterionResult criterion_surrogates() {
    // hand values: unit costs, |x| known
    auto chebyshev = CostModel::chance(CostKind::Chebyshev,
                                       std::vector<double>(4, 1.0), 10, 0.5, 0.1);
    BitString three(4);
    three.set(0, true);
    three.set(1, true);
    three.set(3, true);
    const double cheb = chebyshev.cost(three);
    const bool hand_cheb = std::abs(cheb - 4.5) < 1e-9;

    auto chernoff = CostModel::chance(CostKind::Chernoff,
                                      std::vector<double>(3, 1.0), 10, 1.0, 0.1);
    BitString two(3);
    two.set(0, true);
    two.set(2, true);
    const double expected = 2.0 + std::sqrt(std::log(10.0) * 4.0);
    const double chern = chernoff.cost(two);
    const bool hand_chern =
        std::abs(chern - expected) < 1e-9 && std::abs(chern - 5.03486) < 1e-5;

    RngStream rng(303);
    int collapsed = 0;
    const int inputs = 10000;
    for (int i = 0; i < inputs; ++i) {
        const int n = 1 + int(rng.next_below(24));
        std::vector<double> costs;
        for (int k = 0; k < n; ++k) costs.push_back(rng.next_double() * 5.0);
        const double alpha = 0.05 + rng.next_double() * 0.45;
        auto cheb0 = CostModel::chance(CostKind::Chebyshev, costs, 100, 0.0, alpha);
        auto chern0 = CostModel::chance(CostKind::Chernoff, costs, 100, 0.0, alpha);
        auto exact = CostModel::deterministic(CostKind::Explicit, costs, 100);
        auto x = BitString::random(std::size_t(n), rng);
        if (cheb0.cost(x) == exact.cost(x) && chern0.cost(x) == exact.cost(x)) {
            ++collapsed;
        }
    }
    char buffer[160];
    std::snprintf(buffer, sizeof buffer,
                  "chebyshev %.10f, chernoff %.10f, collapse %d/%d", cheb, chern,
                  collapsed, inputs);
    return {hand_cheb && hand_chern && collapsed == inputs, buffer};
}

// --------------------------------------- criterion 4: influence estimator

CriterionResult criterion_influence_estimator() {
    RngStream rng(404);
    const int graphs = 20;
    const int repetitions = 30;
    const int simulations = 1000;
    int graphs_ok = 0;
    int worst_good = repetitions;

    for (int g = 0; g < graphs; ++g) {
        const int n = 4 + int(rng.next_below(6));
        auto graph = random_digraph(n, 12, rng);
        BitString seeds{std::size_t(n)};
        for (int v = 0; v < n; ++v) {
            if (rng.next_double() < 0.4) seeds.set(std::size_t(v), true);
        }
        if (seeds.ones() == 0) seeds.set(0, true);

        // exact first and second moments of |IC(seeds)| by enumerating the
        // live-arc subsets, independent of the library's expectation oracle
        const int arc_count = int(graph.arcs.size());
        double mean = 0.0;
        double second = 0.0;
        for (uint64_t live = 0; live < (uint64_t(1) << arc_count); ++live) {
            double prob = 1.0;
            for (int a = 0; a < arc_count; ++a) {
                const double p = graph.arcs[std::size_t(a)].probability;
                prob *= ((live >> a) & 1u) ? p : 1.0 - p;
            }
            if (prob == 0.0) continue;
            // BFS over live arcs
            std::vector<char> active(std::size_t(n), 0);
            std::vector<int> queue;
            for (int v = 0; v < n; ++v) {
                if (seeds.test(std::size_t(v))) {
                    active[std::size_t(v)] = 1;
                    queue.push_back(v);
                }
            }
            for (std::size_t head = 0; head < queue.size(); ++head) {
                const int u = queue[head];
                for (int arc_index : graph.out_arcs[std::size_t(u)]) {
                    if (!((live >> arc_index) & 1u)) continue;
                    const int to = graph.arcs[std::size_t(arc_index)].to;
                    if (!active[std::size_t(to)]) {
                        active[std::size_t(to)] = 1;
                        queue.push_back(to);
                    }
                }
            }
            const double reach = double(queue.size());
            mean += prob * reach;
            second += prob * reach * reach;
        }
        const double exact = exact_influence_expectation(graph, seeds);
        if (std::abs(exact - mean) > 1e-9) {
            return {false, "library expectation disagrees with the enumeration"};
        }
        const double variance = std::max(0.0, second - mean * mean);
        const double standard_error = std::sqrt(variance / double(simulations));

        int good = 0;
        for (int rep = 0; rep < repetitions; ++rep) {
            const double estimate = monte_carlo_influence(
                graph, seeds, simulations, substream_seed(505 + g, uint64_t(rep)),
                true);
            if (std::abs(estimate - exact) <= 3.0 * standard_error + 1e-12) ++good;
        }
        worst_good = std::min(worst_good, good);
        if (good >= 28) ++graphs_ok;
    }
    char buffer[160];
    std::snprintf(buffer, sizeof buffer, "graphs %d/%d within band, worst %d/%d reps",
                  graphs_ok, graphs, worst_good, repetitions);
    return {graphs_ok == graphs, buffer};
}

// ------------------------------------------------------- criterion 5: pwt

CriterionResult criterion_pwt() {
    // hand examples on the one-city instance
    TTPInstance one;
    one.city_count = 1;
    one.leg_distance = {5.0};
    one.items = {{0, 10.0, 3.0}};
    one.city_items = {{0, 1}};
    one.min_speed = 1.0;
    one.max_speed = 2.0;
    one.capacity = 3.0;
    one.renting_ratio = 1.0;
    auto single = Problem::pwt(one);
    BitString packed(1);
    packed.set(0, true);
    const bool hand_a = single.evaluate_deterministic(packed).fitness == 5.0;
    const bool hand_b = single.evaluate_deterministic(BitString(1)).fitness == -2.5;

    TTPInstance twin;
    twin.city_count = 1;
    twin.leg_distance = {5.0};
    twin.items = {{0, 1.0, 2.0}, {0, 1.0, 2.0}};
    twin.city_items = {{0, 2}};
    twin.min_speed = 1.0;
    twin.max_speed = 2.0;
    twin.capacity = 3.0;
    twin.renting_ratio = 1.0;
    auto pair = Problem::pwt(twin);
    BitString both(2);
    both.set(0, true);
    both.set(1, true);
    const bool hand_c = pair.evaluate_deterministic(both).fitness == -6.0;

    // feasible points strictly dominate infeasible ones on random instances
    RngStream rng(505);
    int ordered = 0;
    const int instances = 50;
    for (int i = 0; i < instances; ++i) {
        const int m = 2 + int(rng.next_below(11));
        TTPInstance t;
        t.city_count = 1 + int(rng.next_below(3));
        for (int c = 0; c < t.city_count; ++c) {
            t.leg_distance.push_back(1.0 + rng.next_double() * 9.0);
        }
        std::vector<int> cities;
        for (int k = 0; k < m; ++k) {
            cities.push_back(int(rng.next_below(uint64_t(t.city_count))));
        }
        std::sort(cities.begin(), cities.end());
        double total_weight = 0.0;
        for (int k = 0; k < m; ++k) {
            const double w = 1.0 + rng.next_double() * 4.0;
            t.items.push_back({cities[k], 1.0 + rng.next_double() * 9.0, w});
            total_weight += w;
        }
        int cursor = 0;
        for (int c = 0; c < t.city_count; ++c) {
            const int first = cursor;
            while (cursor < m && t.items[cursor].city == c) ++cursor;
            t.city_items.emplace_back(first, cursor);
        }
        t.min_speed = 0.5 + rng.next_double() * 0.5;
        t.max_speed = t.min_speed + 1.0 + rng.next_double();
        // roughly half the packings end up infeasible
        t.capacity = std::max(1.5, total_weight * 0.45);
        t.renting_ratio = 0.5 + rng.next_double() * 1.5;
        auto problem = Problem::pwt(std::move(t));

        double worst_feasible = std::numeric_limits<double>::infinity();
        double best_infeasible = -std::numeric_limits<double>::infinity();
        bool saw_infeasible = false;
        for (uint64_t mask = 0; mask < (uint64_t(1) << m); ++mask) {
            auto eval = problem.evaluate_deterministic(
                BitString::from_mask(mask, std::size_t(m)));
            if (eval.feasible) {
                worst_feasible = std::min(worst_feasible, eval.fitness);
            } else {
                saw_infeasible = true;
                best_infeasible = std::max(best_infeasible, eval.fitness);
            }
        }
        if (!saw_infeasible || worst_feasible > best_infeasible) ++ordered;
    }
    char buffer[160];
    std::snprintf(buffer, sizeof buffer,
                  "hand values %s %s %s, ordering %d/%d instances",
                  hand_a ? "5" : "bad", hand_b ? "-2.5" : "bad",
                  hand_c ? "-6" : "bad", ordered, instances);
    return {hand_a && hand_b && hand_c && ordered == instances, buffer};
}

// ------------------------------------- criteria 6 and 7 share this campaign

struct ReproductionRuns {
    std::vector<RunTrace> rs;      // budget 10^4
    std::vector<RunTrace> rls;     // budget 2000
    std::vector<RunTrace> ghc;     // budget 10^5
    std::vector<RunTrace> ea;      // budget 10^5
};

const ReproductionRuns& reproduction_runs() {
    static ReproductionRuns runs = [] {
        RngStream rng(2020);
        std::vector<UndirectedGraph::Edge> edges;
        std::vector<char> used(200 * 200, 0);
        while (std::ssize(edges) < 600) {
            const int u = int(rng.next_below(200));
            const int v = int(rng.next_below(200));
            if (u == v) continue;
            const int key = std::min(u, v) * 200 + std::max(u, v);
            if (used[std::size_t(key)]) continue;
            used[std::size_t(key)] = 1;
            edges.push_back({std::min(u, v), std::max(u, v), 1.0});
        }
        auto problem = Problem::max_coverage(
            make_undirected_graph(200, std::move(edges)), uniform_cost(200, 10.0));

        ReproductionRuns out;
        auto campaign = [&](const char* name, int64_t budget) {
            std::vector<RunTrace> traces;
            for (int run = 0; run < 30; ++run) {
                traces.push_back(run_algorithm(
                    {name, {}}, problem, budget,
                    derive_run_seed(606060, name, "max-coverage", 1, run)));
            }
            return traces;
        };
        out.rs = campaign("rs", 10000);
        out.rls = campaign("rls", 2000);
        out.ghc = campaign("ghc", 100000);
        out.ea = campaign("1+1-ea", 100000);
        return out;
    }();
    return runs;
}

CriterionResult criterion_feasibility_reproduction() {
    const auto& runs = reproduction_runs();
    int rs_feasible = 0;
    for (const auto& trace : runs.rs) {
        // any feasible point would lift the best-so-far to >= 0
        if (trace.final_fitness >= 0.0) ++rs_feasible;
    }
    int ea_early = 0, rls_early = 0, ghc_early = 0;
    for (const auto& trace : runs.ea) {
        if (best_so_far(trace, 1000) >= 1.0) ++ea_early;
    }
    for (const auto& trace : runs.rls) {
        if (best_so_far(trace, 1000) >= 1.0) ++rls_early;
    }
    for (const auto& trace : runs.ghc) {
        if (best_so_far(trace, 1000) >= 1.0) ++ghc_early;
    }
    char buffer[200];
    std::snprintf(buffer, sizeof buffer,
                  "rs feasible runs %d/30, early f'>=1: 1+1-ea %d/30, rls %d/30, "
                  "ghc %d/30",
                  rs_feasible, ea_early, rls_early, ghc_early);
    return {rs_feasible == 0 && ea_early == 30 && rls_early == 30 && ghc_early == 30,
            buffer};
}

CriterionResult criterion_quality_reproduction() {
    const auto& runs = reproduction_runs();
    std::vector<double> rs_final, ghc_at_2000, ghc_final, ea_final;
    for (const auto& trace : runs.rs) rs_final.push_back(trace.final_fitness);
    for (const auto& trace : runs.ghc) {
        ghc_at_2000.push_back(best_so_far(trace, 2000));
        ghc_final.push_back(trace.final_fitness);
    }
    for (const auto& trace : runs.ea) ea_final.push_back(trace.final_fitness);

    auto mean = [](const std::vector<double>& values) {
        return std::accumulate(values.begin(), values.end(), 0.0) /
               double(values.size());
    };
    const double mean_ghc_2000 = mean(ghc_at_2000);
    const double mean_rs = mean(rs_final);  // best-so-far peaks at the final
    const double mean_ea = mean(ea_final);
    const double mean_ghc = mean(ghc_final);

    // one-sided rank tests at alpha = 0.05 (z > 1.645)
    const double z_ghc_vs_rs = rank_test_z(ghc_at_2000, rs_final);
    const double z_ea_vs_ghc = rank_test_z(ea_final, ghc_final);

    const bool ok = mean_ghc_2000 >= mean_rs && mean_ea >= mean_ghc &&
                    z_ghc_vs_rs > 1.645 && z_ea_vs_ghc > 1.645;
    char buffer[240];
    std::snprintf(buffer, sizeof buffer,
                  "ghc@2000 %.2f vs rs %.2f (z %.1f), 1+1-ea final %.2f vs ghc "
                  "final %.2f (z %.2f)",
                  mean_ghc_2000, mean_rs, z_ghc_vs_rs, mean_ea, mean_ghc,
                  z_ea_vs_ghc);
    return {ok, buffer};
}

// ------------------------------------------------ criterion 8: analysis

CriterionResult criterion_analysis() {
    // ERT hand example: hits at 10 and 20, one miss with budget 100
    std::vector<LoadedRun> runs(3);
    runs[0].records = {{1, 0.0}, {10, 5.0}};
    runs[1].records = {{1, 0.0}, {20, 6.0}};
    runs[2].records = {{1, 0.0}};
    for (auto& run : runs) {
        run.evaluations = 100;
        run.final_fitness = run.records.back().fitness;
    }
    const bool ert_ok = compute_ert(runs, 5.0, 100) == 65.0;

    // glicko-2 dominance on a synthetic three-algorithm table
    Dataset synthetic;
    auto add_cell = [&](const std::string& name, double level) {
        LoadedCell cell;
        cell.meta.suite = name;
        cell.meta.algorithm = name;
        cell.meta.problem_id = 1;
        cell.meta.problem_name = "MaxCoverage";
        cell.meta.problem_key = "max-coverage";
        cell.meta.dimension = 20;
        cell.meta.instance = 1;
        cell.meta.instance_path = "synthetic";
        cell.meta.cost = "uniform:budget=10";
        cell.meta.budget = 100;
        for (int r = 0; r < 5; ++r) {
            LoadedRun run;
            run.seed = uint64_t(r);
            run.records = {{1, level + 0.1 * r}};
            run.evaluations = 100;
            run.final_fitness = run.records.back().fitness;
            cell.meta.runs.push_back({run.seed, 100, run.final_fitness});
            cell.runs.push_back(std::move(run));
        }
        synthetic.cells.push_back(std::move(cell));
    };
    add_cell("strong", 30.0);
    add_cell("middle", 20.0);
    add_cell("weak", 10.0);
    auto groups = group_dataset(synthetic);
    auto ranked = glicko2_rank(groups[0], 25, 1);
    const bool glicko_ok = ranked.size() == 3 && ranked[0].algorithm == "strong" &&
                           ranked[1].algorithm == "middle" &&
                           ranked[2].algorithm == "weak" &&
                           ranked[0].rating.rating > ranked[1].rating.rating &&
                           ranked[1].rating.rating > ranked[2].rating.rating;

    // win-fraction hand example: 3 wins in 5 index-paired runs
    Dataset duel;
    auto add_duel = [&](const std::string& name, std::vector<double> finals) {
        LoadedCell cell;
        cell.meta.suite = name;
        cell.meta.algorithm = name;
        cell.meta.problem_id = 1;
        cell.meta.problem_name = "MaxCoverage";
        cell.meta.problem_key = "max-coverage";
        cell.meta.dimension = 20;
        cell.meta.instance = 1;
        cell.meta.instance_path = "synthetic";
        cell.meta.cost = "uniform:budget=10";
        cell.meta.budget = 100;
        for (std::size_t r = 0; r < finals.size(); ++r) {
            LoadedRun run;
            run.seed = uint64_t(r);
            run.records = {{1, finals[r]}};
            run.evaluations = 100;
            run.final_fitness = finals[r];
            cell.meta.runs.push_back({run.seed, 100, run.final_fitness});
            cell.runs.push_back(std::move(run));
        }
        duel.cells.push_back(std::move(cell));
    };
    add_duel("adam", {3.0, 5.0, 2.0, 8.0, 1.0});
    add_duel("beth", {4.0, 4.0, 6.0, 7.0, 0.0});
    auto matrix = pairwise_win_fraction(group_dataset(duel)[0], false);
    const bool winfrac_ok = matrix.fraction[0][1] == 0.6 &&
                            matrix.fraction[1][0] == 0.4 &&
                            matrix.fraction[0][0] == 0.5;

    // ECDF monotonicity over a generated dataset (reuses the smoke grid)
    const fs::path grid_dir = scratch_root() / "analysis-grid";
    RunConfig config;
    config.problems.push_back({"max-coverage", "fixtures/star4.el",
                               "uniform:budget=2", 100, false, std::nullopt, 1});
    config.problems.push_back({"max-cut", "fixtures/triangle.gset", "", 100, false,
                               std::nullopt, 1});
    config.algorithms = {{"rls", {}}, {"ghc", {}}, {"rs", {}}};
    config.runs = 5;
    config.budget = 500;
    config.seed = 77;
    config.workers = 1;
    config.output = grid_dir.string();
    execute_grid(config, build_problems(config));
    auto dataset = read_dataset(grid_dir);
    bool ecdf_ok = true;
    for (const auto& group : group_dataset(dataset)) {
        auto ecdf = compute_ecdf(group, 25, 40);
        for (const auto& curve : ecdf.fractions) {
            for (std::size_t t = 0; t < curve.size(); ++t) {
                if (curve[t] < 0.0 || curve[t] > 1.0) ecdf_ok = false;
                if (t > 0 && curve[t] < curve[t - 1]) ecdf_ok = false;
            }
        }
    }

    char buffer[160];
    std::snprintf(buffer, sizeof buffer,
                  "ert %s, ecdf %s, glicko %s, winfrac %s",
                  ert_ok ? "65" : "bad", ecdf_ok ? "monotone" : "bad",
                  glicko_ok ? "ordered" : "bad", winfrac_ok ? "0.6" : "bad");
    return {ert_ok && ecdf_ok && glicko_ok && winfrac_ok, buffer};
}

// --------------------------------------------- criterion 9: determinism

CriterionResult criterion_determinism() {
    auto make_config = [](const fs::path& out, int workers) {
        RunConfig config;
        config.problems.push_back({"max-coverage", "fixtures/star4.el",
                                   "uniform:budget=2", 100, false, std::nullopt, 1});
        config.problems.push_back({"max-influence", "fixtures/path3.snap",
                                   "uniform:budget=1", 50, false, std::nullopt, 1});
        config.algorithms = {{"1+1-ea", {}}, {"rls", {}}, {"umda", {}}};
        config.runs = 5;
        config.budget = 1000;
        config.seed = 909;
        config.workers = workers;
        config.output = out.string();
        return config;
    };
    const fs::path base = scratch_root();
    auto first = make_config(base / "det-a", 1);
    execute_grid(first, build_problems(first));
    auto snapshot = tree_snapshot(base / "det-a");

    // second execution into the same directory
    execute_grid(first, build_problems(first));
    const bool rerun_ok = tree_snapshot(base / "det-a") == snapshot;

    auto wide = make_config(base / "det-b", 8);
    execute_grid(wide, build_problems(wide));
    const bool workers_ok = tree_snapshot(base / "det-b") == snapshot;

    char buffer[160];
    std::snprintf(buffer, sizeof buffer,
                  "rerun %s, workers 1 vs 8 %s (%zu files)",
                  rerun_ok ? "identical" : "diverged",
                  workers_ok ? "identical" : "diverged", snapshot.size());
    return {rerun_ok && workers_ok, buffer};
}

// ------------------------------------------ criterion 10: budget exactness

CriterionResult criterion_budget_exactness() {
    RngStream rng(1010);
    auto graph = random_graph(25, 0.3, rng);
    auto problem = Problem::max_coverage(std::move(graph), uniform_cost(25, 6.0));
    int64_t exact = 0;
    int64_t total = 0;
    for (const auto& name : algorithm_names()) {
        for (int64_t budget : {int64_t(1), int64_t(7), int64_t(100), int64_t(1003)}) {
            auto trace = run_algorithm({name, {}}, problem, budget, 31337);
            ++total;
            if (trace.evaluations == budget) ++exact;
        }
    }
    return {exact == total, format_count("exact budgets", exact, total)};
}

// ----------------------------------------------------------------- driver

int run_all() {
    struct Entry {
        int index;
        const char* name;
        CriterionResult (*check)();
    };
    const Entry entries[] = {
        {1, "oracle equivalence", criterion_oracle_equivalence},
        {2, "submodularity and monotonicity", criterion_submodularity},
        {3, "chance-constraint surrogates", criterion_surrogates},
        {4, "influence estimator accuracy", criterion_influence_estimator},
        {5, "packing-while-traveling evaluation", criterion_pwt},
        {6, "feasibility reproduction", criterion_feasibility_reproduction},
        {7, "solution quality reproduction", criterion_quality_reproduction},
        {8, "analysis correctness", criterion_analysis},
        {9, "grid determinism", criterion_determinism},
        {10, "budget exactness", criterion_budget_exactness},
    };
    int failures = 0;
    for (const auto& entry : entries) {
        const auto start = std::chrono::steady_clock::now();
        CriterionResult result;
        try {
            result = entry.check();
        } catch (const std::exception& e) {
            result = {false, std::string("exception: ") + e.what()};
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        std::printf("%s %2d %s: %s (%.1fs)\n", result.ok ? "PASS" : "FAIL",
                    entry.index, entry.name, result.detail.c_str(), seconds);
        std::fflush(stdout);
        if (!result.ok) ++failures;
    }
    std::error_code ec;
    fs::remove_all(scratch_root(), ec);
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main() { return run_all(); }
