#include "submark/exact_oracles.hpp"

#include <bit>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace submark {

namespace {

void check_dimension(int n) {
    if (n > 20) throw std::invalid_argument("dimension too large for enumeration (max 20)");
}

/// reach[v] as a node mask over live arcs, by forward BFS.
uint32_t reach_mask(const DirectedGraph& graph, int start, uint64_t live_arcs,
                    std::vector<int>& queue) {
    uint32_t visited = uint32_t{1} << start;
    queue.clear();
    queue.push_back(start);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        for (const int arc_index : graph.out_arcs[static_cast<std::size_t>(queue[head])]) {
            if (!((live_arcs >> arc_index) & 1u)) continue;
            const int to = graph.arcs[static_cast<std::size_t>(arc_index)].to;
            if (visited & (uint32_t{1} << to)) continue;
            visited |= uint32_t{1} << to;
            queue.push_back(to);
        }
    }
    return visited;
}

}  // namespace

std::vector<double> coverage_table(const UndirectedGraph& graph) {
    check_dimension(graph.node_count);
    const int n = graph.node_count;
    std::vector<uint32_t> closed(static_cast<std::size_t>(n), 0);
    for (int v = 0; v < n; ++v) {
        uint32_t mask = uint32_t{1} << v;
        for (const auto& [neighbor, weight] : graph.adjacency[static_cast<std::size_t>(v)]) {
            mask |= uint32_t{1} << neighbor;
        }
        closed[static_cast<std::size_t>(v)] = mask;
    }
    const std::size_t size = std::size_t{1} << n;
    std::vector<uint32_t> covered(size, 0);
    std::vector<double> table(size, 0.0);
    for (std::size_t m = 1; m < size; ++m) {
        const std::size_t low = m & (~m + 1);
        const int v = std::countr_zero(low);
        covered[m] = covered[m ^ low] | closed[static_cast<std::size_t>(v)];
        table[m] = std::popcount(covered[m]);
    }
    return table;
}

std::vector<double> cut_table(const UndirectedGraph& graph) {
    check_dimension(graph.node_count);
    const std::size_t size = std::size_t{1} << graph.node_count;
    std::vector<double> table(size, 0.0);
    for (std::size_t m = 0; m < size; ++m) {
        double total = 0.0;
        for (const auto& edge : graph.edges) {
            const bool u_in = (m >> edge.u) & 1u;
            const bool v_in = (m >> edge.v) & 1u;
            if (u_in != v_in) total += edge.weight;
        }
        table[m] = total;
    }
    return table;
}

std::vector<double> exact_influence_table(const DirectedGraph& graph) {
    check_dimension(graph.node_count);
    const int n = graph.node_count;
    const int arc_count = static_cast<int>(graph.arcs.size());
    if (arc_count > 20 || n + arc_count > 24) {
        throw std::invalid_argument(
            "exact influence table limited to 20 arcs and node_count + arc_count <= 24");
    }
    const std::size_t size = std::size_t{1} << n;
    std::vector<double> table(size, 0.0);
    std::vector<uint32_t> reach(static_cast<std::size_t>(n), 0);
    std::vector<uint32_t> reach_union(size, 0);
    std::vector<int> queue;
    for (uint64_t live = 0; live < (uint64_t{1} << arc_count); ++live) {
        double probability = 1.0;
        for (int a = 0; a < arc_count; ++a) {
            const double p = graph.arcs[static_cast<std::size_t>(a)].probability;
            probability *= ((live >> a) & 1u) ? p : 1.0 - p;
            if (probability == 0.0) break;
        }
        if (probability == 0.0) continue;

        for (int v = 0; v < n; ++v) {
            reach[static_cast<std::size_t>(v)] = reach_mask(graph, v, live, queue);
        }
        for (std::size_t m = 1; m < size; ++m) {
            const std::size_t low = m & (~m + 1);
            const int v = std::countr_zero(low);
            reach_union[m] = reach_union[m ^ low] | reach[static_cast<std::size_t>(v)];
            table[m] += probability * std::popcount(reach_union[m]);
        }
    }
    return table;
}

std::vector<double> pwt_table(const TTPInstance& instance) {
    check_dimension(instance.item_count());
    double total_weight = 0.0;
    for (const auto& item : instance.items) total_weight += item.weight;
    const double nu = (instance.max_speed - instance.min_speed) / instance.capacity;
    if (!(instance.max_speed - nu * total_weight > 0.0)) {
        throw std::invalid_argument(
            "pwt table undefined: the all-ones packing reaches zero speed");
    }
    const std::size_t size = std::size_t{1} << instance.item_count();
    std::vector<double> table(size, 0.0);
    for (std::size_t m = 0; m < size; ++m) {
        table[m] =
            pwt_breakdown(instance, BitString::from_mask(m, instance.items.size()))
                .objective;
    }
    return table;
}

OptimumResult brute_force_optimum(const Problem& problem) {
    const int n = problem.dimension();
    check_dimension(n);
    const std::size_t size = std::size_t{1} << n;

    OptimumResult best;
    best.fitness = -std::numeric_limits<double>::infinity();
    bool found = false;

    if (problem.kind() == ProblemKind::MaxInfluence) {
        const auto table = exact_influence_table(problem.directed());
        const CostModel& model = *problem.cost_model();
        for (std::size_t m = 0; m < size; ++m) {
            const BitString x = BitString::from_mask(m, static_cast<std::size_t>(n));
            if (!model.feasible(x)) continue;
            if (!found || table[m] > best.fitness) {
                best.fitness = table[m];
                best.point = x;
                found = true;
            }
        }
    } else {
        for (std::size_t m = 0; m < size; ++m) {
            const BitString x = BitString::from_mask(m, static_cast<std::size_t>(n));
            const Evaluation eval = problem.evaluate_deterministic(x);
            if (!eval.feasible) continue;
            if (!found || eval.fitness > best.fitness) {
                best.fitness = eval.fitness;
                best.point = x;
                found = true;
            }
        }
    }
    if (!found) throw std::runtime_error("no feasible point exists");
    return best;
}

bool is_submodular(const std::vector<double>& table, int n, double tolerance) {
    if (n > 12) throw std::invalid_argument("submodularity check limited to n <= 12");
    const std::size_t size = std::size_t{1} << n;
    if (table.size() != size) throw std::invalid_argument("table size must be 2^n");
    // Walks every (S, T) with S subset of T via submask enumeration.
    for (std::size_t t = 0; t < size; ++t) {
        std::size_t s = t;
        for (;;) {
            for (int v = 0; v < n; ++v) {
                const std::size_t bit = std::size_t{1} << v;
                if (t & bit) continue;
                const double gain_small = table[s | bit] - table[s];
                const double gain_large = table[t | bit] - table[t];
                if (gain_small < gain_large - tolerance) return false;
            }
            if (s == 0) break;
            s = (s - 1) & t;
        }
    }
    return true;
}

bool is_monotone(const std::vector<double>& table, int n, double tolerance) {
    const std::size_t size = std::size_t{1} << n;
    if (table.size() != size) throw std::invalid_argument("table size must be 2^n");
    // A <= A u {v} for every A and v covers the full lattice by transitivity.
    for (std::size_t m = 0; m < size; ++m) {
        for (int v = 0; v < n; ++v) {
            const std::size_t bit = std::size_t{1} << v;
            if (m & bit) continue;
            if (table[m] > table[m | bit] + tolerance) return false;
        }
    }
    return true;
}

}  // namespace submark
