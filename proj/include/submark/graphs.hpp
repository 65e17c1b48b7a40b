#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace submark {

/// Simple undirected graph with optional edge weights. Node ids are
/// 0-based internally; parsers convert from the 1-based file conventions.
/// Invariants (enforced by make_undirected_graph): no self-loops, no
/// duplicate edges regardless of endpoint order, ids in [0, node_count).
struct UndirectedGraph {
    struct Edge {
        int u = 0;
        int v = 0;
        double weight = 1.0;
    };

    int node_count = 0;
    std::vector<Edge> edges;
    // adjacency[v] lists (neighbor, weight) pairs, both directions of an edge.
    std::vector<std::vector<std::pair<int, double>>> adjacency;

    int degree(int v) const { return static_cast<int>(adjacency[v].size()); }
};

/// Directed graph for the influence model. Each arc carries the raw file
/// weight and the activation probability weight / indegree(target), clamped
/// to 1. Invariants: no self-loops, no duplicate arcs, positive weights.
struct DirectedGraph {
    struct Arc {
        int from = 0;
        int to = 0;
        double weight = 1.0;
        double probability = 0.0;
    };

    int node_count = 0;
    std::vector<Arc> arcs;
    // out_arcs[v] holds indices into `arcs` for arcs leaving v.
    std::vector<std::vector<int>> out_arcs;
    std::vector<int> in_degree;
    std::vector<int> out_degree;
};

struct TTPItem {
    int city = 0;  // 0-based city index
    double profit = 0.0;
    double weight = 0.0;
};

/// Packing-while-traveling instance: a fixed cyclic tour visiting cities
/// 1..n in order and returning to city 1, with items placed at cities.
struct TTPInstance {
    int city_count = 0;
    // leg_distance[i] = ceil of the Euclidean distance from city i to the
    // next city on the tour; the last entry closes the cycle back to city 0.
    std::vector<double> leg_distance;
    // Items sorted by (city, file order); this is the bit-string layout.
    std::vector<TTPItem> items;
    // Half-open range [first, last) into `items` per city.
    std::vector<std::pair<int, int>> city_items;
    double min_speed = 0.0;
    double max_speed = 0.0;
    double capacity = 0.0;
    double renting_ratio = 0.0;
    std::string name;

    int item_count() const { return static_cast<int>(items.size()); }
};

/// Builds an undirected graph from an edge list, validating all invariants.
/// Throws std::invalid_argument on self-loops, duplicates or range errors.
UndirectedGraph make_undirected_graph(int node_count,
                                      std::vector<UndirectedGraph::Edge> edges);

/// Builds a directed graph and computes arc activation probabilities
/// weight/indegree(target). Probabilities above 1 are clamped; `warnings`
/// (when non-null) receives one message per clamped arc.
DirectedGraph make_directed_graph(int node_count,
                                  std::vector<DirectedGraph::Arc> arcs,
                                  std::vector<std::string>* warnings = nullptr);

}  // namespace submark
