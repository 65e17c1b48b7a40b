#pragma once

#include <vector>

#include "submark/problem.hpp"

namespace submark {

struct OptimumResult {
    BitString point;
    double fitness = 0.0;
};

/// Enumerates all 2^n bitstrings (n <= 20) and returns the best feasible
/// penalized fitness with one maximizer (the lowest mask on ties). Influence
/// problems are scored by the exact expectation, so the result is
/// deterministic and needs node_count + arc_count <= 24.
OptimumResult brute_force_optimum(const Problem& problem);

/// Raw objective value (no penalty, no constraint) for every subset,
/// indexed by bit mask. All require n <= 20.
std::vector<double> coverage_table(const UndirectedGraph& graph);
std::vector<double> cut_table(const UndirectedGraph& graph);

/// Exact E[|IC(mask)|] for every seed mask, by enumerating live-arc subsets.
/// Requires arc_count <= 20 and node_count + arc_count <= 24.
std::vector<double> exact_influence_table(const DirectedGraph& graph);

/// Raw PWT objective for every packing mask. Requires that even the
/// all-ones packing keeps the vehicle speed positive
/// (total weight < max_speed / nu), otherwise the objective is undefined.
std::vector<double> pwt_table(const TTPInstance& instance);

/// Checks f(S u {v}) - f(S) >= f(T u {v}) - f(T) for all S <= T, v not in T.
/// `table` is indexed by mask; n <= 12 (the check walks 3^n submask pairs).
bool is_submodular(const std::vector<double>& table, int n, double tolerance = 1e-9);

/// Checks f(A) <= f(B) for all A <= B (per-element lattice dominance).
bool is_monotone(const std::vector<double>& table, int n, double tolerance = 1e-9);

}  // namespace submark
