#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include "submark/bitstring.hpp"
#include "submark/cost_model.hpp"
#include "submark/graphs.hpp"
#include "submark/rng.hpp"

namespace submark {

enum class ProblemKind {
    MaxCoverage,
    MaxInfluence,
    MaxCut,
    PackingWhileTraveling,
};

/// Result of one fitness evaluation: the penalized fitness actually used for
/// search, the constraint value, and whether the point was feasible.
struct Evaluation {
    double fitness = 0.0;
    double cost = 0.0;
    bool feasible = true;
};

struct PwtBreakdown {
    double profit = 0.0;
    double weight = 0.0;
    double travel_time = 0.0;
    double objective = 0.0;  // profit - renting_ratio * travel_time
};

/// Closed-neighborhood coverage |N[V'(x)]|: selected nodes plus all their
/// neighbors.
int coverage_value(const UndirectedGraph& graph, const BitString& x);

/// Total weight of edges crossing the partition induced by x.
double cut_value(const UndirectedGraph& graph, const BitString& x);

/// Profit, total weight and travel time of a packing. Travel time assumes
/// weight <= capacity (speed stays positive); callers handle the infeasible
/// penalty before invoking this.
PwtBreakdown pwt_breakdown(const TTPInstance& instance, const BitString& x);

/// One independent-cascade simulation; returns the number of activated
/// nodes. Every arc leaving an activated node gets at most one activation
/// attempt per simulation.
int simulate_ic(const DirectedGraph& graph, const BitString& seeds, RngStream& rng);

/// Mean activated-set size over `simulation_count` cascades. Each simulation
/// draws from its own substream of `seed`, so the result is identical
/// whether simulations run serially or in parallel.
double monte_carlo_influence(const DirectedGraph& graph, const BitString& seeds,
                             int simulation_count, uint64_t seed, bool parallel);

/// Exact E[|IC(seeds)|] by enumerating arc subsets; requires few arcs
/// (guarded at 20).
double exact_influence_expectation(const DirectedGraph& graph, const BitString& seeds);

/// An immutable problem instance: objective data plus constraint model.
/// Shared by concurrent runs; per-run mutable state lives in Evaluator.
class Problem {
public:
    static Problem max_coverage(UndirectedGraph graph, CostModel cost);
    /// `exact_expectation` replaces Monte Carlo estimation with the exact
    /// expectation (small instances only); used by oracle checks.
    static Problem max_influence(DirectedGraph graph, CostModel cost,
                                 int simulation_count, bool exact_expectation = false);
    static Problem max_cut(UndirectedGraph graph);
    /// The knapsack capacity is the feasibility budget unless overridden.
    static Problem pwt(TTPInstance instance,
                       std::optional<double> budget_override = std::nullopt);

    /// Replaces the default budget-violation penalty B - c(x) with
    /// -w * (c(x) - B)^a. No effect on max-cut (always feasible).
    Problem with_penalty(PenaltyPolicy policy) const;

    ProblemKind kind() const noexcept { return kind_; }
    /// Number of decision bits: nodes for the graph problems, items for PWT.
    int dimension() const noexcept { return dimension_; }
    int problem_id() const noexcept;            // stable ids 1..4
    const std::string& problem_name() const noexcept;  // "MaxCoverage", ...
    const std::string& problem_key() const noexcept;   // "max-coverage", ...
    /// Null for max-cut (unconstrained).
    const CostModel* cost_model() const noexcept { return cost_ ? &*cost_ : nullptr; }
    const PenaltyPolicy& penalty() const noexcept { return penalty_; }
    int simulation_count() const noexcept { return simulation_count_; }
    bool exact_expectation() const noexcept { return exact_expectation_; }

    const UndirectedGraph& undirected() const { return *undirected_; }
    const DirectedGraph& directed() const { return *directed_; }
    const TTPInstance& ttp() const { return *ttp_; }

    /// Penalized evaluation for every kind except Monte Carlo influence
    /// (exact-expectation influence works). Deterministic in x.
    Evaluation evaluate_deterministic(const BitString& x) const;

private:
    Problem() = default;

    ProblemKind kind_ = ProblemKind::MaxCoverage;
    int dimension_ = 0;
    int simulation_count_ = 0;
    bool exact_expectation_ = false;
    PenaltyPolicy penalty_;
    std::optional<CostModel> cost_;
    // shared_ptr keeps Problem cheap to copy into worker threads
    std::shared_ptr<const UndirectedGraph> undirected_;
    std::shared_ptr<const DirectedGraph> directed_;
    std::shared_ptr<const TTPInstance> ttp_;
};

/// Per-run evaluation engine. Owns the simulation randomness for Monte Carlo
/// influence: evaluation k of a run derives its simulation substreams from
/// (simulation_seed, k), independent of the algorithm's own stream.
class Evaluator {
public:
    explicit Evaluator(const Problem& problem, uint64_t simulation_seed = 0,
                       bool parallel_simulations = true);

    Evaluation evaluate(const BitString& x);

    const Problem& problem() const noexcept { return *problem_; }

private:
    const Problem* problem_;
    uint64_t simulation_seed_;
    bool parallel_;
    int64_t influence_evaluations_ = 0;
};

}  // namespace submark
