#pragma once

#include <optional>
#include <string>
#include <vector>

#include "submark/bitstring.hpp"

namespace submark {

enum class CostKind {
    Uniform,          // every element costs 1
    LinearDegree,     // 1 + degree(v)
    QuadraticDegree,  // (1 + degree(v))^2
    Explicit,         // per-element costs given directly
    Chebyshev,        // chance constraint, Chebyshev surrogate
    Chernoff,         // chance constraint, Chernoff surrogate
};

/// Per-element costs with a budget. For the deterministic kinds cost(x) is
/// the sum of selected element costs. For the chance-constrained kinds the
/// elements carry expected costs a(v); every element shares the same
/// half-width `delta` of its uniform cost distribution, and cost(x) is a
/// surrogate upper bound that holds with probability 1 - alpha.
class CostModel {
public:
    /// kind must be one of the deterministic kinds.
    static CostModel deterministic(CostKind kind, std::vector<double> element_costs,
                                   double budget);

    /// kind must be Chebyshev or Chernoff; requires delta >= 0 and
    /// alpha in (0, 1/2].
    static CostModel chance(CostKind kind, std::vector<double> expected_costs,
                            double budget, double delta, double alpha);

    CostKind kind() const noexcept { return kind_; }
    double budget() const noexcept { return budget_; }
    double delta() const noexcept { return delta_; }
    double alpha() const noexcept { return alpha_; }
    int dimension() const noexcept { return static_cast<int>(element_costs_.size()); }
    const std::vector<double>& element_costs() const noexcept { return element_costs_; }

    /// Sum of per-element (expected) costs of the selected elements.
    double expected_cost(const BitString& x) const;

    /// a(x) + delta * sqrt(((1 - alpha) / (3 alpha)) * |x|_1)
    double chebyshev_cost(const BitString& x) const;

    /// a(x) + delta * sqrt(ln(1 / alpha) * 2 |x|_1)
    double chernoff_cost(const BitString& x) const;

    /// The constraint value c(x) used for feasibility: expected_cost for
    /// deterministic kinds, the matching surrogate for chance kinds.
    double cost(const BitString& x) const;

    /// c(x) <= budget, compared exactly.
    bool feasible(const BitString& x) const { return cost(x) <= budget_; }

private:
    CostKind kind_ = CostKind::Uniform;
    std::vector<double> element_costs_;
    double budget_ = 0.0;
    double delta_ = 0.0;
    double alpha_ = 0.0;
};

/// Weighted-power penalty applied to the budget violation v = c(x) - B > 0
/// of an infeasible point: fitness contribution -weight * v^exponent. The
/// defaults reproduce the per-problem penalty B - c(x).
struct PenaltyPolicy {
    double weight = 1.0;
    double exponent = 1.0;

    double operator()(double violation) const;
};

/// Parsed form of a cost-model configuration string. The grammar is
///   <kind>[:key=value[,key=value...]]
/// with kinds uniform | linear-degree | quadratic-degree | chebyshev |
/// chernoff, and keys budget, delta, alpha, base. `base` names the
/// deterministic kind supplying expected costs for a chance kind
/// (default uniform). Examples:
///   "uniform"
///   "linear-degree,budget=500"            (comma form also accepted)
///   "chebyshev:delta=0.5,alpha=0.1,budget=20"
struct CostSpec {
    CostKind kind = CostKind::Uniform;
    CostKind base = CostKind::Uniform;  // chance kinds only
    std::optional<double> budget;
    double delta = 0.0;
    double alpha = 0.0;
    bool has_delta = false;
    bool has_alpha = false;
};

/// Parses the grammar above. Throws std::invalid_argument for unknown kinds
/// or keys, duplicate keys, malformed numbers, or chance kinds missing
/// delta/alpha.
CostSpec parse_cost_spec(const std::string& text);

/// Renders a spec back to its canonical string form.
std::string cost_spec_to_string(const CostSpec& spec);

/// Default budgets when a cost spec omits budget=: 10 for uniform,
/// 500 for linear-degree, 40000 for quadratic-degree; chance kinds inherit
/// the default of their base kind.
double default_budget(const CostSpec& spec);

/// Builds a concrete model from a spec and the per-element degrees of the
/// instance (node degree for undirected problems, out-degree for influence).
/// `degrees` must have one entry per element; it is ignored by uniform
/// kinds/bases. Missing budgets fall back to default_budget(spec).
CostModel build_cost_model(const CostSpec& spec, const std::vector<int>& degrees);

}  // namespace submark
