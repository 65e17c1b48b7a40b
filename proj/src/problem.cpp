#include "submark/problem.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace submark {

namespace {

int coverage_value_impl(const UndirectedGraph& graph, const BitString& x,
                        std::vector<uint8_t>& covered) {
    covered.assign(static_cast<std::size_t>(graph.node_count), 0);
    int count = 0;
    for (int v = 0; v < graph.node_count; ++v) {
        if (!x.test(static_cast<std::size_t>(v))) continue;
        if (!covered[static_cast<std::size_t>(v)]) {
            covered[static_cast<std::size_t>(v)] = 1;
            ++count;
        }
        for (const auto& [neighbor, weight] : graph.adjacency[static_cast<std::size_t>(v)]) {
            if (!covered[static_cast<std::size_t>(neighbor)]) {
                covered[static_cast<std::size_t>(neighbor)] = 1;
                ++count;
            }
        }
    }
    return count;
}

int simulate_ic_impl(const DirectedGraph& graph, const BitString& seeds,
                     RngStream& rng, std::vector<uint8_t>& activated,
                     std::vector<int>& queue) {
    activated.assign(static_cast<std::size_t>(graph.node_count), 0);
    queue.clear();
    int count = 0;
    for (int v = 0; v < graph.node_count; ++v) {
        if (seeds.test(static_cast<std::size_t>(v))) {
            activated[static_cast<std::size_t>(v)] = 1;
            queue.push_back(v);
            ++count;
        }
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const int u = queue[head];
        for (const int arc_index : graph.out_arcs[static_cast<std::size_t>(u)]) {
            const auto& arc = graph.arcs[static_cast<std::size_t>(arc_index)];
            if (activated[static_cast<std::size_t>(arc.to)]) continue;
            if (rng.next_double() < arc.probability) {
                activated[static_cast<std::size_t>(arc.to)] = 1;
                queue.push_back(arc.to);
                ++count;
            }
        }
    }
    return count;
}

double total_distance(const TTPInstance& instance) {
    return std::accumulate(instance.leg_distance.begin(), instance.leg_distance.end(),
                           0.0);
}

void validate_ttp(const TTPInstance& instance) {
    if (instance.city_count < 1) throw std::invalid_argument("city count must be >= 1");
    if (std::ssize(instance.leg_distance) != instance.city_count) {
        throw std::invalid_argument("leg count must equal city count");
    }
    for (const double d : instance.leg_distance) {
        if (!(d > 0.0)) throw std::invalid_argument("leg distances must be positive");
    }
    if (instance.items.empty()) {
        throw std::invalid_argument("instance must contain at least one item");
    }
    for (const auto& item : instance.items) {
        if (item.city < 0 || item.city >= instance.city_count) {
            throw std::invalid_argument("item city out of range");
        }
        if (!(item.profit > 0.0)) throw std::invalid_argument("item profit must be positive");
        if (!(item.weight > 0.0)) throw std::invalid_argument("item weight must be positive");
    }
    if (!(instance.min_speed > 0.0) || !(instance.min_speed < instance.max_speed)) {
        throw std::invalid_argument("speeds must satisfy 0 < min < max");
    }
    if (!(instance.capacity > 0.0)) throw std::invalid_argument("capacity must be positive");
    if (instance.renting_ratio < 0.0) {
        throw std::invalid_argument("renting ratio must be non-negative");
    }
}

const std::string kProblemNames[] = {"MaxCoverage", "MaxInfluence", "MaxCut",
                                     "PackingWhileTraveling"};
const std::string kProblemKeys[] = {"max-coverage", "max-influence", "max-cut", "pwt"};

}  // namespace

int coverage_value(const UndirectedGraph& graph, const BitString& x) {
    std::vector<uint8_t> covered;
    return coverage_value_impl(graph, x, covered);
}

double cut_value(const UndirectedGraph& graph, const BitString& x) {
    double total = 0.0;
    for (const auto& edge : graph.edges) {
        if (x.test(static_cast<std::size_t>(edge.u)) !=
            x.test(static_cast<std::size_t>(edge.v))) {
            total += edge.weight;
        }
    }
    return total;
}

PwtBreakdown pwt_breakdown(const TTPInstance& instance, const BitString& x) {
    const double nu = (instance.max_speed - instance.min_speed) / instance.capacity;
    PwtBreakdown result;
    double carried = 0.0;
    for (int city = 0; city < instance.city_count; ++city) {
        const auto [first, last] = instance.city_items[static_cast<std::size_t>(city)];
        for (int i = first; i < last; ++i) {
            if (!x.test(static_cast<std::size_t>(i))) continue;
            const auto& item = instance.items[static_cast<std::size_t>(i)];
            result.profit += item.profit;
            carried += item.weight;
        }
        result.travel_time += instance.leg_distance[static_cast<std::size_t>(city)] /
                              (instance.max_speed - nu * carried);
    }
    result.weight = carried;
    result.objective = result.profit - instance.renting_ratio * result.travel_time;
    return result;
}

int simulate_ic(const DirectedGraph& graph, const BitString& seeds, RngStream& rng) {
    std::vector<uint8_t> activated;
    std::vector<int> queue;
    return simulate_ic_impl(graph, seeds, rng, activated, queue);
}

double monte_carlo_influence(const DirectedGraph& graph, const BitString& seeds,
                             int simulation_count, uint64_t seed, bool parallel) {
    if (simulation_count < 1) {
        throw std::invalid_argument("simulation count must be >= 1");
    }
    // Integer activation counts keep the sum associative, so the parallel
    // reduction matches the serial sum bit for bit.
    int64_t total = 0;
    const bool worth_threads =
        parallel && static_cast<int64_t>(simulation_count) *
                            std::max<int64_t>(1, std::ssize(graph.arcs)) >=
                        1 << 12;
#pragma omp parallel for reduction(+ : total) schedule(static) if (worth_threads)
    for (int i = 0; i < simulation_count; ++i) {
        RngStream rng = RngStream::substream(seed, static_cast<uint64_t>(i));
        std::vector<uint8_t> activated;
        std::vector<int> queue;
        total += simulate_ic_impl(graph, seeds, rng, activated, queue);
    }
    return static_cast<double>(total) / simulation_count;
}

double exact_influence_expectation(const DirectedGraph& graph, const BitString& seeds) {
    const int arc_count = static_cast<int>(graph.arcs.size());
    if (arc_count > 20) {
        throw std::invalid_argument("exact influence expectation limited to 20 arcs");
    }
    std::vector<uint8_t> activated;
    std::vector<int> queue;
    double expectation = 0.0;
    for (uint64_t subset = 0; subset < (uint64_t{1} << arc_count); ++subset) {
        double probability = 1.0;
        for (int a = 0; a < arc_count; ++a) {
            const double p = graph.arcs[static_cast<std::size_t>(a)].probability;
            probability *= ((subset >> a) & 1u) ? p : 1.0 - p;
            if (probability == 0.0) break;
        }
        if (probability == 0.0) continue;

        activated.assign(static_cast<std::size_t>(graph.node_count), 0);
        queue.clear();
        int count = 0;
        for (int v = 0; v < graph.node_count; ++v) {
            if (seeds.test(static_cast<std::size_t>(v))) {
                activated[static_cast<std::size_t>(v)] = 1;
                queue.push_back(v);
                ++count;
            }
        }
        for (std::size_t head = 0; head < queue.size(); ++head) {
            for (const int arc_index : graph.out_arcs[static_cast<std::size_t>(queue[head])]) {
                if (!((subset >> arc_index) & 1u)) continue;
                const int to = graph.arcs[static_cast<std::size_t>(arc_index)].to;
                if (activated[static_cast<std::size_t>(to)]) continue;
                activated[static_cast<std::size_t>(to)] = 1;
                queue.push_back(to);
                ++count;
            }
        }
        expectation += probability * count;
    }
    return expectation;
}

Problem Problem::max_coverage(UndirectedGraph graph, CostModel cost) {
    if (cost.dimension() != graph.node_count) {
        throw std::invalid_argument("cost model dimension must match node count");
    }
    Problem problem;
    problem.kind_ = ProblemKind::MaxCoverage;
    problem.dimension_ = graph.node_count;
    problem.cost_ = std::move(cost);
    problem.undirected_ = std::make_shared<const UndirectedGraph>(std::move(graph));
    return problem;
}

Problem Problem::max_influence(DirectedGraph graph, CostModel cost,
                               int simulation_count, bool exact_expectation) {
    if (cost.dimension() != graph.node_count) {
        throw std::invalid_argument("cost model dimension must match node count");
    }
    if (simulation_count < 1) {
        throw std::invalid_argument("simulation count must be >= 1");
    }
    Problem problem;
    problem.kind_ = ProblemKind::MaxInfluence;
    problem.dimension_ = graph.node_count;
    problem.simulation_count_ = simulation_count;
    problem.exact_expectation_ = exact_expectation;
    problem.cost_ = std::move(cost);
    problem.directed_ = std::make_shared<const DirectedGraph>(std::move(graph));
    return problem;
}

Problem Problem::max_cut(UndirectedGraph graph) {
    Problem problem;
    problem.kind_ = ProblemKind::MaxCut;
    problem.dimension_ = graph.node_count;
    problem.undirected_ = std::make_shared<const UndirectedGraph>(std::move(graph));
    return problem;
}

Problem Problem::pwt(TTPInstance instance, std::optional<double> budget_override) {
    validate_ttp(instance);
    const double budget = budget_override.value_or(instance.capacity);
    std::vector<double> weights;
    weights.reserve(instance.items.size());
    for (const auto& item : instance.items) weights.push_back(item.weight);

    Problem problem;
    problem.kind_ = ProblemKind::PackingWhileTraveling;
    problem.dimension_ = instance.item_count();
    problem.cost_ = CostModel::deterministic(CostKind::Explicit, std::move(weights), budget);
    problem.ttp_ = std::make_shared<const TTPInstance>(std::move(instance));
    return problem;
}

Problem Problem::with_penalty(PenaltyPolicy policy) const {
    Problem copy = *this;
    copy.penalty_ = policy;
    return copy;
}

int Problem::problem_id() const noexcept { return static_cast<int>(kind_) + 1; }

const std::string& Problem::problem_name() const noexcept {
    return kProblemNames[static_cast<int>(kind_)];
}

const std::string& Problem::problem_key() const noexcept {
    return kProblemKeys[static_cast<int>(kind_)];
}

Evaluation Problem::evaluate_deterministic(const BitString& x) const {
    if (static_cast<int>(x.size()) != dimension_) {
        throw std::invalid_argument("bit string length must equal problem dimension");
    }
    Evaluation result;
    switch (kind_) {
        case ProblemKind::MaxCoverage: {
            result.cost = cost_->cost(x);
            result.feasible = result.cost <= cost_->budget();
            result.fitness = result.feasible
                                 ? coverage_value(*undirected_, x)
                                 : penalty_(result.cost - cost_->budget());
            break;
        }
        case ProblemKind::MaxInfluence: {
            result.cost = cost_->cost(x);
            result.feasible = result.cost <= cost_->budget();
            if (!result.feasible) {
                result.fitness = penalty_(result.cost - cost_->budget());
            } else if (exact_expectation_) {
                result.fitness = exact_influence_expectation(*directed_, x);
            } else {
                throw std::logic_error(
                    "Monte Carlo influence requires an Evaluator");
            }
            break;
        }
        case ProblemKind::MaxCut: {
            result.fitness = cut_value(*undirected_, x);
            result.cost = 0.0;
            result.feasible = true;
            break;
        }
        case ProblemKind::PackingWhileTraveling: {
            result.cost = cost_->expected_cost(x);
            result.feasible = result.cost <= cost_->budget();
            if (result.feasible) {
                result.fitness = pwt_breakdown(*ttp_, x).objective;
            } else {
                const double slowest_time =
                    total_distance(*ttp_) / ttp_->min_speed;
                result.fitness = penalty_(result.cost - cost_->budget()) -
                                 ttp_->renting_ratio * slowest_time;
            }
            break;
        }
    }
    return result;
}

Evaluator::Evaluator(const Problem& problem, uint64_t simulation_seed,
                     bool parallel_simulations)
    : problem_(&problem),
      simulation_seed_(simulation_seed),
      parallel_(parallel_simulations) {}

Evaluation Evaluator::evaluate(const BitString& x) {
    const Problem& problem = *problem_;
    if (problem.kind() == ProblemKind::MaxInfluence && !problem.exact_expectation()) {
        const CostModel& model = *problem.cost_model();
        const double cost = model.cost(x);
        if (cost <= model.budget()) {
            // Evaluation k of this run draws its simulations from substream
            // k of the run's simulation seed.
            const uint64_t seed = substream_seed(
                simulation_seed_, static_cast<uint64_t>(influence_evaluations_++));
            const double fitness = monte_carlo_influence(
                problem.directed(), x, problem.simulation_count(), seed, parallel_);
            return {fitness, cost, true};
        }
        return problem.evaluate_deterministic(x);
    }
    return problem.evaluate_deterministic(x);
}

}  // namespace submark
