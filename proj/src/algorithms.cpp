#include "submark/algorithms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>

#include "submark/operators.hpp"

namespace submark {

namespace {

/// Counts evaluations against the budget and maintains the best-so-far
/// point plus the improvement records of the trace.
class TraceRecorder {
public:
    TraceRecorder(Evaluator& evaluator, int64_t budget, RunTrace& trace)
        : evaluator_(&evaluator), budget_(budget), trace_(&trace) {}

    bool done() const noexcept { return count_ >= budget_; }
    int64_t budget() const noexcept { return budget_; }
    int64_t evaluations() const noexcept { return count_; }

    double evaluate(const BitString& x) {
        if (done()) throw std::logic_error("evaluation budget exceeded");
        ++count_;
        const Evaluation eval = evaluator_->evaluate(x);
        if (count_ == 1 || eval.fitness > best_) {
            best_ = eval.fitness;
            best_point_ = x;
            trace_->records.push_back({count_, best_});
        }
        return eval.fitness;
    }

    void finish() {
        trace_->final_fitness = best_;
        trace_->final_point = best_point_;
        trace_->evaluations = count_;
    }

private:
    Evaluator* evaluator_;
    int64_t budget_;
    RunTrace* trace_;
    int64_t count_ = 0;
    double best_ = 0.0;
    BitString best_point_;
};

double param(const AlgorithmSpec& spec, const std::string& key, double fallback) {
    const auto it = spec.parameters.find(key);
    return it == spec.parameters.end() ? fallback : it->second;
}

constexpr double kNegativeInfinity = -std::numeric_limits<double>::infinity();

void run_one_plus_one(int64_t n, const AlgorithmSpec& spec, RngStream& rng,
                      TraceRecorder& rec) {
    const double rate = std::min(param(spec, "p", 1.0 / static_cast<double>(n)), 1.0);
    BitString parent = BitString::random(static_cast<std::size_t>(n), rng);
    double parent_fitness = rec.evaluate(parent);
    while (!rec.done()) {
        const int64_t flips = sample_binomial_gt0(n, rate, rng);
        BitString child = flip_distinct_bits(parent, flips, rng);
        const double fitness = rec.evaluate(child);
        if (fitness >= parent_fitness) {
            parent = std::move(child);
            parent_fitness = fitness;
        }
    }
}

void run_fast_ga(int64_t n, const AlgorithmSpec& spec, RngStream& rng,
                 TraceRecorder& rec) {
    const PowerLawSampler sampler(n, param(spec, "beta", 1.5));
    BitString parent = BitString::random(static_cast<std::size_t>(n), rng);
    double parent_fitness = rec.evaluate(parent);
    while (!rec.done()) {
        const int64_t flips = sampler.sample(rng);
        BitString child = flip_distinct_bits(parent, flips, rng);
        const double fitness = rec.evaluate(child);
        if (fitness >= parent_fitness) {
            parent = std::move(child);
            parent_fitness = fitness;
        }
    }
}

void run_oll_ea(int64_t n, const AlgorithmSpec& spec, RngStream& rng,
                TraceRecorder& rec) {
    const double adapt_factor = param(spec, "adapt-factor", 1.5);
    const double adapt_exponent = param(spec, "adapt-exponent", 0.25);
    double lambda = param(spec, "lambda", 10.0);

    BitString parent = BitString::random(static_cast<std::size_t>(n), rng);
    double parent_fitness = rec.evaluate(parent);
    while (!rec.done()) {
        const int64_t offspring = std::max<int64_t>(1, std::llround(lambda));
        const double rate = std::min(lambda / static_cast<double>(n), 1.0);
        const int64_t flips = sample_binomial_gt0(n, rate, rng);

        BitString best_mutant;
        double best_mutant_fitness = kNegativeInfinity;
        bool any_mutant = false;
        for (int64_t i = 0; i < offspring && !rec.done(); ++i) {
            BitString mutant = flip_distinct_bits(parent, flips, rng);
            const double fitness = rec.evaluate(mutant);
            if (!any_mutant || fitness > best_mutant_fitness) {
                any_mutant = true;
                best_mutant_fitness = fitness;
                best_mutant = std::move(mutant);
            }
        }
        if (!any_mutant) break;

        const double bias = std::min(1.0 / lambda, 1.0);
        BitString best_child;
        double best_child_fitness = kNegativeInfinity;
        bool any_child = false;
        for (int64_t i = 0; i < offspring && !rec.done(); ++i) {
            BitString child = biased_uniform_crossover(parent, best_mutant, bias, rng);
            const double fitness = rec.evaluate(child);
            if (!any_child || fitness > best_child_fitness) {
                any_child = true;
                best_child_fitness = fitness;
                best_child = std::move(child);
            }
        }
        if (!any_child) break;

        const bool improved = best_child_fitness > parent_fitness;
        if (best_child_fitness >= parent_fitness) {
            parent = std::move(best_child);
            parent_fitness = best_child_fitness;
        }
        lambda = improved
                     ? std::max(1.0, lambda / adapt_factor)
                     : std::min(static_cast<double>(n),
                                lambda * std::pow(adapt_factor, adapt_exponent));
    }
}

void run_two_rate_ea(int64_t n, const AlgorithmSpec& spec, RngStream& rng,
                     TraceRecorder& rec) {
    const int64_t lambda = std::max<int64_t>(2, std::llround(param(spec, "lambda", 10.0)));
    const double adapt_prob = param(spec, "adapt-prob", 0.75);
    const double rate_min = param(spec, "r-min", 2.0);
    const double rate_max = std::max(rate_min, static_cast<double>(n) / 4.0);
    double rate = std::clamp(param(spec, "r-init", 2.0), rate_min, rate_max);

    BitString parent = BitString::random(static_cast<std::size_t>(n), rng);
    double parent_fitness = rec.evaluate(parent);
    while (!rec.done()) {
        const int64_t half = lambda / 2;
        BitString best_child;
        double best_fitness = kNegativeInfinity;
        double best_low = kNegativeInfinity;
        double best_high = kNegativeInfinity;
        bool any = false;
        bool complete = true;
        for (int64_t i = 0; i < lambda; ++i) {
            if (rec.done()) {
                complete = false;
                break;
            }
            const bool low_half = i < half;
            const double offspring_rate =
                std::min((low_half ? rate / 2.0 : 2.0 * rate) / static_cast<double>(n),
                         1.0);
            const int64_t flips = sample_binomial_gt0(n, offspring_rate, rng);
            BitString child = flip_distinct_bits(parent, flips, rng);
            const double fitness = rec.evaluate(child);
            if (!any || fitness > best_fitness) {
                any = true;
                best_fitness = fitness;
                best_child = std::move(child);
            }
            if (low_half) {
                best_low = std::max(best_low, fitness);
            } else {
                best_high = std::max(best_high, fitness);
            }
        }
        if (!any) break;

        if (best_fitness >= parent_fitness) {
            parent = std::move(best_child);
            parent_fitness = best_fitness;
        }
        if (!complete) break;

        double chosen;
        if (rng.next_double() < adapt_prob) {
            if (best_low > best_high) {
                chosen = rate / 2.0;
            } else if (best_high > best_low) {
                chosen = 2.0 * rate;
            } else {
                chosen = rng.next_bool() ? rate / 2.0 : 2.0 * rate;
            }
        } else {
            chosen = rng.next_bool() ? rate / 2.0 : 2.0 * rate;
        }
        rate = std::clamp(chosen, rate_min, rate_max);
    }
}

void run_normal_ea(int64_t n, const AlgorithmSpec& spec, RngStream& rng,
                   TraceRecorder& rec, bool scaled_variance) {
    const int64_t lambda = std::max<int64_t>(1, std::llround(param(spec, "lambda", 10.0)));
    const double shrink = scaled_variance ? param(spec, "F", 0.98) : 1.0;
    double rate = std::clamp(param(spec, "r-init", 1.0), 1.0, static_cast<double>(n));
    int64_t stagnant_generations = 0;

    BitString parent = BitString::random(static_cast<std::size_t>(n), rng);
    double parent_fitness = rec.evaluate(parent);
    while (!rec.done()) {
        const double scale =
            scaled_variance ? std::pow(shrink, static_cast<double>(stagnant_generations))
                            : 1.0;
        BitString best_child;
        double best_fitness = kNegativeInfinity;
        int64_t best_flips = 0;
        bool any = false;
        for (int64_t i = 0; i < lambda && !rec.done(); ++i) {
            const int64_t flips = sample_normal_flip_count(rate, n, rng, scale);
            BitString child = flip_distinct_bits(parent, flips, rng);
            const double fitness = rec.evaluate(child);
            if (!any || fitness > best_fitness) {
                any = true;
                best_fitness = fitness;
                best_flips = flips;
                best_child = std::move(child);
            }
        }
        if (!any) break;

        const bool improved = best_fitness > parent_fitness;
        if (best_fitness >= parent_fitness) {
            parent = std::move(best_child);
            parent_fitness = best_fitness;
        }
        rate = std::clamp(static_cast<double>(best_flips), 1.0, static_cast<double>(n));
        if (scaled_variance) {
            stagnant_generations = improved ? 0 : stagnant_generations + 1;
        }
    }
}

void run_ghc(int64_t n, const AlgorithmSpec&, RngStream& rng, TraceRecorder& rec) {
    BitString parent = BitString::random(static_cast<std::size_t>(n), rng);
    double parent_fitness = rec.evaluate(parent);
    int64_t cursor = 0;
    while (!rec.done()) {
        BitString child = parent;
        child.flip(static_cast<std::size_t>(cursor));
        const double fitness = rec.evaluate(child);
        if (fitness >= parent_fitness) {
            parent = std::move(child);
            parent_fitness = fitness;
        }
        cursor = (cursor + 1) % n;
    }
}

void run_random_search(int64_t n, const AlgorithmSpec&, RngStream& rng,
                       TraceRecorder& rec) {
    while (!rec.done()) {
        rec.evaluate(BitString::random(static_cast<std::size_t>(n), rng));
    }
}

void run_rls(int64_t n, const AlgorithmSpec&, RngStream& rng, TraceRecorder& rec) {
    BitString parent = BitString::random(static_cast<std::size_t>(n), rng);
    double parent_fitness = rec.evaluate(parent);
    while (!rec.done()) {
        BitString child = parent;
        child.flip(static_cast<std::size_t>(rng.next_below(static_cast<uint64_t>(n))));
        const double fitness = rec.evaluate(child);
        if (fitness >= parent_fitness) {
            parent = std::move(child);
            parent_fitness = fitness;
        }
    }
}

/// One annealing round: fresh uniform start, geometric schedule over
/// `schedule_budget`, at most `round_limit` evaluations consumed.
void run_sa_round(int64_t n, double t_start, double t_end, RngStream& rng,
                  TraceRecorder& rec, int64_t schedule_budget, int64_t round_limit) {
    BitString current = BitString::random(static_cast<std::size_t>(n), rng);
    double current_fitness = rec.evaluate(current);
    int64_t used = 1;
    while (!rec.done() && used < round_limit) {
        const double temperature = sa_temperature(t_start, t_end, schedule_budget, used);
        BitString neighbor = current;
        neighbor.flip(static_cast<std::size_t>(rng.next_below(static_cast<uint64_t>(n))));
        const double fitness = rec.evaluate(neighbor);
        ++used;
        if (fitness >= current_fitness ||
            rng.next_double() <
                std::exp((fitness - current_fitness) / temperature)) {
            current = std::move(neighbor);
            current_fitness = fitness;
        }
    }
}

double start_temperature_from(const AlgorithmSpec& spec) {
    const double accept_start = param(spec, "accept-start", 0.1);
    if (!(accept_start > 0.0) || !(accept_start < 1.0)) {
        throw std::invalid_argument("accept-start must lie in (0, 1)");
    }
    return -1.0 / std::log(accept_start);
}

void run_sa_auto(int64_t n, const AlgorithmSpec& spec, RngStream& rng,
                 TraceRecorder& rec) {
    run_sa_round(n, start_temperature_from(spec), sa_end_temperature(n), rng, rec,
                 rec.budget(), rec.budget());
}

void run_sars_auto(int64_t n, const AlgorithmSpec& spec, RngStream& rng,
                   TraceRecorder& rec) {
    const double t_start = start_temperature_from(spec);
    const double t_end = sa_end_temperature(n);
    const double round_factor = param(spec, "round-factor", 2.0);
    if (!(round_factor >= 1.0)) {
        throw std::invalid_argument("round-factor must be >= 1");
    }
    int64_t round = 0;
    while (!rec.done()) {
        // Round i plans n * factor^i evaluations; execution is truncated by
        // the run budget but the cooling schedule uses the planned length.
        const double planned =
            static_cast<double>(n) * std::pow(round_factor, static_cast<double>(round));
        const int64_t schedule = static_cast<int64_t>(
            std::min(planned, static_cast<double>(rec.budget())));
        run_sa_round(n, t_start, t_end, rng, rec, std::max<int64_t>(schedule, 1),
                     std::max<int64_t>(schedule, 1));
        ++round;
    }
}

void run_umda(int64_t n, const AlgorithmSpec& spec, RngStream& rng,
              TraceRecorder& rec) {
    const int64_t population = std::max<int64_t>(2, std::llround(param(spec, "s", 50.0)));
    const int64_t selected = std::max<int64_t>(1, population / 2);

    std::vector<BitString> points(static_cast<std::size_t>(population));
    std::vector<double> fitness(static_cast<std::size_t>(population), 0.0);
    for (int64_t i = 0; i < population && !rec.done(); ++i) {
        points[static_cast<std::size_t>(i)] =
            BitString::random(static_cast<std::size_t>(n), rng);
        fitness[static_cast<std::size_t>(i)] =
            rec.evaluate(points[static_cast<std::size_t>(i)]);
    }

    const double clamp_a = 1.0 / static_cast<double>(n);
    const double clamp_lo = std::min(clamp_a, 1.0 - clamp_a);
    const double clamp_hi = std::max(clamp_a, 1.0 - clamp_a);
    std::vector<double> marginals(static_cast<std::size_t>(n), 0.5);
    std::vector<int64_t> chosen;
    std::vector<int64_t> boundary;

    while (!rec.done()) {
        // Threshold selection: everything above the cutoff fitness is taken,
        // boundary ties are filled by a uniform draw.
        std::vector<int64_t> order(static_cast<std::size_t>(population));
        std::iota(order.begin(), order.end(), 0);
        std::nth_element(order.begin(), order.begin() + (selected - 1), order.end(),
                         [&](int64_t a, int64_t b) {
                             return fitness[static_cast<std::size_t>(a)] >
                                    fitness[static_cast<std::size_t>(b)];
                         });
        const double threshold = fitness[static_cast<std::size_t>(order[
            static_cast<std::size_t>(selected - 1)])];
        chosen.clear();
        boundary.clear();
        for (int64_t i = 0; i < population; ++i) {
            const double f = fitness[static_cast<std::size_t>(i)];
            if (f > threshold) {
                chosen.push_back(i);
            } else if (f == threshold) {
                boundary.push_back(i);
            }
        }
        const int64_t need = selected - std::ssize(chosen);
        for (int64_t i = 0; i < need; ++i) {
            const int64_t j = i + static_cast<int64_t>(rng.next_below(
                                      static_cast<uint64_t>(boundary.size()) -
                                      static_cast<uint64_t>(i)));
            std::swap(boundary[static_cast<std::size_t>(i)],
                      boundary[static_cast<std::size_t>(j)]);
            chosen.push_back(boundary[static_cast<std::size_t>(i)]);
        }

        for (int64_t j = 0; j < n; ++j) {
            int64_t ones = 0;
            for (const int64_t i : chosen) {
                if (points[static_cast<std::size_t>(i)].test(static_cast<std::size_t>(j))) {
                    ++ones;
                }
            }
            const double frequency =
                static_cast<double>(ones) / static_cast<double>(selected);
            marginals[static_cast<std::size_t>(j)] =
                std::clamp(frequency, clamp_lo, clamp_hi);
        }

        for (int64_t i = 0; i < population && !rec.done(); ++i) {
            BitString x(static_cast<std::size_t>(n));
            for (int64_t j = 0; j < n; ++j) {
                if (rng.next_double() < marginals[static_cast<std::size_t>(j)]) {
                    x.set(static_cast<std::size_t>(j), true);
                }
            }
            fitness[static_cast<std::size_t>(i)] = rec.evaluate(x);
            points[static_cast<std::size_t>(i)] = std::move(x);
        }
    }
}

using Runner = void (*)(int64_t, const AlgorithmSpec&, RngStream&, TraceRecorder&);

struct AlgorithmEntry {
    const char* name;
    Runner runner;
    std::set<std::string> parameter_keys;
};

void run_norm_ea(int64_t n, const AlgorithmSpec& spec, RngStream& rng,
                 TraceRecorder& rec) {
    run_normal_ea(n, spec, rng, rec, false);
}

void run_var_ea(int64_t n, const AlgorithmSpec& spec, RngStream& rng,
                TraceRecorder& rec) {
    run_normal_ea(n, spec, rng, rec, true);
}

const std::vector<AlgorithmEntry>& registry() {
    static const std::vector<AlgorithmEntry> entries = {
        {"1+1-ea", run_one_plus_one, {"p"}},
        {"fast-ga", run_fast_ga, {"beta"}},
        {"oll-ea", run_oll_ea, {"lambda", "adapt-factor", "adapt-exponent"}},
        {"2rate-ea", run_two_rate_ea, {"lambda", "r-init", "r-min", "adapt-prob"}},
        {"norm-ea", run_norm_ea, {"lambda", "r-init"}},
        {"var-ea", run_var_ea, {"lambda", "r-init", "F"}},
        {"ghc", run_ghc, {}},
        {"rs", run_random_search, {}},
        {"rls", run_rls, {}},
        {"sa-auto", run_sa_auto, {"accept-start"}},
        {"sars-auto", run_sars_auto, {"accept-start", "round-factor"}},
        {"umda", run_umda, {"s"}},
    };
    return entries;
}

const AlgorithmEntry& find_algorithm(const std::string& name) {
    for (const auto& entry : registry()) {
        if (name == entry.name) return entry;
    }
    throw std::invalid_argument("unknown algorithm '" + name + "'");
}

}  // namespace

const std::vector<std::string>& algorithm_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& entry : registry()) out.emplace_back(entry.name);
        return out;
    }();
    return names;
}

bool is_algorithm_name(const std::string& name) {
    for (const auto& entry : registry()) {
        if (name == entry.name) return true;
    }
    return false;
}

double sa_temperature(double t_start, double t_end, int64_t schedule_budget,
                      int64_t evaluations_done) {
    if (schedule_budget < 1) {
        throw std::invalid_argument("schedule budget must be >= 1");
    }
    const double gamma =
        std::pow(t_end / t_start, 1.0 / static_cast<double>(schedule_budget));
    return t_start * std::pow(gamma, static_cast<double>(evaluations_done));
}

double sa_start_temperature() { return 1.0 / std::log(10.0); }

double sa_end_temperature(int64_t n) {
    return n >= 2 ? 2.0 / std::log(static_cast<double>(n)) : sa_start_temperature();
}

RunTrace run_algorithm(const AlgorithmSpec& spec, const Problem& problem,
                       int64_t budget, uint64_t seed, bool parallel_simulations) {
    if (budget < 1) throw std::invalid_argument("budget must be >= 1");
    const AlgorithmEntry& entry = find_algorithm(spec.name);
    for (const auto& [key, value] : spec.parameters) {
        if (!entry.parameter_keys.count(key)) {
            throw std::invalid_argument("unknown parameter '" + key +
                                        "' for algorithm '" + spec.name + "'");
        }
    }

    RunTrace trace;
    trace.algorithm = spec.name;
    trace.problem_id = problem.problem_id();
    trace.problem_name = problem.problem_name();
    trace.dimension = problem.dimension();
    trace.seed = seed;
    trace.budget = budget;

    // Substream 0 drives the algorithm, substream 1 the influence
    // simulations; the two never interleave.
    RngStream rng(substream_seed(seed, 0));
    Evaluator evaluator(problem, substream_seed(seed, 1), parallel_simulations);
    TraceRecorder recorder(evaluator, budget, trace);
    entry.runner(problem.dimension(), spec, rng, recorder);
    recorder.finish();
    return trace;
}

}  // namespace submark
