#include "submark/cost_model.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>
#include <stdexcept>
#include <string_view>

namespace submark {

namespace {

bool is_chance(CostKind kind) {
    return kind == CostKind::Chebyshev || kind == CostKind::Chernoff;
}

void validate_chance_parameters(double delta, double alpha) {
    if (!(delta >= 0.0)) throw std::invalid_argument("delta must be >= 0");
    if (!(alpha > 0.0) || !(alpha <= 0.5)) {
        throw std::invalid_argument("alpha must lie in (0, 1/2]");
    }
}

void validate_costs(const std::vector<double>& costs, double budget) {
    if (!(budget >= 0.0)) throw std::invalid_argument("budget must be >= 0");
    for (const double c : costs) {
        if (!(c >= 0.0)) throw std::invalid_argument("element costs must be >= 0");
    }
}

}  // namespace

CostModel CostModel::deterministic(CostKind kind, std::vector<double> element_costs,
                                   double budget) {
    if (is_chance(kind)) {
        throw std::invalid_argument("deterministic() requires a deterministic kind");
    }
    validate_costs(element_costs, budget);
    CostModel model;
    model.kind_ = kind;
    model.element_costs_ = std::move(element_costs);
    model.budget_ = budget;
    return model;
}

CostModel CostModel::chance(CostKind kind, std::vector<double> expected_costs,
                            double budget, double delta, double alpha) {
    if (!is_chance(kind)) {
        throw std::invalid_argument("chance() requires chebyshev or chernoff");
    }
    validate_chance_parameters(delta, alpha);
    validate_costs(expected_costs, budget);
    CostModel model;
    model.kind_ = kind;
    model.element_costs_ = std::move(expected_costs);
    model.budget_ = budget;
    model.delta_ = delta;
    model.alpha_ = alpha;
    return model;
}

double CostModel::expected_cost(const BitString& x) const {
    double total = 0.0;
    for (std::size_t i = 0; i < element_costs_.size(); ++i) {
        if (x.test(i)) total += element_costs_[i];
    }
    return total;
}

double CostModel::chebyshev_cost(const BitString& x) const {
    const double count = static_cast<double>(x.ones());
    return expected_cost(x) +
           delta_ * std::sqrt((1.0 - alpha_) / (3.0 * alpha_) * count);
}

double CostModel::chernoff_cost(const BitString& x) const {
    const double count = static_cast<double>(x.ones());
    return expected_cost(x) + delta_ * std::sqrt(std::log(1.0 / alpha_) * 2.0 * count);
}

double CostModel::cost(const BitString& x) const {
    switch (kind_) {
        case CostKind::Chebyshev:
            return chebyshev_cost(x);
        case CostKind::Chernoff:
            return chernoff_cost(x);
        default:
            return expected_cost(x);
    }
}

double PenaltyPolicy::operator()(double violation) const {
    return -weight * std::pow(violation, exponent);
}

namespace {

CostKind parse_kind(std::string_view name) {
    if (name == "uniform") return CostKind::Uniform;
    if (name == "linear-degree") return CostKind::LinearDegree;
    if (name == "quadratic-degree") return CostKind::QuadraticDegree;
    if (name == "chebyshev") return CostKind::Chebyshev;
    if (name == "chernoff") return CostKind::Chernoff;
    throw std::invalid_argument("unknown cost kind '" + std::string(name) + "'");
}

std::string kind_name(CostKind kind) {
    switch (kind) {
        case CostKind::Uniform: return "uniform";
        case CostKind::LinearDegree: return "linear-degree";
        case CostKind::QuadraticDegree: return "quadratic-degree";
        case CostKind::Explicit: return "explicit";
        case CostKind::Chebyshev: return "chebyshev";
        case CostKind::Chernoff: return "chernoff";
    }
    return "?";
}

double parse_number(std::string_view text, std::string_view key) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw std::invalid_argument("invalid value for '" + std::string(key) +
                                    "': '" + std::string(text) + "'");
    }
    return value;
}

}  // namespace

CostSpec parse_cost_spec(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty cost specification");

    // Kind ends at the first ':' or ',' so both "kind:opts" and "kind,opts"
    // are accepted.
    std::string_view rest = text;
    const auto cut = rest.find_first_of(":,");
    CostSpec spec;
    spec.kind = parse_kind(rest.substr(0, cut));
    rest = cut == std::string_view::npos ? std::string_view{} : rest.substr(cut + 1);

    std::set<std::string, std::less<>> seen;
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        const std::string_view entry = rest.substr(0, comma);
        rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
        if (entry.empty()) continue;
        const auto eq = entry.find('=');
        if (eq == std::string_view::npos) {
            throw std::invalid_argument("expected key=value, got '" +
                                        std::string(entry) + "'");
        }
        const std::string_view key = entry.substr(0, eq);
        const std::string_view value = entry.substr(eq + 1);
        if (!seen.insert(std::string(key)).second) {
            throw std::invalid_argument("duplicate key '" + std::string(key) + "'");
        }
        if (key == "budget") {
            spec.budget = parse_number(value, key);
        } else if (key == "delta") {
            spec.delta = parse_number(value, key);
            spec.has_delta = true;
        } else if (key == "alpha") {
            spec.alpha = parse_number(value, key);
            spec.has_alpha = true;
        } else if (key == "base") {
            const CostKind base = parse_kind(value);
            if (base == CostKind::Chebyshev || base == CostKind::Chernoff) {
                throw std::invalid_argument("base must be a deterministic kind");
            }
            spec.base = base;
        } else {
            throw std::invalid_argument("unknown key '" + std::string(key) + "'");
        }
    }

    const bool chance = spec.kind == CostKind::Chebyshev || spec.kind == CostKind::Chernoff;
    if (chance) {
        if (!spec.has_delta) throw std::invalid_argument("chance cost requires delta=");
        if (!spec.has_alpha) throw std::invalid_argument("chance cost requires alpha=");
        validate_chance_parameters(spec.delta, spec.alpha);
    } else {
        if (spec.has_delta || spec.has_alpha) {
            throw std::invalid_argument("delta/alpha only apply to chance costs");
        }
        if (seen.count("base") > 0) {
            throw std::invalid_argument("base only applies to chance costs");
        }
    }
    if (spec.budget && !(*spec.budget >= 0.0)) {
        throw std::invalid_argument("budget must be non-negative");
    }
    return spec;
}

std::string cost_spec_to_string(const CostSpec& spec) {
    std::string out = kind_name(spec.kind);
    char buffer[64];
    if (spec.kind == CostKind::Chebyshev || spec.kind == CostKind::Chernoff) {
        out += ":";
        std::snprintf(buffer, sizeof(buffer), "delta=%.17g,alpha=%.17g", spec.delta,
                      spec.alpha);
        out += buffer;
        if (spec.base != CostKind::Uniform) out += ",base=" + kind_name(spec.base);
        if (spec.budget) {
            std::snprintf(buffer, sizeof(buffer), ",budget=%.17g", *spec.budget);
            out += buffer;
        }
    } else if (spec.budget) {
        out += ":";
        std::snprintf(buffer, sizeof(buffer), "budget=%.17g", *spec.budget);
        out += buffer;
    }
    return out;
}

double default_budget(const CostSpec& spec) {
    const CostKind effective =
        (spec.kind == CostKind::Chebyshev || spec.kind == CostKind::Chernoff)
            ? spec.base
            : spec.kind;
    switch (effective) {
        case CostKind::Uniform: return 10.0;
        case CostKind::LinearDegree: return 500.0;
        case CostKind::QuadraticDegree: return 40000.0;
        default:
            throw std::invalid_argument("no default budget for this cost kind");
    }
}

CostModel build_cost_model(const CostSpec& spec, const std::vector<int>& degrees) {
    const CostKind base =
        (spec.kind == CostKind::Chebyshev || spec.kind == CostKind::Chernoff)
            ? spec.base
            : spec.kind;
    std::vector<double> costs(degrees.size(), 1.0);
    if (base == CostKind::LinearDegree) {
        for (std::size_t i = 0; i < degrees.size(); ++i) {
            costs[i] = 1.0 + degrees[i];
        }
    } else if (base == CostKind::QuadraticDegree) {
        for (std::size_t i = 0; i < degrees.size(); ++i) {
            const double c = 1.0 + degrees[i];
            costs[i] = c * c;
        }
    } else if (base != CostKind::Uniform) {
        throw std::invalid_argument("cost spec kind cannot be built from degrees");
    }

    const double budget = spec.budget ? *spec.budget : default_budget(spec);
    if (spec.kind == CostKind::Chebyshev || spec.kind == CostKind::Chernoff) {
        return CostModel::chance(spec.kind, std::move(costs), budget, spec.delta,
                                 spec.alpha);
    }
    return CostModel::deterministic(spec.kind, std::move(costs), budget);
}

}  // namespace submark
