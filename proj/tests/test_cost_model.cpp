#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "submark/cost_model.hpp"
#include "submark/rng.hpp"

using namespace submark;

namespace {

BitString with_ones(std::size_t size, std::initializer_list<std::size_t> positions) {
    BitString x(size);
    for (auto i : positions) x.set(i, true);
    return x;
}

}  // namespace

TEST_CASE("deterministic cost sums selected element costs") {
    auto model = CostModel::deterministic(CostKind::Explicit, {1.0, 2.0, 4.0}, 5.0);
    CHECK(model.cost(with_ones(3, {})) == 0.0);
    CHECK(model.cost(with_ones(3, {0, 2})) == 5.0);
    CHECK(model.feasible(with_ones(3, {0, 2})));  // exactly at the budget
    CHECK_FALSE(model.feasible(with_ones(3, {1, 2})));
}

TEST_CASE("chebyshev surrogate hand value") {
    // a(x) = 3 with unit expected costs, delta = 0.5, alpha = 0.1, |x| = 3:
    // 3 + 0.5 * sqrt((0.9 / 0.3) * 3) = 3 + 0.5 * 3 = 4.5
    auto model = CostModel::chance(CostKind::Chebyshev, {1, 1, 1, 1}, 10.0, 0.5, 0.1);
    CHECK(model.cost(with_ones(4, {0, 1, 3})) == doctest::Approx(4.5).epsilon(1e-12));
}

TEST_CASE("chernoff surrogate hand value") {
    // a(x) = 2, delta = 1, alpha = 0.1, |x| = 2:
    // 2 + sqrt(ln(10) * 4) = 5.03485426...
    auto model = CostModel::chance(CostKind::Chernoff, {1, 1, 1}, 10.0, 1.0, 0.1);
    const double expected = 2.0 + std::sqrt(std::log(10.0) * 4.0);
    CHECK(model.cost(with_ones(3, {0, 2})) ==
          doctest::Approx(expected).epsilon(1e-12));
    CHECK(std::abs(model.cost(with_ones(3, {0, 2})) - 5.03485426) < 1e-7);
}

TEST_CASE("delta = 0 collapses both surrogates to the expected cost") {
    std::vector<double> costs;
    RngStream rng(99);
    for (int i = 0; i < 10; ++i) costs.push_back(1.0 + rng.next_double() * 4.0);
    auto chebyshev = CostModel::chance(CostKind::Chebyshev, costs, 50.0, 0.0, 0.25);
    auto chernoff = CostModel::chance(CostKind::Chernoff, costs, 50.0, 0.0, 0.25);
    auto exact = CostModel::deterministic(CostKind::Explicit, costs, 50.0);
    for (int trial = 0; trial < 200; ++trial) {
        auto x = BitString::random(10, rng);
        CHECK(chebyshev.cost(x) == exact.cost(x));
        CHECK(chernoff.cost(x) == exact.cost(x));
    }
}

TEST_CASE("surrogates grow with |x| at fixed expected cost") {
    auto model = CostModel::chance(CostKind::Chebyshev, {2, 1, 1}, 10.0, 0.5, 0.1);
    // same a(x) = 2 but |x| differs
    CHECK(model.cost(with_ones(3, {0})) < model.cost(with_ones(3, {1, 2})));
}

TEST_CASE("chance parameter validation") {
    CHECK_THROWS_AS(CostModel::chance(CostKind::Chebyshev, {1}, 5, 0.5, 0.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(CostModel::chance(CostKind::Chebyshev, {1}, 5, 0.5, 0.6),
                    std::invalid_argument);
    CHECK_THROWS_AS(CostModel::chance(CostKind::Chebyshev, {1}, 5, -0.1, 0.1),
                    std::invalid_argument);
    CHECK_THROWS_AS(CostModel::chance(CostKind::Uniform, {1}, 5, 0.5, 0.1),
                    std::invalid_argument);
    CHECK_NOTHROW(CostModel::chance(CostKind::Chernoff, {1}, 5, 0.5, 0.5));
}

TEST_CASE("budget validation") {
    CHECK_NOTHROW(CostModel::deterministic(CostKind::Uniform, {1, 1}, 0.0));
    CHECK_THROWS_AS(CostModel::deterministic(CostKind::Uniform, {1, 1}, -1.0),
                    std::invalid_argument);
}

TEST_CASE("penalty policy") {
    PenaltyPolicy standard;
    CHECK(standard(3.0) == -3.0);  // reproduces B - c(x)
    PenaltyPolicy heavy{2.0, 2.0};
    CHECK(heavy(3.0) == -18.0);
}

TEST_CASE("cost spec grammar") {
    SUBCASE("bare kind") {
        auto spec = parse_cost_spec("uniform");
        CHECK(spec.kind == CostKind::Uniform);
        CHECK_FALSE(spec.budget.has_value());
    }
    SUBCASE("colon form") {
        auto spec = parse_cost_spec("linear-degree:budget=42");
        CHECK(spec.kind == CostKind::LinearDegree);
        CHECK(spec.budget == 42.0);
    }
    SUBCASE("comma form") {
        auto spec = parse_cost_spec("linear-degree,budget=500");
        CHECK(spec.kind == CostKind::LinearDegree);
        CHECK(spec.budget == 500.0);
    }
    SUBCASE("chance kind with base") {
        auto spec = parse_cost_spec("chebyshev:delta=0.5,alpha=0.1,budget=20,base=linear-degree");
        CHECK(spec.kind == CostKind::Chebyshev);
        CHECK(spec.base == CostKind::LinearDegree);
        CHECK(spec.delta == 0.5);
        CHECK(spec.alpha == 0.1);
        CHECK(spec.budget == 20.0);
    }
    SUBCASE("rejections") {
        CHECK_THROWS_AS(parse_cost_spec(""), std::invalid_argument);
        CHECK_THROWS_AS(parse_cost_spec("gaussian"), std::invalid_argument);
        CHECK_THROWS_AS(parse_cost_spec("uniform:color=red"), std::invalid_argument);
        CHECK_THROWS_AS(parse_cost_spec("uniform:budget=5,budget=6"),
                        std::invalid_argument);
        CHECK_THROWS_AS(parse_cost_spec("uniform:budget=abc"), std::invalid_argument);
        CHECK_THROWS_AS(parse_cost_spec("uniform:budget=-1"), std::invalid_argument);
        // chance kinds require delta and alpha
        CHECK_THROWS_AS(parse_cost_spec("chebyshev:alpha=0.1"), std::invalid_argument);
        CHECK_THROWS_AS(parse_cost_spec("chernoff:delta=0.5"), std::invalid_argument);
        // deterministic kinds reject chance keys
        CHECK_THROWS_AS(parse_cost_spec("uniform:delta=0.5"), std::invalid_argument);
        CHECK_THROWS_AS(parse_cost_spec("linear-degree:base=uniform"),
                        std::invalid_argument);
    }
    SUBCASE("budget zero is valid") {
        CHECK(parse_cost_spec("uniform:budget=0").budget == 0.0);
    }
}

TEST_CASE("cost spec round trips through its canonical string") {
    for (const char* text :
         {"uniform", "linear-degree:budget=7",
          "chebyshev:base=linear-degree,budget=20,delta=0.5,alpha=0.1",
          "chernoff:delta=1,alpha=0.25", "quadratic-degree"}) {
        auto spec = parse_cost_spec(text);
        auto rendered = cost_spec_to_string(spec);
        auto reparsed = parse_cost_spec(rendered);
        CHECK(reparsed.kind == spec.kind);
        CHECK(reparsed.base == spec.base);
        CHECK(reparsed.budget == spec.budget);
        CHECK(reparsed.delta == spec.delta);
        CHECK(reparsed.alpha == spec.alpha);
        CHECK(cost_spec_to_string(reparsed) == rendered);
    }
}

TEST_CASE("default budgets") {
    CHECK(default_budget(parse_cost_spec("uniform")) == 10.0);
    CHECK(default_budget(parse_cost_spec("linear-degree")) == 500.0);
    CHECK(default_budget(parse_cost_spec("quadratic-degree")) == 40000.0);
    // chance kinds inherit the base kind's default
    CHECK(default_budget(parse_cost_spec("chebyshev:delta=1,alpha=0.1")) == 10.0);
    CHECK(default_budget(parse_cost_spec(
              "chernoff:delta=1,alpha=0.1,base=quadratic-degree")) == 40000.0);
}

TEST_CASE("build_cost_model derives element costs from degrees") {
    std::vector<int> degrees{0, 1, 3};
    SUBCASE("uniform") {
        auto model = build_cost_model(parse_cost_spec("uniform"), degrees);
        CHECK(model.element_costs() == std::vector<double>{1, 1, 1});
        CHECK(model.budget() == 10.0);
    }
    SUBCASE("linear-degree") {
        auto model = build_cost_model(parse_cost_spec("linear-degree"), degrees);
        CHECK(model.element_costs() == std::vector<double>{1, 2, 4});
        CHECK(model.budget() == 500.0);
    }
    SUBCASE("quadratic-degree") {
        auto model =
            build_cost_model(parse_cost_spec("quadratic-degree:budget=3"), degrees);
        CHECK(model.element_costs() == std::vector<double>{1, 4, 16});
        CHECK(model.budget() == 3.0);
    }
    SUBCASE("chance base supplies the expected costs") {
        auto model = build_cost_model(
            parse_cost_spec("chebyshev:delta=0.5,alpha=0.1,base=linear-degree"),
            degrees);
        CHECK(model.kind() == CostKind::Chebyshev);
        CHECK(model.element_costs() == std::vector<double>{1, 2, 4});
        CHECK(model.budget() == 500.0);
    }
}
