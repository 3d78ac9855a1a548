#include <doctest.h>

#include <cmath>

#include "corruptlab/error.hpp"
#include "corruptlab/planner.hpp"
#include "corruptlab/rng.hpp"
#include "knapsack_oracle.hpp"
#include "test_support.hpp"

using namespace corruptlab;
using namespace corruptlab::testing;

namespace {

SourceOffer offer(std::string name, double alpha, Rational cost, std::optional<double> sup = std::nullopt) {
  return SourceOffer{std::move(name), alpha, sup, cost};
}

Rational spend_of(const std::vector<SourceOffer>& offers, const AcquisitionPlan& plan) {
  Rational total;
  for (const auto& o : offers) {
    const auto it = plan.counts.find(o.name);
    if (it != plan.counts.end()) total = total + o.unit_cost * it->second;
  }
  return total;
}

double objective_of(const std::vector<SourceOffer>& offers, const AcquisitionPlan& plan) {
  double total = 0.0;
  for (const auto& o : offers) {
    const auto it = plan.counts.find(o.name);
    if (it != plan.counts.end()) total += o.alpha * static_cast<double>(it->second);
  }
  return total;
}

}  // namespace

TEST_CASE("Rational") {
  CHECK(Rational::parse("7") == Rational(7));
  CHECK(Rational::parse("14/4") == Rational(7, 2));
  CHECK(Rational::parse("3.25") == Rational(13, 4));
  CHECK(Rational::parse("-3/4") == Rational(-3, 4));
  CHECK(Rational(6, -4) == Rational(-3, 2));
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(1, 3) - Rational(1, 2) == Rational(-1, 6));
  CHECK(Rational(2, 3) * Rational(9, 4) == Rational(3, 2));
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(floor_div(Rational(7), Rational(2)) == 3);
  CHECK(floor_div(Rational(10), Rational(5, 2)) == 4);
  CHECK(Rational(7, 2).to_string() == "7/2");
  CHECK(Rational(4).to_string() == "4");
  CHECK_THROWS_AS(Rational(1, 0), Error);
  CHECK_THROWS_AS(Rational::parse("abc"), Error);
  CHECK_THROWS_AS(Rational::parse("1/"), Error);
  CHECK_THROWS_AS(Rational(INT64_MAX) + Rational(1), Error);
}

TEST_CASE("greedy_plan examples") {
  const std::vector<SourceOffer> ab{offer("A", 0.9, 3), offer("B", 0.5, 1)};
  const auto empty = greedy_plan(ab, Rational(0));
  CHECK(empty.objective == 0.0);
  CHECK(empty.spend == Rational(0));

  const auto plan = greedy_plan(ab, Rational(10));
  CHECK(plan.counts.at("B") == 10);
  CHECK(plan.objective == doctest::Approx(5.0));
  CHECK(plan.spend == Rational(10));

  const auto single = greedy_plan({offer("A", 0.7, 2)}, Rational(7));
  CHECK(single.counts.at("A") == 3);
  CHECK(single.spend == Rational(6));
  CHECK(single.objective == doctest::Approx(2.1));

  // Leftover budget goes to the next-densest source.
  const auto mixed = greedy_plan({offer("A", 0.9, 3), offer("B", 0.5, 2)}, Rational(5));
  CHECK(mixed.counts.at("A") == 1);
  CHECK(mixed.counts.at("B") == 1);

  const auto useless = greedy_plan({offer("Z", 0.0, 1)}, Rational(5));
  CHECK(useless.objective == 0.0);
  CHECK(useless.spend == Rational(0));
}

TEST_CASE("exact_plan examples") {
  const std::vector<SourceOffer> ab{offer("A", 0.9, 3), offer("B", 0.5, 2)};
  const auto plan = exact_plan(ab, Rational(4));
  CHECK(plan.objective == doctest::Approx(1.0));
  CHECK(plan.counts.at("B") == 2);
  CHECK(greedy_plan(ab, Rational(4)).objective == doctest::Approx(0.9));

  for (int b = 0; b <= 20; ++b) {
    const auto one = exact_plan({offer("A", 0.7, Rational(3, 2))}, Rational(b));
    CHECK(objective_of({offer("A", 0.7, Rational(3, 2))}, one) == doctest::Approx(0.7 * floor_div(b, Rational(3, 2))));
  }

  CHECK_THROWS_AS(exact_plan({offer("A", 0.5, Rational(1, 1000))}, Rational(100000)), Error);
  try {
    exact_plan({offer("A", 0.5, 1)}, Rational(100), 50);
    FAIL("expected guard");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CapacityGuardExceeded);
  }
  CHECK_THROWS_AS(exact_plan({offer("A", 0.5, 0)}, Rational(4)), Error);
  CHECK_THROWS_AS(exact_plan({offer("A", 1.5, 1)}, Rational(4)), Error);
  CHECK_THROWS_AS(exact_plan({}, Rational(4)), Error);
  CHECK_THROWS_AS(greedy_plan({offer("A", 0.5, 1)}, Rational(-1)), Error);
}

TEST_CASE("exact_plan matches enumeration with fractional costs") {
  Rng rng(71);
  for (int i = 0; i < 200; ++i) {
    const std::size_t k = 1 + random_index(rng, 4);
    std::vector<SourceOffer> offers;
    std::vector<std::int64_t> scaled;
    std::vector<double> alphas;
    for (std::size_t j = 0; j < k; ++j) {
      const std::int64_t halves = 1 + static_cast<std::int64_t>(random_index(rng, 12));
      offers.push_back(offer("s" + std::to_string(j), rng.uniform(), Rational(halves, 2)));
      scaled.push_back(halves);
      alphas.push_back(offers.back().alpha);
    }
    const std::int64_t budget_halves = static_cast<std::int64_t>(random_index(rng, 31));
    const auto oracle = knapsack_by_enumeration(scaled, alphas, budget_halves);
    const auto plan = exact_plan(offers, Rational(budget_halves, 2));
    CHECK(std::abs(plan.objective - oracle.back()) <= 1e-9);
    CHECK(plan.spend <= Rational(budget_halves, 2));
    CHECK(plan.spend == spend_of(offers, plan));
  }
}

TEST_CASE("property: exact, greedy and enumeration agree on small integer instances") {
  Rng rng(73);
  for (int i = 0; i < 300; ++i) {
    const std::size_t k = 1 + random_index(rng, 4);
    std::vector<SourceOffer> offers;
    std::vector<std::int64_t> costs;
    std::vector<double> alphas;
    for (std::size_t j = 0; j < k; ++j) {
      costs.push_back(1 + static_cast<std::int64_t>(random_index(rng, 8)));
      alphas.push_back(rng.uniform());
      offers.push_back(offer("s" + std::to_string(j), alphas.back(), costs.back()));
    }
    const auto oracle = knapsack_by_enumeration(costs, alphas, 30);
    for (std::int64_t c = 0; c <= 30; ++c) {
      const auto exact = exact_plan(offers, Rational(c));
      const auto greedy = greedy_plan(offers, Rational(c));
      CHECK(std::abs(exact.objective - oracle[static_cast<std::size_t>(c)]) <= 1e-9);
      CHECK(exact.objective >= greedy.objective - 1e-12);
      CHECK(exact.spend <= Rational(c));
      CHECK(greedy.spend <= Rational(c));
      CHECK(std::abs(objective_of(offers, exact) - exact.objective) <= 1e-12);
      CHECK(std::abs(objective_of(offers, greedy) - greedy.objective) <= 1e-12);
      bool affordable = true;
      for (auto cost : costs) affordable = affordable && cost <= c;
      if (affordable) CHECK(greedy.objective >= 0.5 * exact.objective - 1e-12);
    }
  }
}

TEST_CASE("rankings") {
  const std::vector<SourceOffer> ab{offer("A", 0.9, 1, 2.0), offer("B", 0.5, 3, 1.0)};
  CHECK(rank_sources_upper(ab) == std::vector<std::string>{"B", "A"});

  const std::vector<SourceOffer> equal_cost{offer("x", 0.5, 2, 3.0), offer("y", 0.5, 2, 1.5), offer("z", 0.5, 2, 2.0)};
  CHECK(rank_sources_upper(equal_cost) == std::vector<std::string>{"y", "z", "x"});

  const std::vector<SourceOffer> twins{offer("b", 0.5, 2, 1.0), offer("a", 0.5, 2, 1.0)};
  CHECK(rank_sources_upper(twins) == std::vector<std::string>{"a", "b"});
  CHECK(rank_sources_lower(twins) == std::vector<std::string>{"a", "b"});

  CHECK(rank_sources_lower({offer("noisy", 0.8, 1), offer("clean", 1.0, 1)}) ==
        std::vector<std::string>{"clean", "noisy"});
  CHECK(rank_sources_lower({offer("A", 0.9, 3), offer("B", 0.5, 1)}) == std::vector<std::string>{"B", "A"});
  // Equal density: lower cost first.
  CHECK(rank_sources_lower({offer("A", 0.8, 2), offer("B", 0.4, 1)}) == std::vector<std::string>{"B", "A"});

  try {
    rank_sources_upper({offer("A", 0.5, 1)});
    FAIL("expected MissingStatistic");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MissingStatistic);
  }
}
