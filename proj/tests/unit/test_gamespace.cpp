#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "evogame/error.hpp"
#include "evogame/gamespace.hpp"
#include "support/oracles.hpp"

using namespace evogame;
using doctest::Approx;

TEST_CASE("standard matrices for b = 1.5, r = 0.5") {
  const auto m = standard_matrices(1.5, 0.5);
  CHECK(m.pdg == PayoffMatrix{1.0, 0.0, 1.5, 0.0});
  CHECK(m.sdg == PayoffMatrix{1.0, 0.5, 1.5, 0.0});
  CHECK(m.shg == PayoffMatrix{1.0, -0.5, 0.5, 0.0});
  CHECK(m.pdg.payoff(Strategy::kDefect, Strategy::kCooperate) == 1.5);
  CHECK(m.shg.payoff(Strategy::kCooperate, Strategy::kDefect) == -0.5);
  CHECK(standard_matrix("SDG", 1.5, 0.5) == m.sdg);
  CHECK_THROWS_AS(standard_matrix("HG", 1.5, 0.5), InvalidParameter);
}

TEST_CASE("dilemma validity") {
  CHECK(validate_dilemma(standard_matrices(1.5, 0.5).pdg));
  // Snowdrift has T + S == 2R exactly, so the strict 2R > T + S test fails.
  CHECK_FALSE(validate_dilemma(standard_matrices(1.5, 0.5).sdg));
  CHECK(validate_dilemma(standard_matrices(1.5, 0.5).shg));
  CHECK_FALSE(validate_dilemma(PayoffMatrix{1.0, 0.5, 0.5, 0.0}));
  CHECK_FALSE(validate_dilemma(PayoffMatrix{0.0, 0.0, 1.5, 1.0}));  // R < P
}

TEST_CASE("game spec needs two states") {
  CHECK_THROWS_AS(GameSpec(std::vector<GameState>{{"PDG", {}}}), InvalidParameter);
  const auto spec = make_game_spec({"PDG", "SDG", "SHG"}, 1.5, 0.5);
  CHECK(spec.state_count() == 3);
  CHECK(spec.state(2).name == "SHG");
}

TEST_CASE("stationary distribution: reference rows") {
  const auto pi = stationary_distribution({{0.01, 0.06}, {0.04, 0.08}}).pi;
  CHECK(std::abs(pi[0] - 0.695652) < 1e-6);
  CHECK(std::abs(pi[1] - 0.173913) < 1e-6);
  CHECK(std::abs(pi[2] - 0.130435) < 1e-6);

  const auto c2 = expected_counts({{0.01, 0.06}, {0.04, 0.08}}, 1000);
  CHECK(std::abs(c2[0] - 695.652) < 1e-3);
  CHECK(std::abs(c2[1] - 173.913) < 1e-3);
  CHECK(std::abs(c2[2] - 130.435) < 1e-3);

  const auto c3 = expected_counts({{0.02, 0.02}, {0.04, 0.08}}, 1000);
  CHECK(std::abs(c3[0] - 615.385) < 1e-3);
  CHECK(std::abs(c3[1] - 307.692) < 1e-3);
  CHECK(std::abs(c3[2] - 76.923) < 1e-3);
}

TEST_CASE("stationary distribution: symmetric two-state chain") {
  const auto pi = stationary_distribution({{0.3}, {0.3}}).pi;
  CHECK(pi[0] == 0.5);
  CHECK(pi[1] == 0.5);
}

TEST_CASE("stationary distribution matches the global-balance oracle") {
  const TransitionRates rates{{0.02, 0.06}, {0.04, 0.08}};
  const auto oracle = testing::global_balance_solve(testing::birth_death_generator(rates));
  // Frozen from the oracle: 8/15, 4/15, 3/15.
  CHECK(std::abs(oracle[0] - 8.0 / 15.0) < 1e-12);
  CHECK(std::abs(oracle[1] - 4.0 / 15.0) < 1e-12);
  CHECK(std::abs(oracle[2] - 3.0 / 15.0) < 1e-12);
  const auto pi = stationary_distribution(rates).pi;
  for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(pi[i] - oracle[i]) < 1e-12);
}

TEST_CASE("property: normalisation, detailed balance and oracle agreement") {
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<std::size_t> states(2, 8);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto rates = testing::random_rates(rng, states(rng));
    const auto pi = stationary_distribution(rates).pi;
    REQUIRE(pi.size() == rates.state_count());
    REQUIRE(std::abs(std::accumulate(pi.begin(), pi.end(), 0.0) - 1.0) < 1e-12);
    for (std::size_t k = 0; k + 1 < pi.size(); ++k) {
      REQUIRE(std::abs(pi[k] * rates.lambda[k] - pi[k + 1] * rates.mu[k]) < 1e-12);
    }
    if (trial % 5 == 0) {
      const auto oracle = testing::global_balance_solve(testing::birth_death_generator(rates));
      for (std::size_t k = 0; k < pi.size(); ++k) REQUIRE(std::abs(pi[k] - oracle[k]) < 1e-10);
    }
  }
}

TEST_CASE("long chains do not overflow") {
  TransitionRates rates;
  for (int i = 0; i < 400; ++i) {
    rates.lambda.push_back(5.0);
    rates.mu.push_back(1.0);
  }
  const auto pi = stationary_distribution(rates).pi;
  for (double p : pi) CHECK(std::isfinite(p));
  CHECK(std::abs(std::accumulate(pi.begin(), pi.end(), 0.0) - 1.0) < 1e-9);
}

TEST_CASE("expected counts scale linearly in N") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const auto rates = testing::random_rates(rng, 4);
    const auto one = expected_counts(rates, 1);
    const auto many = expected_counts(rates, 1234);
    for (std::size_t k = 0; k < one.size(); ++k) CHECK(many[k] == 1234.0 * one[k]);
    for (double v : expected_counts(rates, 0)) CHECK(v == 0.0);
  }
}

TEST_CASE("invalid rates are rejected") {
  CHECK_THROWS_AS(stationary_distribution({{0.1, -0.2}, {0.1, 0.1}}), InvalidRates);
  CHECK_THROWS_AS(stationary_distribution({{0.1, 0.0}, {0.1, 0.1}}), InvalidRates);
  CHECK_THROWS_AS(stationary_distribution({{0.1}, {0.1, 0.1}}), InvalidRates);
  CHECK_THROWS_AS(stationary_distribution({{}, {}}), InvalidRates);
  CHECK_THROWS_AS(expected_counts({{0.1}, {-1.0}}, 10), InvalidRates);
}

TEST_CASE("sampler: boundary states have a single exit") {
  const TransitionRates rates{{0.02, 0.06}, {0.04, 0.08}};
  Rng rng(1);
  double sum = 0.0;
  const int draws = 200000;
  for (int i = 0; i < draws; ++i) {
    const auto t = sample_holding_and_target(0, rates, rng);
    REQUIRE(t.next == 1);
    REQUIRE(t.holding_time > 0.0);
    sum += t.holding_time;
    REQUIRE(sample_holding_and_target(2, rates, rng).next == 1);
  }
  CHECK(sum / draws == Approx(1.0 / 0.02).epsilon(0.01));
  CHECK_THROWS_AS(sample_holding_and_target(3, rates, rng), InvalidParameter);
}

TEST_CASE("sampler: interior state uses competing exponentials") {
  // Exit rate 0.06 + 0.04 = 0.1: mean holding 10, up-move probability 0.6.
  const TransitionRates rates{{0.02, 0.06}, {0.04, 0.08}};
  Rng rng(2);
  const int draws = 400000;
  double sum = 0.0;
  int up = 0;
  for (int i = 0; i < draws; ++i) {
    const auto t = sample_holding_and_target(1, rates, rng);
    sum += t.holding_time;
    up += t.next == 2 ? 1 : 0;
  }
  CHECK(static_cast<double>(up) / draws == Approx(0.6).epsilon(0.01));
  CHECK(sum / draws == Approx(10.0).epsilon(0.01));
}

TEST_CASE("sampler: single-agent occupancy converges to pi") {
  const TransitionRates rates{{0.02, 0.06}, {0.04, 0.08}};
  const auto pi = stationary_distribution(rates).pi;
  Rng rng(3);
  std::vector<double> time_in(3, 0.0);
  std::size_t state = 0;
  double t = 0.0;
  const double horizon = 1e6;
  while (t < horizon) {
    const auto step = sample_holding_and_target(state, rates, rng);
    const double dt = std::min(step.holding_time, horizon - t);
    time_in[state] += dt;
    t += dt;
    state = step.next;
  }
  for (std::size_t i = 0; i < 3; ++i) CHECK(time_in[i] / horizon == Approx(pi[i]).epsilon(0.01));
}
