#include "evogame/gamespace.hpp"

#include <cmath>
#include <string>

#include "evogame/error.hpp"

namespace evogame {

GameSpec::GameSpec(std::vector<GameState> states) : states_(std::move(states)) {
  if (states_.size() < 2) throw InvalidParameter("game spec needs at least two states");
}

StandardMatrices standard_matrices(double b, double r) {
  return {
      .pdg = {.reward = 1.0, .sucker = 0.0, .temptation = b, .punishment = 0.0},
      .sdg = {.reward = 1.0, .sucker = 1.0 - r, .temptation = 1.0 + r, .punishment = 0.0},
      .shg = {.reward = 1.0, .sucker = -r, .temptation = r, .punishment = 0.0},
  };
}

PayoffMatrix standard_matrix(const std::string& name, double b, double r) {
  const auto m = standard_matrices(b, r);
  if (name == "PDG") return m.pdg;
  if (name == "SDG") return m.sdg;
  if (name == "SHG") return m.shg;
  throw InvalidParameter("unknown game '" + name + "' (expected PDG, SDG or SHG)");
}

GameSpec make_game_spec(const std::vector<std::string>& names, double b, double r) {
  std::vector<GameState> states;
  states.reserve(names.size());
  for (const auto& name : names) states.push_back({name, standard_matrix(name, b, r)});
  return GameSpec(std::move(states));
}

bool validate_dilemma(const PayoffMatrix& m) noexcept {
  const double R = m.reward, S = m.sucker, T = m.temptation, P = m.punishment;
  return R > P && R > S && 2.0 * R > T + S && (T > R || P > S);
}

void TransitionRates::validate() const {
  if (lambda.empty()) throw InvalidRates("transition rates: at least one lambda is required");
  if (lambda.size() != mu.size()) {
    throw InvalidRates("transition rates: lambda has " + std::to_string(lambda.size()) +
                       " entries but mu has " + std::to_string(mu.size()));
  }
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    if (!(lambda[i] > 0.0) || !std::isfinite(lambda[i])) {
      throw InvalidRates("transition rates: lambda" + std::to_string(i) + " must be positive");
    }
    if (!(mu[i] > 0.0) || !std::isfinite(mu[i])) {
      throw InvalidRates("transition rates: mu" + std::to_string(i + 1) + " must be positive");
    }
  }
}

double TransitionRates::exit_rate(std::size_t state) const {
  const std::size_t last = lambda.size();
  if (state > last) throw InvalidParameter("game state index out of range");
  double rate = 0.0;
  if (state < last) rate += lambda[state];
  if (state > 0) rate += mu[state - 1];
  return rate;
}

StationaryDistribution stationary_distribution(const TransitionRates& rates) {
  rates.validate();
  const std::size_t states = rates.state_count();
  std::vector<double> weight(states);
  weight[0] = 1.0;
  for (std::size_t k = 1; k < states; ++k) {
    weight[k] = weight[k - 1] * (rates.lambda[k - 1] / rates.mu[k - 1]);
  }
  double total = 0.0;
  for (double w : weight) total += w;
  for (double& w : weight) w /= total;
  return {std::move(weight)};
}

std::vector<double> expected_counts(const TransitionRates& rates, std::size_t population) {
  auto pi = stationary_distribution(rates).pi;
  const auto n = static_cast<double>(population);
  for (double& p : pi) p *= n;
  return pi;
}

GameTransition sample_holding_and_target(std::size_t current, const TransitionRates& rates, Rng& rng) {
  const double total = rates.exit_rate(current);
  const std::size_t last = rates.lambda.size();
  const double holding = -std::log(uniform_open01(rng)) / total;
  std::size_t next;
  if (current == 0) {
    next = 1;
  } else if (current == last) {
    next = last - 1;
  } else {
    const double up = rates.lambda[current];
    next = uniform01(rng) * total < up ? current + 1 : current - 1;
  }
  return {holding, next};
}

}  // namespace evogame
