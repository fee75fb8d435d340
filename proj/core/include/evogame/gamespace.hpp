#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "evogame/rng.hpp"

namespace evogame {

enum class Strategy : unsigned char { kCooperate = 0, kDefect = 1 };

/// Row player's payoffs: (C,C)->R, (C,D)->S, (D,C)->T, (D,D)->P.
struct PayoffMatrix {
  double reward = 0.0;      // R
  double sucker = 0.0;      // S
  double temptation = 0.0;  // T
  double punishment = 0.0;  // P

  double payoff(Strategy self, Strategy other) const noexcept {
    if (self == Strategy::kCooperate) {
      return other == Strategy::kCooperate ? reward : sucker;
    }
    return other == Strategy::kCooperate ? temptation : punishment;
  }

  bool operator==(const PayoffMatrix&) const = default;
};

struct GameState {
  std::string name;
  PayoffMatrix matrix;
};

/// Ordered game-state space G_0..G_n of a birth-death chain.
class GameSpec {
 public:
  /// Throws InvalidParameter for fewer than two states.
  explicit GameSpec(std::vector<GameState> states);

  std::size_t state_count() const noexcept { return states_.size(); }
  const GameState& state(std::size_t index) const { return states_.at(index); }
  const PayoffMatrix& matrix(std::size_t index) const noexcept { return states_[index].matrix; }
  const std::vector<GameState>& states() const noexcept { return states_; }

 private:
  std::vector<GameState> states_;
};

struct StandardMatrices {
  PayoffMatrix pdg;  // weak prisoner's dilemma: R=1, S=0, T=b, P=0
  PayoffMatrix sdg;  // snowdrift: R=1, S=1-r, T=1+r, P=0
  PayoffMatrix shg;  // stag hunt: R=1, S=-r, T=r, P=0
};

StandardMatrices standard_matrices(double b, double r);

/// Looks up "PDG", "SDG" or "SHG". Throws InvalidParameter otherwise.
PayoffMatrix standard_matrix(const std::string& name, double b, double r);

/// Chain of named standard games, e.g. {"PDG", "SDG", "SHG"}.
GameSpec make_game_spec(const std::vector<std::string>& names, double b, double r);

/// R>P, R>S, 2R>T+S and (T>R or P>S).
bool validate_dilemma(const PayoffMatrix& m) noexcept;

/// Birth-death rates: lambda[i] is G_i -> G_{i+1}, mu[i] is G_{i+1} -> G_i.
struct TransitionRates {
  std::vector<double> lambda;
  std::vector<double> mu;

  std::size_t state_count() const noexcept { return lambda.size() + 1; }
  /// Throws InvalidRates on length mismatch, empty vectors or nonpositive rates.
  void validate() const;
  /// Total exit rate of state i.
  double exit_rate(std::size_t state) const;
};

struct StationaryDistribution {
  std::vector<double> pi;
};

/// Closed-form stationary law of the chain. pi[k] is proportional to
/// (lambda_0...lambda_{k-1}) / (mu_1...mu_k), accumulated as a running ratio.
StationaryDistribution stationary_distribution(const TransitionRates& rates);

/// N * pi[k] for every state.
std::vector<double> expected_counts(const TransitionRates& rates, std::size_t population);

struct GameTransition {
  double holding_time;
  std::size_t next;
};

/// Draws the exponential holding time in `current` and the state entered on
/// exit (competing exponentials between the up and down moves).
GameTransition sample_holding_and_target(std::size_t current, const TransitionRates& rates, Rng& rng);

}  // namespace evogame
