#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "evogame/gamespace.hpp"
#include "evogame/rng.hpp"
#include "evogame/topology.hpp"

namespace evogame {

inline constexpr double kMaxReputation = 4.0;

struct Agent {
  Strategy strategy = Strategy::kCooperate;
  double reputation = 2.0;  // (0, 4]
  std::uint32_t game_state = 0;
  double next_game_time = std::numeric_limits<double>::infinity();
  std::uint32_t next_game_state = 0;
  double next_update_time = std::numeric_limits<double>::infinity();

  bool operator==(const Agent&) const = default;
};

struct PopulationState {
  std::vector<Agent> agents;  // indexed by node id
  double time = 0.0;

  /// Occupancy N_i of each of `state_count` game states.
  std::vector<std::size_t> state_counts(std::size_t state_count) const;
  std::size_t cooperator_count() const;

  bool operator==(const PopulationState&) const = default;
};

struct ReputationParams {
  bool enabled = true;  // false: neighbors are chosen uniformly
  double delta = 0.04;
  double init_mean = 2.0;
  double init_sigma = 0.6;
};

struct UpdateParams {
  double kappa = 0.1;
  ReputationParams reputation;
};

/// Every agent starts in G_0 with strategy C with probability
/// `cooperate_probability` and a Gaussian reputation resampled until it falls
/// in the open interval (0, 4).
PopulationState init_population(const Graph& graph, const GameSpec& spec, double rep_mean, double rep_sigma,
                                Rng& rng, double cooperate_probability = 0.5);

/// Sum over neighbors of the focal row of the focal agent's own game matrix.
double accumulate_payoff(NodeId focal, const PopulationState& pop, const Graph& graph, const GameSpec& spec);

/// C: rep + delta, capped at 4 when it would exceed 4.
/// D: rep - delta, or delta / 2 when rep - delta <= 0.
double update_reputation(double rep, Strategy strategy_last_round, double delta) noexcept;

/// Neighbor chosen with probability proportional to its reputation, or
/// uniformly when `reputation_weighted` is false. Throws InvalidParameter for
/// an isolated node.
NodeId select_neighbor(NodeId focal, const PopulationState& pop, const Graph& graph, Rng& rng,
                       bool reputation_weighted = true);

/// 1 / (1 + exp((u_focal - u_neighbor) / kappa)), evaluated without overflow.
double fermi_adopt_probability(double u_focal, double u_neighbor, double kappa) noexcept;

/// Two-phase update of the agents listed in `due`.
///
/// Phase one reads a snapshot: each due agent picks a neighbor and decides
/// whether to copy its strategy from payoffs computed on the unmodified
/// population. Phase two applies all adoptions together and moves each due
/// agent's reputation by the strategy it held before the round. Agents not in
/// `due` are untouched.
void strategy_update_round(PopulationState& pop, const Graph& graph, const GameSpec& spec,
                           const UpdateParams& params, std::span<const NodeId> due, Rng& rng);

/// Round in which every agent is due.
void strategy_update_round(PopulationState& pop, const Graph& graph, const GameSpec& spec,
                           const UpdateParams& params, Rng& rng);

}  // namespace evogame
