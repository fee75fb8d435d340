#include "evogame/population.hpp"

#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "evogame/error.hpp"

namespace evogame {

std::vector<std::size_t> PopulationState::state_counts(std::size_t state_count) const {
  std::vector<std::size_t> counts(state_count, 0);
  for (const auto& a : agents) ++counts.at(a.game_state);
  return counts;
}

std::size_t PopulationState::cooperator_count() const {
  std::size_t c = 0;
  for (const auto& a : agents) c += a.strategy == Strategy::kCooperate ? 1 : 0;
  return c;
}

PopulationState init_population(const Graph& graph, const GameSpec& spec, double rep_mean, double rep_sigma,
                                Rng& rng, double cooperate_probability) {
  (void)spec;
  if (graph.node_count() == 0) throw InvalidParameter("population needs a nonempty graph");
  if (!(rep_sigma >= 0.0)) throw InvalidParameter("reputation sigma must be nonnegative");
  if (!(rep_mean > 0.0 && rep_mean < kMaxReputation)) {
    throw InvalidParameter("reputation mean must lie in (0, 4)");
  }
  std::normal_distribution<double> gauss(rep_mean, rep_sigma);
  PopulationState pop;
  pop.agents.resize(graph.node_count());
  for (auto& a : pop.agents) {
    a.strategy = uniform01(rng) < cooperate_probability ? Strategy::kCooperate : Strategy::kDefect;
    double rep;
    do {
      rep = gauss(rng);
    } while (!(rep > 0.0 && rep < kMaxReputation));
    a.reputation = rep;
    a.game_state = 0;
  }
  return pop;
}

double accumulate_payoff(NodeId focal, const PopulationState& pop, const Graph& graph, const GameSpec& spec) {
  const Agent& self = pop.agents[focal];
  const PayoffMatrix& m = spec.matrix(self.game_state);
  double total = 0.0;
  for (NodeId v : graph.neighbors(focal)) total += m.payoff(self.strategy, pop.agents[v].strategy);
  return total;
}

double update_reputation(double rep, Strategy strategy_last_round, double delta) noexcept {
  if (strategy_last_round == Strategy::kCooperate) {
    return rep + delta > kMaxReputation ? kMaxReputation : rep + delta;
  }
  // Repeated +-delta steps leave rounding residue; treat it as zero.
  const double next = rep - delta;
  return next <= delta * 1e-9 ? delta / 2.0 : next;
}

NodeId select_neighbor(NodeId focal, const PopulationState& pop, const Graph& graph, Rng& rng,
                       bool reputation_weighted) {
  const auto nbrs = graph.neighbors(focal);
  if (nbrs.empty()) throw InvalidParameter("node " + std::to_string(focal) + " has no neighbors");
  if (!reputation_weighted) {
    const auto idx = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(nbrs.size()));
    return nbrs[idx < nbrs.size() ? idx : nbrs.size() - 1];
  }
  double sum = 0.0;
  for (NodeId v : nbrs) sum += pop.agents[v].reputation;
  double target = uniform01(rng) * sum;
  for (NodeId v : nbrs) {
    target -= pop.agents[v].reputation;
    if (target < 0.0) return v;
  }
  return nbrs.back();
}

double fermi_adopt_probability(double u_focal, double u_neighbor, double kappa) noexcept {
  const double x = (u_focal - u_neighbor) / kappa;
  if (x >= 0.0) {
    const double e = std::exp(-x);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(x));
}

void strategy_update_round(PopulationState& pop, const Graph& graph, const GameSpec& spec,
                           const UpdateParams& params, std::span<const NodeId> due, Rng& rng) {
  std::vector<Strategy> next(due.size());
  for (std::size_t i = 0; i < due.size(); ++i) {
    const NodeId focal = due[i];
    const NodeId model = select_neighbor(focal, pop, graph, rng, params.reputation.enabled);
    const double u_focal = accumulate_payoff(focal, pop, graph, spec);
    const double u_model = accumulate_payoff(model, pop, graph, spec);
    const double p = fermi_adopt_probability(u_focal, u_model, params.kappa);
    next[i] = uniform01(rng) < p ? pop.agents[model].strategy : pop.agents[focal].strategy;
  }
  for (std::size_t i = 0; i < due.size(); ++i) {
    Agent& a = pop.agents[due[i]];
    a.reputation = update_reputation(a.reputation, a.strategy, params.reputation.delta);
    a.strategy = next[i];
  }
}

void strategy_update_round(PopulationState& pop, const Graph& graph, const GameSpec& spec,
                           const UpdateParams& params, Rng& rng) {
  std::vector<NodeId> all(pop.agents.size());
  std::iota(all.begin(), all.end(), NodeId{0});
  strategy_update_round(pop, graph, spec, params, all, rng);
}

}  // namespace evogame
