#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "evogame/gamespace.hpp"
#include "evogame/population.hpp"
#include "evogame/rng.hpp"
#include "evogame/topology.hpp"

namespace evogame {

// Strategy-update schedules. Fixed intervals update every agent together;
// the random ones give each agent its own clock.
struct FixedInterval {
  double interval = 1.0;
};
struct ExponentialInterval {
  double mean = 1.0;
};
/// Pareto (type I) intervals with shape alpha on [xmin, inf): survival
/// (xmin / x)^alpha, mean alpha * xmin / (alpha - 1).
struct PowerLawInterval {
  double alpha = 2.5;
  double xmin = 0.6;
};
using ScheduleKind = std::variant<FixedInterval, ExponentialInterval, PowerLawInterval>;

void validate_schedule(const ScheduleKind& schedule);
/// "fixed:1", "exponential:1", "powerlaw:2.5:0.6".
std::string describe_schedule(const ScheduleKind& schedule);
/// Inverse of describe_schedule. Throws InvalidParameter on bad input.
ScheduleKind parse_schedule(const std::string& text);
double next_update_interval(const ScheduleKind& schedule, Rng& rng);

enum class NetworkKind { kSquareLattice, kWattsStrogatz };

struct NetworkSpec {
  NetworkKind kind = NetworkKind::kSquareLattice;
  std::size_t side = 200;  // lattice
  std::size_t n = 10000;   // WS
  std::size_t k = 4;       // WS
  double p = 0.1;          // WS

  std::size_t node_count() const noexcept { return kind == NetworkKind::kSquareLattice ? side * side : n; }
};

Graph build_network(const NetworkSpec& spec, std::uint64_t seed);

struct MetricsWindow {
  double sample_interval = 1.0;
  std::size_t tail = 500;      // samples averaged for cooperation frequency
  std::size_t burn_in = 1000;  // samples discarded before histograms
};

/// Everything needed to reproduce one run.
struct SimConfig {
  NetworkSpec network;
  std::vector<std::string> games{"PDG", "SDG", "SHG"};
  double b = 1.5;
  double r = 0.5;
  TransitionRates rates{{0.02, 0.06}, {0.04, 0.08}};
  ReputationParams reputation;
  double kappa = 0.1;
  double initial_cooperators = 0.5;
  ScheduleKind schedule = FixedInterval{1.0};
  double horizon = 1e4;
  MetricsWindow window;
  std::uint64_t seed = 1;
  std::size_t replicas = 5;

  /// Throws InvalidParameter / InvalidRates.
  void validate() const;
  GameSpec game_spec() const;
  UpdateParams update_params() const { return {kappa, reputation}; }
  std::size_t sample_count() const;
};

struct RunMetrics {
  std::size_t state_count = 0;
  std::vector<double> sample_times;
  std::vector<std::vector<std::uint32_t>> state_counts;  // [sample][state]
  std::vector<double> coop_fraction;

  std::size_t samples() const noexcept { return sample_times.size(); }
  bool operator==(const RunMetrics&) const = default;
};

/// Runs the coupled game-transition / strategy-update dynamics on `graph`
/// with `config.seed` as the only source of randomness.
RunMetrics run(const SimConfig& config, const Graph& graph);

/// Mean cooperation fraction over the last `tail` samples.
double cooperation_frequency(const RunMetrics& metrics, std::size_t tail);

using Histogram = std::map<std::uint32_t, double>;

/// Per state, the empirical law of the occupancy count over the samples after
/// the first `burn_in`.
std::vector<Histogram> state_count_histogram(const RunMetrics& metrics, std::size_t burn_in);

/// Per state, the time-averaged occupancy after the first `burn_in` samples.
std::vector<double> mean_state_counts(const RunMetrics& metrics, std::size_t burn_in);

/// |theory - sim| / theory. Throws InvalidParameter when theory is zero.
double relative_error(double theory, double sim);

/// Header `t,n_G0,...,n_Gn,f_c`.
void write_metrics_csv(const RunMetrics& metrics, std::ostream& out);
/// Header `state,count,probability`.
void write_histogram_csv(const std::vector<Histogram>& histograms, std::ostream& out);

}  // namespace evogame
