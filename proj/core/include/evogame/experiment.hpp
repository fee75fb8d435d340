#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "evogame/config.hpp"
#include "evogame/engine.hpp"

namespace evogame {

/// Seed of replica `replica`. The same replica seeds are reused at every grid
/// point and on both sides of an ablation pair.
std::uint64_t replica_seed(std::uint64_t base_seed, std::size_t replica);

/// One concrete grid point of a sweep.
struct GridPoint {
  std::string variant;
  std::vector<double> axis_values;  // aligned with ExperimentSpec::axes
  SimConfig config;
};

/// Variants outermost, then axes in declaration order, last axis fastest.
std::vector<GridPoint> expand_grid(const ExperimentSpec& spec);

/// Runs `replicas` independent runs of `config` (graph rebuilt per replica).
std::vector<RunMetrics> run_replicas(const SimConfig& config, std::size_t workers);

struct SweepRow {
  std::string variant;
  std::vector<double> axis_values;
  double fc_mean = 0.0;
  double fc_std = 0.0;
  std::size_t replicas = 0;
};

struct SweepResult {
  std::vector<std::string> axis_names;
  std::vector<SweepRow> rows;
};

/// Cooperation frequency (mean over the last `tail` samples) at every grid
/// point, aggregated over replicas as mean and sample standard deviation.
/// A failing point aborts with its coordinates in the message.
SweepResult run_sweep(const ExperimentSpec& spec, std::size_t workers);

struct DistRow {
  std::string state;
  double theory = 0.0;
  double simulation = 0.0;
  double relative_error = 0.0;
};

struct DistResult {
  std::vector<DistRow> table;
  std::vector<Histogram> histograms;  // averaged over replicas
};

/// Theory vs time-averaged occupancy after `window.burn_in` samples.
DistResult run_dist(const SimConfig& config, std::size_t workers);

/// Header `variant,<axes...>,f_c_mean,f_c_std,replicas`.
void write_sweep_csv(const SweepResult& result, std::ostream& out);
/// Header `state,name,theory,simulation,relative_error`.
void write_dist_csv(const DistResult& result, std::ostream& out);
/// Header `state,pi,expected_count`; expected counts at 6 significant digits.
void write_theory_csv(const TransitionRates& rates, std::size_t population, std::ostream& out);

double sample_mean(std::span<const double> values);
/// n-1 denominator; zero for fewer than two values.
double sample_variance(std::span<const double> values);

/// Runs `body(i)` for i in [0, count) on up to `workers` threads. Rethrows the
/// exception of the lowest failing index.
void parallel_for(std::size_t count, std::size_t workers, const std::function<void(std::size_t)>& body);

/// Writes the experiment's CSVs plus `manifest.json` into `output_dir` and
/// returns the written paths.
std::vector<std::filesystem::path> run_experiment(const ExperimentSpec& spec,
                                                  const std::filesystem::path& output_dir);

}  // namespace evogame
