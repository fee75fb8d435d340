#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "evogame/engine.hpp"

namespace evogame {

enum class ExperimentKind {
  kTimeseries,
  kDist,
  kMuCurves,
  kLambdaHeatmap,
  kPayoffHeatmap,
  kScheduleCompare,
  kScaleSweep,
};

std::string to_string(ExperimentKind kind);
ExperimentKind parse_experiment_kind(const std::string& text);

struct Axis {
  std::string name;
  std::vector<double> values;
};

/// A named set of parameter overrides applied on top of the base config.
struct Variant {
  std::string name = "base";
  std::vector<std::pair<std::string, double>> overrides;
};

struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::kTimeseries;
  SimConfig base;
  std::vector<Axis> axes;
  std::vector<Variant> variants{Variant{}};
  std::vector<ScheduleKind> schedules;  // schedule_compare only
  std::size_t workers = 0;              // 0: one per hardware thread

  std::size_t grid_size() const;
};

/// Reads the INI-style grammar documented in README.md. Throws ParseError
/// (with a line number) on malformed text and ValidationError naming the
/// offending `section.key` on unknown keys or invalid values.
ExperimentSpec parse_config(const std::filesystem::path& path);
ExperimentSpec parse_config_text(const std::string& text);

/// Sets a sweepable parameter by name: b, r, kappa, delta, rep_mean,
/// rep_sigma, init_coop, lambdaI, muI, n, side, k, p, horizon.
/// Throws ValidationError for an unknown name.
void apply_parameter(SimConfig& config, const std::string& name, double value);

/// Inclusive `min:max:step` range or comma-separated list.
std::vector<double> parse_axis_values(const std::string& text);

/// Worker budget: EVOGAME_WORKERS when set, else the spec's, else hardware.
std::size_t resolve_workers(std::size_t configured);

}  // namespace evogame
