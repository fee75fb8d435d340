#include "evogame/experiment.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>
#include <json.hpp>

#include "evogame/error.hpp"

namespace evogame {

namespace fs = std::filesystem;

std::uint64_t replica_seed(std::uint64_t base_seed, std::size_t replica) { return mix_seed(base_seed, replica); }

void parallel_for(std::size_t count, std::size_t workers, const std::function<void(std::size_t)>& body) {
  if (count == 0) return;
  workers = std::max<std::size_t>(1, std::min(workers, count));
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

double sample_mean(std::span<const double> values) {
  if (values.empty()) return 0.0;
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double sample_variance(std::span<const double> values) {
  if (values.size() < 2) return 0.0;
  const double m = sample_mean(values);
  double ss = 0.0;
  for (double v : values) ss += (v - m) * (v - m);
  return ss / static_cast<double>(values.size() - 1);
}

std::vector<GridPoint> expand_grid(const ExperimentSpec& spec) {
  std::vector<GridPoint> points;
  points.reserve(spec.grid_size());
  for (const auto& variant : spec.variants) {
    SimConfig varied = spec.base;
    for (const auto& [name, value] : variant.overrides) apply_parameter(varied, name, value);
    std::size_t cells = 1;
    for (const auto& a : spec.axes) cells *= a.values.size();
    for (std::size_t cell = 0; cell < cells; ++cell) {
      GridPoint p{variant.name, std::vector<double>(spec.axes.size()), varied};
      std::size_t rest = cell;
      for (std::size_t a = spec.axes.size(); a-- > 0;) {
        const auto& values = spec.axes[a].values;
        p.axis_values[a] = values[rest % values.size()];
        rest /= values.size();
      }
      for (std::size_t a = 0; a < spec.axes.size(); ++a) apply_parameter(p.config, spec.axes[a].name, p.axis_values[a]);
      points.push_back(std::move(p));
    }
  }
  return points;
}

namespace {

std::string coordinates(const ExperimentSpec& spec, const GridPoint& p) {
  std::string out = "variant=" + p.variant;
  for (std::size_t a = 0; a < spec.axes.size(); ++a) out += fmt::format(", {}={}", spec.axes[a].name, p.axis_values[a]);
  return out;
}

RunMetrics run_replica(const SimConfig& config, std::size_t replica) {
  SimConfig c = config;
  c.seed = replica_seed(config.seed, replica);
  const Graph graph = build_network(c.network, c.seed);
  return run(c, graph);
}

}  // namespace

std::vector<RunMetrics> run_replicas(const SimConfig& config, std::size_t workers) {
  config.validate();
  std::vector<RunMetrics> out(config.replicas);
  parallel_for(config.replicas, workers, [&](std::size_t k) { out[k] = run_replica(config, k); });
  return out;
}

SweepResult run_sweep(const ExperimentSpec& spec, std::size_t workers) {
  const auto points = expand_grid(spec);
  for (const auto& p : points) {
    try {
      p.config.validate();
    } catch (const std::exception& ex) {
      throw std::runtime_error(fmt::format("grid point ({}): {}", coordinates(spec, p), ex.what()));
    }
  }
  const std::size_t replicas = spec.base.replicas;
  std::vector<double> fc(points.size() * replicas);
  parallel_for(fc.size(), workers, [&](std::size_t task) {
    const auto& p = points[task / replicas];
    const std::size_t k = task % replicas;
    try {
      fc[task] = cooperation_frequency(run_replica(p.config, k), p.config.window.tail);
    } catch (const std::exception& ex) {
      throw std::runtime_error(fmt::format("grid point ({}, replica={}): {}", coordinates(spec, p), k, ex.what()));
    }
  });

  SweepResult result;
  for (const auto& a : spec.axes) result.axis_names.push_back(a.name);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const std::span<const double> vals(fc.data() + i * replicas, replicas);
    result.rows.push_back({points[i].variant, points[i].axis_values, sample_mean(vals),
                           std::sqrt(sample_variance(vals)), replicas});
  }
  return result;
}

DistResult run_dist(const SimConfig& config, std::size_t workers) {
  const auto runs = run_replicas(config, workers);
  const std::size_t n_agents = config.network.node_count();
  const auto theory = expected_counts(config.rates, n_agents);
  const std::size_t burn_in = config.window.burn_in;

  DistResult result;
  std::vector<double> sim(theory.size(), 0.0);
  result.histograms.resize(theory.size());
  for (const auto& m : runs) {
    const auto means = mean_state_counts(m, burn_in);
    const auto hist = state_count_histogram(m, burn_in);
    for (std::size_t i = 0; i < sim.size(); ++i) {
      sim[i] += means[i] / static_cast<double>(runs.size());
      for (const auto& [count, prob] : hist[i]) result.histograms[i][count] += prob / static_cast<double>(runs.size());
    }
  }
  const auto games = config.games;
  for (std::size_t i = 0; i < theory.size(); ++i) {
    result.table.push_back({games[i], theory[i], sim[i], relative_error(theory[i], sim[i])});
  }
  return result;
}

void write_sweep_csv(const SweepResult& result, std::ostream& out) {
  out << "variant";
  for (const auto& name : result.axis_names) out << ',' << name;
  out << ",f_c_mean,f_c_std,replicas\n";
  for (const auto& row : result.rows) {
    out << row.variant;
    for (double v : row.axis_values) out << fmt::format(",{}", v);
    out << fmt::format(",{},{},{}\n", row.fc_mean, row.fc_std, row.replicas);
  }
}

void write_dist_csv(const DistResult& result, std::ostream& out) {
  out << "state,name,theory,simulation,relative_error\n";
  for (std::size_t i = 0; i < result.table.size(); ++i) {
    const auto& r = result.table[i];
    out << fmt::format("{},{},{},{},{}\n", i, r.state, r.theory, r.simulation, r.relative_error);
  }
}

void write_theory_csv(const TransitionRates& rates, std::size_t population, std::ostream& out) {
  const auto pi = stationary_distribution(rates).pi;
  const auto counts = expected_counts(rates, population);
  out << "state,pi,expected_count\n";
  for (std::size_t i = 0; i < pi.size(); ++i) out << fmt::format("{},{:.12g},{:.6g}\n", i, pi[i], counts[i]);
}

namespace {

nlohmann::ordered_json config_json(const SimConfig& c) {
  nlohmann::ordered_json j;
  if (c.network.kind == NetworkKind::kSquareLattice) {
    j["network"] = {{"kind", "lattice"}, {"side", c.network.side}};
  } else {
    j["network"] = {{"kind", "ws"}, {"n", c.network.n}, {"k", c.network.k}, {"p", c.network.p}};
  }
  j["game"] = {{"states", c.games}, {"b", c.b}, {"r", c.r}};
  j["rates"] = {{"lambda", c.rates.lambda}, {"mu", c.rates.mu}};
  j["reputation"] = {{"enabled", c.reputation.enabled},
                     {"delta", c.reputation.delta},
                     {"mean", c.reputation.init_mean},
                     {"sigma", c.reputation.init_sigma}};
  j["strategy"] = {{"kappa", c.kappa},
                   {"schedule", describe_schedule(c.schedule)},
                   {"init_coop", c.initial_cooperators}};
  j["horizon"] = c.horizon;
  j["sample_interval"] = c.window.sample_interval;
  j["tail"] = c.window.tail;
  j["burn_in"] = c.window.burn_in;
  j["seed"] = c.seed;
  j["replicas"] = c.replicas;
  return j;
}

fs::path write_file(const fs::path& path, const std::function<void(std::ostream&)>& body) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  body(out);
  out.flush();
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
  return path;
}

void write_scale_variance(const SweepResult& result, const std::string& size_axis, std::ostream& out) {
  std::size_t size_col = 0;
  while (result.axis_names[size_col] != size_axis) ++size_col;
  std::map<std::string, std::vector<double>> groups;
  std::vector<std::string> order;
  for (const auto& row : result.rows) {
    std::string key = row.variant;
    for (std::size_t a = 0; a < row.axis_values.size(); ++a) {
      if (a != size_col) key += fmt::format(",{}", row.axis_values[a]);
    }
    if (!groups.contains(key)) order.push_back(key);
    groups[key].push_back(row.fc_mean);
  }
  out << "variant";
  for (std::size_t a = 0; a < result.axis_names.size(); ++a) {
    if (a != size_col) out << ',' << result.axis_names[a];
  }
  out << ",f_c_variance,points\n";
  for (const auto& key : order) {
    const auto& v = groups[key];
    out << fmt::format("{},{},{}\n", key, sample_variance(v), v.size());
  }
}

}  // namespace

std::vector<fs::path> run_experiment(const ExperimentSpec& spec, const fs::path& output_dir) {
  fs::create_directories(output_dir);
  const std::size_t workers = resolve_workers(spec.workers);
  std::vector<fs::path> written;
  const auto& base = spec.base;

  switch (spec.kind) {
    case ExperimentKind::kTimeseries: {
      const auto runs = run_replicas(base, workers);
      for (std::size_t k = 0; k < runs.size(); ++k) {
        const auto name = runs.size() == 1 ? std::string("fig3_timeseries.csv")
                                           : fmt::format("fig3_timeseries_rep{}.csv", k);
        written.push_back(write_file(output_dir / name,
                                     [&](std::ostream& o) { write_metrics_csv(runs[k], o); }));
      }
      break;
    }
    case ExperimentKind::kDist: {
      const auto dist = run_dist(base, workers);
      written.push_back(write_file(output_dir / "tab2_dist.csv", [&](std::ostream& o) { write_dist_csv(dist, o); }));
      written.push_back(write_file(output_dir / "fig4_histogram.csv",
                                   [&](std::ostream& o) { write_histogram_csv(dist.histograms, o); }));
      break;
    }
    case ExperimentKind::kMuCurves: {
      const auto res = run_sweep(spec, workers);
      written.push_back(write_file(output_dir / "fig6_mu_curves.csv", [&](std::ostream& o) { write_sweep_csv(res, o); }));
      break;
    }
    case ExperimentKind::kLambdaHeatmap: {
      const auto res = run_sweep(spec, workers);
      written.push_back(
          write_file(output_dir / "fig7_lambda_heatmap.csv", [&](std::ostream& o) { write_sweep_csv(res, o); }));
      break;
    }
    case ExperimentKind::kPayoffHeatmap: {
      ExperimentSpec with = spec;
      with.base.reputation.enabled = true;
      ExperimentSpec without = spec;
      without.base.reputation.enabled = false;
      const auto on = run_sweep(with, workers);
      const auto off = run_sweep(without, workers);
      written.push_back(
          write_file(output_dir / "fig8_payoff_heatmap.csv", [&](std::ostream& o) { write_sweep_csv(on, o); }));
      written.push_back(
          write_file(output_dir / "fig9_payoff_heatmap_norep.csv", [&](std::ostream& o) { write_sweep_csv(off, o); }));
      break;
    }
    case ExperimentKind::kScheduleCompare: {
      written.push_back(write_file(output_dir / "schedule_compare.csv", [&](std::ostream& o) {
        o << "schedule,t,f_c_mean,f_c_std,replicas\n";
        for (const auto& schedule : spec.schedules) {
          SimConfig c = base;
          c.schedule = schedule;
          const auto runs = run_replicas(c, workers);
          const std::string label = describe_schedule(schedule);
          std::vector<double> at(runs.size());
          for (std::size_t s = 0; s < runs.front().samples(); ++s) {
            for (std::size_t k = 0; k < runs.size(); ++k) at[k] = runs[k].coop_fraction[s];
            o << fmt::format("{},{},{},{},{}\n", label, runs.front().sample_times[s], sample_mean(at),
                             std::sqrt(sample_variance(at)), runs.size());
          }
        }
      }));
      break;
    }
    case ExperimentKind::kScaleSweep: {
      const auto res = run_sweep(spec, workers);
      const std::string size_axis = base.network.kind == NetworkKind::kSquareLattice ? "side" : "n";
      written.push_back(write_file(output_dir / "fig10_scale_sweep.csv", [&](std::ostream& o) { write_sweep_csv(res, o); }));
      written.push_back(write_file(output_dir / "fig10_scale_variance.csv",
                                   [&](std::ostream& o) { write_scale_variance(res, size_axis, o); }));
      break;
    }
  }

  nlohmann::ordered_json manifest;
  manifest["kind"] = to_string(spec.kind);
  manifest["config"] = config_json(base);
  std::vector<std::uint64_t> seeds;
  for (std::size_t k = 0; k < base.replicas; ++k) seeds.push_back(replica_seed(base.seed, k));
  manifest["replica_seeds"] = seeds;
  auto axes = nlohmann::ordered_json::array();
  for (const auto& a : spec.axes) axes.push_back({{"name", a.name}, {"values", a.values}});
  manifest["axes"] = axes;
  auto variants = nlohmann::ordered_json::array();
  for (const auto& v : spec.variants) {
    nlohmann::ordered_json o;
    for (const auto& [name, value] : v.overrides) o[name] = value;
    variants.push_back({{"name", v.name}, {"overrides", o}});
  }
  manifest["variants"] = variants;
  if (!spec.schedules.empty()) {
    std::vector<std::string> labels;
    for (const auto& s : spec.schedules) labels.push_back(describe_schedule(s));
    manifest["schedules"] = labels;
  }
  std::vector<std::string> files;
  for (const auto& p : written) files.push_back(p.filename().string());
  manifest["files"] = files;
  written.push_back(write_file(output_dir / "manifest.json", [&](std::ostream& o) { o << manifest.dump(2) << '\n'; }));
  return written;
}

}  // namespace evogame
