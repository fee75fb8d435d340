// evogame: stationary theory, single runs and experiment sweeps from the
// command line. All randomness comes from the config seed (or --seed).

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "evogame/evogame.hpp"

namespace {

struct RunOptions {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::string dump_graph;
};

void add_run_options(CLI::App* cmd, RunOptions& opts) {
  cmd->add_option("--config", opts.config, "Experiment config file")->required()->check(CLI::ExistingFile);
  cmd->add_option("--out", opts.out, "Output directory")->required();
  cmd->add_option("--seed", opts.seed, "Override the config seed");
}

evogame::ExperimentSpec load(const RunOptions& opts) {
  auto spec = evogame::parse_config(opts.config);
  if (opts.seed) spec.base.seed = *opts.seed;
  return spec;
}

void report(const std::vector<std::filesystem::path>& files) {
  for (const auto& f : files) std::cout << f.string() << '\n';
}

int run_theory(const std::vector<double>& rates, std::size_t population) {
  if (rates.size() < 2 || rates.size() % 2 != 0) {
    throw evogame::InvalidRates("--rates needs 2n values: lambda_0..lambda_{n-1} then mu_1..mu_n");
  }
  const auto half = static_cast<std::ptrdiff_t>(rates.size() / 2);
  evogame::TransitionRates tr{{rates.begin(), rates.begin() + half}, {rates.begin() + half, rates.end()}};
  evogame::write_theory_csv(tr, population, std::cout);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Evolutionary games with Markov game transitions on networks"};
  app.require_subcommand(1);

  std::vector<double> rates;
  std::size_t population = 1000;
  auto* theory = app.add_subcommand("theory", "Print stationary distribution and expected counts as CSV");
  theory->add_option("--rates", rates, "lambda_0..lambda_{n-1},mu_1..mu_n")->required()->delimiter(',');
  theory->add_option("--n", population, "Population size");

  RunOptions sim_opts, dist_opts, sweep_opts;
  auto* simulate = app.add_subcommand("simulate", "Run one timeseries and write fig3_timeseries.csv");
  add_run_options(simulate, sim_opts);
  simulate->add_option("--dump-graph", sim_opts.dump_graph, "Also write the network as an edge list");
  auto* dist = app.add_subcommand("dist", "Run the state-count histogram study");
  add_run_options(dist, dist_opts);
  auto* sweep = app.add_subcommand("sweep", "Run the experiment named by the config's kind");
  add_run_options(sweep, sweep_opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*theory) return run_theory(rates, population);
    if (*simulate) {
      auto spec = load(sim_opts);
      spec.kind = evogame::ExperimentKind::kTimeseries;
      spec.axes.clear();
      spec.variants = {evogame::Variant{}};
      spec.base.replicas = 1;
      if (!sim_opts.dump_graph.empty()) {
        std::ofstream g(sim_opts.dump_graph);
        evogame::write_edge_list(
            evogame::build_network(spec.base.network, evogame::replica_seed(spec.base.seed, 0)), g);
      }
      report(evogame::run_experiment(spec, sim_opts.out));
      return 0;
    }
    if (*dist) {
      auto spec = load(dist_opts);
      if (spec.kind != evogame::ExperimentKind::kDist && !spec.axes.empty()) {
        throw evogame::ValidationError("sweep", "dist runs take no sweep axes");
      }
      spec.kind = evogame::ExperimentKind::kDist;
      report(evogame::run_experiment(spec, dist_opts.out));
      return 0;
    }
    if (*sweep) {
      report(evogame::run_experiment(load(sweep_opts), sweep_opts.out));
      return 0;
    }
  } catch (const evogame::ParseError& e) {
    std::cerr << "evogame: parse error: " << e.what() << '\n';
    return 2;
  } catch (const evogame::ValidationError& e) {
    std::cerr << "evogame: invalid config: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "evogame: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
