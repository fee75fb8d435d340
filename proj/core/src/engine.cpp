#include "evogame/engine.hpp"

#include <charconv>
#include <cmath>
#include <algorithm>
#include <iterator>
#include <limits>
#include <numeric>
#include <ostream>
#include <queue>
#include <string>
#include <string_view>

#include <fmt/format.h>

#include "evogame/error.hpp"

namespace evogame {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double parse_number(std::string_view text, const std::string& context) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw InvalidParameter(context + ": '" + std::string(text) + "' is not a number");
  }
  return value;
}

}  // namespace

void validate_schedule(const ScheduleKind& schedule) {
  std::visit(Overloaded{
                 [](const FixedInterval& s) {
                   if (!(s.interval > 0.0)) throw InvalidParameter("fixed schedule: interval must be positive");
                 },
                 [](const ExponentialInterval& s) {
                   if (!(s.mean > 0.0)) throw InvalidParameter("exponential schedule: mean must be positive");
                 },
                 [](const PowerLawInterval& s) {
                   if (!(s.alpha > 1.0)) throw InvalidParameter("power-law schedule: alpha must exceed 1");
                   if (!(s.xmin > 0.0)) throw InvalidParameter("power-law schedule: xmin must be positive");
                 },
             },
             schedule);
}

std::string describe_schedule(const ScheduleKind& schedule) {
  return std::visit(Overloaded{
                        [](const FixedInterval& s) { return fmt::format("fixed:{}", s.interval); },
                        [](const ExponentialInterval& s) { return fmt::format("exponential:{}", s.mean); },
                        [](const PowerLawInterval& s) { return fmt::format("powerlaw:{}:{}", s.alpha, s.xmin); },
                    },
                    schedule);
}

ScheduleKind parse_schedule(const std::string& text) {
  std::vector<std::string_view> parts;
  std::string_view rest(text);
  while (true) {
    const auto colon = rest.find(':');
    parts.push_back(rest.substr(0, colon));
    if (colon == std::string_view::npos) break;
    rest.remove_prefix(colon + 1);
  }
  const std::string_view kind = parts[0];
  ScheduleKind out;
  if (kind == "fixed" && parts.size() <= 2) {
    out = FixedInterval{parts.size() == 2 ? parse_number(parts[1], "fixed schedule") : 1.0};
  } else if (kind == "exponential" && parts.size() <= 2) {
    out = ExponentialInterval{parts.size() == 2 ? parse_number(parts[1], "exponential schedule") : 1.0};
  } else if (kind == "powerlaw" && (parts.size() == 1 || parts.size() == 3)) {
    PowerLawInterval p;
    if (parts.size() == 3) {
      p.alpha = parse_number(parts[1], "power-law schedule");
      p.xmin = parse_number(parts[2], "power-law schedule");
    }
    out = p;
  } else {
    throw InvalidParameter("unrecognised schedule '" + text +
                           "' (expected fixed:V, exponential:MEAN or powerlaw:ALPHA:XMIN)");
  }
  validate_schedule(out);
  return out;
}

double next_update_interval(const ScheduleKind& schedule, Rng& rng) {
  return std::visit(Overloaded{
                        [](const FixedInterval& s) { return s.interval; },
                        [&rng](const ExponentialInterval& s) { return -s.mean * std::log(uniform_open01(rng)); },
                        [&rng](const PowerLawInterval& s) {
                          return s.xmin * std::pow(uniform_open01(rng), -1.0 / s.alpha);
                        },
                    },
                    schedule);
}

Graph build_network(const NetworkSpec& spec, std::uint64_t seed) {
  if (spec.kind == NetworkKind::kSquareLattice) return make_square_lattice(spec.side);
  return make_watts_strogatz(spec.n, spec.k, spec.p, seed);
}

void SimConfig::validate() const {
  if (network.kind == NetworkKind::kSquareLattice) {
    if (network.side < 3) throw InvalidParameter("network.side must be at least 3");
  } else {
    if (network.k == 0 || network.k % 2 != 0) throw InvalidParameter("network.k must be even and positive");
    if (network.k >= network.n) throw InvalidParameter("network.k must be smaller than network.n");
    if (!(network.p >= 0.0 && network.p <= 1.0)) throw InvalidParameter("network.p must lie in [0, 1]");
  }
  rates.validate();
  if (games.size() != rates.state_count()) {
    throw InvalidRates(fmt::format("{} game states need {} lambda and mu rates, got {}", games.size(),
                                   games.size() - 1, rates.lambda.size()));
  }
  (void)game_spec();
  if (!(reputation.delta > 0.0)) throw InvalidParameter("reputation.delta must be positive");
  if (!(reputation.init_mean > 0.0 && reputation.init_mean < kMaxReputation)) {
    throw InvalidParameter("reputation.mean must lie in (0, 4)");
  }
  if (!(reputation.init_sigma >= 0.0)) throw InvalidParameter("reputation.sigma must be nonnegative");
  if (!(kappa > 0.0)) throw InvalidParameter("kappa must be positive");
  if (!(initial_cooperators >= 0.0 && initial_cooperators <= 1.0)) {
    throw InvalidParameter("initial cooperator fraction must lie in [0, 1]");
  }
  validate_schedule(schedule);
  if (!(horizon > 0.0)) throw InvalidParameter("horizon must be positive");
  if (!(window.sample_interval > 0.0)) throw InvalidParameter("sample interval must be positive");
  if (sample_count() == 0) throw InvalidParameter("horizon is shorter than one sample interval");
  if (replicas == 0) throw InvalidParameter("replicas must be at least 1");
}

GameSpec SimConfig::game_spec() const { return make_game_spec(games, b, r); }

std::size_t SimConfig::sample_count() const {
  return static_cast<std::size_t>(std::floor(horizon / window.sample_interval + 1e-9));
}

namespace {

enum class EventKind : std::uint8_t { kGameTransition = 0, kStrategyUpdate = 1 };

struct Event {
  double time;
  EventKind kind;
  NodeId agent;

  bool operator>(const Event& o) const noexcept {
    if (time != o.time) return time > o.time;
    if (kind != o.kind) return kind > o.kind;
    return agent > o.agent;
  }
};

using EventQueue = std::priority_queue<Event, std::vector<Event>, std::greater<>>;

}  // namespace

RunMetrics run(const SimConfig& config, const Graph& graph) {
  config.validate();
  if (graph.node_count() == 0) throw InvalidParameter("cannot run on an empty graph");

  const GameSpec spec = config.game_spec();
  const UpdateParams params = config.update_params();
  const std::size_t n_states = spec.state_count();
  RngStreams rng(config.seed);

  PopulationState pop = init_population(graph, spec, config.reputation.init_mean, config.reputation.init_sigma,
                                        rng.init, config.initial_cooperators);
  const bool synchronous = std::holds_alternative<FixedInterval>(config.schedule);

  std::vector<Event> initial;
  initial.reserve(pop.agents.size() * (synchronous ? 1 : 2));
  for (NodeId id = 0; id < pop.agents.size(); ++id) {
    Agent& a = pop.agents[id];
    const auto t = sample_holding_and_target(a.game_state, config.rates, rng.game);
    a.next_game_time = t.holding_time;
    a.next_game_state = static_cast<std::uint32_t>(t.next);
    initial.push_back({a.next_game_time, EventKind::kGameTransition, id});
  }
  if (!synchronous) {
    for (NodeId id = 0; id < pop.agents.size(); ++id) {
      Agent& a = pop.agents[id];
      a.next_update_time = next_update_interval(config.schedule, rng.schedule);
      initial.push_back({a.next_update_time, EventKind::kStrategyUpdate, id});
    }
  }
  EventQueue queue(std::greater<>{}, std::move(initial));

  std::vector<NodeId> everyone(pop.agents.size());
  std::iota(everyone.begin(), everyone.end(), NodeId{0});

  std::vector<std::uint32_t> counts(n_states, 0);
  counts[0] = static_cast<std::uint32_t>(pop.agents.size());

  const std::size_t total_samples = config.sample_count();
  const double sample_dt = config.window.sample_interval;
  const double round_dt = synchronous ? std::get<FixedInterval>(config.schedule).interval : 0.0;

  RunMetrics metrics;
  metrics.state_count = n_states;
  metrics.sample_times.reserve(total_samples);
  metrics.state_counts.reserve(total_samples);
  metrics.coop_fraction.reserve(total_samples);

  std::size_t sample_index = 1;
  std::size_t round_index = 1;
  const double inf = std::numeric_limits<double>::infinity();
  while (sample_index <= total_samples) {
    const double next_sample = static_cast<double>(sample_index) * sample_dt;
    const double next_round = synchronous ? static_cast<double>(round_index) * round_dt : inf;
    const double boundary = std::min(next_sample, next_round);

    while (!queue.empty() && queue.top().time <= boundary) {
      const Event ev = queue.top();
      queue.pop();
      Agent& a = pop.agents[ev.agent];
      pop.time = ev.time;
      if (ev.kind == EventKind::kGameTransition) {
        --counts[a.game_state];
        a.game_state = a.next_game_state;
        ++counts[a.game_state];
        const auto t = sample_holding_and_target(a.game_state, config.rates, rng.game);
        a.next_game_time = ev.time + t.holding_time;
        a.next_game_state = static_cast<std::uint32_t>(t.next);
        queue.push({a.next_game_time, EventKind::kGameTransition, ev.agent});
      } else {
        const NodeId focal = ev.agent;
        strategy_update_round(pop, graph, spec, params, std::span<const NodeId>(&focal, 1), rng.strategy);
        a.next_update_time = ev.time + next_update_interval(config.schedule, rng.schedule);
        queue.push({a.next_update_time, EventKind::kStrategyUpdate, ev.agent});
      }
    }

    pop.time = boundary;
    if (next_round <= next_sample) {
      strategy_update_round(pop, graph, spec, params, everyone, rng.strategy);
      ++round_index;
    } else {
      metrics.sample_times.push_back(next_sample);
      metrics.state_counts.push_back(counts);
      metrics.coop_fraction.push_back(static_cast<double>(pop.cooperator_count()) /
                                      static_cast<double>(pop.agents.size()));
      ++sample_index;
    }
  }
  return metrics;
}

double cooperation_frequency(const RunMetrics& metrics, std::size_t tail) {
  if (tail == 0) throw InvalidParameter("tail must be positive");
  if (tail > metrics.samples()) {
    throw InvalidParameter(fmt::format("tail of {} exceeds the {} recorded samples", tail, metrics.samples()));
  }
  const auto first = metrics.coop_fraction.end() - static_cast<std::ptrdiff_t>(tail);
  return std::accumulate(first, metrics.coop_fraction.end(), 0.0) / static_cast<double>(tail);
}

std::vector<Histogram> state_count_histogram(const RunMetrics& metrics, std::size_t burn_in) {
  if (burn_in >= metrics.samples()) {
    throw InvalidParameter(fmt::format("burn-in of {} leaves none of the {} samples", burn_in, metrics.samples()));
  }
  std::vector<std::map<std::uint32_t, std::size_t>> tallies(metrics.state_count);
  for (std::size_t s = burn_in; s < metrics.samples(); ++s) {
    for (std::size_t i = 0; i < metrics.state_count; ++i) ++tallies[i][metrics.state_counts[s][i]];
  }
  const auto kept = static_cast<double>(metrics.samples() - burn_in);
  std::vector<Histogram> out(metrics.state_count);
  for (std::size_t i = 0; i < metrics.state_count; ++i) {
    for (const auto& [count, hits] : tallies[i]) out[i][count] = static_cast<double>(hits) / kept;
  }
  return out;
}

std::vector<double> mean_state_counts(const RunMetrics& metrics, std::size_t burn_in) {
  if (burn_in >= metrics.samples()) {
    throw InvalidParameter(fmt::format("burn-in of {} leaves none of the {} samples", burn_in, metrics.samples()));
  }
  std::vector<double> sums(metrics.state_count, 0.0);
  for (std::size_t s = burn_in; s < metrics.samples(); ++s) {
    for (std::size_t i = 0; i < metrics.state_count; ++i) sums[i] += metrics.state_counts[s][i];
  }
  for (double& v : sums) v /= static_cast<double>(metrics.samples() - burn_in);
  return sums;
}

double relative_error(double theory, double sim) {
  if (theory == 0.0) throw InvalidParameter("relative error is undefined for a zero theoretical value");
  return std::abs(theory - sim) / std::abs(theory);
}

void write_metrics_csv(const RunMetrics& metrics, std::ostream& out) {
  fmt::memory_buffer buf;
  fmt::format_to(std::back_inserter(buf), "t");
  for (std::size_t i = 0; i < metrics.state_count; ++i) fmt::format_to(std::back_inserter(buf), ",n_G{}", i);
  fmt::format_to(std::back_inserter(buf), ",f_c\n");
  for (std::size_t s = 0; s < metrics.samples(); ++s) {
    fmt::format_to(std::back_inserter(buf), "{}", metrics.sample_times[s]);
    for (auto c : metrics.state_counts[s]) fmt::format_to(std::back_inserter(buf), ",{}", c);
    fmt::format_to(std::back_inserter(buf), ",{}\n", metrics.coop_fraction[s]);
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

void write_histogram_csv(const std::vector<Histogram>& histograms, std::ostream& out) {
  out << "state,count,probability\n";
  for (std::size_t i = 0; i < histograms.size(); ++i) {
    for (const auto& [count, prob] : histograms[i]) out << fmt::format("{},{},{}\n", i, count, prob);
  }
}

}  // namespace evogame
