#include "evogame/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include <fmt/format.h>

#include "evogame/error.hpp"

namespace evogame {

namespace {

struct Entry {
  std::string section;
  std::string key;
  std::string value;
  std::size_t line;

  std::string qualified() const { return section + "." + key; }
};

std::string trim(std::string_view s) {
  const auto* ws = " \t\r\n";
  const auto first = s.find_first_not_of(ws);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(ws);
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::vector<Entry> tokenize(const std::string& text) {
  std::vector<Entry> entries;
  std::set<std::pair<std::string, std::string>> seen;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty() || line.front() == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) {
        throw ParseError(fmt::format("line {}: malformed section header '{}'", line_no, line), line_no);
      }
      section = trim(std::string_view(line).substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError(fmt::format("line {}: expected 'key = value', got '{}'", line_no, line), line_no);
    }
    Entry e{section, trim(std::string_view(line).substr(0, eq)), trim(std::string_view(line).substr(eq + 1)),
            line_no};
    if (e.key.empty()) throw ParseError(fmt::format("line {}: empty key", line_no), line_no);
    if (section.empty()) {
      throw ParseError(fmt::format("line {}: key '{}' appears before any [section]", line_no, e.key), line_no);
    }
    if (!seen.insert({e.section, e.key}).second) {
      throw ParseError(fmt::format("line {}: duplicate key '{}'", line_no, e.qualified()), line_no);
    }
    entries.push_back(std::move(e));
  }
  return entries;
}

[[noreturn]] void invalid(const Entry& e, const std::string& what) {
  throw ValidationError(e.qualified(), fmt::format("{} (line {})", what, e.line));
}

double to_double(const Entry& e, const std::string& text) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc() || ptr != end || !std::isfinite(v)) {
    invalid(e, fmt::format("'{}' is not a number", text));
  }
  return v;
}

double to_double(const Entry& e) { return to_double(e, e.value); }

std::uint64_t to_uint(const Entry& e) {
  std::uint64_t v = 0;
  const auto* end = e.value.data() + e.value.size();
  auto [ptr, ec] = std::from_chars(e.value.data(), end, v);
  if (e.value.empty() || ec != std::errc() || ptr != end) {
    invalid(e, fmt::format("'{}' is not a nonnegative integer", e.value));
  }
  return v;
}

bool to_bool(const Entry& e) {
  std::string v = e.value;
  std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::tolower(c); });
  if (v == "true" || v == "on" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "off" || v == "no" || v == "0") return false;
  invalid(e, fmt::format("'{}' is not a boolean", e.value));
}

std::vector<double> to_doubles(const Entry& e) {
  std::vector<double> out;
  for (const auto& item : split(e.value, ',')) out.push_back(to_double(e, item));
  if (out.empty()) invalid(e, "expected a comma-separated list of numbers");
  return out;
}

double round12(double v) { return std::round(v * 1e12) / 1e12; }

bool is_indexed(const std::string& name, const std::string& prefix, std::size_t& index) {
  if (name.size() <= prefix.size() || name.compare(0, prefix.size(), prefix) != 0) return false;
  const auto* first = name.data() + prefix.size();
  const auto* last = name.data() + name.size();
  auto [ptr, ec] = std::from_chars(first, last, index);
  return ec == std::errc() && ptr == last;
}

void apply_experiment(ExperimentSpec& spec, const Entry& e) {
  SimConfig& c = spec.base;
  if (e.key == "kind") {
    try {
      spec.kind = parse_experiment_kind(e.value);
    } catch (const InvalidParameter& ex) {
      invalid(e, ex.what());
    }
  } else if (e.key == "seed") {
    c.seed = to_uint(e);
  } else if (e.key == "replicas") {
    c.replicas = to_uint(e);
  } else if (e.key == "workers") {
    spec.workers = to_uint(e);
  } else if (e.key == "horizon") {
    c.horizon = to_double(e);
  } else if (e.key == "tail") {
    c.window.tail = to_uint(e);
  } else if (e.key == "burn_in") {
    c.window.burn_in = to_uint(e);
  } else if (e.key == "sample_interval") {
    c.window.sample_interval = to_double(e);
  } else {
    invalid(e, "unknown key");
  }
}

void apply_network(SimConfig& c, const Entry& e) {
  if (e.key == "kind") {
    if (e.value == "lattice") {
      c.network.kind = NetworkKind::kSquareLattice;
    } else if (e.value == "ws") {
      c.network.kind = NetworkKind::kWattsStrogatz;
    } else {
      invalid(e, fmt::format("'{}' is not a network kind (expected lattice or ws)", e.value));
    }
  } else if (e.key == "side") {
    c.network.side = to_uint(e);
  } else if (e.key == "n") {
    c.network.n = to_uint(e);
  } else if (e.key == "k") {
    c.network.k = to_uint(e);
  } else if (e.key == "p") {
    c.network.p = to_double(e);
  } else {
    invalid(e, "unknown key");
  }
}

void apply_game(SimConfig& c, const Entry& e) {
  if (e.key == "states") {
    c.games = split(e.value, ',');
    for (const auto& g : c.games) {
      try {
        (void)standard_matrix(g, c.b, c.r);
      } catch (const InvalidParameter& ex) {
        invalid(e, ex.what());
      }
    }
  } else if (e.key == "b") {
    c.b = to_double(e);
  } else if (e.key == "r") {
    c.r = to_double(e);
  } else {
    invalid(e, "unknown key");
  }
}

void apply_rates(SimConfig& c, const Entry& e) {
  if (e.key == "lambda") {
    c.rates.lambda = to_doubles(e);
  } else if (e.key == "mu") {
    c.rates.mu = to_doubles(e);
  } else {
    invalid(e, "unknown key");
  }
}

void apply_reputation(SimConfig& c, const Entry& e) {
  if (e.key == "enabled") {
    c.reputation.enabled = to_bool(e);
  } else if (e.key == "delta") {
    c.reputation.delta = to_double(e);
  } else if (e.key == "mean") {
    c.reputation.init_mean = to_double(e);
  } else if (e.key == "sigma") {
    c.reputation.init_sigma = to_double(e);
  } else {
    invalid(e, "unknown key");
  }
}

void apply_strategy(SimConfig& c, const Entry& e) {
  if (e.key == "kappa") {
    c.kappa = to_double(e);
  } else if (e.key == "schedule") {
    try {
      c.schedule = parse_schedule(e.value);
    } catch (const InvalidParameter& ex) {
      invalid(e, ex.what());
    }
  } else if (e.key == "init_coop") {
    c.initial_cooperators = to_double(e);
  } else {
    invalid(e, "unknown key");
  }
}

void require_axis(const ExperimentSpec& spec, const std::string& name) {
  for (const auto& a : spec.axes) {
    if (a.name == name) return;
  }
  throw ValidationError("sweep." + name,
                        fmt::format("experiment kind '{}' requires a '{}' axis", to_string(spec.kind), name));
}

void check_kind_requirements(const ExperimentSpec& spec) {
  const bool has_axes = !spec.axes.empty();
  const bool has_variants = spec.variants.size() > 1 || !spec.variants.front().overrides.empty();
  switch (spec.kind) {
    case ExperimentKind::kTimeseries:
    case ExperimentKind::kDist:
      if (has_axes || has_variants) {
        throw ValidationError("sweep", fmt::format("experiment kind '{}' takes no sweep axes or variants",
                                                   to_string(spec.kind)));
      }
      break;
    case ExperimentKind::kMuCurves:
      require_axis(spec, "mu1");
      break;
    case ExperimentKind::kLambdaHeatmap:
      require_axis(spec, "lambda0");
      require_axis(spec, "lambda1");
      break;
    case ExperimentKind::kPayoffHeatmap:
      require_axis(spec, "b");
      require_axis(spec, "r");
      break;
    case ExperimentKind::kScheduleCompare:
      if (spec.schedules.empty()) {
        throw ValidationError("sweep.schedules", "schedule_compare needs a non-empty schedules list");
      }
      if (has_axes) throw ValidationError("sweep", "schedule_compare takes no numeric axes");
      break;
    case ExperimentKind::kScaleSweep:
      require_axis(spec, spec.base.network.kind == NetworkKind::kSquareLattice ? "side" : "n");
      break;
  }
}

}  // namespace

std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::kTimeseries: return "timeseries";
    case ExperimentKind::kDist: return "dist";
    case ExperimentKind::kMuCurves: return "mu_curves";
    case ExperimentKind::kLambdaHeatmap: return "lambda_heatmap";
    case ExperimentKind::kPayoffHeatmap: return "payoff_heatmap";
    case ExperimentKind::kScheduleCompare: return "schedule_compare";
    case ExperimentKind::kScaleSweep: return "scale_sweep";
  }
  return "timeseries";
}

ExperimentKind parse_experiment_kind(const std::string& text) {
  for (auto k : {ExperimentKind::kTimeseries, ExperimentKind::kDist, ExperimentKind::kMuCurves,
                 ExperimentKind::kLambdaHeatmap, ExperimentKind::kPayoffHeatmap, ExperimentKind::kScheduleCompare,
                 ExperimentKind::kScaleSweep}) {
    if (to_string(k) == text) return k;
  }
  throw InvalidParameter(fmt::format("unknown experiment kind '{}'", text));
}

std::size_t ExperimentSpec::grid_size() const {
  std::size_t n = variants.size();
  for (const auto& a : axes) n *= a.values.size();
  return n;
}

std::vector<double> parse_axis_values(const std::string& text) {
  const Entry e{"sweep", "axis", text, 0};
  if (text.find(':') != std::string::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw InvalidParameter(fmt::format("axis range '{}' must be min:max:step", text));
    const double lo = to_double(e, parts[0]);
    const double hi = to_double(e, parts[1]);
    const double step = to_double(e, parts[2]);
    if (!(step > 0.0) || hi < lo) throw InvalidParameter(fmt::format("axis range '{}' is empty", text));
    const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    std::vector<double> values(count);
    for (std::size_t i = 0; i < count; ++i) values[i] = round12(lo + static_cast<double>(i) * step);
    return values;
  }
  auto values = to_doubles(e);
  return values;
}

void apply_parameter(SimConfig& c, const std::string& name, double value) {
  std::size_t idx = 0;
  auto as_size = [&]() -> std::size_t {
    if (!(value >= 0.0) || value != std::floor(value)) {
      throw ValidationError(name, fmt::format("'{}' must be a nonnegative integer", value));
    }
    return static_cast<std::size_t>(value);
  };
  if (name == "b") {
    c.b = value;
  } else if (name == "r") {
    c.r = value;
  } else if (name == "kappa") {
    c.kappa = value;
  } else if (name == "delta") {
    c.reputation.delta = value;
  } else if (name == "rep_mean") {
    c.reputation.init_mean = value;
  } else if (name == "rep_sigma") {
    c.reputation.init_sigma = value;
  } else if (name == "init_coop") {
    c.initial_cooperators = value;
  } else if (name == "horizon") {
    c.horizon = value;
  } else if (name == "n") {
    c.network.n = as_size();
  } else if (name == "side") {
    c.network.side = as_size();
  } else if (name == "k") {
    c.network.k = as_size();
  } else if (name == "p") {
    c.network.p = value;
  } else if (is_indexed(name, "lambda", idx)) {
    if (idx >= c.rates.lambda.size()) throw ValidationError(name, "no such transition rate");
    c.rates.lambda[idx] = value;
  } else if (is_indexed(name, "mu", idx)) {
    if (idx == 0 || idx > c.rates.mu.size()) throw ValidationError(name, "no such transition rate");
    c.rates.mu[idx - 1] = value;
  } else {
    throw ValidationError(name, "unknown parameter");
  }
}

ExperimentSpec parse_config_text(const std::string& text) {
  ExperimentSpec spec;
  const auto entries = tokenize(text);
  std::vector<const Entry*> deferred;  // sweep axes and variants need final rates
  for (const auto& e : entries) {
    if (e.section == "experiment") {
      apply_experiment(spec, e);
    } else if (e.section == "network") {
      apply_network(spec.base, e);
    } else if (e.section == "game") {
      apply_game(spec.base, e);
    } else if (e.section == "rates") {
      apply_rates(spec.base, e);
    } else if (e.section == "reputation") {
      apply_reputation(spec.base, e);
    } else if (e.section == "strategy") {
      apply_strategy(spec.base, e);
    } else if (e.section == "sweep" || e.section == "variants") {
      deferred.push_back(&e);
    } else {
      invalid(e, fmt::format("unknown section [{}]", e.section));
    }
  }

  try {
    spec.base.validate();
  } catch (const InvalidRates& ex) {
    throw ValidationError("rates", fmt::format("TransitionRates invariant violated: {}", ex.what()));
  } catch (const InvalidParameter& ex) {
    throw ValidationError("config", ex.what());
  }

  std::vector<Variant> variants;
  for (const Entry* e : deferred) {
    if (e->section == "sweep") {
      if (e->key == "schedules") {
        for (const auto& item : split(e->value, ',')) {
          try {
            spec.schedules.push_back(parse_schedule(item));
          } catch (const InvalidParameter& ex) {
            invalid(*e, ex.what());
          }
        }
        continue;
      }
      Axis axis{e->key, {}};
      try {
        axis.values = parse_axis_values(e->value);
        SimConfig probe = spec.base;
        apply_parameter(probe, axis.name, axis.values.front());
      } catch (const InvalidParameter& ex) {
        invalid(*e, ex.what());
      } catch (const ValidationError& ex) {
        invalid(*e, ex.what());
      }
      if (axis.values.empty()) invalid(*e, "axis has no values");
      spec.axes.push_back(std::move(axis));
    } else {
      Variant v{e->key, {}};
      for (const auto& assignment : split(e->value, ',')) {
        const auto eq = assignment.find('=');
        if (eq == std::string::npos) invalid(*e, fmt::format("'{}' is not name=value", assignment));
        const std::string name = trim(std::string_view(assignment).substr(0, eq));
        const double value = to_double(*e, trim(std::string_view(assignment).substr(eq + 1)));
        try {
          SimConfig probe = spec.base;
          apply_parameter(probe, name, value);
        } catch (const ValidationError& ex) {
          invalid(*e, ex.what());
        }
        v.overrides.emplace_back(name, value);
      }
      variants.push_back(std::move(v));
    }
  }
  if (!variants.empty()) spec.variants = std::move(variants);
  check_kind_requirements(spec);
  if (spec.kind == ExperimentKind::kDist && spec.base.window.burn_in >= spec.base.sample_count()) {
    throw ValidationError("experiment.burn_in", "burn-in must be shorter than the run");
  }
  if (spec.base.window.tail > spec.base.sample_count()) {
    throw ValidationError("experiment.tail", "tail exceeds the number of samples");
  }
  return spec;
}

ExperimentSpec parse_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open config file '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config_text(text.str());
}

std::size_t resolve_workers(std::size_t configured) {
  if (const char* env = std::getenv("EVOGAME_WORKERS"); env != nullptr && *env != '\0') {
    std::size_t v = 0;
    const std::string_view s(env);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec == std::errc() && ptr == s.data() + s.size() && v > 0) return v;
  }
  if (configured > 0) return configured;
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace evogame
