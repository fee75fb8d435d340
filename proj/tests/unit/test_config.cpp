#include <filesystem>
#include <string>

#include "doctest.h"
#include "evogame/config.hpp"
#include "evogame/error.hpp"

using namespace evogame;

namespace {

const char* kMinimal = R"(
[network]
kind = ws
n = 200
[rates]
lambda = 0.02, 0.06
mu = 0.04, 0.08
)";

std::string expect_validation_key(const std::string& text) {
  try {
    (void)parse_config_text(text);
  } catch (const ValidationError& e) {
    return e.key();
  }
  return "<none>";
}

std::size_t expect_parse_line(const std::string& text) {
  try {
    (void)parse_config_text(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_CASE("minimal config takes defaults") {
  const auto spec = parse_config_text(kMinimal);
  CHECK(spec.kind == ExperimentKind::kTimeseries);
  CHECK(spec.base.kappa == 0.1);
  CHECK(spec.base.reputation.delta == 0.04);
  CHECK(spec.base.reputation.init_mean == 2.0);
  CHECK(spec.base.reputation.init_sigma == 0.6);
  CHECK(spec.base.reputation.enabled);
  CHECK(spec.base.horizon == 1e4);
  CHECK(spec.base.replicas == 5);
  CHECK(spec.base.network.kind == NetworkKind::kWattsStrogatz);
  CHECK(spec.base.network.n == 200);
  CHECK(spec.base.rates.mu == std::vector<double>{0.04, 0.08});
  CHECK(spec.grid_size() == 1);
}

TEST_CASE("every section is read") {
  const auto spec = parse_config_text(R"(
[experiment]
kind = timeseries   # trailing comment
seed = 77
replicas = 2
workers = 3
horizon = 300
tail = 50
burn_in = 20
; full-line comment
[network]
kind = lattice
side = 12
[game]
states = PDG, SDG
b = 1.2
r = 0.3
[rates]
lambda = 0.05
mu = 0.07
[reputation]
enabled = off
delta = 0.1
mean = 1.5
sigma = 0.2
[strategy]
kappa = 0.25
schedule = powerlaw:3:0.8
init_coop = 0.4
)");
  const auto& c = spec.base;
  CHECK(c.seed == 77);
  CHECK(c.replicas == 2);
  CHECK(spec.workers == 3);
  CHECK(c.horizon == 300);
  CHECK(c.window.tail == 50);
  CHECK(c.window.burn_in == 20);
  CHECK(c.network.kind == NetworkKind::kSquareLattice);
  CHECK(c.network.side == 12);
  CHECK(c.games == std::vector<std::string>{"PDG", "SDG"});
  CHECK(c.b == 1.2);
  CHECK(c.r == 0.3);
  CHECK_FALSE(c.reputation.enabled);
  CHECK(c.reputation.delta == 0.1);
  CHECK(c.kappa == 0.25);
  CHECK(describe_schedule(c.schedule) == "powerlaw:3:0.8");
  CHECK(c.initial_cooperators == 0.4);
}

TEST_CASE("unknown keys and sections are named") {
  CHECK(expect_validation_key(std::string(kMinimal) + "[strategy]\nkapa = 0.1\n") == "strategy.kapa");
  CHECK(expect_validation_key(std::string(kMinimal) + "[extras]\nx = 1\n") == "extras.x");
  CHECK(expect_validation_key(std::string(kMinimal) + "[network]\np = abc\n") == "network.p");
}

TEST_CASE("negative rate cites the rate invariant") {
  try {
    (void)parse_config_text("[rates]\nlambda = 0.02, -0.06\nmu = 0.04, 0.08\n");
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(e.key() == "rates");
    CHECK(std::string(e.what()).find("TransitionRates") != std::string::npos);
  }
}

TEST_CASE("malformed text reports its line") {
  CHECK(expect_parse_line("[network]\nkind = ws\nthis line is wrong\n") == 3);
  CHECK(expect_parse_line("n = 4\n") == 1);
  CHECK(expect_parse_line("[network\n") == 1);
  CHECK(expect_parse_line("[network]\nn = 10\n\nn = 20\n") == 4);
}

TEST_CASE("axes and variants") {
  const auto spec = parse_config_text(std::string(kMinimal) + R"(
[experiment]
kind = mu_curves
horizon = 100
tail = 10
[sweep]
mu1 = 0.01:0.05:0.02
[variants]
slow = mu2=0.02
fast = mu2=0.08, kappa=0.2
)");
  REQUIRE(spec.axes.size() == 1);
  CHECK(spec.axes[0].name == "mu1");
  CHECK(spec.axes[0].values == std::vector<double>{0.01, 0.03, 0.05});
  REQUIRE(spec.variants.size() == 2);
  CHECK(spec.variants[1].name == "fast");
  CHECK(spec.variants[1].overrides.size() == 2);
  CHECK(spec.grid_size() == 6);
}

TEST_CASE("kind-specific requirements") {
  const std::string base = std::string(kMinimal) + "[experiment]\nhorizon = 100\ntail = 10\n";
  CHECK(expect_validation_key(base + "kind = lambda_heatmap\n[sweep]\nlambda0 = 0.01,0.02\n") == "sweep.lambda1");
  CHECK(expect_validation_key(base + "kind = payoff_heatmap\n[sweep]\nb = 1,2\n") == "sweep.r");
  CHECK(expect_validation_key(base + "kind = schedule_compare\n") == "sweep.schedules");
  CHECK(expect_validation_key(base + "kind = dist\nburn_in = 10\n[sweep]\nb = 1,2\n") == "sweep");
  CHECK(expect_validation_key(base + "kind = scale_sweep\n[sweep]\nside = 10,20\n") == "sweep.n");
  CHECK(expect_validation_key(base + "kind = mu_curves\n[sweep]\nmu3 = 0.1\n") == "sweep.mu3");
  CHECK(expect_validation_key(base + "kind = volcano\n") == "experiment.kind");
  CHECK(expect_validation_key(std::string(kMinimal) + "[experiment]\nhorizon = 100\n") == "experiment.tail");

  const auto sc = parse_config_text(base + "kind = schedule_compare\n[sweep]\nschedules = fixed:1, exponential:1\n");
  CHECK(sc.schedules.size() == 2);
}

TEST_CASE("parameters by name") {
  SimConfig c;
  apply_parameter(c, "lambda1", 0.5);
  apply_parameter(c, "mu2", 0.25);
  apply_parameter(c, "side", 30);
  CHECK(c.rates.lambda[1] == 0.5);
  CHECK(c.rates.mu[1] == 0.25);
  CHECK(c.network.side == 30);
  CHECK_THROWS_AS(apply_parameter(c, "mu0", 0.1), ValidationError);
  CHECK_THROWS_AS(apply_parameter(c, "lambda2", 0.1), ValidationError);
  CHECK_THROWS_AS(apply_parameter(c, "side", 2.5), ValidationError);
  CHECK_THROWS_AS(apply_parameter(c, "gamma", 1.0), ValidationError);
}

TEST_CASE("axis values") {
  CHECK(parse_axis_values("0.005:0.05:0.005").size() == 10);
  CHECK(parse_axis_values("0.005:0.05:0.005").back() == 0.05);
  CHECK(parse_axis_values("1, 2.5, 4") == std::vector<double>{1.0, 2.5, 4.0});
  CHECK(parse_axis_values("3:3:1") == std::vector<double>{3.0});
  CHECK_THROWS_AS(parse_axis_values("1:0:0.1"), InvalidParameter);
  CHECK_THROWS_AS(parse_axis_values("0:1"), InvalidParameter);
}

TEST_CASE("worker budget") {
  CHECK(resolve_workers(3) >= 1);
  CHECK(resolve_workers(0) >= 1);
}

TEST_CASE("shipped configs parse") {
  std::size_t seen = 0;
  for (const auto& entry : std::filesystem::directory_iterator(EVOGAME_CONFIG_DIR)) {
    if (entry.path().extension() != ".ini") continue;
    CAPTURE(entry.path().string());
    CHECK_NOTHROW((void)parse_config(entry.path()));
    ++seen;
  }
  CHECK(seen >= 7);
}
