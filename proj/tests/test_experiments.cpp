#include "rksample/errors.hpp"
#include "rksample/experiments.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace rksample;

namespace {

const char* kCanonical = R"(
[space]
generator = hat
lattice_lo = -8
lattice_hi = 12
A = 1
B = 3

[domain]
boxes = 0 4

[experiment]
p = 2
delta = 0.1
grid_step = 0.015625
epsilon = 0.5
node_margin = 0
r_schedule = 25, 100
trials = 6
seed = 77
plot = true
)";

const AssumptionCheck* find(const AssumptionReport& rep, const std::string& name) {
  for (const auto& c : rep.checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("config parsing") {
  const ExperimentConfig cfg = parse_config(kCanonical);
  CHECK(cfg.space.generator == "hat");
  CHECK(cfg.space.B == 3.0);
  CHECK(cfg.omega.size() == 1);
  CHECK(cfg.omega[0].hi[0] == 4.0);
  CHECK(cfg.r_schedule == std::vector<long>{25, 100});
  CHECK(cfg.trials == 6);
  CHECK(cfg.seed == 77);
  CHECK(cfg.node_margin == 0.0);
  CHECK_FALSE(cfg.space.tail_exponent);

  const auto two = parse_boxes("0 1 0 2; 3 4 0 1", 2);
  REQUIRE(two.size() == 2);
  CHECK(two[1].lo[0] == 3.0);
  CHECK(two[0].hi[1] == 2.0);

  const ExperimentConfig nodes = parse_config("[space]\nnodes = 0, 0.5 2\n[envelope]\nC = 2\nalpha = 3\n");
  CHECK(nodes.space.nodes == std::vector<double>{0, 0.5, 2});
  CHECK(*nodes.space.tail_constant == 2.0);
  CHECK(*nodes.space.tail_exponent == 3.0);
}

TEST_CASE("config errors") {
  CHECK_THROWS_AS(parse_config("[experiment]\np = 0.5\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[experiment]\ndelta = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[experiment]\nr_schedule = 10, 2.5\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[experiment]\np = two\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[domain]\nboxes = 0 1 2\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[space]\ndim = 2\nnodes = 0 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[envelope]\nalpha = -1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[envelope]\nC = x\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("not an ini [\n"), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/rksample.ini"), ConfigError);
}

TEST_CASE("output directory override") {
  ExperimentConfig cfg = parse_config(kCanonical);
  cfg.output_dir = "from_config";
  ::unsetenv("RKSAMPLE_OUTPUT_DIR");
  CHECK(resolve_output_dir(cfg) == "from_config");
  ::setenv("RKSAMPLE_OUTPUT_DIR", "from_env", 1);
  CHECK(resolve_output_dir(cfg) == "from_env");
  ::unsetenv("RKSAMPLE_OUTPUT_DIR");
}

TEST_CASE("derived seeds") {
  CHECK(derive_seed(1, 2, 3, 4) == derive_seed(1, 2, 3, 4));
  CHECK(derive_seed(1, 2, 3, 4) != derive_seed(1, 2, 3, 5));
  CHECK(derive_seed(1, 1, 0, 0) != derive_seed(2, 1, 0, 0));
}

TEST_CASE("space construction") {
  const ExperimentConfig cfg = parse_config(kCanonical);
  const Space sp = build_space(cfg);
  CHECK(sp.gamma.size() == 21);
  CHECK(sp.stats.density == 1);
  CHECK(sp.c_gamma == doctest::Approx(1.0));
  CHECK(sp.theta.amalgam_norm == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(sp.D == doctest::Approx(std::sqrt(6.0)).epsilon(1e-8));
  const TruncationPlan plan = plan_for(sp, cfg);
  CHECK(plan.d_M == 21);
  CHECK(plan.d_M <= plan.dimension_bound());

  ExperimentConfig declared = cfg;
  declared.space.tail_constant = 5.0;
  declared.space.tail_exponent = 3.0;
  const Space sd = build_space(declared);
  CHECK(sd.theta.tail_constant == 5.0);
  CHECK(sd.theta.tail_exponent == 3.0);
}

TEST_CASE("concentrated random functions") {
  const ExperimentConfig cfg = parse_config(kCanonical);
  const Space sp = build_space(cfg);
  double rho = 0.0;
  const GridFunction f = draw_concentrated_function(sp, 0.1, 0.0, 5, &rho);
  CHECK(rho >= 0.9);
  CHECK(lp_norm(f, 2.0) == doctest::Approx(1.0).epsilon(1e-12));
  REQUIRE(f.coefficients);
  const GridFunction g = draw_concentrated_function(sp, 0.1, 0.0, 5);
  CHECK((f.values == g.values).all());

  // Nodes in [1, 3] only: every hat lives inside [0, 4].
  draw_concentrated_function(sp, 1e-9, -1.0, 6, &rho);
  CHECK(rho == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(draw_concentrated_function(sp, 1e-6, 8.0, 7), InfeasibleConcentrationError);
  CHECK_THROWS_AS(draw_concentrated_function(sp, 0.1, -3.0, 7), InfeasibleConcentrationError);

  const GridFunction h = draw_function(sp, 3);
  CHECK(lp_norm(h, 2.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("stability trials") {
  const ExperimentConfig cfg = parse_config(kCanonical);
  const Space sp = build_space(cfg);
  const TruncationPlan plan = plan_for(sp, cfg);
  const TheoryConstants tc = theory_for(sp, cfg, plan);
  const LevelParams lv = level_window(tc.a, cfg.p, sp.D, sp.omega.measure(), sp.A, sp.B, cfg.delta);
  const GridFunction f = draw_concentrated_function(sp, cfg.delta, 0.0, 11);
  const TrialRecord a = run_stability_trial(sp, f, 200, tc, lv, 99, true);
  const TrialRecord b = run_stability_trial(sp, f, 200, tc, lv, 99, true);
  CHECK(a.sampled_sum == b.sampled_sum);
  CHECK(a.hL == b.hL);
  CHECK(a.lower_ok == (a.sampled_sum >= a.lower_bound));
  CHECK(a.upper_ok == (a.sampled_sum <= a.upper_bound));
  CHECK(a.lower_bound == doctest::Approx(200.0 / 4.0 * tc.lower_coeff * a.norm_p));
  CHECK(a.upper_bound == doctest::Approx(200.0 / 4.0 * tc.upper_coeff * a.norm_p));
  CHECK(a.norm_p == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(a.transfer_checked);
  CHECK(a.transfer_ok);
  CHECK(a.family_sup_ratio <= 1.0 + 1e-9);
  CHECK(run_stability_trial(sp, f, 200, tc, lv, 100, false).sampled_sum != a.sampled_sum);
}

TEST_CASE("wilson intervals") {
  auto [lo0, hi0] = wilson_interval(0, 10);
  CHECK(lo0 == doctest::Approx(0.0));
  CHECK(hi0 == doctest::Approx(0.2775327998628892).epsilon(1e-12));
  auto [lo1, hi1] = wilson_interval(10, 10);
  CHECK(lo1 == doctest::Approx(0.7224672001371107).epsilon(1e-12));
  CHECK(hi1 == doctest::Approx(1.0));
  auto [lo5, hi5] = wilson_interval(5, 10);
  CHECK(lo5 == doctest::Approx(0.236593090512564).epsilon(1e-12));
  CHECK(hi5 == doctest::Approx(0.7634069094874361).epsilon(1e-12));
}

TEST_CASE("success curves are reproducible") {
  const ExperimentConfig cfg = parse_config(kCanonical);
  const ResultTable t1 = success_curve(cfg);
  const ResultTable t2 = success_curve(cfg);
  REQUIRE(t1.rows.size() == 2);
  CHECK(t1.trials.size() == 12);
  CHECK(t1.sound());
  std::ostringstream c1, c2, r1, r2;
  write_curve_csv(t1, c1);
  write_curve_csv(t2, c2);
  write_trials_csv(t1, r1);
  write_trials_csv(t2, r2);
  CHECK(c1.str() == c2.str());
  CHECK(r1.str() == r2.str());
  CHECK(c1.str().rfind("r,successes,trials,p_hat,wilson_lo,wilson_hi,theory_bound\n", 0) == 0);
  for (const auto& row : t1.rows) {
    CHECK(row.trials == 6);
    CHECK(row.wilson_lo <= row.p_hat);
    CHECK(row.p_hat <= row.wilson_hi);
    CHECK(row.theory_bound >= 0.0);
    CHECK(row.theory_bound <= 1.0);
  }

  const auto dir = std::filesystem::temp_directory_path() / "rksample_curve_test";
  std::filesystem::remove_all(dir);
  ::setenv("RKSAMPLE_OUTPUT_DIR", dir.c_str(), 1);
  CHECK(write_outputs(t1, cfg) == dir.string());
  ::unsetenv("RKSAMPLE_OUTPUT_DIR");
  CHECK(std::filesystem::exists(dir / "curve.csv"));
  CHECK(std::filesystem::exists(dir / "trials.csv"));
  CHECK(std::filesystem::exists(dir / "curve.svg"));
  std::ifstream in(dir / "curve.csv");
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == c1.str());
  std::filesystem::remove_all(dir);
}

TEST_CASE("regularity of the indicator kernel") {
  const auto rows = regularity_demo({0.25, 0.1, 0.01});
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].value == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(rows[1].value == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(rows[2].value == doctest::Approx(1.0).epsilon(1e-9));
  for (const auto& r : rows) CHECK(r.value >= 1.0 - 1e-2);
  CHECK_THROWS(regularity_demo({0.5}));
  CHECK_THROWS(regularity_demo({0.0}));
}

TEST_CASE("net probes") {
  const NetProbeReport rep = run_net_probe(Generator::bspline(2), 3.0, 2, 0.25, 2.0, 200, 4);
  CHECK(rep.all_covered());
  CHECK(rep.net.within_bound());
  CHECK(rep.max_error <= 0.25);
}

TEST_CASE("assumption checks") {
  const AssumptionReport ok = check_assumptions(parse_config(kCanonical));
  CHECK(ok.all_pass());
  CHECK(ok.render().find("frame bounds") != std::string::npos);

  ExperimentConfig small = parse_config(kCanonical);
  small.omega = {Box::interval(0, 0.5)};
  const AssumptionReport bad = check_assumptions(small);
  CHECK_FALSE(bad.all_pass());
  REQUIRE(find(bad, "measure"));
  CHECK_FALSE(find(bad, "measure")->pass);

  ExperimentConfig slow = parse_config(kCanonical);
  slow.space.tail_exponent = 1.5;
  const AssumptionReport rep = check_assumptions(slow);
  REQUIRE(find(rep, "alpha admissible"));
  CHECK_FALSE(find(rep, "alpha admissible")->pass);

  ExperimentConfig coarse = parse_config(kCanonical);
  coarse.grid_step = 0.25;
  CHECK_FALSE(find(check_assumptions(coarse), "grid resolution")->pass);
}
