// rksample command line: theory constants, assumption checks, single trials,
// success curves, net construction and the regularity demo.

#include "rksample/errors.hpp"
#include "rksample/experiments.hpp"

#include <CLI11.hpp>

#include <iomanip>
#include <iostream>
#include <optional>

using namespace rksample;

namespace {

struct ConstantsOpts {
  std::string config;
  double p = 2.0, a = 0.0, A = 1.0, B = 1.0, delta = 0.1, D = 2.0, mu = 16.0, tau = 0.01;
  long dM = 1;
  std::optional<double> r, sigma;
  std::optional<long> g_size;
};

int run_constants(const ConstantsOpts& o) {
  TheoryInputs in;
  in.p = o.p;
  in.a = o.a;
  in.A = o.A;
  in.B = o.B;
  in.delta = o.delta;
  in.D = o.D;
  in.mu = o.mu;
  in.tau = o.tau;
  in.d_M = o.dM;
  if (!o.config.empty()) {
    const ExperimentConfig cfg = load_config(o.config);
    const Space sp = build_space(cfg);
    const TruncationPlan plan = plan_for(sp, cfg);
    in.p = cfg.p;
    in.a = cfg.a;
    in.A = sp.A;
    in.B = sp.B;
    in.delta = cfg.delta;
    in.tau = cfg.tau;
    in.D = sp.D;
    in.mu = sp.omega.measure();
    in.d_M = plan.d_M;
  }
  in.sigma = o.sigma;
  in.g_size = o.g_size;
  const TheoryConstants tc = compute_constants(in);
  std::cout << render_constants(tc, o.r);
  return 0;
}

int run_check(const std::string& path) {
  const ExperimentConfig cfg = load_config(path);
  const AssumptionReport rep = check_assumptions(cfg);
  std::cout << rep.render();
  std::cout << (rep.all_pass() ? "all assumptions hold\n" : "some assumptions fail\n");
  return rep.all_pass() ? 0 : 1;
}

int run_trial(const std::string& path, long r, std::optional<std::uint64_t> seed, long index) {
  ExperimentConfig cfg = load_config(path);
  if (seed) cfg.seed = *seed;
  const Space sp = build_space(cfg);
  const TruncationPlan plan = plan_for(sp, cfg);
  const TheoryConstants tc = theory_for(sp, cfg, plan);
  const LevelParams lv = level_window(tc.a, cfg.p, sp.D, sp.omega.measure(), sp.A, sp.B, cfg.delta);
  double rho = 0.0;
  const GridFunction f = draw_concentrated_function(sp, cfg.delta, cfg.node_margin,
                                                    derive_seed(cfg.seed, 1, 0, static_cast<std::uint64_t>(index)), &rho);
  const TrialRecord rec =
      run_stability_trial(sp, f, r, tc, lv, derive_seed(cfg.seed, 2, 0, static_cast<std::uint64_t>(index)), true);
  std::cout << std::setprecision(10);
  std::cout << "seed=" << cfg.seed << "\n"
            << "r=" << rec.r << "\n"
            << "concentration=" << rec.concentration << "\n"
            << "norm_p=" << rec.norm_p << "\n"
            << "norm_omega_p=" << rec.norm_omega_p << "\n"
            << "sampled_sum=" << rec.sampled_sum << "\n"
            << "lower_bound=" << rec.lower_bound << "\n"
            << "upper_bound=" << rec.upper_bound << "\n"
            << "lower_ok=" << rec.lower_ok << "\n"
            << "upper_ok=" << rec.upper_ok << "\n"
            << "hL=" << rec.hL << "\n"
            << "hS=" << rec.hS << "\n"
            << "sigma_star=" << rec.sigma_star << "\n"
            << "transfer_ok=" << rec.transfer_ok << "\n"
            << "elapsed_ms=" << rec.elapsed_ms << "\n";
  return 0;
}

int run_curve(const std::string& path, std::optional<std::uint64_t> seed, std::optional<long> trials,
              const std::string& out_dir) {
  ExperimentConfig cfg = load_config(path);
  if (seed) cfg.seed = *seed;
  if (trials) cfg.trials = *trials;
  if (!out_dir.empty()) cfg.output_dir = out_dir;
  const ResultTable t = success_curve(cfg);
  const std::string dir = write_outputs(t, cfg);
  std::cout << "seed=" << cfg.seed << "\n";
  std::cout << "d_M=" << t.plan.d_M << " G_size=" << t.constants.g_size << " r_min=" << t.constants.r_min << "\n";
  std::cout << std::setw(9) << "r" << std::setw(10) << "p_hat" << std::setw(10) << "lo" << std::setw(10) << "hi"
            << std::setw(12) << "theory" << "\n";
  std::cout << std::fixed << std::setprecision(4);
  for (const auto& r : t.rows) {
    std::cout << std::setw(9) << r.r << std::setw(10) << r.p_hat << std::setw(10) << r.wilson_lo << std::setw(10)
              << r.wilson_hi << std::setw(12) << r.theory_bound << "\n";
  }
  std::cout << "sound=" << t.sound() << " nondecreasing=" << t.nondecreasing_within_bands() << "\n";
  std::cout << "output=" << dir << "\n";
  return t.sound() ? 0 : 1;
}

int run_net(const std::string& gen, double B, int dM, double eps, double p, long probes, std::uint64_t seed) {
  SpaceSpec s;
  s.generator = gen;
  const NetProbeReport rep = run_net_probe(make_generator(s), B, dM, eps, p, probes, seed);
  std::cout << std::setprecision(10);
  std::cout << "seed=" << seed << "\n"
            << "d_M=" << dM << "\n"
            << "epsilon=" << eps << "\n"
            << "D=" << rep.D << "\n"
            << "mesh=" << rep.net.mesh << "\n"
            << "net_size=" << rep.net.size() << "\n"
            << "covering_bound=" << rep.net.covering_bound << "\n"
            << "probes=" << rep.probes << "\n"
            << "covered=" << rep.covered << "\n"
            << "max_error=" << rep.max_error << "\n";
  return rep.all_covered() && rep.net.within_bound() ? 0 : 1;
}

int run_regularity(const std::vector<double>& eps, double h) {
  const auto rows = regularity_demo(eps, h);
  std::cout << std::setw(10) << "epsilon" << std::setw(14) << "value" << std::setw(12) << "argmax" << "\n";
  std::cout << std::setprecision(6);
  bool ok = true;
  for (const auto& r : rows) {
    std::cout << std::setw(10) << r.epsilon << std::setw(14) << r.value << std::setw(12) << r.argmax << "\n";
    ok = ok && r.value >= 1.0 - 1e-2;
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random sampling in localized reproducing-kernel spaces"};
  app.require_subcommand(1);

  ConstantsOpts co;
  auto* constants = app.add_subcommand("constants", "Print the theory constants");
  constants->add_option("--config", co.config, "Derive A, B, D, mu and d_M from a config");
  constants->add_option("--p", co.p, "Exponent p");
  constants->add_option("--a", co.a, "Level parameter a (0 selects the largest admissible)");
  constants->add_option("--A", co.A, "Lower frame bound");
  constants->add_option("--B", co.B, "Upper frame bound");
  constants->add_option("--delta", co.delta, "Concentration defect");
  constants->add_option("--D", co.D, "Sup-norm constant");
  constants->add_option("--mu", co.mu, "Measure of the domain");
  constants->add_option("--dM", co.dM, "Dimension d_M");
  constants->add_option("--tau", co.tau, "tau of the main inequality");
  constants->add_option("--r", co.r, "Sample size for the failure bound");
  constants->add_option("--sigma", co.sigma, "Override sigma");
  constants->add_option("--G-size", co.g_size, "Override |G|");

  std::string config;
  auto* check = app.add_subcommand("check-assumptions", "Check the standing assumptions for a config");
  check->add_option("config", config, "Config file")->required();

  long r = 100, index = 0;
  std::optional<std::uint64_t> seed;
  auto* trial = app.add_subcommand("trial", "Run one stability trial");
  trial->add_option("config", config, "Config file")->required();
  trial->add_option("--r", r, "Sample size");
  trial->add_option("--seed", seed, "Override the config seed");
  trial->add_option("--index", index, "Trial index");

  std::optional<long> trials;
  std::string out_dir;
  auto* curve = app.add_subcommand("curve", "Run a success curve and write CSV/SVG");
  curve->add_option("config", config, "Config file")->required();
  curve->add_option("--seed", seed, "Override the config seed");
  curve->add_option("--trials", trials, "Override trials per r");
  curve->add_option("--output-dir", out_dir, "Output directory");

  std::string gen = "hat";
  double net_B = 3.0, net_eps = 0.25, net_p = 2.0;
  int net_dM = 2;
  long probes = 1000;
  std::uint64_t net_seed = 1;
  auto* net = app.add_subcommand("net", "Build a net for d_M <= 3 and probe it");
  net->add_option("--generator", gen, "hat | indicator | gaussian");
  net->add_option("--B", net_B, "Upper frame bound");
  net->add_option("--dM", net_dM, "Dimension (1..3)");
  net->add_option("--eps", net_eps, "Net radius");
  net->add_option("--p", net_p, "Exponent p");
  net->add_option("--probes", probes, "Random probes");
  net->add_option("--seed", net_seed, "Seed");

  std::vector<double> reg_eps{0.25, 0.1, 0.01};
  double reg_h = 1.0 / 512.0;
  auto* reg = app.add_subcommand("demo-regularity", "Regularity modulus of the indicator kernel");
  reg->add_option("--eps", reg_eps, "Shift radii (each below 1/2)");
  reg->add_option("--step", reg_h, "Tabulation step");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*constants) return run_constants(co);
    if (*check) return run_check(config);
    if (*trial) return run_trial(config, r, seed, index);
    if (*curve) return run_curve(config, seed, trials, out_dir);
    if (*net) return run_net(gen, net_B, net_dM, net_eps, net_p, probes, net_seed);
    if (*reg) return run_regularity(reg_eps, reg_h);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
