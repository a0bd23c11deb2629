#pragma once

// Monte Carlo harness: random concentrated functions, stability trials,
// success curves, the indicator-kernel regularity demo and assumption checks.

#include "rksample/config.hpp"
#include "rksample/discretization.hpp"
#include "rksample/domain.hpp"
#include "rksample/probability.hpp"
#include "rksample/space_model.hpp"
#include "rksample/truncation.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace rksample {

/// Everything derived from a config before any trial runs.
struct Space {
  Generator g;
  Lattice gamma;
  Envelope theta;
  Domain omega;
  double A = 1.0;
  double B = 1.0;
  double p = 2.0;
  LatticeStats stats;
  double c_gamma = 1.0;
  double D = 1.0;
  Grid grid;
};

Generator make_generator(const SpaceSpec& s);
Lattice make_lattice(const SpaceSpec& s);
Space build_space(const ExperimentConfig& cfg);

/// Integer seed derived from (base, a, b, c) through std::seed_seq.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0);

/// Standard-normal coefficients on the nodes within omega dilated by
/// `margin`, resampled until at least 1 - delta of the L^p mass lies in
/// omega; normalized so ||f||_p = 1.
GridFunction draw_concentrated_function(const Space& space, double delta, double margin, std::uint64_t seed,
                                        double* ratio = nullptr);

/// Random f on all nodes, normalized so ||f||_p = 1.
GridFunction draw_function(const Space& space, std::uint64_t seed);

struct TrialRecord {
  long trial = 0;
  long r = 0;
  std::uint64_t seed = 0;
  double concentration = 0.0;
  double norm_p = 0.0;        ///< ||f||_p^p
  double norm_omega_p = 0.0;  ///< ||f||^p_{L^p(Omega)}
  double sampled_sum = 0.0;   ///< sum |f(xi_nu)|^p
  double lower_bound = 0.0;   ///< (r/mu) lower_coeff ||f||_p^p
  double upper_bound = 0.0;   ///< (r/mu) upper_coeff ||f||_p^p
  bool lower_ok = false;
  bool upper_ok = false;
  bool transfer_checked = false;
  double hL = 0.0, hS = 0.0, sigma_star = 0.0;
  double sampled_scaled = 0.0;  ///< ||S(f~, xi)||_p^p for f~ = f scaled to ||f~||_p^p = mu
  double transfer_lower = 0.0, transfer_upper = 0.0;
  bool transfer_ok = true;
  double family_sup_ratio = 0.0;  ///< max_j sup of family members / L_j
  double family_l1 = 0.0;         ///< max_j normalized L^1(Omega) norm of family members
  double elapsed_ms = 0.0;

  bool success() const { return lower_ok && upper_ok; }
};

TrialRecord run_stability_trial(const Space& space, const GridFunction& f, long r, const TheoryConstants& tc,
                                const LevelParams& levels, std::uint64_t seed, bool transfer);

struct CurveRow {
  long r = 0;
  long successes = 0;
  long trials = 0;
  double p_hat = 0.0;
  double wilson_lo = 0.0;
  double wilson_hi = 0.0;
  double theory_bound = 0.0;  ///< 1 - failure_probability(r)
  double mean_ratio = 0.0;    ///< mean of sampled_sum / ((r/mu) ||f||_p^p)
  bool sound() const { return wilson_hi >= theory_bound; }
};

struct ResultTable {
  std::vector<CurveRow> rows;
  std::vector<TrialRecord> trials;
  TheoryConstants constants;
  TruncationPlan plan;

  bool sound() const;
  /// wilson_hi of each r is at least wilson_lo of the previous r.
  bool nondecreasing_within_bands() const;
};

/// 95% Wilson score interval.
std::pair<double, double> wilson_interval(long successes, long trials, double z = 1.959963984540054);

TheoryConstants theory_for(const Space& space, const ExperimentConfig& cfg, const TruncationPlan& plan);
TruncationPlan plan_for(const Space& space, const ExperimentConfig& cfg);

ResultTable success_curve(const ExperimentConfig& cfg);
ResultTable success_curve(const ExperimentConfig& cfg, const Space& space);

void write_curve_csv(const ResultTable& t, std::ostream& os);
void write_trials_csv(const ResultTable& t, std::ostream& os);
void write_curve_svg(const ResultTable& t, std::ostream& os);
/// Writes curve.csv, trials.csv and (optionally) curve.svg; returns the directory used.
std::string write_outputs(const ResultTable& t, const ExperimentConfig& cfg);

struct RegularityRow {
  double epsilon = 0.0;
  double value = 0.0;   ///< sup_x || sup_{|x'| <= eps} |K(x + x', .) - K(x, .)| ||_{L^1}
  double argmax = 0.0;
};

/// K(x, y) = sum_k 2 phi(x - k) phi(y - k) with phi = chi_[0,1/2], tabulated
/// with step h.
std::vector<RegularityRow> regularity_demo(const std::vector<double>& eps, double h = 1.0 / 512.0);

struct NetProbeReport {
  CoefficientNet net;
  double D = 1.0;
  double mu = 1.0;
  long probes = 0;
  long covered = 0;
  double max_error = 0.0;  ///< worst sup distance from a probe to its nearest member

  bool all_covered() const { return covered == probes; }
};

/// Net for V_{M,Omega} with nodes 0, ..., d_M - 1 and Omega = [0, max(d_M, 1)],
/// probed with random f normalized to ||f||_p^p = mu.
NetProbeReport run_net_probe(const Generator& g, double B, int d_M, double epsilon, double p, long probes,
                             std::uint64_t seed, double grid_step = 1.0 / 64.0);

struct AssumptionCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct AssumptionReport {
  std::vector<AssumptionCheck> checks;
  bool all_pass() const;
  std::string render() const;
};

AssumptionReport check_assumptions(const ExperimentConfig& cfg);

}  // namespace rksample
