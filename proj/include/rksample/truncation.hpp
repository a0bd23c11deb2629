#pragma once

// Finite-dimensional truncation: the radius N, the compact set M built from
// the boundary cover of Omega, the truncated coefficient vector and the
// dimension bound d_M <= C(eps) mu(Omega).

#include "rksample/core.hpp"
#include "rksample/domain.hpp"

#include <string>
#include <vector>

namespace rksample {

struct TruncationInputs {
  double epsilon = 0.5;
  double tail_constant = 1.0;  ///< C from the envelope tail condition
  double tail_exponent = 2.0;  ///< alpha
  double B = 1.0;              ///< upper frame constant
  double p = 2.0;
  int n_gamma = 1;             ///< N(Gamma)
  double c_gamma = 1.0;        ///< C(Gamma)
};

/// N = (C N(Gamma) B^{p'/p} / eps^{p'})^{1/(n alpha)} mu^{1/n}; for p = 1 the
/// exponent p' is replaced by 1 and B^{p'/p} by B.
double truncation_radius(double epsilon, double C, int n_gamma, double B, double p, double alpha, int n,
                         double mu);

/// Smallest even integer >= N (at least 2).
double round_radius_even(double N);

/// M = Omega ∪ (union over boundary cubes m + [0,1]^n of m + [0,1]^n + [-N/2, N/2]^n),
/// returned as boxes with disjoint interiors.
std::vector<Box> build_M(const Domain& omega, double N);

struct TruncationPlan {
  double epsilon = 0.0;
  double radius_raw = 0.0;  ///< N from the formula
  double radius = 0.0;      ///< N rounded up to an even integer
  std::vector<Box> M;
  std::vector<std::size_t> active_nodes;  ///< indices into the lattice, nodes inside M
  long d_M = 0;
  double C_eps = 0.0;
  double mu = 0.0;

  bool in_M(std::span<const double> x) const;
  double dimension_bound() const { return C_eps * mu; }
};

TruncationPlan make_truncation_plan(const Domain& omega, const Lattice& gamma, const TruncationInputs& in);

/// Zeroes the coefficients of nodes outside M.
CoefficientVector truncate(const CoefficientVector& c, const TruncationPlan& plan);

struct TruncationErrorReport {
  double sup_error = 0.0;       ///< sup over grid points in Omega of |f - f~|
  double sup_allowed = 0.0;     ///< (eps / mu) ||f||_p
  double lp_error = 0.0;        ///< ||f - f~||_{L^p(Omega)}
  double lp_allowed = 0.0;      ///< eps ||f||_p
  bool holds = true;

  double sup_slack() const { return sup_allowed - sup_error; }
  double lp_slack() const { return lp_allowed - lp_error; }
};

TruncationErrorReport truncation_error_check(const GridFunction& f, const GridFunction& f_trunc,
                                             const Domain& omega, double p, double epsilon, double tol = 1e-12);

struct DimensionBoundReport {
  double C_eps = 0.0;
  double bound = 0.0;  ///< C(eps) mu
  long count = 0;      ///< |Gamma ∩ M|
  bool holds = true;
};

/// C(eps) = d N(Gamma) (C N(Gamma) B^{p'/p} / eps^{p'})^{1/alpha} + C(Gamma).
double dimension_constant(long d, int n_gamma, double c_gamma, double C, double B, double p, double alpha,
                          double epsilon);

DimensionBoundReport dimension_bound(const TruncationPlan& plan, long d, int n_gamma, double c_gamma, double C,
                                     double B, double p, double alpha, double epsilon, double mu);

/// Text report of a plan for experiment logs.
std::string plan_report(const TruncationPlan& plan);

}  // namespace rksample
