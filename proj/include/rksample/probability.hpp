#pragma once

// Bernstein-type tail bounds, the union bound over level families, the
// sample-size and failure-probability calculators and the main-inequality
// coefficients.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rksample {

/// 2 exp(-r eta^2 / (8 L)); not capped.
double bernstein_bound(double r, double eta, double L);

inline double clamp_probability(double x) { return x < 0.0 ? 0.0 : (x > 1.0 ? 1.0 : x); }

struct FamilyTerm {
  double count = 1.0;
  double eta = 0.5;
  double L = 1.0;
};

/// 2 sum_j count_j exp(-r eta_j^2 / (8 L_j)).
double union_failure(const std::vector<FamilyTerm>& families, double r);

struct SigmaChoice {
  double sigma = 0.0;
  int j0 = 0;
  double j0_raw = 0.0;
};

/// sigma = A C2^{-p} (1 - delta) / (2B); j0 = floor of the solution of
/// B (1+a)^{p j0} / A = C2^{-p} (1 - delta) / 4.
SigmaChoice choose_sigma_j0(double A, double B, double delta, double a, double p);

/// Smallest r with r sigma^2 / (10 |G|^2) - d_M >= 0.
long long min_sample_size(double sigma, long d_M, long g_size);

struct MainBounds {
  double lower = 0.0;  ///< 1/5 - p 2^{p+1} tau / 5 - p D^{p-1} tau
  double upper = 0.0;  ///< 2B/A + p D^{p-1}
  bool lower_positive = true;
};

MainBounds main_bounds(double p, double D, double tau, double A, double B);

/// ceil(c mu (log mu)^3).
long long asymptotic_budget(double mu, double c = 1.0);

struct TheoryInputs {
  double p = 2.0;
  double a = 0.0;  ///< 0 selects a_for_p(p)
  double delta = 0.1;
  double tau = 0.01;
  double A = 1.0;
  double B = 1.0;
  double D = 1.0;
  double mu = 1.0;
  long d_M = 1;
  std::optional<double> sigma;   ///< override of the computed sigma
  std::optional<long> g_size;    ///< override of |G|
};

struct TheoryConstants {
  double p = 2.0, a = 0.0, delta = 0.0, tau = 0.0;
  double A = 1.0, B = 1.0, D = 1.0, mu = 1.0;
  long d_M = 0;
  int j0 = 0, J = 0;
  long g_size = 0;
  bool a_admissible = true;
  double sigma = 0.0;
  std::vector<int> levels;     ///< j in G
  std::vector<double> L_j;     ///< (4/5)(1+a)^{p j}
  std::vector<double> eta_j;   ///< 4 sigma / (5 |G|)
  double C4 = 0.0, C5 = 0.0;
  double log_A1 = 0.0;         ///< log A1 = d_M log(C4 mu) / p
  long long r_min = 0;
  double lower_coeff = 0.0, upper_coeff = 0.0;
  double g_size_bound = 0.0;   ///< log(C5 mu) / (p log(1+a))

  double A1() const;
  /// R = r sigma^2 / (10 |G|^2) - d_M.
  double R(double r) const;
  /// 2 A1 |G| exp(-R (1+a)^{-p j0}), unclamped; +inf when it overflows.
  double failure_raw(double r) const;
};

TheoryConstants compute_constants(const TheoryInputs& in);

/// min(1, failure_raw(r)); 1 when R < 0.
double failure_probability(const TheoryConstants& tc, double r);

/// Aligned table followed by key=value lines.
std::string render_constants(const TheoryConstants& tc, std::optional<double> r = std::nullopt);

enum class TailDistribution { Rademacher, Uniform, Zero };

struct TailCheckReport {
  long trials = 0;
  long exceed = 0;
  double frequency = 0.0;
  double bound = 0.0;
  double margin = 0.0;  ///< 3 sqrt(q(1-q)/trials)
  bool holds = true;
};

/// Monte Carlo frequency of |sum_{nu<=r} g_nu| >= r eta for i.i.d. zero-mean
/// g_nu with |g_nu| <= L and E|g_nu| <= 2.
TailCheckReport empirical_tail_check(TailDistribution dist, int r, double eta, double L, long trials,
                                     std::uint64_t seed);

}  // namespace rksample
