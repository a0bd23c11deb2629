#pragma once

// Localized reproducing-kernel spaces spanned by translates of a generator
// on a node set: generators, envelopes, amalgam norms, synthesis, quadrature
// norms, the point-evaluation constant D and frame/localization checks.

#include "rksample/core.hpp"
#include "rksample/domain.hpp"

#include <complex>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace rksample {

enum class GeneratorKind { Indicator, BSpline, Gaussian, Tabulated, Custom };

/// Separable generator phi(x) = amplitude * prod_i profile(x_i).
class Generator {
 public:
  /// amplitude * chi_[lo, hi] (closed interval).
  static Generator indicator(double lo = 0.0, double hi = 0.5);
  /// Centred cardinal B-spline of the given order, supported on [-order/2, order/2].
  /// Order 2 is the hat function (1 - |t|)_+.
  static Generator bspline(int order);
  /// exp(-(t / width)^2).
  static Generator gaussian(double width = 1.0);
  /// Linear interpolation through (xs, ys), zero outside [xs.front(), xs.back()].
  static Generator tabulated(std::vector<double> xs, std::vector<double> ys);
  /// Reads a two-column (x, value) text file; '#' starts a comment.
  static Generator load_tabulated(const std::string& path);
  /// Arbitrary profile; [lo, hi] is its support (or effective support when
  /// `compact` is false).
  static Generator custom(std::function<double(double)> profile, double lo, double hi, bool compact,
                          std::string name = "custom");

  Generator scaled(double factor) const;

  GeneratorKind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  double amplitude() const { return amplitude_; }
  /// Support (effective support for non-compact kinds) of one profile factor.
  std::pair<double, double> support() const { return {lo_, hi_}; }
  double support_radius() const { return std::max(std::abs(lo_), std::abs(hi_)); }
  bool compact() const { return compact_; }

  /// One-dimensional profile (without amplitude).
  double profile(double t) const { return profile_(t); }
  double operator()(std::span<const double> x) const;
  double operator()(double t) const { return amplitude_ * profile_(t); }

 private:
  GeneratorKind kind_ = GeneratorKind::Custom;
  std::string name_;
  std::function<double(double)> profile_;
  double lo_ = 0.0;
  double hi_ = 0.0;
  bool compact_ = true;
  double amplitude_ = 1.0;
};

using Evaluator = std::function<double(std::span<const double>)>;

/// Per-shell breakdown of sum_k sup_{x in [0,1)^n} |g(x + k)|, where shell s
/// collects the cells with max_i |k_i| = s.
struct ShellProfile {
  std::vector<double> shell_sums;
  double truncation_bound = 0.0;  ///< estimate of the omitted shells
  bool compact = false;           ///< window reached the known support
  int samples_per_cell = 0;

  double total() const;
  /// Sum over cells k outside C_N = [-N/2, N/2]^n.
  double tail_outside(double N) const;
};

/// Cell suprema are taken over interior points of each half-open cell
/// (midpoints and points 1e-9 inside each face), approximating the essential
/// supremum.
ShellProfile shell_profile(const Evaluator& g, int dim, int samples_per_cell,
                           double support_radius = std::numeric_limits<double>::infinity(),
                           int max_shells = 0);

struct AmalgamResult {
  double value = 0.0;
  double truncation_bound = 0.0;
  int shells = 0;
};

/// ||g||_{W(L^1)}.
AmalgamResult wiener_amalgam_norm(const Evaluator& g, int dim, int samples_per_cell,
                                  double support_radius = std::numeric_limits<double>::infinity());
AmalgamResult wiener_amalgam_norm(const Generator& g, int dim, int samples_per_cell);

/// Envelope Theta together with its amalgam norm and fitted tail-decay constants.
struct Envelope {
  Evaluator eval;
  int dim = 1;
  double amalgam_norm = 0.0;
  double tail_constant = 1.0;  ///< C
  double tail_exponent = 1.0;  ///< alpha
  bool compact = false;
  double support_radius = std::numeric_limits<double>::infinity();
  ShellProfile profile;

  double operator()(std::span<const double> x) const { return eval(x); }
};

/// Smallest admissible tail exponent: p/(p-1) for p > 1, 1 for p = 1.
double min_tail_exponent(double p);

struct TailFit {
  double C = 1.0;
  double alpha = 1.0;
  bool compact = false;    ///< tail vanishes from some N on
  bool dominated = false;  ///< C / N^{n alpha} exceeds every computed tail sum
  std::vector<std::pair<double, double>> ladder;  ///< (N, tail sum)
};

/// Fits (C, alpha) to the tail sums by log-log regression over N = 2, 4, ..., 64,
/// then raises C until C / N^{n alpha} dominates every computed even-N tail.
/// Compactly supported envelopes get alpha = min_tail_exponent(p).
TailFit fit_tail_decay(const ShellProfile& profile, int dim, double p);

Envelope make_envelope(Evaluator theta, int dim, double p, int samples_per_cell,
                       double support_radius = std::numeric_limits<double>::infinity());
/// Envelope Theta = |phi|.
Envelope envelope_from_generator(const Generator& g, int dim, double p, int samples_per_cell);

struct TailSumResult {
  double value = 0.0;
  double truncation_bound = 0.0;
  bool compact_support = false;  ///< value is exactly zero because of compact support
};

/// sum_{k in Z^n \ C_N} sup_{x in [0,1)^n} |Theta(x - k)|.
TailSumResult envelope_tail_sum(const Envelope& theta, double N);

struct LatticeStats {
  double gap = std::numeric_limits<double>::infinity();  ///< beta, minimal l^inf distance
  int density = 0;                                       ///< N(Gamma), max half-open unit-cell count
};

LatticeStats lattice_stats(const Lattice& gamma);

/// f(x) = sum_gamma c_gamma phi(x - gamma) at every grid point.
GridFunction synthesize(const CoefficientVector& c, const Generator& g, const Grid& grid);

/// Riemann-sum quadrature summary for one norm evaluation.
struct QuadratureReport {
  double value = 0.0;
  double step = 0.0;
  Index points = 0;
  bool empty_region = false;
};

/// (sum over grid points in region |f|^p * step^n)^{1/p}; region = nullptr means the whole grid.
QuadratureReport lp_quadrature(const GridFunction& f, double p, const Domain* region = nullptr);
double lp_norm(const GridFunction& f, double p, const Domain* region = nullptr);
/// ||f||_p^p on the region.
double lp_norm_pow(const GridFunction& f, double p, const Domain* region = nullptr);
double sup_norm(const GridFunction& f, const Domain* region = nullptr);

/// max(B^{1/p} N^{1/p'} amalgam^{1/p'}, 1 + 1e-6); p = 1 drops the 1/p' factors.
double sup_bound_D(double B, int n_gamma, double amalgam, double p);

struct FrameBounds {
  double lower = 0.0;  ///< min of the bracket sum_k |phi^(xi + k)|^2
  double upper = 0.0;
  double tail_bound = 0.0;
  bool is_frame = false;
  std::vector<double> xi;
  std::vector<double> bracket;
};

/// Bracket of a 1D generator on a uniform xi grid over [0,1), |k| <= kmax,
/// Fourier transform by composite Gauss-Legendre quadrature over the support.
FrameBounds frame_bounds_shift_invariant(const Generator& g, int xi_points = 64, int kmax = 200,
                                         double frame_tol = 1e-8);

/// Fourier transform phi^(xi) = int phi(x) e^{-2 pi i x xi} dx of one profile factor.
std::complex<double> fourier_transform(const Generator& g, double xi, int panels_per_unit = 512);

struct LocalizationReport {
  double worst_slack = std::numeric_limits<double>::infinity();
  bool holds = true;
  std::vector<std::pair<std::size_t, Index>> violations;  ///< (node index, grid index)
};

/// Checks |phi(x - gamma)| <= Theta(x - gamma) for every node and grid point.
LocalizationReport check_localization(const Generator& g, const Lattice& gamma, const Envelope& theta,
                                      const Grid& grid, double tol = 1e-12, std::size_t max_violations = 32);

}  // namespace rksample
