#pragma once

// Covering numbers, coefficient-lattice nets, the level operators A_j, the
// level sets D_j, the quantization h(f), the sandwich check and the transfer bounds.

#include "rksample/core.hpp"
#include "rksample/domain.hpp"
#include "rksample/space_model.hpp"
#include "rksample/truncation.hpp"

#include <iosfwd>
#include <optional>
#include <vector>

namespace rksample {

inline double c1(double a) { return 1.0 - a; }
inline double c2(double a) { return (1.0 + a) * (1.0 + a); }

/// Largest a in (0, 1/2] with (C2(a)/C1(a))^p <= 5/4.
double a_for_p(double p);
bool a_admissible(double a, double p);

/// (2r/omega + 1)^s.
double covering_number_bound(double r, double omega, int s);
/// (4 D mu^{1/p} / eps)^{d_M}; 1 once eps >= 2 D mu^{1/p}.
double vmo_covering_bound(double epsilon, double D, double mu, double p, long d_M);

struct LevelParams {
  double a = 0.0;
  double p = 2.0;
  int j0 = 0;
  int J = 0;
  bool admissible = true;  ///< (C2/C1)^p <= 5/4
  double j0_raw = 0.0;
  double J_raw = 0.0;

  int size() const { return J - j0 + 1; }  ///< |G|
  double level(int j) const;                ///< (1+a)^j
};

/// J = floor(log(D mu^{1/p} / C1) / log(1+a)),
/// j0 = floor(log(A C2^{-p} (1-delta) / (4B)) / (p log(1+a))).
LevelParams level_window(double a, double p, double D, double mu, double A, double B, double delta);

/// log(C5 mu) / (p log(1+a)) with C5 = 5 B D^p / (A (1 - delta)).
double level_count_bound(double a, double p, double D, double mu, double A, double B, double delta);

/// max over the grid of sum_gamma |phi(x - gamma)|.
double synthesis_sup_constant(const Generator& g, const std::vector<Point>& nodes, const Grid& grid);

/// Implicit net over the coefficient ball of radius (B mu)^{1/p}: the cubic
/// lattice of mesh 2 eps / K, K = synthesis_sup_constant. Members are
/// produced on demand.
struct CoefficientNet {
  std::vector<Point> nodes;
  double epsilon = 0.0;
  double mesh = 0.0;
  double coeff_radius = 0.0;
  double k_inf = 0.0;
  Index half = 0;       ///< per-axis index range [-half, half]
  bool single = false;  ///< eps covers the whole set; the net is {0}
  double covering_bound = 0.0;

  int dim() const { return static_cast<int>(nodes.size()); }
  Index per_axis() const { return single ? 1 : 2 * half + 1; }
  double size() const;
  bool within_bound() const { return size() <= covering_bound; }

  Eigen::VectorXd center(Index flat) const;
  Eigen::VectorXd nearest(const Eigen::VectorXd& c) const;
  CoefficientVector nearest(const CoefficientVector& c) const;
  GridFunction member(Index flat, const Generator& g, const Grid& grid) const;
};

/// Net for the active nodes of a plan. Refuses d_M > 3.
CoefficientNet build_net(const TruncationPlan& plan, const Lattice& gamma, const Generator& g, const Grid& grid,
                         double epsilon, double D, double mu, double p, double B);
CoefficientNet build_net(const std::vector<Point>& nodes, const Generator& g, const Grid& grid, double epsilon,
                         double D, double mu, double p, double B);

/// Per-level approximation A_j with sup error at most a(1+a)^j.
class NetFamily {
 public:
  enum class Mode { Exact, NetBased };

  static NetFamily exact() { return NetFamily(); }
  static NetFamily net_based(Generator g, double D, double mu, double p, double B);

  Mode mode() const { return mode_; }
  double guarantee(int j, double a) const;
  /// A_j f on f's grid. Net mode needs f.coefficients with at most 3 nodes.
  GridFunction approximate(const GridFunction& f, int j, double a) const;

 private:
  Mode mode_ = Mode::Exact;
  std::optional<Generator> g_;
  double D_ = 1.0, mu_ = 1.0, p_ = 2.0, B_ = 1.0;
};

/// Masks D_j and h(f) = sum_j (1+a)^j chi_{D_j} on f's grid.
struct LevelDecomposition {
  LevelParams params;
  NetFamily::Mode mode = NetFamily::Mode::Exact;
  GridFunction f;
  std::vector<int> level;  ///< per grid point; params.j0 marks D_{j0}
  GridFunction h;
  int j_top = 0;           ///< largest level searched
  std::vector<GridFunction> approximations;  ///< net mode: A_j f for j = j0+1 .. j_top
  double worst_guarantee_ratio = 0.0;        ///< max_j ||f - A_j f||_inf / (a(1+a)^j)

  /// Grid points in D_j.
  std::vector<Index> mask(int j) const;
  /// Level search at an arbitrary point using interpolated f (or A_j f).
  int level_at(std::span<const double> x) const;
  double h_at(std::span<const double> x) const;
  void write_csv(std::ostream& os) const;
};

LevelDecomposition decompose(const GridFunction& f, const LevelParams& params,
                             const NetFamily& family = NetFamily::exact());

struct SandwichReport {
  long checked = 0;
  long violations = 0;
  double worst_lower_slack = 0.0;  ///< min of |f| - C1 h off D_{j0}
  double worst_upper_slack = 0.0;  ///< min of C2 h - |f| off D_{j0}
  double worst_floor_slack = 0.0;  ///< min of C2 (1+a)^{j0} - |f| on D_{j0}
  std::vector<Index> offending;
  bool holds() const { return violations == 0; }
};

SandwichReport verify_h_bounds(const LevelDecomposition& dec, double tol = 1e-9);

/// (1/r) sum |f(xi_nu)|^p with multilinear interpolation.
double sampled_pnorm(const GridFunction& f, const SampleSet& xi, double p);
/// (1/r) sum h(f)(xi_nu)^p.
double sampled_h_pnorm(const LevelDecomposition& dec, const SampleSet& xi);

struct TransferBounds {
  double lower = 0.0;
  double upper = 0.0;
  bool hypothesis_met = true;  ///< |hS - hL| <= sigma
};

/// Bounds on ||S(f, xi)||_p^p given f_norm_p = ||f||^p_{L^p(Omega)}:
/// lower = C1^p (C2^{-p} f_norm_p / mu - (1+a)^{p j0} - sigma),
/// upper = C2^p (C1^{-p} f_norm_p / mu + (1+a)^{p j0} + sigma).
TransferBounds transfer_bounds(double hL, double hS, double sigma, const LevelParams& params, double mu,
                               double f_norm_p);

}  // namespace rksample
