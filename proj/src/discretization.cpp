#include "rksample/discretization.hpp"

#include "rksample/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace rksample {

bool a_admissible(double a, double p) {
  return a > 0.0 && a <= 0.5 && std::pow(c2(a) / c1(a), p) <= 1.25;
}

double a_for_p(double p) {
  if (p < 1.0) throw std::invalid_argument("a_for_p: p must be >= 1");
  double lo = 0.0, hi = 0.5;
  if (a_admissible(hi, p)) return hi;
  while (hi - lo > 1e-15) {
    const double mid = 0.5 * (lo + hi);
    if (std::pow(c2(mid) / c1(mid), p) <= 1.25) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

double covering_number_bound(double r, double omega, int s) {
  if (!(r > 0.0) || !(omega > 0.0) || s < 1) throw std::invalid_argument("covering_number_bound: bad input");
  return std::pow(2.0 * r / omega + 1.0, s);
}

double vmo_covering_bound(double epsilon, double D, double mu, double p, long d_M) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("vmo_covering_bound: epsilon must be positive");
  const double scale = D * std::pow(mu, 1.0 / p);
  if (epsilon >= 2.0 * scale) return 1.0;
  return std::pow(4.0 * scale / epsilon, static_cast<double>(d_M));
}

double LevelParams::level(int j) const { return std::pow(1.0 + a, j); }

LevelParams level_window(double a, double p, double D, double mu, double A, double B, double delta) {
  if (!(a > 0.0) || !(p >= 1.0) || !(D > 0.0) || !(mu > 0.0) || !(A > 0.0) || !(B > 0.0)) {
    throw std::invalid_argument("level_window: inputs must be positive");
  }
  if (delta < 0.0 || delta >= 1.0) throw std::invalid_argument("level_window: delta must lie in [0, 1)");
  LevelParams lp;
  lp.a = a;
  lp.p = p;
  lp.admissible = a_admissible(a, p);
  const double la = std::log1p(a);
  lp.J_raw = std::log(D * std::pow(mu, 1.0 / p) / c1(a)) / la;
  lp.j0_raw = std::log(A * std::pow(c2(a), -p) * (1.0 - delta) / (4.0 * B)) / (p * la);
  lp.J = static_cast<int>(std::floor(lp.J_raw + 1e-12));
  lp.j0 = static_cast<int>(std::floor(lp.j0_raw + 1e-12));
  if (lp.J < lp.j0) {
    throw DegenerateWindowError("level_window: J = " + std::to_string(lp.J) + " < j0 = " + std::to_string(lp.j0));
  }
  return lp;
}

double level_count_bound(double a, double p, double D, double mu, double A, double B, double delta) {
  const double c5 = 5.0 * B * std::pow(D, p) / (A * (1.0 - delta));
  return std::log(c5 * mu) / (p * std::log1p(a));
}

double synthesis_sup_constant(const Generator& g, const std::vector<Point>& nodes, const Grid& grid) {
  const auto [lo, hi] = g.support();
  const Generator abs_g =
      Generator::custom([g](double t) { return std::abs(g.profile(t)); }, lo, hi, g.compact(), "abs")
          .scaled(std::abs(g.amplitude()));
  CoefficientVector ones{nodes, Eigen::VectorXd::Ones(static_cast<Index>(nodes.size()))};
  const GridFunction s = synthesize(ones, abs_g, grid);
  return s.values.size() ? s.values.maxCoeff() : 0.0;
}

double CoefficientNet::size() const { return std::pow(static_cast<double>(per_axis()), dim()); }

Eigen::VectorXd CoefficientNet::center(Index flat) const {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(dim());
  if (single) return c;
  const Index m = per_axis();
  for (int i = 0; i < dim(); ++i) {
    c[i] = static_cast<double>(flat % m - half) * mesh;
    flat /= m;
  }
  return c;
}

Eigen::VectorXd CoefficientNet::nearest(const Eigen::VectorXd& c) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(dim());
  if (single) return out;
  for (int i = 0; i < dim(); ++i) {
    const double k = std::clamp(std::round(c[i] / mesh), -static_cast<double>(half), static_cast<double>(half));
    out[i] = k * mesh;
  }
  return out;
}

CoefficientVector CoefficientNet::nearest(const CoefficientVector& c) const {
  return CoefficientVector{nodes, nearest(c.values)};
}

GridFunction CoefficientNet::member(Index flat, const Generator& g, const Grid& grid) const {
  CoefficientVector c{nodes, center(flat)};
  GridFunction f = synthesize(c, g, grid);
  f.coefficients = c;
  return f;
}

CoefficientNet build_net(const std::vector<Point>& nodes, const Generator& g, const Grid& grid, double epsilon,
                         double D, double mu, double p, double B) {
  if (nodes.size() > 3) {
    throw NetTooLargeError("build_net: d_M = " + std::to_string(nodes.size()) + " exceeds 3");
  }
  if (!(epsilon > 0.0)) throw std::invalid_argument("build_net: epsilon must be positive");
  CoefficientNet net;
  net.nodes = nodes;
  net.epsilon = epsilon;
  net.coeff_radius = std::pow(B * mu, 1.0 / p);
  net.k_inf = synthesis_sup_constant(g, nodes, grid);
  net.covering_bound = vmo_covering_bound(epsilon, D, mu, p, static_cast<long>(nodes.size()));
  const double diameter = D * std::pow(mu, 1.0 / p);
  if (epsilon >= diameter || nodes.empty() || net.k_inf == 0.0) {
    net.single = true;
    net.mesh = 0.0;
    return net;
  }
  net.mesh = 2.0 * epsilon / net.k_inf;
  net.half = std::max<Index>(0, static_cast<Index>(std::ceil(net.coeff_radius / net.mesh - 0.5)));
  return net;
}

CoefficientNet build_net(const TruncationPlan& plan, const Lattice& gamma, const Generator& g, const Grid& grid,
                         double epsilon, double D, double mu, double p, double B) {
  std::vector<Point> nodes;
  for (auto i : plan.active_nodes) nodes.push_back(gamma.nodes[i]);
  return build_net(nodes, g, grid, epsilon, D, mu, p, B);
}

NetFamily NetFamily::net_based(Generator g, double D, double mu, double p, double B) {
  NetFamily fam;
  fam.mode_ = Mode::NetBased;
  fam.g_ = std::move(g);
  fam.D_ = D;
  fam.mu_ = mu;
  fam.p_ = p;
  fam.B_ = B;
  return fam;
}

double NetFamily::guarantee(int j, double a) const { return a * std::pow(1.0 + a, j); }

GridFunction NetFamily::approximate(const GridFunction& f, int j, double a) const {
  if (mode_ == Mode::Exact) return f;
  if (!f.coefficients) throw std::invalid_argument("NetFamily: net mode needs synthesized functions");
  const CoefficientNet net = build_net(f.coefficients->nodes, *g_, f.grid, guarantee(j, a), D_, mu_, p_, B_);
  const CoefficientVector c = net.nearest(*f.coefficients);
  GridFunction out = synthesize(c, *g_, f.grid);
  out.coefficients = c;
  return out;
}

namespace {

int search_level(int j0, int j_top, double a, const std::function<double(int)>& value_at) {
  for (int j = j_top; j > j0; --j) {
    if (std::abs(value_at(j)) >= std::pow(1.0 + a, j)) return j;
  }
  return j0;
}

// Same search for a single value: start at floor(log|v| / log(1+a)) and fix rounding.
int exact_level(double v, int j0, int j_top, double a) {
  v = std::abs(v);
  if (!(v > 0.0)) return j0;
  const double la = std::log1p(a);
  int j = static_cast<int>(std::clamp(std::floor(std::log(v) / la), static_cast<double>(j0), static_cast<double>(j_top)));
  while (j > j0 && v < std::pow(1.0 + a, j)) --j;
  while (j < j_top && v >= std::pow(1.0 + a, j + 1)) ++j;
  return j;
}

}  // namespace

LevelDecomposition decompose(const GridFunction& f, const LevelParams& params, const NetFamily& family) {
  LevelDecomposition dec;
  dec.params = params;
  dec.mode = family.mode();
  dec.f = f;
  const double a = params.a;
  const double fmax = f.values.size() ? f.values.abs().maxCoeff() : 0.0;
  int j_top = params.J;
  if (fmax > 0.0) {
    j_top = std::max(j_top, static_cast<int>(std::floor(std::log(fmax / c1(a)) / std::log1p(a))) + 1);
  }
  dec.j_top = std::max(j_top, params.j0);

  if (dec.mode == NetFamily::Mode::NetBased) {
    for (int j = params.j0 + 1; j <= dec.j_top; ++j) {
      GridFunction aj = family.approximate(f, j, a);
      const double err = (f.values - aj.values).abs().maxCoeff();
      dec.worst_guarantee_ratio = std::max(dec.worst_guarantee_ratio, err / family.guarantee(j, a));
      dec.approximations.push_back(std::move(aj));
    }
  }

  const Index n = f.grid.size();
  dec.level.assign(static_cast<std::size_t>(n), params.j0);
  dec.h = GridFunction(f.grid);
  for (Index i = 0; i < n; ++i) {
    int lev;
    if (dec.mode == NetFamily::Mode::Exact) {
      lev = exact_level(f.values[i], params.j0, dec.j_top, a);
    } else {
      lev = search_level(params.j0, dec.j_top, a, [&](int j) {
        return dec.approximations[static_cast<std::size_t>(j - params.j0 - 1)].values[i];
      });
    }
    dec.level[static_cast<std::size_t>(i)] = lev;
    dec.h.values[i] = lev > params.j0 ? std::pow(1.0 + a, lev) : 0.0;
  }
  return dec;
}

std::vector<Index> LevelDecomposition::mask(int j) const {
  std::vector<Index> out;
  for (std::size_t i = 0; i < level.size(); ++i) {
    if (level[i] == j) out.push_back(static_cast<Index>(i));
  }
  return out;
}

int LevelDecomposition::level_at(std::span<const double> x) const {
  if (mode == NetFamily::Mode::Exact) {
    return exact_level(f.interpolate(x), params.j0, j_top, params.a);
  }
  return search_level(params.j0, j_top, params.a, [&](int j) {
    return approximations[static_cast<std::size_t>(j - params.j0 - 1)].interpolate(x);
  });
}

double LevelDecomposition::h_at(std::span<const double> x) const {
  const int lev = level_at(x);
  return lev > params.j0 ? std::pow(1.0 + params.a, lev) : 0.0;
}

void LevelDecomposition::write_csv(std::ostream& os) const {
  os << "index,level,h\n";
  for (std::size_t i = 0; i < level.size(); ++i) {
    os << i << ',' << level[i] << ',' << h.values[static_cast<Index>(i)] << '\n';
  }
}

SandwichReport verify_h_bounds(const LevelDecomposition& dec, double tol) {
  SandwichReport rep;
  const double a = dec.params.a;
  const double floor_bound = c2(a) * std::pow(1.0 + a, dec.params.j0);
  rep.worst_lower_slack = rep.worst_upper_slack = rep.worst_floor_slack = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < dec.level.size(); ++i) {
    const Index k = static_cast<Index>(i);
    const double fv = std::abs(dec.f.values[k]);
    const double t = tol * std::max(1.0, fv);
    bool bad = false;
    if (dec.level[i] > dec.params.j0) {
      const double h = dec.h.values[k];
      const double lo = fv - c1(a) * h;
      const double hi = c2(a) * h - fv;
      rep.worst_lower_slack = std::min(rep.worst_lower_slack, lo);
      rep.worst_upper_slack = std::min(rep.worst_upper_slack, hi);
      bad = lo < -t || hi < -t;
    } else {
      const double s = floor_bound - fv;
      rep.worst_floor_slack = std::min(rep.worst_floor_slack, s);
      bad = s < -t || dec.h.values[k] != 0.0;
    }
    ++rep.checked;
    if (bad) {
      ++rep.violations;
      if (rep.offending.size() < 32) rep.offending.push_back(k);
    }
  }
  return rep;
}

double sampled_pnorm(const GridFunction& f, const SampleSet& xi, double p) {
  if (xi.size() == 0) throw std::invalid_argument("sampled_pnorm: empty sample set");
  double s = 0.0;
  for (Index k = 0; k < xi.size(); ++k) s += std::pow(std::abs(f.interpolate(xi.point(k))), p);
  return s / static_cast<double>(xi.size());
}

double sampled_h_pnorm(const LevelDecomposition& dec, const SampleSet& xi) {
  if (xi.size() == 0) throw std::invalid_argument("sampled_h_pnorm: empty sample set");
  double s = 0.0;
  for (Index k = 0; k < xi.size(); ++k) s += std::pow(dec.h_at(xi.point(k)), dec.params.p);
  return s / static_cast<double>(xi.size());
}

TransferBounds transfer_bounds(double hL, double hS, double sigma, const LevelParams& params, double mu,
                               double f_norm_p) {
  const double p = params.p, a = params.a;
  const double floor_term = std::pow(1.0 + a, p * params.j0);
  TransferBounds tb;
  tb.hypothesis_met = std::abs(hS - hL) <= sigma;
  tb.lower = std::pow(c1(a), p) * (std::pow(c2(a), -p) * f_norm_p / mu - floor_term - sigma);
  tb.upper = std::pow(c2(a), p) * (std::pow(c1(a), -p) * f_norm_p / mu + floor_term + sigma);
  return tb;
}

}  // namespace rksample
