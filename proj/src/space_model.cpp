#include "rksample/space_model.hpp"

#include "rksample/errors.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

namespace rksample {

namespace {

double checked(double v, const char* what) {
  if (!std::isfinite(v)) throw EvaluationError(std::string(what) + ": non-finite evaluation");
  return v;
}

// Centred cardinal B-spline via the truncated-power formula.
double centered_bspline(int order, double t) {
  const double half = 0.5 * order;
  if (t < -half || t > half) return 0.0;
  const double u = t + half;
  double acc = 0.0;
  double binom = 1.0;
  for (int k = 0; k <= order; ++k) {
    const double arg = u - k;
    if (arg > 0.0) acc += ((k % 2 == 0) ? 1.0 : -1.0) * binom * std::pow(arg, order - 1);
    binom = binom * (order - k) / (k + 1);
  }
  double fact = 1.0;
  for (int k = 2; k < order; ++k) fact *= k;
  return std::max(0.0, acc / fact);
}

// Effective support cut-off for exp(-(t/w)^2): value below 1e-32.
constexpr double kGaussianCut = 8.6;

}  // namespace

Generator Generator::indicator(double lo, double hi) {
  if (!(lo < hi)) throw std::invalid_argument("Generator::indicator: empty interval");
  Generator g;
  g.kind_ = GeneratorKind::Indicator;
  g.name_ = "indicator";
  g.profile_ = [lo, hi](double t) { return (t >= lo && t <= hi) ? 1.0 : 0.0; };
  g.lo_ = lo;
  g.hi_ = hi;
  g.compact_ = true;
  return g;
}

Generator Generator::bspline(int order) {
  if (order < 1 || order > 12) throw std::invalid_argument("Generator::bspline: order must be in [1, 12]");
  Generator g;
  g.kind_ = GeneratorKind::BSpline;
  g.name_ = "bspline" + std::to_string(order);
  if (order == 2) {
    g.profile_ = [](double t) { return std::max(0.0, 1.0 - std::abs(t)); };
  } else {
    g.profile_ = [order](double t) { return centered_bspline(order, t); };
  }
  g.lo_ = -0.5 * order;
  g.hi_ = 0.5 * order;
  g.compact_ = true;
  return g;
}

Generator Generator::gaussian(double width) {
  if (!(width > 0.0)) throw std::invalid_argument("Generator::gaussian: width must be positive");
  Generator g;
  g.kind_ = GeneratorKind::Gaussian;
  g.name_ = "gaussian";
  g.profile_ = [width](double t) {
    const double u = t / width;
    return std::exp(-u * u);
  };
  g.lo_ = -kGaussianCut * width;
  g.hi_ = kGaussianCut * width;
  g.compact_ = false;
  return g;
}

Generator Generator::tabulated(std::vector<double> xs, std::vector<double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2) {
    throw std::invalid_argument("Generator::tabulated: need at least two (x, value) rows");
  }
  if (!std::is_sorted(xs.begin(), xs.end()) || std::adjacent_find(xs.begin(), xs.end()) != xs.end()) {
    throw std::invalid_argument("Generator::tabulated: x column must be strictly increasing");
  }
  for (double y : ys) checked(y, "Generator::tabulated");
  Generator g;
  g.kind_ = GeneratorKind::Tabulated;
  g.name_ = "tabulated";
  g.lo_ = xs.front();
  g.hi_ = xs.back();
  g.compact_ = true;
  g.profile_ = [xs = std::move(xs), ys = std::move(ys)](double t) {
    if (t < xs.front() || t > xs.back()) return 0.0;
    auto it = std::upper_bound(xs.begin(), xs.end(), t);
    if (it == xs.end()) return ys.back();
    const auto i = static_cast<std::size_t>(it - xs.begin());
    const double w = (t - xs[i - 1]) / (xs[i] - xs[i - 1]);
    return (1.0 - w) * ys[i - 1] + w * ys[i];
  };
  return g;
}

Generator Generator::load_tabulated(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open tabulated generator file '" + path + "'");
  std::vector<double> xs, ys;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    double x, y;
    if (row >> x >> y) {
      xs.push_back(x);
      ys.push_back(y);
    }
  }
  return tabulated(std::move(xs), std::move(ys));
}

Generator Generator::custom(std::function<double(double)> profile, double lo, double hi, bool compact,
                            std::string name) {
  if (!(lo <= hi)) throw std::invalid_argument("Generator::custom: bad support");
  Generator g;
  g.kind_ = GeneratorKind::Custom;
  g.name_ = std::move(name);
  g.profile_ = std::move(profile);
  g.lo_ = lo;
  g.hi_ = hi;
  g.compact_ = compact;
  return g;
}

Generator Generator::scaled(double factor) const {
  Generator g = *this;
  g.amplitude_ *= factor;
  return g;
}

double Generator::operator()(std::span<const double> x) const {
  double v = amplitude_;
  for (double t : x) {
    v *= profile_(t);
    if (v == 0.0) return 0.0;
  }
  return checked(v, "Generator");
}

// ---------------------------------------------------------------------------
// Amalgam norms and tails

double ShellProfile::total() const {
  double s = 0.0;
  for (double v : shell_sums) s += v;
  return s;
}

double ShellProfile::tail_outside(double N) const {
  double s = 0.0;
  for (std::size_t shell = 0; shell < shell_sums.size(); ++shell) {
    if (static_cast<double>(shell) > 0.5 * N) s += shell_sums[shell];
  }
  return s;
}

ShellProfile shell_profile(const Evaluator& g, int dim, int samples_per_cell, double support_radius,
                           int max_shells) {
  if (dim < 1) throw std::invalid_argument("shell_profile: dimension must be >= 1");
  if (samples_per_cell < 1) throw std::invalid_argument("shell_profile: resolution must be positive");
  if (max_shells <= 0) max_shells = dim == 1 ? 20000 : (dim == 2 ? 400 : 60);

  ShellProfile out;
  out.samples_per_cell = samples_per_cell;
  const bool compact = std::isfinite(support_radius);

  // Midpoints plus points just inside both cell faces, so one-sided limits
  // at the faces are seen without evaluating on the faces themselves.
  std::vector<double> offsets{1e-9};
  for (int i = 0; i < samples_per_cell; ++i) offsets.push_back((i + 0.5) / samples_per_cell);
  offsets.push_back(1.0 - 1e-9);
  const long m = static_cast<long>(offsets.size());
  long per_cell = 1;
  for (int i = 0; i < dim; ++i) per_cell *= m;
  std::vector<double> x(dim);
  std::vector<long> k(dim);

  auto cell_sup = [&](const std::vector<long>& cell) {
    double best = 0.0;
    for (long t = 0; t < per_cell; ++t) {
      long rem = t;
      for (int i = 0; i < dim; ++i) {
        x[i] = offsets[static_cast<std::size_t>(rem % m)] + static_cast<double>(cell[i]);
        rem /= m;
      }
      best = std::max(best, std::abs(checked(g(x), "wiener_amalgam_norm")));
    }
    return best;
  };

  double total = 0.0;
  double tail_estimate = std::numeric_limits<double>::infinity();
  for (int s = 0;; ++s) {
    if (compact && static_cast<double>(s) - 1.0 >= support_radius) {
      out.compact = true;
      tail_estimate = 0.0;
      break;
    }
    if (s >= max_shells) {
      throw NonAmalgamError("wiener_amalgam_norm: partial sums did not settle within " +
                            std::to_string(max_shells) + " shells");
    }
    // Cells with max |k_i| == s.
    const long side = 2L * s + 1;
    long count = 1;
    for (int i = 0; i < dim; ++i) count *= side;
    double shell = 0.0;
    for (long t = 0; t < count; ++t) {
      long rem = t;
      long mx = 0;
      for (int i = 0; i < dim; ++i) {
        k[i] = rem % side - s;
        rem /= side;
        mx = std::max(mx, std::abs(k[i]));
      }
      if (mx != s) continue;
      shell += cell_sup(k);
    }
    out.shell_sums.push_back(shell);
    total += shell;
    if (compact || s < 3) continue;

    // Power-law extrapolation of the remaining shells from the last two.
    const double prev = out.shell_sums[static_cast<std::size_t>(s) - 1];
    if (shell == 0.0 && prev == 0.0) {
      tail_estimate = 0.0;
    } else if (shell > 0.0 && prev > shell) {
      const double q = std::log(prev / shell) / std::log(static_cast<double>(s) / (s - 1));
      tail_estimate = q > 1.0 ? shell * s / (q - 1.0) : std::numeric_limits<double>::infinity();
    } else {
      tail_estimate = std::numeric_limits<double>::infinity();
    }
    if (total > 0.0 && tail_estimate <= 1e-13 * total) break;
    if (total == 0.0 && s >= 64) break;
  }
  out.truncation_bound = std::isfinite(tail_estimate) ? tail_estimate : 0.0;
  return out;
}

AmalgamResult wiener_amalgam_norm(const Evaluator& g, int dim, int samples_per_cell, double support_radius) {
  const ShellProfile prof = shell_profile(g, dim, samples_per_cell, support_radius);
  return {prof.total(), prof.truncation_bound, static_cast<int>(prof.shell_sums.size())};
}

AmalgamResult wiener_amalgam_norm(const Generator& g, int dim, int samples_per_cell) {
  const double radius = g.compact() ? g.support_radius() : std::numeric_limits<double>::infinity();
  return wiener_amalgam_norm([&g](std::span<const double> x) { return std::abs(g(x)); }, dim, samples_per_cell,
                             radius);
}

double min_tail_exponent(double p) {
  if (p < 1.0) throw std::invalid_argument("min_tail_exponent: p must be >= 1");
  return p == 1.0 ? 1.0 : p / (p - 1.0);
}

TailFit fit_tail_decay(const ShellProfile& profile, int dim, double p) {
  TailFit fit;
  std::vector<double> lx, ly;
  for (double N = 2.0; N <= 64.0; N *= 2.0) {
    const double t = profile.tail_outside(N);
    fit.ladder.emplace_back(N, t);
    if (t > 1e-300) {
      lx.push_back(std::log(N));
      ly.push_back(std::log(t));
    }
  }
  if (lx.size() >= 2) {
    Eigen::MatrixXd design(lx.size(), 2);
    Eigen::VectorXd rhs(ly.size());
    for (std::size_t i = 0; i < lx.size(); ++i) {
      design(static_cast<Index>(i), 0) = 1.0;
      design(static_cast<Index>(i), 1) = lx[i];
      rhs[static_cast<Index>(i)] = ly[i];
    }
    const Eigen::Vector2d coef = design.colPivHouseholderQr().solve(rhs);
    fit.alpha = -coef[1] / dim;
    fit.compact = false;
  } else {
    fit.alpha = min_tail_exponent(p);
    fit.compact = profile.tail_outside(64.0) == 0.0;
  }

  // The tail is a step function of N, constant on [2j, 2j + 2); bound it at
  // the right end of each step.
  const double n_alpha = dim * fit.alpha;
  double worst = 0.0;
  const auto shells = static_cast<double>(profile.shell_sums.size());
  for (double N = 0.0; N <= 2.0 * shells; N += 2.0) {
    const double t = profile.tail_outside(N);
    if (t > 0.0) worst = std::max(worst, t * std::pow(N + 2.0, n_alpha));
  }
  fit.C = worst > 0.0 ? 1.01 * worst : 1.0;

  fit.dominated = std::isfinite(fit.C);
  for (double N = 1.0; N <= 2.0 * shells + 2.0; N += 1.0) {
    if (!(profile.tail_outside(N) < fit.C / std::pow(N, n_alpha))) fit.dominated = false;
  }
  return fit;
}

Envelope make_envelope(Evaluator theta, int dim, double p, int samples_per_cell, double support_radius) {
  Envelope env;
  env.eval = std::move(theta);
  env.dim = dim;
  env.support_radius = support_radius;
  env.profile = shell_profile(env.eval, dim, samples_per_cell, support_radius);
  env.amalgam_norm = env.profile.total();
  env.compact = env.profile.compact;
  const TailFit fit = fit_tail_decay(env.profile, dim, p);
  env.tail_constant = fit.C;
  env.tail_exponent = fit.alpha;
  return env;
}

Envelope envelope_from_generator(const Generator& g, int dim, double p, int samples_per_cell) {
  const double radius = g.compact() ? g.support_radius() : std::numeric_limits<double>::infinity();
  return make_envelope([g](std::span<const double> x) { return std::abs(g(x)); }, dim, p, samples_per_cell,
                       radius);
}

TailSumResult envelope_tail_sum(const Envelope& theta, double N) {
  if (N < 1.0) throw std::invalid_argument("envelope_tail_sum: N must be >= 1");
  TailSumResult out;
  out.value = theta.profile.tail_outside(N);
  out.truncation_bound = theta.profile.truncation_bound;
  out.compact_support = out.value == 0.0 && theta.profile.compact;
  return out;
}

// ---------------------------------------------------------------------------
// Node sets

LatticeStats lattice_stats(const Lattice& gamma) {
  LatticeStats st;
  const auto& nodes = gamma.nodes;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      const double d = (nodes[i] - nodes[j]).cwiseAbs().maxCoeff();
      if (d == 0.0) throw ZeroGapError("lattice_stats: duplicate node");
      st.gap = std::min(st.gap, d);
    }
  }
  std::map<std::vector<long>, int> cells;
  for (const auto& x : nodes) {
    std::vector<long> key(static_cast<std::size_t>(x.size()));
    for (Index i = 0; i < x.size(); ++i) key[static_cast<std::size_t>(i)] = static_cast<long>(std::floor(x[i]));
    st.density = std::max(st.density, ++cells[key]);
  }
  return st;
}

// ---------------------------------------------------------------------------
// Synthesis and quadrature

GridFunction synthesize(const CoefficientVector& c, const Generator& g, const Grid& grid) {
  if (c.values.size() != static_cast<Index>(c.nodes.size())) {
    throw std::invalid_argument("synthesize: coefficient count differs from node count");
  }
  const int n = grid.dim();
  GridFunction f(grid);
  const auto [lo, hi] = g.support();
  std::vector<std::vector<double>> axis_vals(n);
  std::vector<Index> first(n), last(n), stride(n);
  Index s = 1;
  for (int a = 0; a < n; ++a) {
    stride[a] = s;
    s *= grid.extents()[a];
  }

  for (std::size_t node = 0; node < c.nodes.size(); ++node) {
    const double coef = c.values[static_cast<Index>(node)];
    if (coef == 0.0) continue;
    const Point& gamma = c.nodes[node];
    if (gamma.size() != n) throw std::invalid_argument("synthesize: node dimension differs from grid");
    bool empty = false;
    for (int a = 0; a < n; ++a) {
      const double t_lo = (gamma[a] + lo - grid.origin()[a]) / grid.step() - 0.5;
      const double t_hi = (gamma[a] + hi - grid.origin()[a]) / grid.step() - 0.5;
      first[a] = std::max<Index>(0, static_cast<Index>(std::ceil(t_lo - 1e-9)));
      last[a] = std::min<Index>(grid.extents()[a] - 1, static_cast<Index>(std::floor(t_hi + 1e-9)));
      if (last[a] < first[a]) {
        empty = true;
        break;
      }
      axis_vals[a].resize(static_cast<std::size_t>(last[a] - first[a] + 1));
      for (Index k = first[a]; k <= last[a]; ++k) {
        axis_vals[a][static_cast<std::size_t>(k - first[a])] =
            checked(g.profile(grid.center(a, k) - gamma[a]), "synthesize");
      }
    }
    if (empty) continue;
    // Walk the sub-box of affected cells.
    Index count = 1;
    for (int a = 0; a < n; ++a) count *= last[a] - first[a] + 1;
    const double scale = coef * g.amplitude();
    for (Index t = 0; t < count; ++t) {
      Index rem = t, flat = 0;
      double v = scale;
      for (int a = 0; a < n; ++a) {
        const Index span_a = last[a] - first[a] + 1;
        const Index k = rem % span_a;
        rem /= span_a;
        v *= axis_vals[a][static_cast<std::size_t>(k)];
        flat += (first[a] + k) * stride[a];
      }
      f.values[flat] += v;
    }
  }
  f.coefficients = c;
  return f;
}

QuadratureReport lp_quadrature(const GridFunction& f, double p, const Domain* region) {
  if (p < 1.0) throw std::invalid_argument("lp_norm: p must be >= 1");
  QuadratureReport rep;
  rep.step = f.grid.step();
  double acc = 0.0;
  std::vector<double> x(f.grid.dim());
  for (Index i = 0; i < f.grid.size(); ++i) {
    if (region) {
      f.grid.point(i, x);
      if (!region->contains(x)) continue;
    }
    ++rep.points;
    acc += std::pow(std::abs(f.values[i]), p);
  }
  rep.empty_region = rep.points == 0;
  rep.value = std::pow(acc * f.grid.cell_volume(), 1.0 / p);
  return rep;
}

double lp_norm(const GridFunction& f, double p, const Domain* region) { return lp_quadrature(f, p, region).value; }

double lp_norm_pow(const GridFunction& f, double p, const Domain* region) {
  if (p < 1.0) throw std::invalid_argument("lp_norm: p must be >= 1");
  double acc = 0.0;
  std::vector<double> x(f.grid.dim());
  for (Index i = 0; i < f.grid.size(); ++i) {
    if (region) {
      f.grid.point(i, x);
      if (!region->contains(x)) continue;
    }
    acc += std::pow(std::abs(f.values[i]), p);
  }
  return acc * f.grid.cell_volume();
}

double sup_norm(const GridFunction& f, const Domain* region) {
  double best = 0.0;
  std::vector<double> x(f.grid.dim());
  for (Index i = 0; i < f.grid.size(); ++i) {
    if (region) {
      f.grid.point(i, x);
      if (!region->contains(x)) continue;
    }
    best = std::max(best, std::abs(f.values[i]));
  }
  return best;
}

double sup_bound_D(double B, int n_gamma, double amalgam, double p) {
  if (!(B > 0.0) || n_gamma < 1 || !(amalgam > 0.0)) {
    throw std::invalid_argument("sup_bound_D: B, N(Gamma) and the amalgam norm must be positive");
  }
  if (p < 1.0) throw std::invalid_argument("sup_bound_D: p must be >= 1");
  double D = std::pow(B, 1.0 / p);
  if (p > 1.0) {
    const double inv_dual = (p - 1.0) / p;  // 1/p'
    D *= std::pow(static_cast<double>(n_gamma) * amalgam, inv_dual);
  }
  return std::max(D, 1.0 + 1e-6);
}

// ---------------------------------------------------------------------------
// Fourier side

namespace {

struct QuadratureNodes {
  std::vector<double> x;
  std::vector<double> w;  // weight times amplitude * profile
};

QuadratureNodes fourier_nodes(const Generator& g, int panels_per_unit) {
  using GL = boost::math::quadrature::gauss<double, 8>;
  const auto [lo, hi] = g.support();
  const double len = hi - lo;
  const int panels = std::max(8, static_cast<int>(std::ceil(len * panels_per_unit)));
  const double h = len / panels;
  QuadratureNodes q;
  const auto& absc = GL::abscissa();
  const auto& wts = GL::weights();
  for (int p = 0; p < panels; ++p) {
    const double mid = lo + (p + 0.5) * h;
    for (std::size_t i = 0; i < absc.size(); ++i) {
      for (int sgn : {-1, 1}) {
        if (absc[i] == 0.0 && sgn < 0) continue;
        const double x = mid + sgn * absc[i] * 0.5 * h;
        const double v = g(x);
        if (std::abs(v) < 1e-18 * std::abs(g.amplitude())) continue;
        q.x.push_back(x);
        q.w.push_back(wts[i] * 0.5 * h * v);
      }
    }
  }
  return q;
}

}  // namespace

std::complex<double> fourier_transform(const Generator& g, double xi, int panels_per_unit) {
  const QuadratureNodes q = fourier_nodes(g, panels_per_unit);
  std::complex<double> acc = 0.0;
  for (std::size_t i = 0; i < q.x.size(); ++i) {
    acc += q.w[i] * std::polar(1.0, -2.0 * std::numbers::pi * q.x[i] * xi);
  }
  return acc;
}

FrameBounds frame_bounds_shift_invariant(const Generator& g, int xi_points, int kmax, double frame_tol) {
  if (xi_points < 1 || kmax < 2) throw std::invalid_argument("frame_bounds_shift_invariant: bad resolution");
  const QuadratureNodes q = fourier_nodes(g, std::max(64, 3 * (kmax + 1) / 2));
  const std::size_t m = q.x.size();
  std::vector<std::complex<double>> step(m), base(m), cur(m);
  for (std::size_t i = 0; i < m; ++i) step[i] = std::polar(1.0, -2.0 * std::numbers::pi * q.x[i]);

  FrameBounds out;
  out.lower = std::numeric_limits<double>::infinity();
  out.upper = 0.0;
  std::vector<double> terms_pos(static_cast<std::size_t>(kmax) + 1), terms_neg(static_cast<std::size_t>(kmax) + 1);

  // Tail of a power-law sequence beyond the last computed term.
  auto side_tail = [](double a_last, double a_prev, double t_last, double t_prev) {
    if (!(a_last > 0.0) || !(a_prev > 0.0)) return 0.0;
    const double s = std::log(a_prev / a_last) / std::log(t_last / t_prev);
    if (!(s > 1.01)) return std::numeric_limits<double>::infinity();
    return a_last * std::pow(t_last, s) * std::pow(t_last + 0.5, 1.0 - s) / (s - 1.0);
  };

  for (int ix = 0; ix < xi_points; ++ix) {
    const double xi = static_cast<double>(ix) / xi_points;
    for (std::size_t i = 0; i < m; ++i) base[i] = q.w[i] * std::polar(1.0, -2.0 * std::numbers::pi * q.x[i] * xi);
    // k >= 0: multiply by step^k; k < 0: by conj(step)^|k|. A side stops
    // early once four consecutive terms are negligible.
    auto negligible = [](const std::vector<double>& t, int k, double total) {
      if (k < 8) return false;
      for (int j = k - 3; j <= k; ++j) {
        if (t[static_cast<std::size_t>(j)] > 1e-20 * total) return false;
      }
      return true;
    };
    double sum = 0.0;
    bool pos_done = false, neg_done = false;
    cur = base;
    for (int k = 0; k <= kmax; ++k) {
      std::complex<double> acc = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        acc += cur[i];
        cur[i] *= step[i];
      }
      terms_pos[static_cast<std::size_t>(k)] = std::norm(acc);
      sum += terms_pos[static_cast<std::size_t>(k)];
      if (negligible(terms_pos, k, sum)) {
        pos_done = true;
        break;
      }
    }
    cur = base;
    for (int k = 0; k < kmax; ++k) {
      for (std::size_t i = 0; i < m; ++i) cur[i] *= std::conj(step[i]);
      std::complex<double> acc = 0.0;
      for (std::size_t i = 0; i < m; ++i) acc += cur[i];
      terms_neg[static_cast<std::size_t>(k)] = std::norm(acc);  // k -> -(k+1)
      sum += terms_neg[static_cast<std::size_t>(k)];
      if (negligible(terms_neg, k, sum)) {
        neg_done = true;
        break;
      }
    }

    const auto K = static_cast<std::size_t>(kmax);
    double tail = 0.0;
    const double floor_level = 1e-15 * sum;
    if (!pos_done && terms_pos[K] > floor_level) {
      tail += side_tail(terms_pos[K], terms_pos[K - 1], xi + kmax, xi + kmax - 1);
    }
    if (!neg_done && terms_neg[K - 1] > floor_level) {
      tail += side_tail(terms_neg[K - 1], terms_neg[K - 2], kmax - xi, kmax - 1 - xi);
    }
    if (std::isfinite(tail)) sum += tail;
    out.tail_bound = std::max(out.tail_bound, tail);
    out.xi.push_back(xi);
    out.bracket.push_back(sum);
    out.lower = std::min(out.lower, sum);
    out.upper = std::max(out.upper, sum);
  }
  out.is_frame = out.lower > frame_tol;
  return out;
}

LocalizationReport check_localization(const Generator& g, const Lattice& gamma, const Envelope& theta,
                                      const Grid& grid, double tol, std::size_t max_violations) {
  LocalizationReport rep;
  std::vector<double> x(grid.dim()), d(grid.dim());
  for (std::size_t node = 0; node < gamma.nodes.size(); ++node) {
    const Point& c = gamma.nodes[node];
    for (Index i = 0; i < grid.size(); ++i) {
      grid.point(i, x);
      for (int a = 0; a < grid.dim(); ++a) d[a] = x[a] - c[a];
      const double slack = theta(d) - std::abs(g(d));
      rep.worst_slack = std::min(rep.worst_slack, slack);
      if (slack < -tol) {
        rep.holds = false;
        if (rep.violations.size() < max_violations) rep.violations.emplace_back(node, i);
      }
    }
  }
  return rep;
}

}  // namespace rksample
