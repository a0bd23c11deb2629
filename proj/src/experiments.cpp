#include "rksample/experiments.hpp"

#include "rksample/errors.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <deque>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>

namespace rksample {

Generator make_generator(const SpaceSpec& s) {
  if (s.generator == "hat") return Generator::bspline(2);
  if (s.generator == "indicator") return Generator::indicator(s.indicator_lo, s.indicator_hi);
  if (s.generator == "bspline") return Generator::bspline(s.bspline_order);
  if (s.generator == "gaussian") return Generator::gaussian(s.gaussian_width);
  if (s.generator == "table") return Generator::load_tabulated(s.table_path);
  throw ConfigError("unknown generator '" + s.generator + "'");
}

Lattice make_lattice(const SpaceSpec& s) {
  if (!s.nodes.empty()) return Lattice::from_points_1d(s.nodes);
  return Lattice::integer_box(s.lattice_lo, s.lattice_hi, s.dim, s.spacing);
}

Space build_space(const ExperimentConfig& cfg) {
  Space sp{make_generator(cfg.space), make_lattice(cfg.space), Envelope{}, Domain(cfg.omega), 1.0, 1.0, 2.0,
           LatticeStats{}, 1.0, 1.0, Grid{}};
  if (sp.gamma.nodes.empty()) throw ConfigError("lattice has no nodes");
  sp.A = cfg.space.A;
  sp.B = cfg.space.B;
  sp.p = cfg.p;
  const int n = cfg.space.dim;
  sp.theta = envelope_from_generator(sp.g, n, cfg.p, cfg.space.samples_per_cell);
  if (cfg.space.tail_constant) sp.theta.tail_constant = *cfg.space.tail_constant;
  if (cfg.space.tail_exponent) sp.theta.tail_exponent = *cfg.space.tail_exponent;
  sp.stats = lattice_stats(sp.gamma);
  sp.c_gamma = gamma_occupancy(sp.gamma, sp.omega);
  sp.D = sup_bound_D(sp.B, sp.stats.density, sp.theta.amalgam_norm, cfg.p);

  const Box omega_box = sp.omega.bounding_box();
  Point lo = omega_box.lo, hi = omega_box.hi;
  const auto [slo, shi] = sp.g.support();
  for (const auto& g : sp.gamma.nodes) {
    lo = lo.cwiseMin((g.array() + slo).matrix());
    hi = hi.cwiseMax((g.array() + shi).matrix());
  }
  sp.grid = Grid::covering(Box(lo, hi), cfg.grid_step);
  return sp;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  std::seed_seq seq{static_cast<std::uint32_t>(base), static_cast<std::uint32_t>(base >> 32),
                    static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(c)};
  std::array<std::uint32_t, 2> out{};
  seq.generate(out.begin(), out.end());
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

namespace {

GridFunction random_on(const Space& space, const std::vector<Point>& nodes, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CoefficientVector c{nodes, Eigen::VectorXd(static_cast<Index>(nodes.size()))};
  for (Index i = 0; i < c.values.size(); ++i) c.values[i] = normal(rng);
  GridFunction f = synthesize(c, space.g, space.grid);
  f.coefficients = c;
  return f;
}

void scale_in_place(GridFunction& f, double s) {
  f.values *= s;
  if (f.coefficients) f.coefficients->values *= s;
}

}  // namespace

GridFunction draw_concentrated_function(const Space& space, double delta, double margin, std::uint64_t seed,
                                        double* ratio) {
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("draw_concentrated_function: delta in (0,1)");
  std::vector<Box> grown;
  for (const auto& b : space.omega.boxes()) {
    const Point lo = (b.lo.array() - margin).matrix();
    const Point hi = (b.hi.array() + margin).matrix();
    if ((lo.array() <= hi.array()).all()) grown.emplace_back(lo, hi);
  }
  std::vector<Point> nodes;
  for (const auto& g : space.gamma.nodes) {
    if (std::any_of(grown.begin(), grown.end(), [&](const Box& b) { return b.contains(as_span(g)); })) {
      nodes.push_back(g);
    }
  }
  if (nodes.empty()) throw InfeasibleConcentrationError("no nodes near the domain");
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    GridFunction f = random_on(space, nodes, rng);
    const double norm = lp_norm(f, space.p);
    if (!(norm > 0.0)) continue;
    const double rho = concentration_ratio(f, space.omega, space.p);
    if (rho >= 1.0 - delta) {
      scale_in_place(f, 1.0 / norm);
      if (ratio) *ratio = rho;
      return f;
    }
  }
  throw InfeasibleConcentrationError("no delta-concentrated function within 1000 draws");
}

GridFunction draw_function(const Space& space, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  GridFunction f = random_on(space, space.gamma.nodes, rng);
  const double norm = lp_norm(f, space.p);
  if (norm > 0.0) scale_in_place(f, 1.0 / norm);
  return f;
}

TrialRecord run_stability_trial(const Space& space, const GridFunction& f, long r, const TheoryConstants& tc,
                                const LevelParams& levels, std::uint64_t seed, bool transfer) {
  const auto t0 = std::chrono::steady_clock::now();
  const double p = space.p;
  const double mu = space.omega.measure();
  TrialRecord rec;
  rec.r = r;
  rec.seed = seed;
  const SampleSet xi = uniform_samples(space.omega, r, seed);
  rec.norm_p = lp_norm_pow(f, p);
  rec.norm_omega_p = lp_norm_pow(f, p, &space.omega);
  rec.concentration = rec.norm_omega_p / rec.norm_p;
  rec.sampled_sum = sampled_pnorm(f, xi, p) * static_cast<double>(r);
  rec.lower_bound = static_cast<double>(r) / mu * tc.lower_coeff * rec.norm_p;
  rec.upper_bound = static_cast<double>(r) / mu * tc.upper_coeff * rec.norm_p;
  rec.lower_ok = rec.sampled_sum >= rec.lower_bound;
  rec.upper_ok = rec.sampled_sum <= rec.upper_bound;

  if (transfer) {
    rec.transfer_checked = true;
    GridFunction fs = f;
    const double s = std::pow(mu / rec.norm_p, 1.0 / p);
    scale_in_place(fs, s);
    const LevelDecomposition dec = decompose(fs, levels);
    rec.hL = lp_norm_pow(dec.h, p, &space.omega) / mu;
    rec.hS = sampled_h_pnorm(dec, xi);
    rec.sigma_star = std::abs(rec.hS - rec.hL);
    const double f_omega = rec.norm_omega_p * std::pow(s, p);
    const TransferBounds tb = transfer_bounds(rec.hL, rec.hS, rec.sigma_star, levels, mu, f_omega);
    rec.transfer_lower = tb.lower;
    rec.transfer_upper = tb.upper;
    rec.sampled_scaled = sampled_pnorm(fs, xi, p);
    const double tol = 1e-12 * std::max(1.0, rec.sampled_scaled);
    rec.transfer_ok = tb.lower <= rec.sampled_scaled + tol && rec.sampled_scaled <= tb.upper + tol;

    // Level families (4/5)(1+a)^{pj} chi_{D_j}: sup and L^1 under the uniform law on Omega.
    std::vector<long> counts(static_cast<std::size_t>(dec.j_top - levels.j0 + 1), 0);
    std::vector<double> x(fs.grid.dim());
    for (Index i = 0; i < fs.grid.size(); ++i) {
      const int lev = dec.level[static_cast<std::size_t>(i)];
      if (lev <= levels.j0) continue;
      fs.grid.point(i, x);
      if (space.omega.contains(x)) ++counts[static_cast<std::size_t>(lev - levels.j0)];
    }
    for (std::size_t k = 1; k < counts.size(); ++k) {
      if (counts[k] == 0) continue;
      const int j = levels.j0 + static_cast<int>(k);
      const double height = 0.8 * std::pow(1.0 + levels.a, p * j);
      const std::size_t idx = static_cast<std::size_t>(j - tc.j0);
      const double L = idx < tc.L_j.size() ? tc.L_j[idx] : 0.8 * std::pow(1.0 + tc.a, tc.p * j);
      rec.family_sup_ratio = std::max(rec.family_sup_ratio, height / L);
      rec.family_l1 = std::max(rec.family_l1, height * counts[k] * fs.grid.cell_volume() / mu);
    }
  }
  rec.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

std::pair<double, double> wilson_interval(long successes, long trials, double z) {
  if (trials <= 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double ph = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (ph + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(ph * (1.0 - ph) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

bool ResultTable::sound() const {
  return std::all_of(rows.begin(), rows.end(), [](const CurveRow& r) { return r.sound(); });
}

bool ResultTable::nondecreasing_within_bands() const {
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].wilson_hi < rows[i - 1].wilson_lo) return false;
  }
  return true;
}

TruncationPlan plan_for(const Space& space, const ExperimentConfig& cfg) {
  TruncationInputs in;
  in.epsilon = cfg.epsilon;
  in.tail_constant = space.theta.tail_constant;
  in.tail_exponent = space.theta.tail_exponent;
  in.B = space.B;
  in.p = cfg.p;
  in.n_gamma = space.stats.density;
  in.c_gamma = space.c_gamma;
  return make_truncation_plan(space.omega, space.gamma, in);
}

TheoryConstants theory_for(const Space& space, const ExperimentConfig& cfg, const TruncationPlan& plan) {
  TheoryInputs in;
  in.p = cfg.p;
  in.a = cfg.a;
  in.delta = cfg.delta;
  in.tau = cfg.tau;
  in.A = space.A;
  in.B = space.B;
  in.D = space.D;
  in.mu = space.omega.measure();
  in.d_M = plan.d_M;
  return compute_constants(in);
}

ResultTable success_curve(const ExperimentConfig& cfg) { return success_curve(cfg, build_space(cfg)); }

ResultTable success_curve(const ExperimentConfig& cfg, const Space& space) {
  ResultTable table;
  table.plan = plan_for(space, cfg);
  table.constants = theory_for(space, cfg, table.plan);
  const TheoryConstants& tc = table.constants;
  if (!(tc.lower_coeff > 0.0)) {
    throw AdmissibilityError("lower coefficient is not positive; tau is too large for this D and p");
  }
  const LevelParams levels =
      level_window(tc.a, cfg.p, space.D, space.omega.measure(), space.A, space.B, cfg.delta);
  const double mu = space.omega.measure();

  for (std::size_t ri = 0; ri < cfg.r_schedule.size(); ++ri) {
    const long r = cfg.r_schedule[ri];
    CurveRow row;
    row.r = r;
    row.trials = cfg.trials;
    double ratio_sum = 0.0;
    for (long t = 0; t < cfg.trials; ++t) {
      double rho = 0.0;
      const GridFunction f =
          draw_concentrated_function(space, cfg.delta, cfg.node_margin, derive_seed(cfg.seed, 1, ri, t), &rho);
      TrialRecord rec =
          run_stability_trial(space, f, r, tc, levels, derive_seed(cfg.seed, 2, ri, t), cfg.transfer);
      rec.trial = t;
      if (rec.success()) ++row.successes;
      ratio_sum += rec.sampled_sum / (static_cast<double>(r) / mu * rec.norm_p);
      table.trials.push_back(rec);
    }
    row.p_hat = static_cast<double>(row.successes) / static_cast<double>(row.trials);
    std::tie(row.wilson_lo, row.wilson_hi) = wilson_interval(row.successes, row.trials);
    row.theory_bound = 1.0 - failure_probability(tc, static_cast<double>(r));
    row.mean_ratio = ratio_sum / static_cast<double>(row.trials);
    table.rows.push_back(row);
  }
  return table;
}

void write_curve_csv(const ResultTable& t, std::ostream& os) {
  os << "r,successes,trials,p_hat,wilson_lo,wilson_hi,theory_bound\n";
  os << std::setprecision(10);
  for (const auto& r : t.rows) {
    os << r.r << ',' << r.successes << ',' << r.trials << ',' << r.p_hat << ',' << r.wilson_lo << ','
       << r.wilson_hi << ',' << r.theory_bound << '\n';
  }
}

void write_trials_csv(const ResultTable& t, std::ostream& os) {
  os << "trial,r,seed,concentration,norm_p,norm_omega_p,sampled_sum,lower_bound,upper_bound,lower_ok,upper_ok,"
        "hL,hS,sigma_star,transfer_lower,transfer_upper,transfer_ok\n";
  os << std::setprecision(12);
  for (const auto& r : t.trials) {
    os << r.trial << ',' << r.r << ',' << r.seed << ',' << r.concentration << ',' << r.norm_p << ','
       << r.norm_omega_p << ',' << r.sampled_sum << ',' << r.lower_bound << ',' << r.upper_bound << ','
       << r.lower_ok << ',' << r.upper_ok << ',' << r.hL << ',' << r.hS << ',' << r.sigma_star << ','
       << r.transfer_lower << ',' << r.transfer_upper << ',' << r.transfer_ok << '\n';
  }
}

void write_curve_svg(const ResultTable& t, std::ostream& os) {
  const double W = 640, H = 400, L = 60, R = 20, T = 20, Bm = 50;
  double rmin = 1, rmax = 10;
  if (!t.rows.empty()) {
    rmin = static_cast<double>(t.rows.front().r);
    rmax = static_cast<double>(t.rows.back().r);
    for (const auto& r : t.rows) {
      rmin = std::min(rmin, static_cast<double>(r.r));
      rmax = std::max(rmax, static_cast<double>(r.r));
    }
  }
  if (rmax <= rmin) rmax = rmin * 10.0;
  auto X = [&](double r) { return L + (std::log(r) - std::log(rmin)) / (std::log(rmax) - std::log(rmin)) * (W - L - R); };
  auto Y = [&](double p) { return T + (1.0 - p) * (H - T - Bm); };
  os << std::fixed << std::setprecision(2);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<line x1=\"" << L << "\" y1=\"" << Y(0) << "\" x2=\"" << W - R << "\" y2=\"" << Y(0)
     << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << L << "\" y1=\"" << Y(0) << "\" x2=\"" << L << "\" y2=\"" << Y(1)
     << "\" stroke=\"black\"/>\n";
  for (double p : {0.0, 0.5, 1.0}) {
    os << "<text x=\"" << L - 30 << "\" y=\"" << Y(p) + 4 << "\" font-size=\"11\">" << p << "</text>\n";
  }
  os << "<text x=\"" << W / 2 << "\" y=\"" << H - 10 << "\" font-size=\"12\">r (log scale)</text>\n";
  if (!t.rows.empty()) {
    os << "<polygon fill=\"#9ecae1\" fill-opacity=\"0.5\" points=\"";
    for (const auto& r : t.rows) os << X(r.r) << ',' << Y(r.wilson_hi) << ' ';
    for (auto it = t.rows.rbegin(); it != t.rows.rend(); ++it) os << X(it->r) << ',' << Y(it->wilson_lo) << ' ';
    os << "\"/>\n<polyline fill=\"none\" stroke=\"#08519c\" stroke-width=\"2\" points=\"";
    for (const auto& r : t.rows) os << X(r.r) << ',' << Y(r.p_hat) << ' ';
    os << "\"/>\n<polyline fill=\"none\" stroke=\"#a50f15\" stroke-dasharray=\"5,3\" points=\"";
    for (const auto& r : t.rows) os << X(r.r) << ',' << Y(r.theory_bound) << ' ';
    os << "\"/>\n";
    for (const auto& r : t.rows) {
      os << "<circle cx=\"" << X(r.r) << "\" cy=\"" << Y(r.p_hat) << "\" r=\"3\" fill=\"#08519c\"/>\n";
      os << "<text x=\"" << X(r.r) - 10 << "\" y=\"" << Y(0) + 15 << "\" font-size=\"10\">" << r.r << "</text>\n";
    }
  }
  os << "</svg>\n";
}

std::string write_outputs(const ResultTable& t, const ExperimentConfig& cfg) {
  const std::filesystem::path dir = resolve_output_dir(cfg);
  std::filesystem::create_directories(dir);
  {
    std::ofstream os(dir / "curve.csv");
    write_curve_csv(t, os);
  }
  {
    std::ofstream os(dir / "trials.csv");
    write_trials_csv(t, os);
  }
  if (cfg.plot) {
    std::ofstream os(dir / "curve.svg");
    write_curve_svg(t, os);
  }
  return dir.string();
}

std::vector<RegularityRow> regularity_demo(const std::vector<double>& eps, double h) {
  const Generator phi = Generator::indicator(0.0, 0.5);
  auto K = [&](double x, double y) {
    double s = 0.0;
    const double k0 = std::floor(x);
    for (double k = k0 - 1.0; k <= k0 + 1.0; k += 1.0) {
      const double px = phi(x - k);
      if (px != 0.0) s += 2.0 * px * phi(y - k);
    }
    return s;
  };
  const Index ny = static_cast<Index>(std::llround(3.0 / h));
  std::vector<double> ys(static_cast<std::size_t>(ny));
  for (Index j = 0; j < ny; ++j) ys[static_cast<std::size_t>(j)] = -1.0 + (static_cast<double>(j) + 0.5) * h;

  std::vector<RegularityRow> out;
  for (double e : eps) {
    if (!(e > 0.0) || e >= 0.5) throw std::invalid_argument("regularity_demo: epsilon must lie in (0, 1/2)");
    const Index m = static_cast<Index>(std::floor(e / h + 1e-9));
    const Index i_lo = static_cast<Index>(std::floor(-0.6 / h));
    const Index i_hi = static_cast<Index>(std::ceil(1.1 / h));
    const Index first = i_lo - m, nx = (i_hi + m) - first + 1;
    Eigen::MatrixXd tab(nx, ny);
    for (Index i = 0; i < nx; ++i) {
      for (Index j = 0; j < ny; ++j) tab(i, j) = K(static_cast<double>(first + i) * h, ys[static_cast<std::size_t>(j)]);
    }
    Eigen::VectorXd w = Eigen::VectorXd::Zero(i_hi - i_lo + 1);
    std::vector<double> col(static_cast<std::size_t>(nx));
    for (Index j = 0; j < ny; ++j) {
      // Sliding max/min over windows [i - m, i + m] via monotone deques.
      std::deque<Index> qmax, qmin;
      Index next = 0;
      for (Index i = m; i < nx - m; ++i) {
        while (next <= i + m) {
          while (!qmax.empty() && tab(qmax.back(), j) <= tab(next, j)) qmax.pop_back();
          while (!qmin.empty() && tab(qmin.back(), j) >= tab(next, j)) qmin.pop_back();
          qmax.push_back(next);
          qmin.push_back(next);
          ++next;
        }
        while (qmax.front() < i - m) qmax.pop_front();
        while (qmin.front() < i - m) qmin.pop_front();
        const double v = tab(i, j);
        w[i - m] += std::max(tab(qmax.front(), j) - v, v - tab(qmin.front(), j)) * h;
      }
    }
    Index arg = 0;
    RegularityRow row;
    row.epsilon = e;
    row.value = w.maxCoeff(&arg);
    row.argmax = static_cast<double>(i_lo + arg) * h;
    out.push_back(row);
  }
  return out;
}

NetProbeReport run_net_probe(const Generator& g, double B, int d_M, double epsilon, double p, long probes,
                             std::uint64_t seed, double grid_step) {
  if (d_M < 1) throw std::invalid_argument("run_net_probe: d_M must be >= 1");
  std::vector<double> xs;
  for (int i = 0; i < d_M; ++i) xs.push_back(i);
  const Lattice gamma = Lattice::from_points_1d(xs);
  const Domain omega = Domain::interval(0.0, std::max(d_M, 1));
  const Envelope theta = envelope_from_generator(g, 1, p, 64);
  const LatticeStats stats = lattice_stats(gamma);

  NetProbeReport rep;
  rep.mu = omega.measure();
  rep.D = sup_bound_D(B, stats.density, theta.amalgam_norm, p);
  const auto [slo, shi] = g.support();
  const Grid grid = Grid::covering(Box::interval(std::min(0.0, slo), d_M - 1 + std::max(1.0, shi)), grid_step);
  rep.net = build_net(gamma.nodes, g, grid, epsilon, rep.D, rep.mu, p, B);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (long k = 0; k < probes; ++k) {
    CoefficientVector c{gamma.nodes, Eigen::VectorXd(d_M)};
    for (int i = 0; i < d_M; ++i) c.values[i] = normal(rng);
    GridFunction f = synthesize(c, g, grid);
    const double norm = lp_norm(f, p);
    if (!(norm > 0.0)) continue;
    const double s = std::pow(rep.mu, 1.0 / p) / norm;
    c.values *= s;
    f.values *= s;
    const GridFunction m = synthesize(rep.net.nearest(c), g, grid);
    const double err = (f.values - m.values).abs().maxCoeff();
    rep.max_error = std::max(rep.max_error, err);
    ++rep.probes;
    if (err <= epsilon * (1.0 + 1e-12)) ++rep.covered;
  }
  return rep;
}

bool AssumptionReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const AssumptionCheck& c) { return c.pass; });
}

std::string AssumptionReport::render() const {
  std::size_t w = 0;
  for (const auto& c : checks) w = std::max(w, c.name.size());
  std::ostringstream os;
  for (const auto& c : checks) {
    os << (c.pass ? "PASS  " : "FAIL  ") << std::left << std::setw(static_cast<int>(w) + 2) << c.name << c.detail
       << '\n';
  }
  return os.str();
}

AssumptionReport check_assumptions(const ExperimentConfig& cfg) {
  AssumptionReport rep;
  auto add = [&](std::string name, bool pass, std::string detail) {
    rep.checks.push_back({std::move(name), pass, std::move(detail)});
  };
  auto fmt = [](double v) {
    std::ostringstream os;
    os << std::setprecision(6) << v;
    return os.str();
  };

  std::optional<Domain> omega;
  try {
    omega.emplace(cfg.omega);
    add("measure", true, "mu = " + fmt(omega->measure()));
  } catch (const std::exception& e) {
    add("measure", false, e.what());
  }

  const Lattice gamma = make_lattice(cfg.space);
  LatticeStats stats;
  try {
    stats = lattice_stats(gamma);
    add("gap", stats.gap > 0.0, "beta = " + fmt(stats.gap));
    add("density", stats.density >= 1, "N(Gamma) = " + std::to_string(stats.density));
  } catch (const std::exception& e) {
    add("gap", false, e.what());
  }
  if (omega) {
    const double occ = gamma_occupancy(gamma, *omega);
    add("occupancy", std::isfinite(occ), "C(Gamma) = " + fmt(occ));
  }
  if (std::isfinite(stats.gap)) {
    add("grid resolution", cfg.grid_step <= stats.gap / 8.0 + 1e-15,
        "step = " + fmt(cfg.grid_step) + ", beta/8 = " + fmt(stats.gap / 8.0));
  }

  Generator g = make_generator(cfg.space);
  const Envelope theta = envelope_from_generator(g, cfg.space.dim, cfg.p, cfg.space.samples_per_cell);
  const TailFit fit = fit_tail_decay(theta.profile, cfg.space.dim, cfg.p);
  const double C = cfg.space.tail_constant.value_or(theta.tail_constant);
  const double alpha = cfg.space.tail_exponent.value_or(theta.tail_exponent);
  bool dominated = true;
  for (const auto& [N, tail] : fit.ladder) {
    dominated = dominated && tail <= C / std::pow(N, cfg.space.dim * alpha) * (1.0 + 1e-9);
  }
  add("envelope amalgam", std::isfinite(theta.amalgam_norm), "||Theta||_W = " + fmt(theta.amalgam_norm));
  add("envelope tail", dominated, "C = " + fmt(C) + ", alpha = " + fmt(alpha));
  const double amin = min_tail_exponent(cfg.p);
  add("alpha admissible", alpha >= amin - 1e-12, "alpha = " + fmt(alpha) + " >= " + fmt(amin));

  double theta_max = 0.0;
  const auto [slo, shi] = g.support();
  for (int i = 0; i <= 4096; ++i) theta_max = std::max(theta_max, std::abs(g(slo + (shi - slo) * i / 4096.0)));
  add("envelope <= 1", theta_max <= 1.0 + 1e-12, "sup Theta = " + fmt(theta_max));

  if (omega) {
    ExperimentConfig c = cfg;
    try {
      const Space sp = build_space(c);
      const LocalizationReport loc = check_localization(sp.g, sp.gamma, sp.theta, sp.grid);
      add("localization", loc.holds, "worst slack = " + fmt(loc.worst_slack));
    } catch (const std::exception& e) {
      add("localization", false, e.what());
    }
  }

  const bool shift_invariant = cfg.space.dim == 1 && cfg.space.nodes.empty() && cfg.space.spacing == 1.0;
  if (shift_invariant && cfg.p == 2.0) {
    const FrameBounds fb = frame_bounds_shift_invariant(g);
    const bool ok = fb.is_frame && cfg.space.A <= 1.0 / fb.upper * (1.0 + 1e-6) &&
                    cfg.space.B >= 1.0 / fb.lower * (1.0 - 1e-6);
    add("frame bounds", ok,
        "bracket in [" + fmt(fb.lower) + ", " + fmt(fb.upper) + "], A = " + fmt(cfg.space.A) +
            ", B = " + fmt(cfg.space.B));
  } else {
    add("frame bounds", cfg.space.A > 0.0 && cfg.space.B >= cfg.space.A,
        "A = " + fmt(cfg.space.A) + ", B = " + fmt(cfg.space.B) + " (taken from config)");
  }

  const double a = cfg.a > 0.0 ? cfg.a : a_for_p(cfg.p);
  add("level parameter", a_admissible(a, cfg.p), "a = " + fmt(a));
  return rep;
}

}  // namespace rksample
