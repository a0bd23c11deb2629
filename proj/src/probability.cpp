#include "rksample/probability.hpp"

#include "rksample/discretization.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

namespace rksample {

double bernstein_bound(double r, double eta, double L) {
  if (!(eta > 0.0 && eta < 1.0)) throw std::invalid_argument("bernstein_bound: eta must lie in (0, 1)");
  if (!(L > 0.0)) throw std::invalid_argument("bernstein_bound: L must be positive");
  if (r < 1.0) throw std::invalid_argument("bernstein_bound: r must be >= 1");
  return 2.0 * std::exp(-r * eta * eta / (8.0 * L));
}

double union_failure(const std::vector<FamilyTerm>& families, double r) {
  double s = 0.0;
  for (const auto& f : families) {
    if (f.count < 1.0) throw std::invalid_argument("union_failure: family counts must be >= 1");
    s += f.count * bernstein_bound(r, f.eta, f.L);
  }
  return s;
}

SigmaChoice choose_sigma_j0(double A, double B, double delta, double a, double p) {
  if (delta < 0.0 || delta >= 1.0) throw std::invalid_argument("choose_sigma_j0: delta must lie in [0, 1)");
  SigmaChoice s;
  const double target = A * std::pow(c2(a), -p) * (1.0 - delta);
  s.sigma = target / (2.0 * B);
  s.j0_raw = std::log(target / (4.0 * B)) / (p * std::log1p(a));
  s.j0 = static_cast<int>(std::floor(s.j0_raw + 1e-12));
  return s;
}

long long min_sample_size(double sigma, long d_M, long g_size) {
  if (!(sigma > 0.0)) throw std::invalid_argument("min_sample_size: sigma must be positive");
  if (d_M <= 0) return 0;
  const double g2 = static_cast<double>(g_size) * static_cast<double>(g_size);
  auto R = [&](long long r) { return static_cast<double>(r) * sigma * sigma / (10.0 * g2) - d_M; };
  long long r = static_cast<long long>(std::ceil(10.0 * d_M * g2 / (sigma * sigma)));
  while (R(r) < 0.0) ++r;
  while (r > 0 && R(r - 1) >= 0.0) --r;
  return r;
}

MainBounds main_bounds(double p, double D, double tau, double A, double B) {
  if (!(tau > 0.0 && tau < 1.0)) throw std::invalid_argument("main_bounds: tau must lie in (0, 1)");
  MainBounds mb;
  const double dterm = p * std::pow(D, p - 1.0);
  mb.lower = 0.2 - p * std::pow(2.0, p + 1.0) * tau / 5.0 - dterm * tau;
  mb.upper = 2.0 * B / A + dterm;
  mb.lower_positive = mb.lower > 0.0;
  return mb;
}

long long asymptotic_budget(double mu, double c) {
  if (mu < std::exp(1.0) - 1e-12) throw std::invalid_argument("asymptotic_budget: mu must be >= e");
  if (!(c > 0.0)) throw std::invalid_argument("asymptotic_budget: c must be positive");
  const double l = std::log(mu);
  return static_cast<long long>(std::ceil(c * mu * l * l * l - 1e-9));
}

double TheoryConstants::A1() const { return std::exp(log_A1); }

double TheoryConstants::R(double r) const {
  const double g = static_cast<double>(g_size);
  return r * sigma * sigma / (10.0 * g * g) - static_cast<double>(d_M);
}

double TheoryConstants::failure_raw(double r) const {
  const double expo = std::log(2.0) + log_A1 + std::log(static_cast<double>(g_size)) -
                      R(r) * std::pow(1.0 + a, -p * j0);
  if (expo > 700.0) return std::numeric_limits<double>::infinity();
  return std::exp(expo);
}

TheoryConstants compute_constants(const TheoryInputs& in) {
  TheoryConstants tc;
  tc.p = in.p;
  tc.a = in.a > 0.0 ? in.a : a_for_p(in.p);
  tc.delta = in.delta;
  tc.tau = in.tau;
  tc.A = in.A;
  tc.B = in.B;
  tc.D = in.D;
  tc.mu = in.mu;
  tc.d_M = in.d_M;
  tc.a_admissible = a_admissible(tc.a, tc.p);

  const SigmaChoice sc = choose_sigma_j0(in.A, in.B, in.delta, tc.a, in.p);
  const LevelParams lp = level_window(tc.a, in.p, in.D, in.mu, in.A, in.B, in.delta);
  tc.sigma = in.sigma ? *in.sigma : sc.sigma;
  tc.j0 = lp.j0;
  tc.J = lp.J;
  tc.g_size = in.g_size ? *in.g_size : lp.size();
  if (in.g_size) tc.J = tc.j0 + static_cast<int>(tc.g_size) - 1;

  for (int j = tc.j0; j <= tc.J; ++j) {
    tc.levels.push_back(j);
    tc.L_j.push_back(0.8 * std::pow(1.0 + tc.a, tc.p * j));
    tc.eta_j.push_back(4.0 * tc.sigma / (5.0 * static_cast<double>(tc.g_size)));
  }
  tc.C4 = std::pow(4.0 * tc.D / tc.a, tc.p);
  tc.C5 = 5.0 * tc.B * std::pow(tc.D, tc.p) / (tc.A * (1.0 - tc.delta));
  tc.log_A1 = static_cast<double>(tc.d_M) * std::log(tc.C4 * tc.mu) / tc.p;
  tc.r_min = min_sample_size(tc.sigma, tc.d_M, tc.g_size);
  tc.g_size_bound = level_count_bound(tc.a, tc.p, tc.D, tc.mu, tc.A, tc.B, tc.delta);
  if (in.tau > 0.0 && in.tau < 1.0) {
    const MainBounds mb = main_bounds(tc.p, tc.D, tc.tau, tc.A, tc.B);
    tc.lower_coeff = mb.lower;
    tc.upper_coeff = mb.upper;
  }
  return tc;
}

double failure_probability(const TheoryConstants& tc, double r) {
  if (tc.R(r) < 0.0) return 1.0;
  return clamp_probability(tc.failure_raw(r));
}

std::string render_constants(const TheoryConstants& tc, std::optional<double> r) {
  std::vector<std::pair<std::string, std::string>> rows;
  auto num = [](double v) {
    std::ostringstream os;
    os << std::setprecision(12) << v;
    return os.str();
  };
  rows.emplace_back("p", num(tc.p));
  rows.emplace_back("a", num(tc.a));
  rows.emplace_back("a_admissible", tc.a_admissible ? "true" : "false");
  rows.emplace_back("delta", num(tc.delta));
  rows.emplace_back("tau", num(tc.tau));
  rows.emplace_back("A", num(tc.A));
  rows.emplace_back("B", num(tc.B));
  rows.emplace_back("D", num(tc.D));
  rows.emplace_back("mu", num(tc.mu));
  rows.emplace_back("d_M", std::to_string(tc.d_M));
  rows.emplace_back("C1", num(c1(tc.a)));
  rows.emplace_back("C2", num(c2(tc.a)));
  rows.emplace_back("sigma", num(tc.sigma));
  rows.emplace_back("j0", std::to_string(tc.j0));
  rows.emplace_back("J", std::to_string(tc.J));
  rows.emplace_back("G_size", std::to_string(tc.g_size));
  rows.emplace_back("G_size_bound", num(tc.g_size_bound));
  rows.emplace_back("eta", tc.eta_j.empty() ? "-" : num(tc.eta_j.front()));
  rows.emplace_back("L_j0", tc.L_j.empty() ? "-" : num(tc.L_j.front()));
  rows.emplace_back("L_J", tc.L_j.empty() ? "-" : num(tc.L_j.back()));
  rows.emplace_back("C4", num(tc.C4));
  rows.emplace_back("C5", num(tc.C5));
  rows.emplace_back("log_A1", num(tc.log_A1));
  rows.emplace_back("r_min", std::to_string(tc.r_min));
  rows.emplace_back("lower_coeff", num(tc.lower_coeff));
  rows.emplace_back("upper_coeff", num(tc.upper_coeff));
  if (r) {
    rows.emplace_back("r", num(*r));
    rows.emplace_back("R", num(tc.R(*r)));
    rows.emplace_back("failure_raw", num(tc.R(*r) < 0.0 ? 1.0 : tc.failure_raw(*r)));
    rows.emplace_back("failure_bound", num(failure_probability(tc, *r)));
  }
  std::size_t w = 0;
  for (const auto& [k, v] : rows) w = std::max(w, k.size());
  std::ostringstream os;
  for (const auto& [k, v] : rows) os << std::left << std::setw(static_cast<int>(w) + 2) << k << v << '\n';
  os << '\n';
  for (const auto& [k, v] : rows) os << k << '=' << v << '\n';
  return os.str();
}

TailCheckReport empirical_tail_check(TailDistribution dist, int r, double eta, double L, long trials,
                                     std::uint64_t seed) {
  if (r < 1 || trials < 1) throw std::invalid_argument("empirical_tail_check: r and trials must be >= 1");
  if (!(L > 0.0)) throw std::invalid_argument("empirical_tail_check: L must be positive");
  const double mean_abs = dist == TailDistribution::Rademacher ? L : (dist == TailDistribution::Uniform ? L / 2 : 0);
  if (mean_abs > 2.0) throw std::invalid_argument("empirical_tail_check: E|g| exceeds 2");

  TailCheckReport rep;
  rep.trials = trials;
  rep.bound = bernstein_bound(r, eta, L);
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5);
  std::uniform_real_distribution<double> unif(-L, L);
  const double threshold = r * eta;
  for (long t = 0; t < trials; ++t) {
    double s = 0.0;
    for (int k = 0; k < r; ++k) {
      switch (dist) {
        case TailDistribution::Rademacher: s += coin(rng) ? L : -L; break;
        case TailDistribution::Uniform: s += unif(rng); break;
        case TailDistribution::Zero: break;
      }
    }
    if (std::abs(s) >= threshold) ++rep.exceed;
  }
  rep.frequency = static_cast<double>(rep.exceed) / static_cast<double>(trials);
  rep.margin = 3.0 * std::sqrt(rep.frequency * (1.0 - rep.frequency) / static_cast<double>(trials));
  rep.holds = rep.frequency <= rep.bound + rep.margin;
  return rep;
}

}  // namespace rksample
