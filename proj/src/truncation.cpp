#include "rksample/truncation.hpp"

#include "rksample/space_model.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace rksample {

namespace {

// (p', B^{p'/p}) with the p = 1 convention.
std::pair<double, double> dual_terms(double B, double p) {
  if (p < 1.0) throw std::invalid_argument("p must be >= 1");
  if (p == 1.0) return {1.0, B};
  const double pp = p / (p - 1.0);
  return {pp, std::pow(B, pp / p)};
}

}  // namespace

double truncation_radius(double epsilon, double C, int n_gamma, double B, double p, double alpha, int n,
                         double mu) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("truncation_radius: epsilon must be positive");
  if (!(C > 0.0) || n_gamma < 1 || !(B > 0.0) || !(alpha > 0.0) || n < 1 || !(mu > 0.0)) {
    throw std::invalid_argument("truncation_radius: inputs must be positive");
  }
  const auto [pp, bterm] = dual_terms(B, p);
  const double base = C * n_gamma * bterm / std::pow(epsilon, pp);
  return std::pow(base, 1.0 / (n * alpha)) * std::pow(mu, 1.0 / n);
}

double round_radius_even(double N) {
  const double r = 2.0 * std::ceil(N / 2.0 - 1e-12);
  return std::max(2.0, r);
}

std::vector<Box> build_M(const Domain& omega, double N) {
  std::vector<Box> boxes = omega.boxes();
  const double h = 0.5 * N;
  for (const auto& m : boundary_cubes(omega)) {
    boxes.emplace_back((m.array() - h).matrix(), (m.array() + 1.0 + h).matrix());
  }
  return merge_boxes(boxes);
}

bool TruncationPlan::in_M(std::span<const double> x) const {
  for (const auto& b : M) {
    if (b.contains(x)) return true;
  }
  return false;
}

double dimension_constant(long d, int n_gamma, double c_gamma, double C, double B, double p, double alpha,
                          double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("dimension_constant: epsilon must be positive");
  const auto [pp, bterm] = dual_terms(B, p);
  const double base = C * n_gamma * bterm / std::pow(epsilon, pp);
  return static_cast<double>(d) * n_gamma * std::pow(base, 1.0 / alpha) + c_gamma;
}

TruncationPlan make_truncation_plan(const Domain& omega, const Lattice& gamma, const TruncationInputs& in) {
  TruncationPlan plan;
  plan.epsilon = in.epsilon;
  plan.mu = omega.measure();
  plan.radius_raw = truncation_radius(in.epsilon, in.tail_constant, in.n_gamma, in.B, in.p, in.tail_exponent,
                                      omega.dim(), plan.mu);
  plan.radius = round_radius_even(plan.radius_raw);
  plan.M = build_M(omega, plan.radius);
  for (std::size_t i = 0; i < gamma.nodes.size(); ++i) {
    if (plan.in_M(as_span(gamma.nodes[i]))) plan.active_nodes.push_back(i);
  }
  plan.d_M = static_cast<long>(plan.active_nodes.size());
  plan.C_eps = dimension_constant(omega.boundary_cube_count(), in.n_gamma, in.c_gamma, in.tail_constant, in.B,
                                  in.p, in.tail_exponent, in.epsilon);
  return plan;
}

CoefficientVector truncate(const CoefficientVector& c, const TruncationPlan& plan) {
  CoefficientVector out = c;
  for (std::size_t i = 0; i < c.nodes.size(); ++i) {
    if (!plan.in_M(as_span(c.nodes[i]))) out.values[static_cast<Index>(i)] = 0.0;
  }
  return out;
}

TruncationErrorReport truncation_error_check(const GridFunction& f, const GridFunction& f_trunc,
                                             const Domain& omega, double p, double epsilon, double tol) {
  if (f.grid.size() != f_trunc.grid.size()) {
    throw std::invalid_argument("truncation_error_check: grids differ");
  }
  TruncationErrorReport rep;
  const double norm = lp_norm(f, p);
  const double mu = omega.measure();
  GridFunction diff(f.grid, f.values - f_trunc.values);
  rep.sup_error = sup_norm(diff, &omega);
  rep.lp_error = lp_norm(diff, p, &omega);
  rep.sup_allowed = epsilon / mu * norm;
  rep.lp_allowed = epsilon * norm;
  rep.holds = rep.sup_error <= rep.sup_allowed * (1.0 + tol) + tol &&
              rep.lp_error <= rep.lp_allowed * (1.0 + tol) + tol;
  return rep;
}

DimensionBoundReport dimension_bound(const TruncationPlan& plan, long d, int n_gamma, double c_gamma, double C,
                                     double B, double p, double alpha, double epsilon, double mu) {
  DimensionBoundReport rep;
  rep.C_eps = dimension_constant(d, n_gamma, c_gamma, C, B, p, alpha, epsilon);
  rep.bound = rep.C_eps * mu;
  rep.count = plan.d_M;
  rep.holds = static_cast<double>(rep.count) <= rep.bound;
  return rep;
}

std::string plan_report(const TruncationPlan& plan) {
  std::ostringstream os;
  os << "epsilon = " << plan.epsilon << "\n";
  os << "N = " << plan.radius << " (raw " << plan.radius_raw << ")\n";
  os << "M boxes = " << plan.M.size() << "\n";
  for (const auto& b : plan.M) {
    os << "  [";
    for (int i = 0; i < b.dim(); ++i) os << (i ? ", " : "") << b.lo[i] << ".." << b.hi[i];
    os << "]\n";
  }
  os << "d_M = " << plan.d_M << "\n";
  os << "C(eps) mu = " << plan.dimension_bound() << "\n";
  return os.str();
}

}  // namespace rksample
