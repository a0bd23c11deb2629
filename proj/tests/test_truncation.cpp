#include "rksample/space_model.hpp"
#include "rksample/truncation.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace rksample;

namespace {

Box square(double lo, double hi) {
  Point a(2), b(2);
  a << lo, lo;
  b << hi, hi;
  return Box(a, b);
}

double total_volume(const std::vector<Box>& boxes) {
  double v = 0.0;
  for (const auto& b : boxes) v += b.volume();
  return v;
}

}  // namespace

TEST_CASE("truncation radius") {
  CHECK(truncation_radius(1.0, 1.0, 1, 1.0, 2.0, 2.0, 1, 1.0) == doctest::Approx(1.0));
  CHECK(truncation_radius(0.5, 1.0, 1, 1.0, 2.0, 2.0, 1, 1.0) == doctest::Approx(2.0));
  CHECK(truncation_radius(1.0, 1.0, 1, 1.0, 2.0, 2.0, 1, 16.0) == doctest::Approx(16.0));
  // p = 1: exponent 1 on epsilon and B enters linearly.
  CHECK(truncation_radius(0.5, 1.0, 1, 2.0, 1.0, 1.0, 1, 1.0) == doctest::Approx(4.0));
  // Two dimensions: (C/eps^2)^{1/(2 alpha)} mu^{1/2}.
  CHECK(truncation_radius(0.5, 1.0, 1, 1.0, 2.0, 1.0, 2, 4.0) == doctest::Approx(4.0));
  CHECK_THROWS(truncation_radius(0.0, 1.0, 1, 1.0, 2.0, 2.0, 1, 1.0));
  CHECK_THROWS(truncation_radius(1.0, 1.0, 1, 1.0, 0.5, 2.0, 1, 1.0));

  // Smaller epsilon never shrinks the radius.
  double prev = 0.0;
  for (double eps = 1.0; eps > 1e-3; eps *= 0.7) {
    const double N = truncation_radius(eps, 3.0, 2, 1.5, 2.5, 1.8, 1, 5.0);
    CHECK(N >= prev);
    prev = N;
  }
}

TEST_CASE("even rounding") {
  CHECK(round_radius_even(0.3) == 2.0);
  CHECK(round_radius_even(2.0) == 2.0);
  CHECK(round_radius_even(2.0000001) == 4.0);
  CHECK(round_radius_even(5.5) == 6.0);
  CHECK(round_radius_even(6.0) == 6.0);
}

TEST_CASE("the set M") {
  const auto m1 = build_M(Domain::interval(0, 1), 2.0);
  REQUIRE(m1.size() == 1);
  CHECK(m1[0].lo[0] == doctest::Approx(-2.0));
  CHECK(m1[0].hi[0] == doctest::Approx(3.0));

  const auto m2 = build_M(Domain({square(0, 2)}), 2.0);
  CHECK(total_volume(m2) == doctest::Approx(36.0));
  Point corner(2);
  corner << -2, 4;
  bool in = false;
  for (const auto& b : m2) in = in || b.contains(as_span(corner));
  CHECK(in);

  // Omega always lies in M.
  const Domain omega({Box::interval(0, 3), Box::interval(10, 12.5)});
  const auto m3 = build_M(omega, 2.0);
  for (double x = 0.0; x <= 12.5; x += 0.125) {
    if (!omega.contains(Point::Constant(1, x))) continue;
    bool covered = false;
    const double p[] = {x};
    for (const auto& b : m3) covered = covered || b.contains(p);
    CHECK(covered);
  }
}

TEST_CASE("plan and coefficient truncation") {
  TruncationInputs in;
  in.epsilon = 1.0;
  in.tail_constant = 1.0;
  in.tail_exponent = 2.0;
  in.B = 1.0;
  in.p = 2.0;
  const Lattice z = Lattice::integer_box(-10, 10);
  const TruncationPlan plan = make_truncation_plan(Domain::interval(0, 1), z, in);
  CHECK(plan.radius == 2.0);
  CHECK(plan.d_M == 6);  // nodes -2..3
  CHECK(plan.C_eps == doctest::Approx(4.0));
  CHECK(plan.dimension_bound() == doctest::Approx(4.0));
  CHECK(dimension_constant(3, 1, 1.0, 1.0, 1.0, 2.0, 2.0, 1.0) == doctest::Approx(4.0));

  CoefficientVector c{z.nodes, Eigen::VectorXd::LinSpaced(21, 1.0, 21.0)};
  const CoefficientVector t = truncate(c, plan);
  for (std::size_t i = 0; i < z.size(); ++i) {
    const bool active = z.nodes[i][0] >= -2 && z.nodes[i][0] <= 3;
    CHECK(t.values[static_cast<Index>(i)] == (active ? c.values[static_cast<Index>(i)] : 0.0));
  }
  CHECK(truncate(t, plan).values == t.values);
  CoefficientVector zero{z.nodes, Eigen::VectorXd::Zero(21)};
  CHECK(truncate(zero, plan).values.isZero());
  CHECK(plan_report(plan).find("d_M = 6") != std::string::npos);
}

TEST_CASE("dimension bound holds over a range of epsilon") {
  const Domain omega = Domain::interval(0, 4);
  const Lattice z = Lattice::integer_box(-60, 64);
  for (double eps : {1.0, 0.5, 0.25, 0.1}) {
    TruncationInputs in;
    in.epsilon = eps;
    in.tail_constant = 2.0;
    in.tail_exponent = 2.0;
    in.B = 1.0;
    in.c_gamma = gamma_occupancy(z, omega);
    const TruncationPlan plan = make_truncation_plan(omega, z, in);
    const DimensionBoundReport rep = dimension_bound(plan, omega.boundary_cube_count(), 1, in.c_gamma, 2.0, 1.0, 2.0,
                                                     2.0, eps, omega.measure());
    CHECK(rep.holds);
    CHECK(rep.count <= rep.bound);
    CHECK(rep.bound == doctest::Approx(plan.dimension_bound()));
  }
}

TEST_CASE("truncation error of a Gaussian space") {
  const Generator g = Generator::gaussian(1.0);
  const Lattice z = Lattice::integer_box(-12, 16);
  const Domain omega = Domain::interval(0, 4);
  const Envelope theta = envelope_from_generator(g, 1, 2.0, 32);
  const double B = frame_bounds_shift_invariant(g).upper;
  const Grid grid = Grid::covering(Box::interval(-18, 22), 1.0 / 32);
  std::mt19937_64 rng(17);
  std::normal_distribution<double> nd;
  for (double eps : {0.5, 0.1}) {
    TruncationInputs in;
    in.epsilon = eps;
    in.tail_constant = theta.tail_constant;
    in.tail_exponent = theta.tail_exponent;
    in.B = B;
    in.p = 2.0;
    in.c_gamma = gamma_occupancy(z, omega);
    const TruncationPlan plan = make_truncation_plan(omega, z, in);
    for (int t = 0; t < 20; ++t) {
      Eigen::VectorXd c(static_cast<Index>(z.size()));
      for (Index i = 0; i < c.size(); ++i) c[i] = nd(rng);
      const CoefficientVector cv{z.nodes, c};
      const GridFunction f = synthesize(cv, g, grid);
      const GridFunction ft = synthesize(truncate(cv, plan), g, grid);
      const TruncationErrorReport rep = truncation_error_check(f, ft, omega, 2.0, eps);
      CHECK(rep.holds);
      CHECK(rep.sup_slack() >= 0.0);
      CHECK(rep.lp_slack() >= 0.0);
    }
  }
}

TEST_CASE("truncation check flags a real violation") {
  const Grid grid = Grid::covering(Box::interval(-2, 6), 1.0 / 16);
  const Domain omega = Domain::interval(0, 4);
  GridFunction f(grid, Eigen::ArrayXd::Ones(grid.size()));
  GridFunction ft(grid, Eigen::ArrayXd::Zero(grid.size()));
  const TruncationErrorReport rep = truncation_error_check(f, ft, omega, 2.0, 0.1);
  CHECK_FALSE(rep.holds);
  CHECK(rep.sup_error == doctest::Approx(1.0));
  CHECK(rep.lp_error == doctest::Approx(2.0));
  CHECK(rep.lp_allowed == doctest::Approx(0.1 * std::sqrt(8.0)));
  CHECK(truncation_error_check(f, f, omega, 2.0, 0.1).holds);
}
