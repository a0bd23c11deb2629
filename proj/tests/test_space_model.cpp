#include "rksample/errors.hpp"
#include "rksample/space_model.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>

using namespace rksample;

namespace {

Evaluator laplace() {
  return [](std::span<const double> x) { return std::exp(-std::abs(x[0])); };
}

Point pt1(double x) {
  Point p(1);
  p[0] = x;
  return p;
}

}  // namespace

TEST_CASE("amalgam norms") {
  CHECK(wiener_amalgam_norm(Generator::bspline(2), 1, 64).value == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(wiener_amalgam_norm(Generator::indicator(0, 0.5), 1, 64).value == doctest::Approx(1.0).epsilon(1e-12));

  double gsum = 0.0;
  for (int j = 0; j < 40; ++j) gsum += 2.0 * std::exp(-double(j) * j);
  CHECK(gsum == doctest::Approx(2.7726372048266525).epsilon(1e-15));
  CHECK(wiener_amalgam_norm(Generator::gaussian(1.0), 1, 64).value == doctest::Approx(gsum).epsilon(1e-8));

  const double lap = 2.0 / (1.0 - std::exp(-1.0));
  CHECK(lap == doctest::Approx(3.163953413738653));
  CHECK(wiener_amalgam_norm(laplace(), 1, 64).value == doctest::Approx(lap).epsilon(1e-8));

  // Two-dimensional hat: the norm of a tensor product is the product of norms.
  Evaluator hat2 = [](std::span<const double> x) {
    return std::max(0.0, 1 - std::abs(x[0])) * std::max(0.0, 1 - std::abs(x[1]));
  };
  CHECK(wiener_amalgam_norm(hat2, 2, 16, 1.0).value == doctest::Approx(4.0).epsilon(1e-8));
}

TEST_CASE("non-amalgam decay is rejected") {
  Evaluator slow = [](std::span<const double> x) { return 1.0 / (1.0 + std::abs(x[0])); };
  CHECK_THROWS_AS(wiener_amalgam_norm(slow, 1, 8), NonAmalgamError);
}

TEST_CASE("non-finite evaluation is reported") {
  Evaluator bad = [](std::span<const double> x) { return x[0] > 0.3 && x[0] < 0.6 ? NAN : 0.0; };
  CHECK_THROWS_AS(wiener_amalgam_norm(bad, 1, 16, 1.0), EvaluationError);
}

TEST_CASE("envelope tail sums and fits") {
  const Envelope lap = make_envelope(laplace(), 1, 2.0, 64);
  const double want = (std::exp(-3.0) + std::exp(-2.0)) / (1.0 - std::exp(-1.0));
  CHECK(want == doctest::Approx(0.29285924815915554));
  CHECK(envelope_tail_sum(lap, 4).value == doctest::Approx(want).epsilon(1e-8));

  const Envelope hat = envelope_from_generator(Generator::bspline(2), 1, 2.0, 64);
  CHECK(hat.compact);
  CHECK(envelope_tail_sum(hat, 4).value == 0.0);
  CHECK(envelope_tail_sum(hat, 4).compact_support);
  CHECK(hat.tail_exponent == doctest::Approx(2.0));
  CHECK(envelope_from_generator(Generator::bspline(2), 1, 3.0, 64).tail_exponent == doctest::Approx(1.5));
  CHECK(envelope_from_generator(Generator::bspline(2), 1, 1.0, 64).tail_exponent == doctest::Approx(1.0));

  const TailFit fit = fit_tail_decay(lap.profile, 1, 2.0);
  CHECK(fit.dominated);
  CHECK_FALSE(fit.compact);
  CHECK(fit.alpha >= min_tail_exponent(2.0));
  for (const auto& [N, tail] : fit.ladder) CHECK(tail <= fit.C / std::pow(N, fit.alpha) * (1 + 1e-9));
  CHECK_THROWS(envelope_tail_sum(lap, 0.5));
}

TEST_CASE("lattice statistics") {
  const LatticeStats z = lattice_stats(Lattice::integer_box(-5, 5));
  CHECK(z.density == 1);
  CHECK(z.gap == doctest::Approx(1.0));
  const LatticeStats irr = lattice_stats(Lattice::from_points_1d({0.0, 0.25, 1.0}));
  CHECK(irr.density == 2);
  CHECK(irr.gap == doctest::Approx(0.25));
  CHECK(lattice_stats(Lattice::integer_box(0, 3, 2, 0.5)).density == 4);
  CHECK_THROWS_AS(lattice_stats(Lattice::from_points_1d({0.0, 1.0, 1.0})), ZeroGapError);
}

TEST_CASE("sup-norm constant") {
  CHECK(sup_bound_D(2.0, 1, 4.0, 2.0) == doctest::Approx(std::sqrt(8.0)));
  CHECK(sup_bound_D(3.0, 1, 2.0, 1.0) == doctest::Approx(3.0));
  CHECK(sup_bound_D(1e-9, 1, 1e-9, 2.0) == doctest::Approx(1.0 + 1e-6));
  CHECK_THROWS(sup_bound_D(0.0, 1, 1.0, 2.0));
}

TEST_CASE("synthesis and quadrature norms") {
  const Grid grid = Grid::covering(Box::interval(-2, 6), 1.0 / 64);
  const Generator hat = Generator::bspline(2);
  const Lattice z = Lattice::integer_box(-3, 7);
  CoefficientVector ones{z.nodes, Eigen::VectorXd::Ones(static_cast<Index>(z.size()))};
  const GridFunction f = synthesize(ones, hat, grid);
  for (Index i = 0; i < grid.size(); ++i) CHECK(f.values[i] == doctest::Approx(1.0));

  CoefficientVector one{{pt1(1.0)}, Eigen::VectorXd::Ones(1)};
  const GridFunction h = synthesize(one, hat, grid);
  CHECK(sup_norm(h) == doctest::Approx(1.0 - 1.0 / 128));
  // ||hat||_2^2 = 2/3, midpoint rule error O(step^2).
  CHECK(lp_norm_pow(h, 2.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-4));
  CHECK(lp_norm(h, 1.0) == doctest::Approx(1.0).epsilon(1e-12));

  CoefficientVector ind{{pt1(0.0)}, Eigen::VectorXd::Ones(1)};
  const GridFunction chi = synthesize(ind, Generator::indicator(0, 0.5), grid);
  CHECK(lp_norm_pow(chi, 2.0) == doctest::Approx(0.5).epsilon(1e-14));

  const Domain omega = Domain::interval(0, 1);
  CHECK(lp_norm(h, 1.0, &omega) == doctest::Approx(0.5).epsilon(1e-12));
  const QuadratureReport q = lp_quadrature(h, 2.0, &omega);
  CHECK(q.points == 64);
  CHECK_FALSE(q.empty_region);
  CHECK_THROWS(synthesize(CoefficientVector{{pt1(0)}, Eigen::VectorXd::Ones(2)}, hat, grid));
}

TEST_CASE("sup bounded by D times the p-norm") {
  const Generator hat = Generator::bspline(2);
  const Lattice z = Lattice::integer_box(0, 8);
  const Grid grid = Grid::covering(Box::interval(-2, 10), 1.0 / 32);
  std::mt19937_64 rng(5);
  std::normal_distribution<double> nd;
  for (double p : {1.0, 2.0, 3.0}) {
    // The hat translates form a Riesz basis with upper bound 1 for every p.
    const double D = sup_bound_D(1.0, 1, 2.0, p);
    for (int t = 0; t < 50; ++t) {
      Eigen::VectorXd c(static_cast<Index>(z.size()));
      for (Index i = 0; i < c.size(); ++i) c[i] = nd(rng);
      const GridFunction f = synthesize(CoefficientVector{z.nodes, c}, hat, grid);
      CHECK(sup_norm(f) <= D * lp_norm(f, p) * (1 + 1e-6));
    }
  }
}

TEST_CASE("frame bounds of shift-invariant systems") {
  const FrameBounds hat = frame_bounds_shift_invariant(Generator::bspline(2));
  CHECK(hat.lower == doctest::Approx(1.0 / 3.0).epsilon(1e-6));
  CHECK(hat.upper == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(hat.is_frame);

  // |phi^(xi)|^2 = pi exp(-2 pi^2 xi^2) for exp(-t^2).
  const double pi = std::numbers::pi;
  double lo = 0.0, hi = 0.0;
  for (int k = -30; k <= 30; ++k) {
    lo += pi * std::exp(-2 * pi * pi * (0.5 + k) * (0.5 + k));
    hi += pi * std::exp(-2 * pi * pi * double(k) * k);
  }
  CHECK(lo == doctest::Approx(0.04518793583227765).epsilon(1e-9));
  CHECK(hi == doctest::Approx(3.1415926703991235).epsilon(1e-12));
  const FrameBounds g = frame_bounds_shift_invariant(Generator::gaussian(1.0));
  CHECK(g.lower == doctest::Approx(lo).epsilon(1e-7));
  CHECK(g.upper == doctest::Approx(hi).epsilon(1e-7));

  CHECK(std::abs(fourier_transform(Generator::bspline(2), 0.5)) ==
        doctest::Approx(4.0 / (pi * pi)).epsilon(1e-9));
  CHECK(std::abs(fourier_transform(Generator::bspline(2), 0.0)) == doctest::Approx(1.0).epsilon(1e-12));

  // chi_[0,2] has zeros of its transform at every half-integer frequency.
  CHECK_FALSE(frame_bounds_shift_invariant(Generator::indicator(0, 2)).is_frame);
}

TEST_CASE("localization check") {
  const Generator hat = Generator::bspline(2);
  const Lattice z = Lattice::integer_box(0, 4);
  const Grid grid = Grid::covering(Box::interval(-1, 5), 1.0 / 16);
  const Envelope theta = envelope_from_generator(hat, 1, 2.0, 32);
  CHECK(check_localization(hat, z, theta, grid).holds);

  Evaluator half = [](std::span<const double> x) { return 0.5 * std::max(0.0, 1 - std::abs(x[0])); };
  const Envelope small = make_envelope(half, 1, 2.0, 32, 1.0);
  const LocalizationReport rep = check_localization(hat, z, small, grid);
  CHECK_FALSE(rep.holds);
  CHECK(rep.worst_slack < 0.0);
  CHECK_FALSE(rep.violations.empty());
}

TEST_CASE("tabulated generators") {
  const auto path = std::filesystem::temp_directory_path() / "rksample_table_test.txt";
  {
    std::ofstream out(path);
    out << "# hat\n-1 0\n0 1 # peak\n1 0\n";
  }
  const Generator g = Generator::load_tabulated(path.string());
  CHECK(g(0.5) == doctest::Approx(0.5));
  CHECK(g(-0.25) == doctest::Approx(0.75));
  CHECK(g(3.0) == 0.0);
  CHECK(wiener_amalgam_norm(g, 1, 64).value == doctest::Approx(2.0).epsilon(1e-9));
  std::filesystem::remove(path);
  CHECK_THROWS_AS(Generator::load_tabulated(path.string()), ConfigError);
  CHECK_THROWS(Generator::tabulated({0, 0}, {1, 1}));
}

TEST_CASE("generator construction") {
  CHECK(Generator::bspline(2)(0.25) == doctest::Approx(0.75));
  CHECK(Generator::bspline(4)(0.0) == doctest::Approx(2.0 / 3.0));
  CHECK(Generator::bspline(2).scaled(3.0)(0.0) == doctest::Approx(3.0));
  CHECK(Generator::indicator(0, 0.5)(0.5) == 1.0);
  CHECK(Generator::indicator(0, 0.5)(0.51) == 0.0);
  CHECK_THROWS(Generator::indicator(1, 1));
  CHECK_THROWS(Generator::bspline(0));
  CHECK_THROWS(Generator::gaussian(0));
}
