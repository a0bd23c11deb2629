#include "rksample/core.hpp"

#include <doctest.h>

#include <cmath>

using namespace rksample;

namespace {

Point pt(std::initializer_list<double> v) {
  Point p(static_cast<Index>(v.size()));
  Index i = 0;
  for (double x : v) p[i++] = x;
  return p;
}

}  // namespace

TEST_CASE("box basics") {
  const Box b(pt({0, 1}), pt({2, 4}));
  CHECK(b.volume() == doctest::Approx(6.0));
  const double in[] = {2.0, 4.0};
  CHECK(b.contains(in));
  CHECK_FALSE(b.contains_half_open(in));
  const double mid[] = {1.0, 1.0};
  CHECK(b.contains_half_open(mid));
  const Box c(pt({1, 3}), pt({5, 5}));
  CHECK(b.intersects(c));
  CHECK(b.overlap_volume(c) == doctest::Approx(1.0));
  CHECK(Box::interval(0, 1).overlap_volume(Box::interval(1, 2)) == 0.0);
  CHECK(Box::interval(0, 1).intersects(Box::interval(1, 2)));
  CHECK_THROWS_AS(Box(pt({0}), pt({1, 2})), std::invalid_argument);
}

TEST_CASE("merge_boxes keeps the union and makes interiors disjoint") {
  const std::vector<Box> in{Box::interval(0, 2), Box::interval(1, 3), Box::interval(5, 6)};
  const auto out = merge_boxes(in);
  double vol = 0.0;
  for (const auto& b : out) vol += b.volume();
  CHECK(vol == doctest::Approx(4.0));
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = i + 1; j < out.size(); ++j) CHECK(out[i].overlap_volume(out[j]) == 0.0);

  const std::vector<Box> sq{Box(pt({0, 0}), pt({2, 2})), Box(pt({1, 1}), pt({3, 3}))};
  const auto m2 = merge_boxes(sq);
  vol = 0.0;
  for (const auto& b : m2) vol += b.volume();
  CHECK(vol == doctest::Approx(7.0));
  for (double x : {0.5, 1.5, 2.5}) {
    for (double y : {0.5, 1.5, 2.5}) {
      const double p[] = {x, y};
      const bool want = (x < 2 && y < 2) || (x > 1 && y > 1);
      bool got = false;
      for (const auto& b : m2) got = got || b.contains(p);
      CHECK(got == want);
    }
  }
}

TEST_CASE("lattice construction") {
  CHECK(Lattice::integer_box(-8, 12).size() == 21);
  CHECK(Lattice::integer_box(0, 2, 2).size() == 9);
  CHECK(Lattice::integer_box(0, 1, 1, 0.25).size() == 5);
  const auto l = Lattice::from_points_1d({0.0, 0.25, 1.0});
  CHECK(l.size() == 3);
  CHECK(l.nodes[1][0] == 0.25);
}

TEST_CASE("coefficient norms") {
  CoefficientVector c{{pt({0}), pt({1}), pt({2})}, Eigen::Vector3d(3, -4, 0)};
  CHECK(c.lp_norm(2) == doctest::Approx(5.0));
  CHECK(c.lp_norm(1) == doctest::Approx(7.0));
  CHECK_THROWS(c.lp_norm(0.5));
}

TEST_CASE("cell-centred grid") {
  const Grid g = Grid::covering(Box::interval(0, 1), 0.25);
  CHECK(g.size() == 4);
  CHECK(g.point(0)[0] == doctest::Approx(0.125));
  CHECK(g.point(3)[0] == doctest::Approx(0.875));
  CHECK(g.cell_volume() == doctest::Approx(0.25));
  const Grid g2 = Grid::covering(Box(pt({0, 0}), pt({1, 2})), 0.5);
  CHECK(g2.size() == 8);
  CHECK(g2.bounds().volume() == doctest::Approx(2.0));

  // ||chi_[0,1/2]||_2^2 = 1/2 on a grid whose cells tile [0, 1].
  const Grid fine = Grid::covering(Box::interval(-1, 2), 1.0 / 64);
  double s = 0.0;
  for (Index i = 0; i < fine.size(); ++i) {
    const double x = fine.point(i)[0];
    if (x >= 0.0 && x <= 0.5) s += fine.cell_volume();
  }
  CHECK(s == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("multilinear interpolation") {
  const Grid g = Grid::covering(Box::interval(0, 4), 0.5);
  Eigen::ArrayXd v(g.size());
  for (Index i = 0; i < g.size(); ++i) v[i] = 3.0 * g.point(i)[0] - 1.0;
  const GridFunction f(g, v);
  for (double x : {0.25, 0.3, 1.7, 3.75}) CHECK(f.interpolate(pt({x})) == doctest::Approx(3 * x - 1));
  CHECK(f.interpolate(pt({-5})) == doctest::Approx(3 * 0.25 - 1));  // constant extension
  CHECK(f.interpolate(pt({9})) == doctest::Approx(3 * 3.75 - 1));

  const Grid g2 = Grid::covering(Box(pt({0, 0}), pt({2, 2})), 0.25);
  Eigen::ArrayXd w(g2.size());
  for (Index i = 0; i < g2.size(); ++i) {
    const Point p = g2.point(i);
    w[i] = 2.0 * p[0] - p[1] + 0.5 * p[0] * p[1];
  }
  const GridFunction f2(g2, w);
  const double x = 0.9, y = 1.3;
  CHECK(f2.interpolate(pt({x, y})) == doctest::Approx(2 * x - y + 0.5 * x * y));
}
