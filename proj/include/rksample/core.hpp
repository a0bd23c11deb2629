#pragma once

// Basic value types shared by every module: points, boxes, node sets,
// coefficient vectors and functions sampled on uniform cell-centred grids.

#include <Eigen/Dense>

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace rksample {

using Index = Eigen::Index;
using Point = Eigen::VectorXd;

inline std::span<const double> as_span(const Point& x) {
  return {x.data(), static_cast<std::size_t>(x.size())};
}

/// Closed axis-aligned box [lo, hi] in R^n.
struct Box {
  Point lo;
  Point hi;

  Box() = default;
  Box(Point lo_, Point hi_);
  /// One-dimensional interval [lo, hi].
  static Box interval(double lo, double hi);

  int dim() const { return static_cast<int>(lo.size()); }
  double volume() const;
  bool contains(std::span<const double> x) const;
  /// Membership in [lo, hi) along every axis.
  bool contains_half_open(std::span<const double> x) const;
  bool intersects(const Box& other) const;
  /// Volume of the intersection with another box (0 when disjoint).
  double overlap_volume(const Box& other) const;
};

/// Rewrites a union of possibly overlapping boxes as boxes with pairwise
/// disjoint interiors, merging neighbours along the first axis where possible.
std::vector<Box> merge_boxes(const std::vector<Box>& boxes);

/// Finite node set Gamma in R^n.
struct Lattice {
  int dim = 1;
  std::vector<Point> nodes;

  std::size_t size() const { return nodes.size(); }

  /// Integer points spacing*Z^n inside [lo, hi]^n (closed).
  static Lattice integer_box(double lo, double hi, int dim = 1, double spacing = 1.0);
  static Lattice from_points_1d(const std::vector<double>& xs);
};

/// Finitely supported coefficient sequence (gamma, c_gamma).
struct CoefficientVector {
  std::vector<Point> nodes;
  Eigen::VectorXd values;

  std::size_t size() const { return nodes.size(); }
  /// l^p norm of the coefficients; p >= 1.
  double lp_norm(double p) const;
};

/// Uniform grid of cubic cells of side `step`; sample points sit at the
/// cell centres origin + (k + 1/2) * step.
class Grid {
 public:
  Grid() = default;
  Grid(Point origin, double step, std::vector<Index> extents);

  /// Smallest step-aligned grid whose cells cover `box`.
  static Grid covering(const Box& box, double step);

  int dim() const { return static_cast<int>(origin_.size()); }
  Index size() const { return size_; }
  double step() const { return step_; }
  const Point& origin() const { return origin_; }
  const std::vector<Index>& extents() const { return extents_; }
  double cell_volume() const;
  Box bounds() const;

  void point(Index i, std::span<double> out) const;
  Point point(Index i) const;

  /// Coordinate of cell centre k along `axis`.
  double center(int axis, Index k) const { return origin_[axis] + (static_cast<double>(k) + 0.5) * step_; }

 private:
  Point origin_;
  double step_ = 1.0;
  std::vector<Index> extents_;
  Index size_ = 0;
};

/// Values of a function at the points of a grid.
struct GridFunction {
  Grid grid;
  Eigen::ArrayXd values;
  std::optional<CoefficientVector> coefficients;

  GridFunction() = default;
  explicit GridFunction(Grid g) : grid(std::move(g)), values(Eigen::ArrayXd::Zero(grid.size())) {}
  GridFunction(Grid g, Eigen::ArrayXd v);

  /// Multilinear interpolation between cell centres; constant extension
  /// beyond the outermost centres.
  double interpolate(std::span<const double> x) const;
  double interpolate(const Point& x) const { return interpolate(as_span(x)); }
};

}  // namespace rksample
