#pragma once

// Compact sampling domains built from axis-aligned boxes, their measure and
// boundary cover, and uniform random sampling.

#include "rksample/core.hpp"

#include <cstdint>
#include <vector>

namespace rksample {

/// Finite union of closed boxes with pairwise disjoint interiors and
/// measure at least one.
class Domain {
 public:
  explicit Domain(std::vector<Box> boxes);
  static Domain interval(double lo, double hi) { return Domain({Box::interval(lo, hi)}); }

  const std::vector<Box>& boxes() const { return boxes_; }
  int dim() const { return dim_; }
  double measure() const { return measure_; }
  /// Number of integer unit cubes m + [0,1]^n whose closure meets the boundary.
  long boundary_cube_count() const { return boundary_cubes_; }
  Box bounding_box() const;

  bool contains(std::span<const double> x) const;
  bool contains(const Point& x) const { return contains(as_span(x)); }
  bool contains_half_open(std::span<const double> x) const;

 private:
  std::vector<Box> boxes_;
  int dim_ = 1;
  double measure_ = 0.0;
  long boundary_cubes_ = 0;
};

double measure(const Domain& omega);
long boundary_cube_count(const Domain& omega);
/// Integer corners m of the cubes counted by boundary_cube_count.
std::vector<Point> boundary_cubes(const Domain& omega);

/// i.i.d. points, one column per point.
struct SampleSet {
  Eigen::MatrixXd points;
  std::uint64_t seed = 0;

  Index size() const { return points.cols(); }
  std::span<const double> point(Index i) const {
    return {points.col(i).data(), static_cast<std::size_t>(points.rows())};
  }
};

/// Uniform samples: a box is chosen with probability proportional to its
/// volume, then a point uniformly inside it. Deterministic in `seed`.
SampleSet uniform_samples(const Domain& omega, Index r, std::uint64_t seed);

/// Fraction of the L^p mass of `f` that lies inside `omega` (grid quadrature).
double concentration_ratio(const GridFunction& f, const Domain& omega, double p);

/// |Gamma ∩ Omega| / mu(Omega), counting nodes in half-open boxes.
double gamma_occupancy(const Lattice& gamma, const Domain& omega);

}  // namespace rksample
