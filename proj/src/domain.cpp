#include "rksample/domain.hpp"

#include "rksample/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace rksample {

namespace {

// True when the closed cube [m, m+1]^n lies in the interior of the union.
// Tested by checking that a slightly enlarged cube is covered up to measure
// zero; the enlargement stays below the distance to every box breakpoint.
bool cube_in_interior(const std::vector<Box>& boxes, const Point& m) {
  const int n = static_cast<int>(m.size());
  double delta = 0.25;
  for (const auto& b : boxes) {
    for (int i = 0; i < n; ++i) {
      for (double bp : {b.lo[i], b.hi[i]}) {
        for (double face : {m[i], m[i] + 1.0}) {
          const double d = std::abs(bp - face);
          if (d > 0.0) delta = std::min(delta, 0.5 * d);
        }
      }
    }
  }
  Point lo = (m.array() - delta).matrix();
  Point hi = (m.array() + 1.0 + delta).matrix();
  const Box grown(lo, hi);
  double covered = 0.0;
  for (const auto& b : boxes) covered += grown.overlap_volume(b);
  return covered >= grown.volume() * (1.0 - 1e-12);
}

}  // namespace

Domain::Domain(std::vector<Box> boxes) : boxes_(std::move(boxes)) {
  if (boxes_.empty()) throw std::invalid_argument("Domain: no boxes");
  dim_ = boxes_.front().dim();
  for (const auto& b : boxes_) {
    if (b.dim() != dim_) throw std::invalid_argument("Domain: boxes of different dimension");
    if (!(b.volume() > 0.0)) throw std::invalid_argument("Domain: degenerate box");
  }
  for (std::size_t i = 0; i < boxes_.size(); ++i) {
    for (std::size_t j = i + 1; j < boxes_.size(); ++j) {
      if (boxes_[i].overlap_volume(boxes_[j]) > 0.0) {
        throw std::invalid_argument("Domain: boxes must have disjoint interiors");
      }
    }
  }
  measure_ = 0.0;
  for (const auto& b : boxes_) measure_ += b.volume();
  if (measure_ < 1.0) {
    throw AdmissibilityError("Domain: measure " + std::to_string(measure_) + " is below 1");
  }
  boundary_cubes_ = static_cast<long>(rksample::boundary_cubes(*this).size());
}

Box Domain::bounding_box() const {
  Point lo = boxes_.front().lo;
  Point hi = boxes_.front().hi;
  for (const auto& b : boxes_) {
    lo = lo.cwiseMin(b.lo);
    hi = hi.cwiseMax(b.hi);
  }
  return Box(lo, hi);
}

bool Domain::contains(std::span<const double> x) const {
  return std::any_of(boxes_.begin(), boxes_.end(), [&](const Box& b) { return b.contains(x); });
}

bool Domain::contains_half_open(std::span<const double> x) const {
  return std::any_of(boxes_.begin(), boxes_.end(), [&](const Box& b) { return b.contains_half_open(x); });
}

double measure(const Domain& omega) { return omega.measure(); }

long boundary_cube_count(const Domain& omega) { return omega.boundary_cube_count(); }

std::vector<Point> boundary_cubes(const Domain& omega) {
  const Box bb = omega.bounding_box();
  const int n = omega.dim();
  std::vector<long> lo(n), count(n);
  long total = 1;
  for (int i = 0; i < n; ++i) {
    lo[i] = static_cast<long>(std::floor(bb.lo[i])) - 1;
    const long hi = static_cast<long>(std::ceil(bb.hi[i]));
    count[i] = hi - lo[i] + 1;
    total *= count[i];
  }
  std::vector<Point> out;
  Point m(n);
  for (long t = 0; t < total; ++t) {
    long rem = t;
    for (int i = 0; i < n; ++i) {
      m[i] = static_cast<double>(lo[i] + rem % count[i]);
      rem /= count[i];
    }
    const Box cube(m, (m.array() + 1.0).matrix());
    const bool touches = std::any_of(omega.boxes().begin(), omega.boxes().end(),
                                     [&](const Box& b) { return b.intersects(cube); });
    if (touches && !cube_in_interior(omega.boxes(), m)) out.push_back(m);
  }
  return out;
}

SampleSet uniform_samples(const Domain& omega, Index r, std::uint64_t seed) {
  if (r < 1) throw std::invalid_argument("uniform_samples: empty sample set requested");
  std::mt19937_64 rng(seed);
  std::vector<double> volumes;
  for (const auto& b : omega.boxes()) volumes.push_back(b.volume());
  std::discrete_distribution<std::size_t> pick(volumes.begin(), volumes.end());
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  SampleSet out;
  out.seed = seed;
  out.points.resize(omega.dim(), r);
  for (Index k = 0; k < r; ++k) {
    const Box& b = omega.boxes().size() == 1 ? omega.boxes().front() : omega.boxes()[pick(rng)];
    for (int i = 0; i < omega.dim(); ++i) {
      out.points(i, k) = b.lo[i] + (b.hi[i] - b.lo[i]) * unit(rng);
    }
  }
  return out;
}

double concentration_ratio(const GridFunction& f, const Domain& omega, double p) {
  if (p < 1.0) throw std::invalid_argument("concentration_ratio: p must be >= 1");
  double inside = 0.0, total = 0.0;
  std::vector<double> x(f.grid.dim());
  for (Index i = 0; i < f.grid.size(); ++i) {
    const double v = std::pow(std::abs(f.values[i]), p);
    total += v;
    if (v == 0.0) continue;
    f.grid.point(i, x);
    if (omega.contains(x)) inside += v;
  }
  if (!(total > 0.0)) throw std::invalid_argument("concentration_ratio: zero function");
  return inside / total;
}

double gamma_occupancy(const Lattice& gamma, const Domain& omega) {
  long count = 0;
  for (const auto& g : gamma.nodes) {
    if (omega.contains_half_open(as_span(g))) ++count;
  }
  return static_cast<double>(count) / omega.measure();
}

}  // namespace rksample
