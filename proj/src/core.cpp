#include "rksample/core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rksample {

Box::Box(Point lo_, Point hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
  if (lo.size() != hi.size() || lo.size() == 0) {
    throw std::invalid_argument("Box: corner dimensions differ or are empty");
  }
  for (Index i = 0; i < lo.size(); ++i) {
    if (!(lo[i] <= hi[i])) throw std::invalid_argument("Box: lo must not exceed hi");
  }
}

Box Box::interval(double lo, double hi) {
  Point a(1), b(1);
  a[0] = lo;
  b[0] = hi;
  return Box(std::move(a), std::move(b));
}

double Box::volume() const { return (hi - lo).prod(); }

bool Box::contains(std::span<const double> x) const {
  for (int i = 0; i < dim(); ++i) {
    if (x[i] < lo[i] || x[i] > hi[i]) return false;
  }
  return true;
}

bool Box::contains_half_open(std::span<const double> x) const {
  for (int i = 0; i < dim(); ++i) {
    if (x[i] < lo[i] || x[i] >= hi[i]) return false;
  }
  return true;
}

bool Box::intersects(const Box& other) const {
  for (int i = 0; i < dim(); ++i) {
    if (other.hi[i] < lo[i] || other.lo[i] > hi[i]) return false;
  }
  return true;
}

double Box::overlap_volume(const Box& other) const {
  double v = 1.0;
  for (int i = 0; i < dim(); ++i) {
    const double w = std::min(hi[i], other.hi[i]) - std::max(lo[i], other.lo[i]);
    if (w <= 0.0) return 0.0;
    v *= w;
  }
  return v;
}

std::vector<Box> merge_boxes(const std::vector<Box>& boxes) {
  if (boxes.empty()) return {};
  const int n = boxes.front().dim();

  // Coordinate compression: elementary cells between consecutive breakpoints.
  std::vector<std::vector<double>> cuts(n);
  for (const auto& b : boxes) {
    if (b.dim() != n) throw std::invalid_argument("merge_boxes: mixed dimensions");
    for (int i = 0; i < n; ++i) {
      cuts[i].push_back(b.lo[i]);
      cuts[i].push_back(b.hi[i]);
    }
  }
  std::vector<Index> cells(n);
  Index total = 1;
  for (int i = 0; i < n; ++i) {
    std::sort(cuts[i].begin(), cuts[i].end());
    cuts[i].erase(std::unique(cuts[i].begin(), cuts[i].end()), cuts[i].end());
    cells[i] = static_cast<Index>(cuts[i].size()) - 1;
    if (cells[i] <= 0) return {};
    total *= cells[i];
  }

  std::vector<Index> idx(n, 0);
  std::vector<double> mid(n);
  std::vector<Box> out;
  // Row-major over axes 1..n-1, run-length merge along axis 0.
  const Index rows = total / cells[0];
  for (Index row = 0; row < rows; ++row) {
    Index rem = row;
    for (int i = 1; i < n; ++i) {
      idx[i] = rem % cells[i];
      rem /= cells[i];
      mid[i] = 0.5 * (cuts[i][idx[i]] + cuts[i][idx[i] + 1]);
    }
    Index run_start = -1;
    for (Index k = 0; k <= cells[0]; ++k) {
      bool covered = false;
      if (k < cells[0]) {
        mid[0] = 0.5 * (cuts[0][k] + cuts[0][k + 1]);
        covered = std::any_of(boxes.begin(), boxes.end(), [&](const Box& b) { return b.contains(mid); });
      }
      if (covered && run_start < 0) run_start = k;
      if (!covered && run_start >= 0) {
        Point lo(n), hi(n);
        lo[0] = cuts[0][run_start];
        hi[0] = cuts[0][k];
        for (int i = 1; i < n; ++i) {
          lo[i] = cuts[i][idx[i]];
          hi[i] = cuts[i][idx[i] + 1];
        }
        out.emplace_back(std::move(lo), std::move(hi));
        run_start = -1;
      }
    }
  }
  return out;
}

Lattice Lattice::integer_box(double lo, double hi, int dim, double spacing) {
  if (dim < 1 || spacing <= 0.0) throw std::invalid_argument("Lattice::integer_box: bad dimension or spacing");
  const auto kmin = static_cast<long>(std::ceil(lo / spacing - 1e-12));
  const auto kmax = static_cast<long>(std::floor(hi / spacing + 1e-12));
  Lattice out;
  out.dim = dim;
  if (kmax < kmin) return out;
  const long per_axis = kmax - kmin + 1;
  long total = 1;
  for (int i = 0; i < dim; ++i) total *= per_axis;
  out.nodes.reserve(static_cast<std::size_t>(total));
  for (long t = 0; t < total; ++t) {
    Point x(dim);
    long rem = t;
    for (int i = 0; i < dim; ++i) {
      x[i] = static_cast<double>(kmin + rem % per_axis) * spacing;
      rem /= per_axis;
    }
    out.nodes.push_back(std::move(x));
  }
  return out;
}

Lattice Lattice::from_points_1d(const std::vector<double>& xs) {
  Lattice out;
  out.dim = 1;
  for (double x : xs) {
    Point p(1);
    p[0] = x;
    out.nodes.push_back(std::move(p));
  }
  return out;
}

double CoefficientVector::lp_norm(double p) const {
  if (p < 1.0) throw std::invalid_argument("lp_norm: p must be >= 1");
  if (values.size() == 0) return 0.0;
  return std::pow(values.array().abs().pow(p).sum(), 1.0 / p);
}

Grid::Grid(Point origin, double step, std::vector<Index> extents)
    : origin_(std::move(origin)), step_(step), extents_(std::move(extents)) {
  if (!(step_ > 0.0)) throw std::invalid_argument("Grid: step must be positive");
  if (static_cast<Index>(extents_.size()) != origin_.size() || extents_.empty()) {
    throw std::invalid_argument("Grid: extents do not match origin dimension");
  }
  size_ = 1;
  for (Index e : extents_) {
    if (e < 1) throw std::invalid_argument("Grid: every axis needs at least one cell");
    size_ *= e;
  }
}

Grid Grid::covering(const Box& box, double step) {
  const int n = box.dim();
  Point origin(n);
  std::vector<Index> extents(n);
  for (int i = 0; i < n; ++i) {
    const double klo = std::floor(box.lo[i] / step + 1e-9);
    const double khi = std::ceil(box.hi[i] / step - 1e-9);
    origin[i] = klo * step;
    extents[i] = std::max<Index>(1, static_cast<Index>(khi - klo));
  }
  return Grid(std::move(origin), step, std::move(extents));
}

double Grid::cell_volume() const { return std::pow(step_, dim()); }

Box Grid::bounds() const {
  Point hi = origin_;
  for (int i = 0; i < dim(); ++i) hi[i] += static_cast<double>(extents_[i]) * step_;
  return Box(origin_, hi);
}

void Grid::point(Index i, std::span<double> out) const {
  for (int a = 0; a < dim(); ++a) {
    out[a] = center(a, i % extents_[a]);
    i /= extents_[a];
  }
}

Point Grid::point(Index i) const {
  Point x(dim());
  point(i, {x.data(), static_cast<std::size_t>(x.size())});
  return x;
}

GridFunction::GridFunction(Grid g, Eigen::ArrayXd v) : grid(std::move(g)), values(std::move(v)) {
  if (values.size() != grid.size()) throw std::invalid_argument("GridFunction: value count differs from grid size");
}

double GridFunction::interpolate(std::span<const double> x) const {
  const int n = grid.dim();
  // Per-axis base cell and weight of the upper neighbour.
  Index base[8];
  double frac[8];
  Index stride[8];
  if (n > 8) throw std::invalid_argument("GridFunction::interpolate: dimension above 8");
  Index s = 1;
  for (int a = 0; a < n; ++a) {
    const Index ext = grid.extents()[a];
    stride[a] = s;
    s *= ext;
    if (ext == 1) {
      base[a] = 0;
      frac[a] = 0.0;
      continue;
    }
    const double t = (x[a] - grid.origin()[a]) / grid.step() - 0.5;
    double k = std::floor(t);
    k = std::clamp(k, 0.0, static_cast<double>(ext - 2));
    base[a] = static_cast<Index>(k);
    frac[a] = std::clamp(t - k, 0.0, 1.0);
  }
  double acc = 0.0;
  for (int corner = 0; corner < (1 << n); ++corner) {
    double w = 1.0;
    Index flat = 0;
    for (int a = 0; a < n; ++a) {
      const bool up = (corner >> a) & 1;
      if (up && grid.extents()[a] == 1) {
        w = 0.0;
        break;
      }
      w *= up ? frac[a] : 1.0 - frac[a];
      flat += (base[a] + (up ? 1 : 0)) * stride[a];
    }
    if (w != 0.0) acc += w * values[flat];
  }
  return acc;
}

}  // namespace rksample
