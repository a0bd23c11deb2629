#pragma once

// Sectioned key = value experiment configuration.

#include "rksample/core.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rksample {

struct SpaceSpec {
  std::string generator = "hat";  ///< hat | indicator | bspline | gaussian | table
  double indicator_lo = 0.0;
  double indicator_hi = 0.5;
  int bspline_order = 2;
  double gaussian_width = 1.0;
  std::string table_path;
  int dim = 1;
  double lattice_lo = -8.0;
  double lattice_hi = 12.0;
  double spacing = 1.0;
  std::vector<double> nodes;  ///< explicit 1D node list; overrides the integer box
  double A = 1.0;
  double B = 3.0;
  int samples_per_cell = 64;  ///< amalgam-norm resolution
  std::optional<double> tail_constant;  ///< declared C; fitted when absent
  std::optional<double> tail_exponent;  ///< declared alpha; fitted when absent
};

struct ExperimentConfig {
  SpaceSpec space;
  std::vector<Box> omega;
  double p = 2.0;
  double a = 0.0;  ///< 0 selects a_for_p(p)
  double delta = 0.1;
  double tau = 0.01;
  double grid_step = 1.0 / 64.0;
  double epsilon = 0.5;
  double node_margin = 2.0;  ///< random coefficients live on nodes within omega + margin
  std::vector<long> r_schedule{25, 50, 100, 200, 400, 800};
  long trials = 200;
  std::uint64_t seed = 1;
  std::string output_dir = "rksample_out";
  bool plot = true;
  bool transfer = true;  ///< also record the h(f) discretization slack per trial
};

/// Parses "lo hi" pairs per axis, boxes separated by ';'.
std::vector<Box> parse_boxes(const std::string& text, int dim);

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

/// RKSAMPLE_OUTPUT_DIR when set, else cfg.output_dir.
std::string resolve_output_dir(const ExperimentConfig& cfg);

}  // namespace rksample
