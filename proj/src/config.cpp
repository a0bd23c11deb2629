#include "rksample/config.hpp"

#include "rksample/errors.hpp"

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace rksample {

namespace pt = boost::property_tree;

namespace {

std::vector<double> parse_numbers(const std::string& text) {
  std::string s = text;
  boost::replace_all(s, ",", " ");
  std::istringstream is(s);
  std::vector<double> out;
  std::string tok;
  while (is >> tok) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw ConfigError("not a number: '" + tok + "'");
    }
  }
  return out;
}

template <class T>
T get(const pt::ptree& tree, const std::string& key, T fallback) {
  if (!tree.get_optional<std::string>(key)) return fallback;
  try {
    return tree.get<T>(key);
  } catch (const pt::ptree_error& e) {
    throw ConfigError("bad value for " + key + ": " + e.what());
  }
}

}  // namespace

std::vector<Box> parse_boxes(const std::string& text, int dim) {
  std::vector<std::string> parts;
  boost::split(parts, text, boost::is_any_of(";"));
  std::vector<Box> out;
  for (auto& part : parts) {
    boost::trim(part);
    if (part.empty()) continue;
    const auto v = parse_numbers(part);
    if (static_cast<int>(v.size()) != 2 * dim) {
      throw ConfigError("box '" + part + "' needs " + std::to_string(2 * dim) + " numbers");
    }
    Point lo(dim), hi(dim);
    for (int i = 0; i < dim; ++i) {
      lo[i] = v[2 * i];
      hi[i] = v[2 * i + 1];
    }
    out.emplace_back(lo, hi);
  }
  if (out.empty()) throw ConfigError("no domain boxes given");
  return out;
}

ExperimentConfig parse_config(const std::string& text) {
  pt::ptree tree;
  std::istringstream is(text);
  try {
    pt::read_ini(is, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  ExperimentConfig cfg;
  SpaceSpec& s = cfg.space;
  s.generator = get<std::string>(tree, "space.generator", s.generator);
  s.indicator_lo = get(tree, "space.indicator_lo", s.indicator_lo);
  s.indicator_hi = get(tree, "space.indicator_hi", s.indicator_hi);
  s.bspline_order = get(tree, "space.bspline_order", s.bspline_order);
  s.gaussian_width = get(tree, "space.gaussian_width", s.gaussian_width);
  s.table_path = get<std::string>(tree, "space.table", s.table_path);
  s.dim = get(tree, "space.dim", s.dim);
  s.lattice_lo = get(tree, "space.lattice_lo", s.lattice_lo);
  s.lattice_hi = get(tree, "space.lattice_hi", s.lattice_hi);
  s.spacing = get(tree, "space.spacing", s.spacing);
  if (auto nodes = tree.get_optional<std::string>("space.nodes")) s.nodes = parse_numbers(*nodes);
  s.A = get(tree, "space.A", s.A);
  s.B = get(tree, "space.B", s.B);
  s.samples_per_cell = get(tree, "space.samples_per_cell", s.samples_per_cell);
  if (tree.get_optional<std::string>("envelope.C")) s.tail_constant = get(tree, "envelope.C", 0.0);
  if (tree.get_optional<std::string>("envelope.alpha")) s.tail_exponent = get(tree, "envelope.alpha", 0.0);
  if ((s.tail_constant && !(*s.tail_constant > 0.0)) || (s.tail_exponent && !(*s.tail_exponent > 0.0))) {
    throw ConfigError("envelope C and alpha must be positive");
  }
  if (s.dim < 1) throw ConfigError("space.dim must be >= 1");
  if (!s.nodes.empty() && s.dim != 1) throw ConfigError("space.nodes is only supported in one dimension");

  cfg.omega = parse_boxes(get<std::string>(tree, "domain.boxes", "0 4"), s.dim);

  cfg.p = get(tree, "experiment.p", cfg.p);
  cfg.a = get(tree, "experiment.a", cfg.a);
  cfg.delta = get(tree, "experiment.delta", cfg.delta);
  cfg.tau = get(tree, "experiment.tau", cfg.tau);
  cfg.grid_step = get(tree, "experiment.grid_step", cfg.grid_step);
  cfg.epsilon = get(tree, "experiment.epsilon", cfg.epsilon);
  cfg.node_margin = get(tree, "experiment.node_margin", cfg.node_margin);
  cfg.trials = get(tree, "experiment.trials", cfg.trials);
  cfg.seed = get<std::uint64_t>(tree, "experiment.seed", cfg.seed);
  cfg.output_dir = get<std::string>(tree, "experiment.output_dir", cfg.output_dir);
  cfg.plot = get(tree, "experiment.plot", cfg.plot);
  cfg.transfer = get(tree, "experiment.transfer", cfg.transfer);
  if (auto sched = tree.get_optional<std::string>("experiment.r_schedule")) {
    cfg.r_schedule.clear();
    for (double v : parse_numbers(*sched)) {
      if (v < 1 || v != static_cast<double>(static_cast<long>(v))) {
        throw ConfigError("r_schedule entries must be positive integers");
      }
      cfg.r_schedule.push_back(static_cast<long>(v));
    }
  }
  if (cfg.p < 1.0) throw ConfigError("experiment.p must be >= 1");
  if (!(cfg.delta > 0.0 && cfg.delta < 1.0)) throw ConfigError("experiment.delta must lie in (0, 1)");
  if (!(cfg.grid_step > 0.0)) throw ConfigError("experiment.grid_step must be positive");
  if (!(cfg.epsilon > 0.0)) throw ConfigError("experiment.epsilon must be positive");
  if (cfg.trials < 1) throw ConfigError("experiment.trials must be >= 1");
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string resolve_output_dir(const ExperimentConfig& cfg) {
  if (const char* env = std::getenv("RKSAMPLE_OUTPUT_DIR"); env && *env) return env;
  return cfg.output_dir;
}

}  // namespace rksample
