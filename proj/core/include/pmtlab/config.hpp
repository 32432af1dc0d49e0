#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace pmt {

/// Sweep configuration, read from flat `key = value` text. Lists are comma
/// separated; `#` starts a comment. Unknown keys are rejected.
///
/// Keys:
///   family                    flat | schwarzschild | rough_conformal
///   family.<param>            family parameter (mass, epsilon, beta, r0,
///                             center_x, center_y, center_z)
///   grid.extent, grid.nodes, grid.compact_radius
///   base_scale                h_K; smoothing scales are t = base_scale * t_list
///   t_list                    strictly decreasing factors
///   fit_radii, mass_radii
///   solver.tolerance, solver.max_iterations
///   seed, test_functions
///   curvature_tolerance       allowed negativity of the rescaled curvature
///   sobolev_constant          calibrated S_n (optional)
///   output_dir
///   verify.bound_slack, verify.identity_fraction, verify.final_fraction,
///   verify.monotone_slack, verify.smin_slack
struct RunConfig {
  std::string family = "flat";
  std::map<std::string, double> family_params;
  double extent = 8.0;
  int nodes = 64;
  double compact_radius = 3.0;
  double base_scale = 1.0;
  std::vector<double> t_list{0.4, 0.2, 0.1};
  std::vector<double> fit_radii{4.5, 7.0};
  std::vector<double> mass_radii{5.6, 6.4, 7.2};
  double solver_tolerance = 1e-10;
  int solver_max_iterations = 20000;
  std::uint64_t seed = 1;
  int test_functions = 20;
  double curvature_tolerance = 1e-6;
  std::optional<double> sobolev_constant;
  std::string output_dir = "out";

  double bound_slack = 0.05;
  double identity_fraction = 0.02;
  double final_fraction = 0.05;
  double monotone_slack = 1e-8;
  double smin_slack = 1e-6;

  /// Smoothing scales in decreasing order.
  std::vector<double> scales() const;

  /// Checks ranges and ordering; throws Rejection naming the key.
  void validate() const;

  /// Canonical key = value entries; parse(to_entries()) reproduces the config.
  std::map<std::string, std::string> to_entries() const;
  static RunConfig from_entries(const std::map<std::string, std::string>& entries);
  static RunConfig parse(const std::string& text);
  static RunConfig load(const std::string& path);
};

/// Formats a double with 17 significant digits.
std::string format_double(double v);

}  // namespace pmt
