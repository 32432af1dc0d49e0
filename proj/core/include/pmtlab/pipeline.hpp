#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pmtlab/adm_mass.hpp"
#include "pmtlab/config.hpp"
#include "pmtlab/functional.hpp"

namespace pmt {

/// Radial profile of a solve: spherical averages of w r^{n-2}.
struct Profile {
  std::vector<double> radius;
  std::vector<double> value;
};

/// Quantities of the solve stage; absent when the small-curvature condition
/// fails for the row.
struct SolvedRow {
  double w_norm = 0.0;
  double dw_norm_sq = 0.0;
  double A = 0.0;
  double m_ghat = 0.0;
  double defect = 0.0;
  double identity_gap = 0.0;
  double curvature_min_ghat = 0.0;

  double m_ghat_error = 0.0;     // extrapolation + truncation
  double defect_tail = 0.0;
  double m_gt = 0.0;             // mass of g_t on the same shells
  WBounds bounds;
  double w_rhs_sobolev = 0.0;    // c_n c1 ||[s]_-||_{6/5} / (1 - c_n c1 ||[s]_-||_{3/2})
  double residual = 0.0;
  int iterations = 0;
  bool curvature_violation = false;
  Profile profile;
};

struct MassRow {
  double t = 0.0;
  double rho = 1.0;
  double deficit_K = 0.0;
  double sminus_norm = 0.0;
  double sminus_norm_65 = 0.0;
  double c1_upper = 0.0;
  double sy_value = 0.0;
  bool sy_pass = true;
  double m_g = 0.0;

  double deficit_M = 0.0;
  int sandwich_violations = 0;
  int sandwich_checked = 0;
  std::optional<SolvedRow> solved;
};

struct Check {
  std::string name;
  bool pass = true;
  double slack = 0.0;
  std::string detail;
};

struct Verdict {
  std::vector<Check> checks;
  bool pass = true;

  const Check* find(const std::string& name) const;
};

struct MassReport {
  RunConfig config;
  double sobolev = 0.0;
  double m_g = 0.0;
  double m_g_error = 0.0;
  std::vector<MassRow> rows;
  Verdict verdict;
};

/// Family parameters for the sweep. A rough_conformal family without an
/// explicit centre is centred at the node nearest the origin (from below)
/// shifted by (h/3, h/3, h/3), so the singular point is never a node.
std::map<std::string, double> family_parameters(const RunConfig& config, const Grid& grid);

/// Runs the smoothing sweep: for each t, mollify, equivalence factor,
/// curvature deficits, Sobolev bound, small-curvature condition and, when it
/// holds, the conformal solve, bound checks, rescaled mass and defect. Any
/// rejection is rethrown naming t and the stage.
MassReport run_sweep(const RunConfig& config, const Constants& constants);
MassReport run_sweep(const RunConfig& config);

/// Pass/fail with measured slack for every inequality and limit property.
/// Slack is the smallest margin by which a check holds (negative on failure).
Verdict verify(const MassReport& report);

/// Names of the checks produced by verify, in order.
const std::vector<std::string>& check_names();

}  // namespace pmt
