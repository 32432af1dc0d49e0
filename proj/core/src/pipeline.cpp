#include "pmtlab/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "pmtlab/conformal.hpp"
#include "pmtlab/curvature.hpp"
#include "pmtlab/metric_zoo.hpp"
#include "pmtlab/smoothing.hpp"
#include "pmtlab/sphere.hpp"

namespace pmt {

namespace {

template <typename F>
auto stage(const std::string& where, const char* name, F&& f) {
  try {
    return f();
  } catch (const Rejection& e) {
    throw Rejection(where + ", stage " + name + ": " + e.what());
  }
}

Profile radial_profile(const ScalarField& w) {
  const Grid& grid = w.grid();
  const double r_max = grid.extent() - 2.0 * grid.spacing();
  const double r_min = 0.5 * grid.spacing();
  constexpr int count = 64;
  Profile p;
  for (int q = 0; q < count; ++q) {
    const double r = r_min + (r_max - r_min) * q / (count - 1);
    p.radius.push_back(r);
    p.value.push_back(r * spherical_average(w, r));
  }
  return p;
}

// Counts test functions violating rho^{-3} Q_t <= Q_g <= rho^3 Q_t.
std::pair<int, int> rayleigh_sandwich(const std::vector<TestFunction>& corpus, const MetricField& g,
                                      const MetricField& g_t, double rho) {
  const double r3 = rho * rho * rho;
  constexpr double rounding = 1e-12;
  int bad = 0;
  for (const auto& phi : corpus) {
    const double qg = rayleigh_quotient(phi.values, g);
    const double qt = rayleigh_quotient(phi.values, g_t);
    if (qg > r3 * qt * (1.0 + rounding) || qt > r3 * qg * (1.0 + rounding)) ++bad;
  }
  return {bad, static_cast<int>(corpus.size())};
}

}  // namespace

std::map<std::string, double> family_parameters(const RunConfig& config, const Grid& grid) {
  std::map<std::string, double> p = config.family_params;
  if (config.family != "rough_conformal") return p;
  const bool explicit_center = p.count("center_x") || p.count("center_y") || p.count("center_z");
  if (explicit_center) return p;
  const double h = grid.spacing();
  const int i0 = static_cast<int>(std::floor(grid.extent() / h));
  const double c = grid.coord(i0) + h / 3.0;
  p["center_x"] = c;
  p["center_y"] = c;
  p["center_z"] = c;
  return p;
}

const Check* Verdict::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

MassReport run_sweep(const RunConfig& config) {
  const Constants constants = config.sobolev_constant ? Constants::with_sobolev(*config.sobolev_constant)
                                                      : Constants::make(3);
  return run_sweep(config, constants);
}

MassReport run_sweep(const RunConfig& config, const Constants& constants) {
  config.validate();
  MassReport report;
  report.config = config;
  report.sobolev = constants.sobolev;

  const std::string setup = "setup";
  const Grid grid = stage(setup, "grid", [&] {
    return Grid::make(config.extent, config.nodes, config.compact_radius, 2);
  });
  const AnalyticMetric metric = stage(setup, "family", [&] { return make_family(config.family, family_parameters(config, grid)); });
  const MetricField g = stage(setup, "sample", [&] { return sample(metric.metric, grid); });
  const ChartCover cover(config.compact_radius);
  const CurvatureReference ref = stage(setup, "reference", [&] { return make_curvature_reference(metric, g); });
  const MassEstimate m_g = stage(setup, "mass", [&] { return adm_mass(g, config.mass_radii); });
  report.m_g = m_g.value;
  report.m_g_error = m_g.extrapolation_error + m_g.truncation_error;
  const auto corpus = stage(setup, "test_functions", [&] {
    return test_function_corpus(grid, config.seed, config.test_functions, 2);
  });

  for (const double t : config.scales()) {
    const std::string where = "t = " + format_double(t);
    MassRow row;
    row.t = t;
    row.m_g = m_g.value;

    SmoothedMetric sm = stage(where, "mollify", [&] { return mollify_family(g, cover, t); });
    row.rho = sm.rho;
    const CurvatureDeficit d = stage(where, "deficit", [&] { return curvature_deficit(ref, g, sm, cover); });
    row.deficit_K = d.deficit_compact;
    row.deficit_M = d.deficit_all;
    row.sminus_norm = d.sminus_norm;
    row.sminus_norm_65 = d.sminus_norm_65;
    row.c1_upper = stage(where, "sobolev", [&] { return sobolev_upper_bound(sm.metric, constants); });
    const SyCondition sy = sy_condition(row.c1_upper, row.sminus_norm, constants);
    row.sy_value = sy.value;
    row.sy_pass = sy.pass;
    std::tie(row.sandwich_violations, row.sandwich_checked) =
        stage(where, "sandwich", [&] { return rayleigh_sandwich(corpus, g, sm.metric, sm.rho); });

    if (row.sy_pass) {
      const ScalarField& s_t = *sm.scalar_curvature;
      const ScalarField sminus = negative_part(s_t);
      const EllipticOperator op = stage(where, "assemble", [&] { return assemble_operator(sm.metric, sminus, constants); });
      const ConformalSolution sol = stage(where, "solve", [&] {
        return solve_conformal_factor(op, sm.metric, SolverSettings{config.solver_tolerance, config.solver_max_iterations},
                                      config.fit_radii);
      });
      SolvedRow s;
      s.w_norm = sol.w_norm;
      s.dw_norm_sq = sol.dw_norm_sq;
      s.A = sol.A;
      s.residual = sol.residual;
      s.iterations = sol.iterations;
      s.bounds = stage(where, "bounds", [&] {
        return verify_w_bounds(sol, sminus, sm.metric, row.c1_upper, constants, config.bound_slack);
      });
      const double k = constants.c_n * row.c1_upper;
      const double denom = 1.0 - k * row.sminus_norm;
      s.w_rhs_sobolev = denom > 0.0 ? k * row.sminus_norm_65 / denom : std::numeric_limits<double>::infinity();
      const ConformalMass cm = stage(where, "conformal_mass", [&] {
        return conformal_mass(sol, sm.metric, s_t, config.mass_radii, config.curvature_tolerance);
      });
      s.m_ghat = cm.mass.value;
      s.m_ghat_error = cm.mass.extrapolation_error + cm.mass.truncation_error;
      s.curvature_min_ghat = cm.curvature_min;
      s.curvature_violation = cm.violation;
      const MassDefect def = stage(where, "defect", [&] { return mass_defect(sol, sminus, sm.metric, constants); });
      s.defect = def.value;
      s.defect_tail = def.tail_bound;
      s.m_gt = m_g.value;
      s.identity_gap = s.m_gt - s.m_ghat - s.defect;
      s.profile = stage(where, "profile", [&] { return radial_profile(sol.w); });
      row.solved = std::move(s);
    }
    report.rows.push_back(std::move(row));
  }
  report.verdict = verify(report);
  return report;
}

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = {
      "smin0",          "sy_condition",     "dwbound",           "wbound",
      "mass_identity",  "sign_structure",   "final_limit",       "monotone_columns",
      "rayleigh_sandwich", "curvature_nonnegative", "m_g_constant", "solver_residual"};
  return names;
}

Verdict verify(const MassReport& report) {
  const RunConfig& c = report.config;
  const auto& rows = report.rows;
  Verdict v;
  const double inf = std::numeric_limits<double>::infinity();
  auto add = [&](const std::string& name, double slack, bool pass, std::string detail) {
    if (slack == inf) slack = 0.0;
    v.checks.push_back({name, pass, slack, std::move(detail)});
  };
  const double scale = std::max(std::abs(report.m_g), 0.01);

  {  // [s_t]_- <= |s_t - s| in L^{3/2}(M)
    double slack = inf;
    for (const auto& r : rows) slack = std::min(slack, r.deficit_M - r.sminus_norm);
    add("smin0", slack, slack >= -c.smin_slack || slack == inf, "min over rows of deficit_M - sminus_norm");
  }
  {  // at least the two smallest t pass and sy_value is non-increasing
    double slack = inf;
    bool pass = true;
    const std::size_t n = rows.size();
    for (std::size_t i = (n >= 2 ? n - 2 : 0); i < n; ++i) {
      slack = std::min(slack, 0.5 - rows[i].sy_value);
      pass = pass && rows[i].sy_pass;
    }
    for (std::size_t i = 1; i < n; ++i) {
      const double m = rows[i - 1].sy_value - rows[i].sy_value;
      slack = std::min(slack, m);
      pass = pass && m >= -c.monotone_slack;
    }
    add("sy_condition", slack, pass, "1/2 - sy_value on the two smallest t; sy_value non-increasing");
  }
  {
    double sd = inf, sw = inf;
    bool pd = true, pw = true;
    for (const auto& r : rows) {
      if (!r.solved) continue;
      const WBounds& b = r.solved->bounds;
      sd = std::min(sd, b.dw_rhs - b.dw_lhs);
      sw = std::min(sw, b.w_rhs - b.w_lhs);
      pd = pd && b.dw_pass;
      pw = pw && b.w_pass;
    }
    add("dwbound", sd, pd, "rhs - lhs of the gradient bound, passing within the relative slack");
    add("wbound", sw, pw, "rhs - lhs of the w-norm bound, passing within the relative slack");
  }
  {  // identity at the smallest solved t
    const MassRow* last = nullptr;
    for (const auto& r : rows)
      if (r.solved) last = &r;
    if (last == nullptr) {
      add("mass_identity", 0.0, rows.empty(), "no solved row");
    } else {
      const double slack = c.identity_fraction * scale - std::abs(last->solved->identity_gap);
      add("mass_identity", slack, slack >= 0.0, "fraction * max(|m_g|, 0.01) - |identity_gap| at smallest t");
    }
  }
  {
    double slack = inf;
    for (const auto& r : rows)
      if (r.solved) slack = std::min(slack, r.solved->m_ghat + r.solved->m_ghat_error);
    add("sign_structure", slack, slack >= 0.0, "min over solved rows of m_ghat + error bar");
  }
  {
    double slack = inf;
    bool pass = true;
    double prev = inf;
    const MassRow* last = nullptr;
    for (const auto& r : rows) {
      if (!r.solved) continue;
      const double gap = std::abs(r.solved->m_ghat - r.m_g);
      if (prev != inf) {
        slack = std::min(slack, prev - gap);
        pass = pass && gap <= prev + c.monotone_slack;
      }
      prev = gap;
      last = &r;
    }
    if (last != nullptr) {
      const double final_slack = c.final_fraction * scale - std::abs(last->solved->m_ghat - last->m_g);
      slack = std::min(slack, final_slack);
      pass = pass && final_slack >= 0.0;
    } else {
      pass = rows.empty();
    }
    add("final_limit", slack, pass, "|m_ghat - m_g| non-increasing and final value within fraction");
  }
  {
    double slack = inf;
    std::string worst;
    auto mono = [&](const char* name, auto get) {
      std::optional<double> prev;
      for (const auto& r : rows) {
        const std::optional<double> x = get(r);
        if (!x) continue;
        if (prev) {
          const double m = *prev - *x;
          if (m < slack) {
            slack = m;
            worst = name;
          }
        }
        prev = x;
      }
    };
    mono("deficit_K", [](const MassRow& r) -> std::optional<double> { return r.deficit_K; });
    mono("sminus_norm", [](const MassRow& r) -> std::optional<double> { return r.sminus_norm; });
    mono("sy_value", [](const MassRow& r) -> std::optional<double> { return r.sy_value; });
    mono("w_norm", [](const MassRow& r) -> std::optional<double> {
      return r.solved ? std::optional<double>(r.solved->w_norm) : std::nullopt;
    });
    mono("dw_norm_sq", [](const MassRow& r) -> std::optional<double> {
      return r.solved ? std::optional<double>(r.solved->dw_norm_sq) : std::nullopt;
    });
    add("monotone_columns", slack, slack >= -c.monotone_slack || slack == inf,
        worst.empty() ? "all columns non-increasing" : "tightest column: " + worst);
  }
  {
    int bad = 0;
    for (const auto& r : rows) bad += r.sandwich_violations;
    add("rayleigh_sandwich", bad == 0 ? 0.0 : -static_cast<double>(bad), bad == 0, std::to_string(bad) + " violations");
  }
  {
    double slack = inf;
    bool pass = true;
    for (const auto& r : rows)
      if (r.solved) {
        slack = std::min(slack, r.solved->curvature_min_ghat);
        pass = pass && !r.solved->curvature_violation;
      }
    add("curvature_nonnegative", slack, pass, "min rescaled curvature, passing above -tolerance");
  }
  {
    bool pass = true;
    for (const auto& r : rows) pass = pass && r.m_g == report.m_g;
    add("m_g_constant", 0.0, pass, "m_g identical in every row");
  }
  {
    double slack = inf;
    for (const auto& r : rows)
      if (r.solved) slack = std::min(slack, c.solver_tolerance - r.solved->residual);
    add("solver_residual", slack, slack >= 0.0, "tolerance - relative residual");
  }
  v.pass = std::all_of(v.checks.begin(), v.checks.end(), [](const Check& ch) { return ch.pass; });
  return v;
}

}  // namespace pmt
