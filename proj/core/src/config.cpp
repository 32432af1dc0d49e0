#include "pmtlab/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "pmtlab/error.hpp"

namespace pmt {

namespace {

const std::set<std::string> kFamilyParams = {"mass", "epsilon", "beta", "r0", "center_x", "center_y", "center_z"};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& key, const std::string& text) {
  const std::string v = trim(text);
  double out = 0.0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size() || v.empty())
    throw Rejection("config: key '" + key + "' expects a number, got '" + v + "'");
  return out;
}

long long parse_integer(const std::string& key, const std::string& text) {
  const std::string v = trim(text);
  long long out = 0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size() || v.empty())
    throw Rejection("config: key '" + key + "' expects an integer, got '" + v + "'");
  return out;
}

std::vector<double> parse_list(const std::string& key, const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_number(key, item));
  if (out.empty()) throw Rejection("config: key '" + key + "' expects a non-empty list");
  return out;
}

std::string format_list(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += format_double(v[i]);
  }
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<double> RunConfig::scales() const {
  std::vector<double> out;
  for (const double f : t_list) out.push_back(base_scale * f);
  return out;
}

void RunConfig::validate() const {
  if (family != "flat" && family != "schwarzschild" && family != "rough_conformal")
    throw Rejection("config: unknown family '" + family + "'");
  if (!(extent > 0.0)) throw Rejection("config: grid.extent must be positive");
  if (nodes < 17) throw Rejection("config: grid.nodes must be at least 17");
  if (!(compact_radius > 0.0 && compact_radius < 0.5 * extent))
    throw Rejection("config: grid.compact_radius must lie in (0, grid.extent / 2)");
  if (!(base_scale > 0.0)) throw Rejection("config: base_scale must be positive");
  if (t_list.empty()) throw Rejection("config: t_list is empty");
  for (std::size_t i = 0; i < t_list.size(); ++i) {
    if (!(t_list[i] > 0.0)) throw Rejection("config: t_list entries must be positive");
    if (i > 0 && !(t_list[i] < t_list[i - 1])) throw Rejection("config: t_list must be strictly decreasing");
  }
  const double h = 2.0 * extent / (nodes - 1);
  const double blend = 0.25 * compact_radius;
  if (fit_radii.size() < 2) throw Rejection("config: fit_radii needs at least two radii");
  for (const double r : fit_radii)
    if (!(r > compact_radius + blend + 2.0 * h && r < extent - 2.0 * h))
      throw Rejection("config: fit radius " + format_double(r) + " outside (R_K + delta + 2h, R - 2h)");
  if (mass_radii.empty()) throw Rejection("config: mass_radii is empty");
  // Shell stencils reach 3 sqrt(3) h inward and must stay off the blended
  // region.
  const double inner = compact_radius + blend + 3.0 * std::sqrt(3.0) * h;
  for (const double r : mass_radii)
    if (!(r > inner && r < extent - 2.0 * h))
      throw Rejection("config: mass radius " + format_double(r) + " outside (R_K + delta + 3 sqrt(3) h, R - 2h)");
  if (!(solver_tolerance > 0.0)) throw Rejection("config: solver.tolerance must be positive");
  if (solver_max_iterations < 1) throw Rejection("config: solver.max_iterations must be positive");
  if (test_functions < 0) throw Rejection("config: test_functions must be non-negative");
  if (!(curvature_tolerance >= 0.0)) throw Rejection("config: curvature_tolerance must be non-negative");
  if (sobolev_constant && !(*sobolev_constant > 0.0)) throw Rejection("config: sobolev_constant must be positive");
  for (const double s : {bound_slack, identity_fraction, final_fraction, monotone_slack, smin_slack})
    if (!(s >= 0.0)) throw Rejection("config: verify tolerances must be non-negative");
}

std::map<std::string, std::string> RunConfig::to_entries() const {
  std::map<std::string, std::string> e;
  e["family"] = family;
  for (const auto& [k, v] : family_params) e["family." + k] = format_double(v);
  e["grid.extent"] = format_double(extent);
  e["grid.nodes"] = std::to_string(nodes);
  e["grid.compact_radius"] = format_double(compact_radius);
  e["base_scale"] = format_double(base_scale);
  e["t_list"] = format_list(t_list);
  e["fit_radii"] = format_list(fit_radii);
  e["mass_radii"] = format_list(mass_radii);
  e["solver.tolerance"] = format_double(solver_tolerance);
  e["solver.max_iterations"] = std::to_string(solver_max_iterations);
  e["seed"] = std::to_string(seed);
  e["test_functions"] = std::to_string(test_functions);
  e["curvature_tolerance"] = format_double(curvature_tolerance);
  if (sobolev_constant) e["sobolev_constant"] = format_double(*sobolev_constant);
  e["output_dir"] = output_dir;
  e["verify.bound_slack"] = format_double(bound_slack);
  e["verify.identity_fraction"] = format_double(identity_fraction);
  e["verify.final_fraction"] = format_double(final_fraction);
  e["verify.monotone_slack"] = format_double(monotone_slack);
  e["verify.smin_slack"] = format_double(smin_slack);
  return e;
}

RunConfig RunConfig::from_entries(const std::map<std::string, std::string>& entries) {
  RunConfig c;
  for (const auto& [key, value] : entries) {
    if (key == "family") {
      c.family = trim(value);
    } else if (key.rfind("family.", 0) == 0) {
      const std::string p = key.substr(7);
      if (!kFamilyParams.count(p)) throw Rejection("config: unknown key '" + key + "'");
      c.family_params[p] = parse_number(key, value);
    } else if (key == "grid.extent") {
      c.extent = parse_number(key, value);
    } else if (key == "grid.nodes") {
      c.nodes = static_cast<int>(parse_integer(key, value));
    } else if (key == "grid.compact_radius") {
      c.compact_radius = parse_number(key, value);
    } else if (key == "base_scale") {
      c.base_scale = parse_number(key, value);
    } else if (key == "t_list") {
      c.t_list = parse_list(key, value);
    } else if (key == "fit_radii") {
      c.fit_radii = parse_list(key, value);
    } else if (key == "mass_radii") {
      c.mass_radii = parse_list(key, value);
    } else if (key == "solver.tolerance") {
      c.solver_tolerance = parse_number(key, value);
    } else if (key == "solver.max_iterations") {
      c.solver_max_iterations = static_cast<int>(parse_integer(key, value));
    } else if (key == "seed") {
      const long long s = parse_integer(key, value);
      if (s < 0) throw Rejection("config: seed must be non-negative");
      c.seed = static_cast<std::uint64_t>(s);
    } else if (key == "test_functions") {
      c.test_functions = static_cast<int>(parse_integer(key, value));
    } else if (key == "curvature_tolerance") {
      c.curvature_tolerance = parse_number(key, value);
    } else if (key == "sobolev_constant") {
      c.sobolev_constant = parse_number(key, value);
    } else if (key == "output_dir") {
      c.output_dir = trim(value);
    } else if (key == "verify.bound_slack") {
      c.bound_slack = parse_number(key, value);
    } else if (key == "verify.identity_fraction") {
      c.identity_fraction = parse_number(key, value);
    } else if (key == "verify.final_fraction") {
      c.final_fraction = parse_number(key, value);
    } else if (key == "verify.monotone_slack") {
      c.monotone_slack = parse_number(key, value);
    } else if (key == "verify.smin_slack") {
      c.smin_slack = parse_number(key, value);
    } else {
      throw Rejection("config: unknown key '" + key + "'");
    }
  }
  c.validate();
  return c;
}

RunConfig RunConfig::parse(const std::string& text) {
  std::map<std::string, std::string> entries;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Rejection("config: line " + std::to_string(lineno) + " is not 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw Rejection("config: line " + std::to_string(lineno) + " has an empty key");
    if (!entries.emplace(key, trim(line.substr(eq + 1))).second)
      throw Rejection("config: duplicate key '" + key + "'");
  }
  return from_entries(entries);
}

RunConfig RunConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Rejection("config: cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

}  // namespace pmt
