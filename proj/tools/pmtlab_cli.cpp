#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pmtlab/adm_mass.hpp"
#include "pmtlab/config.hpp"
#include "pmtlab/functional.hpp"
#include "pmtlab/metric_zoo.hpp"
#include "pmtlab/parallel.hpp"
#include "pmtlab/report.hpp"

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kError = 2;

void print_verdict(const pmt::Verdict& v) {
  for (const auto& c : v.checks)
    std::printf("%-22s %s  slack %-12.5g %s\n", c.name.c_str(), c.pass ? "PASS" : "FAIL", c.slack,
                c.detail.c_str());
  std::printf("overall %s\n", v.pass ? "PASS" : "FAIL");
}

std::optional<double> read_sobolev(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw pmt::Rejection("cannot read constants file '" + path + "'");
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    std::string key = line.substr(0, eq);
    key.erase(key.find_last_not_of(" \t") + 1);
    if (key == "sobolev_constant") return std::stod(line.substr(eq + 1));
  }
  return std::nullopt;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Smoothing and conformal-rescaling sweeps for rough asymptotically flat metrics"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "Worker threads (0 = runtime default)")->check(CLI::NonNegativeNumber);

  auto* run = app.add_subcommand("run", "Run a sweep and write the report");
  std::string config_path, out_dir, format = "both", constants_path;
  bool profiles = false;
  run->add_option("config,--config", config_path, "Configuration file");
  run->add_option("--out", out_dir, "Output directory (overrides output_dir)");
  run->add_option("--format", format, "csv, json or both")->check(CLI::IsMember({"csv", "json", "both"}));
  run->add_option("--constants", constants_path, "Constants file written by calibrate");
  run->add_flag("--emit-profiles", profiles, "Write per-t radial profiles");
  run->add_option("--threads", threads, "Worker threads")->check(CLI::NonNegativeNumber);

  auto* ver = app.add_subcommand("verify", "Re-check a JSON report");
  std::string report_path;
  ver->add_option("report", report_path, "report.json")->required();

  auto* cal = app.add_subcommand("calibrate", "Compute S_n and the Schwarzschild mass calibration");
  std::string cal_out = "constants.txt";
  cal->add_option("--out", cal_out, "Constants file to write");
  cal->add_option("--threads", threads, "Worker threads")->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kError;
  }

  try {
    if (threads > 0) pmt::set_thread_count(threads);
    if (*run) {
      if (config_path.empty()) throw pmt::Rejection("run: a configuration file is required");
      pmt::RunConfig config = pmt::RunConfig::load(config_path);
      if (!constants_path.empty()) {
        if (auto s = read_sobolev(constants_path)) config.sobolev_constant = *s;
      }
      if (!out_dir.empty()) config.output_dir = out_dir;
      const pmt::MassReport report = pmt::run_sweep(config);
      const auto fmt = format == "csv" ? pmt::ReportFormat::csv
                       : format == "json" ? pmt::ReportFormat::json
                                          : pmt::ReportFormat::both;
      for (const auto& p : pmt::emit_report(report, config.output_dir, fmt, profiles))
        std::printf("wrote %s\n", p.c_str());
      print_verdict(report.verdict);
      return report.verdict.pass ? kPass : kFail;
    }
    if (*ver) {
      const pmt::MassReport report = pmt::read_report(report_path);
      const pmt::Verdict v = pmt::verify(report);
      print_verdict(v);
      return v.pass ? kPass : kFail;
    }
    if (*cal) {
      const auto bubble = pmt::maximise_bubble_quotient(3);
      const double closed = pmt::sharp_sobolev_closed_form(3);
      const pmt::Grid grid = pmt::Grid::make(16.0, 96, 3.0);
      const pmt::MetricField g = pmt::sample(pmt::schwarzschild_isotropic(1.0).metric, grid);
      const std::vector<double> radii{10.0, 15.0};
      const pmt::MassEstimate m = pmt::adm_mass(g, radii);
      std::ofstream out(cal_out);
      if (!out) throw pmt::Rejection("calibrate: cannot write '" + cal_out + "'");
      out << "sobolev_constant = " << pmt::format_double(bubble.quotient) << "\n"
          << "sobolev_exponent = " << pmt::format_double(bubble.exponent) << "\n"
          << "sobolev_closed_form = " << pmt::format_double(closed) << "\n"
          << "schwarzschild_mass = " << pmt::format_double(m.value) << "\n"
          << "schwarzschild_mass_error = " << pmt::format_double(m.extrapolation_error + m.truncation_error)
          << "\n";
      out.close();
      if (!out) throw pmt::Rejection("calibrate: write failed for '" + cal_out + "'");
      std::printf("S_3 = %.12f (closed form %.12f, p = %.6f)\n", bubble.quotient, closed, bubble.exponent);
      std::printf("schwarzschild m = 1 -> %.6f\n", m.value);
      std::printf("wrote %s\n", cal_out.c_str());
      const bool ok = std::abs(bubble.quotient - closed) <= 1e-6 * closed && std::abs(m.value - 1.0) <= 0.01;
      return ok ? kPass : kFail;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kError;
  }
  return kError;
}
