#include "pmtlab/report.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace pmt {

using nlohmann::json;

namespace {

json nullable(const std::optional<SolvedRow>& s, double SolvedRow::*field) {
  return s ? json((*s).*field) : json(nullptr);
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Rejection("emit_report: cannot open '" + path.string() + "' for writing");
  out << text;
  out.close();
  if (!out) throw Rejection("emit_report: write failed for '" + path.string() + "'");
}

json bounds_json(const WBounds& b) {
  return {{"w_lhs", b.w_lhs},   {"w_rhs", b.w_rhs},     {"dw_lhs", b.dw_lhs},
          {"dw_rhs", b.dw_rhs}, {"w_pass", b.w_pass}, {"dw_pass", b.dw_pass}};
}

WBounds bounds_from(const json& j) {
  WBounds b;
  b.w_lhs = j.at("w_lhs").get<double>();
  b.w_rhs = j.at("w_rhs").get<double>();
  b.dw_lhs = j.at("dw_lhs").get<double>();
  b.dw_rhs = j.at("dw_rhs").get<double>();
  b.w_pass = j.at("w_pass").get<bool>();
  b.dw_pass = j.at("dw_pass").get<bool>();
  return b;
}

}  // namespace

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols = {
      "t",          "rho",    "deficit_K", "sminus_norm", "sminus_norm_65", "c1_upper",     "sy_value",
      "sy_pass",    "w_norm", "dw_norm_sq", "A_t",        "m_g",            "m_ghat",       "defect",
      "identity_gap", "curvature_min_ghat"};
  return cols;
}

std::string report_csv(const MassReport& report) {
  std::ostringstream out;
  const auto& cols = csv_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << "\n";
  for (const auto& r : report.rows) {
    out << format_double(r.t) << ',' << format_double(r.rho) << ',' << format_double(r.deficit_K) << ','
        << format_double(r.sminus_norm) << ',' << format_double(r.sminus_norm_65) << ','
        << format_double(r.c1_upper) << ',' << format_double(r.sy_value) << ',' << (r.sy_pass ? 1 : 0);
    auto opt = [&](double SolvedRow::*field) {
      out << ',';
      if (r.solved) out << format_double((*r.solved).*field);
    };
    opt(&SolvedRow::w_norm);
    opt(&SolvedRow::dw_norm_sq);
    opt(&SolvedRow::A);
    out << ',' << format_double(r.m_g);
    opt(&SolvedRow::m_ghat);
    opt(&SolvedRow::defect);
    opt(&SolvedRow::identity_gap);
    opt(&SolvedRow::curvature_min_ghat);
    out << "\n";
  }
  return out.str();
}

json report_json(const MassReport& report) {
  json doc;
  doc["config"] = report.config.to_entries();
  doc["sobolev_constant"] = report.sobolev;
  doc["m_g"] = {{"value", report.m_g}, {"error", report.m_g_error}};
  json rows = json::array();
  for (const auto& r : report.rows) {
    json j;
    j["t"] = r.t;
    j["rho"] = r.rho;
    j["deficit_K"] = r.deficit_K;
    j["deficit_M"] = r.deficit_M;
    j["sminus_norm"] = r.sminus_norm;
    j["sminus_norm_65"] = r.sminus_norm_65;
    j["c1_upper"] = r.c1_upper;
    j["sy_value"] = r.sy_value;
    j["sy_pass"] = r.sy_pass;
    j["m_g"] = r.m_g;
    j["sandwich_violations"] = r.sandwich_violations;
    j["sandwich_checked"] = r.sandwich_checked;
    const auto& s = r.solved;
    for (const auto& [name, field] : std::initializer_list<std::pair<const char*, double SolvedRow::*>>{
             {"w_norm", &SolvedRow::w_norm},
             {"dw_norm_sq", &SolvedRow::dw_norm_sq},
             {"A_t", &SolvedRow::A},
             {"m_ghat", &SolvedRow::m_ghat},
             {"defect", &SolvedRow::defect},
             {"identity_gap", &SolvedRow::identity_gap},
             {"curvature_min_ghat", &SolvedRow::curvature_min_ghat}})
      j[name] = nullable(s, field);
    if (s) {
      j["error_bars"] = {{"m_ghat", s->m_ghat_error}, {"defect_tail", s->defect_tail}, {"m_g", report.m_g_error}};
      j["m_gt"] = s->m_gt;
      j["bounds"] = bounds_json(s->bounds);
      j["w_rhs_sobolev"] = s->w_rhs_sobolev;
      j["residual"] = s->residual;
      j["iterations"] = s->iterations;
      j["curvature_violation"] = s->curvature_violation;
      j["profile"] = {{"r", s->profile.radius}, {"value", s->profile.value}};
    } else {
      j["error_bars"] = nullptr;
    }
    rows.push_back(std::move(j));
  }
  doc["rows"] = std::move(rows);
  json checks = json::array();
  for (const auto& c : report.verdict.checks)
    checks.push_back({{"name", c.name}, {"pass", c.pass}, {"slack", c.slack}, {"detail", c.detail}});
  doc["verdict"] = {{"pass", report.verdict.pass}, {"checks", std::move(checks)}};
  return doc;
}

MassReport report_from_json(const json& doc) {
  try {
    MassReport rep;
    rep.config = RunConfig::from_entries(doc.at("config").get<std::map<std::string, std::string>>());
    rep.sobolev = doc.at("sobolev_constant").get<double>();
    rep.m_g = doc.at("m_g").at("value").get<double>();
    rep.m_g_error = doc.at("m_g").at("error").get<double>();
    for (const auto& j : doc.at("rows")) {
      MassRow r;
      r.t = j.at("t").get<double>();
      r.rho = j.at("rho").get<double>();
      r.deficit_K = j.at("deficit_K").get<double>();
      r.deficit_M = j.at("deficit_M").get<double>();
      r.sminus_norm = j.at("sminus_norm").get<double>();
      r.sminus_norm_65 = j.at("sminus_norm_65").get<double>();
      r.c1_upper = j.at("c1_upper").get<double>();
      r.sy_value = j.at("sy_value").get<double>();
      r.sy_pass = j.at("sy_pass").get<bool>();
      r.m_g = j.at("m_g").get<double>();
      r.sandwich_violations = j.at("sandwich_violations").get<int>();
      r.sandwich_checked = j.at("sandwich_checked").get<int>();
      if (!j.at("w_norm").is_null()) {
        SolvedRow s;
        s.w_norm = j.at("w_norm").get<double>();
        s.dw_norm_sq = j.at("dw_norm_sq").get<double>();
        s.A = j.at("A_t").get<double>();
        s.m_ghat = j.at("m_ghat").get<double>();
        s.defect = j.at("defect").get<double>();
        s.identity_gap = j.at("identity_gap").get<double>();
        s.curvature_min_ghat = j.at("curvature_min_ghat").get<double>();
        s.m_ghat_error = j.at("error_bars").at("m_ghat").get<double>();
        s.defect_tail = j.at("error_bars").at("defect_tail").get<double>();
        s.m_gt = j.at("m_gt").get<double>();
        s.bounds = bounds_from(j.at("bounds"));
        s.w_rhs_sobolev = j.at("w_rhs_sobolev").get<double>();
        s.residual = j.at("residual").get<double>();
        s.iterations = j.at("iterations").get<int>();
        s.curvature_violation = j.at("curvature_violation").get<bool>();
        s.profile.radius = j.at("profile").at("r").get<std::vector<double>>();
        s.profile.value = j.at("profile").at("value").get<std::vector<double>>();
        r.solved = std::move(s);
      }
      rep.rows.push_back(std::move(r));
    }
    for (const auto& c : doc.at("verdict").at("checks"))
      rep.verdict.checks.push_back({c.at("name").get<std::string>(), c.at("pass").get<bool>(),
                                    c.at("slack").get<double>(), c.at("detail").get<std::string>()});
    rep.verdict.pass = doc.at("verdict").at("pass").get<bool>();
    return rep;
  } catch (const json::exception& e) {
    throw Rejection(std::string("report: malformed document: ") + e.what());
  }
}

std::string profile_csv(const Profile& profile) {
  std::ostringstream out;
  out << "r,avg_w_r\n";
  for (std::size_t i = 0; i < profile.radius.size(); ++i)
    out << format_double(profile.radius[i]) << ',' << format_double(profile.value[i]) << "\n";
  return out.str();
}

std::vector<std::string> emit_report(const MassReport& report, const std::string& dir, ReportFormat format,
                                     bool profiles) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Rejection("emit_report: cannot create '" + dir + "': " + ec.message());
  std::vector<std::string> written;
  const fs::path base(dir);
  if (format != ReportFormat::json) {
    write_file(base / "report.csv", report_csv(report));
    written.push_back((base / "report.csv").string());
  }
  if (format != ReportFormat::csv) {
    write_file(base / "report.json", report_json(report).dump(2) + "\n");
    written.push_back((base / "report.json").string());
  }
  if (profiles)
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
      if (!report.rows[i].solved) continue;
      const fs::path p = base / ("profile_" + std::to_string(i) + ".csv");
      write_file(p, profile_csv(report.rows[i].solved->profile));
      written.push_back(p.string());
    }
  return written;
}

MassReport read_report(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Rejection("read_report: cannot read '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw Rejection("read_report: '" + path + "' is not valid JSON: " + e.what());
  }
  return report_from_json(doc);
}

}  // namespace pmt
