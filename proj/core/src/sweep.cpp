// Copyright 2026 The torusmoments Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "torusmoments/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <ctime>
#include <fstream>
#include <map>
#include <sstream>

#include "torusmoments/error.hpp"
#include "torusmoments/reduction.hpp"
#include "torusmoments/sharpness.hpp"
#include "torusmoments/version.hpp"

namespace torus {

namespace {

std::string shortest(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

double parse_double(std::string_view s) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::ConfigInvalid, "cannot parse number '" + std::string(s) + "'");
  }
  return v;
}

int parse_int(std::string_view s) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::ConfigInvalid, "cannot parse integer '" + std::string(s) + "'");
  }
  return v;
}

void add_note(std::string& notes, const std::string& token) {
  if (!notes.empty()) notes += ';';
  notes += token;
}

MomentMethod parse_method(std::string_view name) {
  if (name == "auto") return MomentMethod::automatic;
  if (name == "exact") return MomentMethod::exact;
  if (name == "fft") return MomentMethod::fft;
  if (name == "brute") return MomentMethod::brute_force;
  throw Error(ErrorCode::ConfigInvalid, "unknown moment method '" + std::string(name) + "'");
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

template <class F>
void guarded(std::string& notes, std::string_view check, F&& f) {
  try {
    f();
  } catch (const Error& e) {
    add_note(notes, "error:" + std::string(check) + ":" + std::string(error_name(e.code())));
  } catch (const std::exception& e) {
    add_note(notes, "error:" + std::string(check) + ":" + e.what());
  }
}

SweepRow compute_row(const SweepConfig& config, const CurveSpec& curve, int N, int p) {
  SweepRow row;
  row.curve = curve.label();
  row.N = N;
  row.p = p;
  const bool even = p >= 2 && p % 2 == 0;
  CountingOptions counting;
  counting.mem_budget_mb = config.mem_budget_mb;
  std::optional<CoefficientVector> coeffs;
  guarded(row.notes, "coeffs", [&] { coeffs = coefficients::from_name(config.coeffs, N, config.seed); });
  if (!coeffs) return row;

  std::optional<MomentValue> lambda;
  if (config.checks.contains(Check::moment)) {
    guarded(row.notes, "moment", [&] {
      if (!even) throw Error(ErrorCode::InvalidArgument, "moments need even p");
      lambda = compute_moment(curve, *coeffs, p / 2, parse_method(config.moment_method), counting);
      row.lambda = lambda->value;
      row.lambda_text = lambda->text();
      row.lambda_exact = lambda->exact;
      add_note(row.notes, "lambda_path=" + std::string(path_name(lambda->path)));
    });
  }

  if (config.checks.contains(Check::sharpness)) {
    guarded(row.notes, "sharpness", [&] {
      if (!even) throw Error(ErrorCode::InvalidArgument, "sharpness bounds need even p");
      const auto rep = sharpness_report(curve, N, p, config.samples, config.seed, counting);
      row.diag_lb = to_double(rep.diagonal);
      row.major_arc_lb = rep.major_arc_bound;
      row.k_lower = rep.k_lower.value;
      if (!rep.diagonal_holds) add_note(row.notes, "fail:sharpness:diagonal");
      if (!rep.major_arc_holds) add_note(row.notes, "fail:sharpness:major-arc");
      if (!rep.cosine_holds) add_note(row.notes, "fail:sharpness:cosine");
    });
  }

  if (config.checks.contains(Check::reduce)) {
    guarded(row.notes, "reduce", [&] {
      if (!even) throw Error(ErrorCode::InvalidArgument, "reduction needs even p");
      const auto rep = full_reduction(curve, *coeffs, p / 2, counting);
      row.decomp_residual = rep.decomposition_residual;
      row.dominance_max_ratio = rep.dominance_max_ratio;
      row.bound_ratio = rep.bound_ratio;
      if (!rep.passed()) add_note(row.notes, "fail:reduce");
      if (rep.crude_constant_suffices && !*rep.crude_constant_suffices) add_note(row.notes, "bound-ratio-above-1");
    });
  }

  if (config.checks.contains(Check::estimate)) {
    guarded(row.notes, "estimate", [&] {
      AscentConfig ascent = config.ascent;
      ascent.mem_budget_mb = config.mem_budget_mb;
      const auto est = estimate_K(curve, N, p, ascent);
      row.k_hat = est.K_hat;
      row.a_hat = est.restriction_estimate;
      if (!row.k_lower && est.k_lower) row.k_lower = est.k_lower;
      if (!est.converged) add_note(row.notes, "estimate-not-converged");
      const double floor = std::max(1.0, est.k_lower.value_or(1.0));
      if (est.K_hat < floor * (1.0 - 1e-12)) add_note(row.notes, "fail:estimate:floor");
    });
  }
  return row;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_number(const std::optional<double>& v) { return v ? shortest(*v) : std::string(); }

std::vector<std::vector<std::string>> parse_csv_records(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  bool any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      if (any || !field.empty()) {
        fields.push_back(std::move(field));
        records.push_back(std::move(fields));
      }
      fields.clear();
      field.clear();
      any = false;
    } else {
      field += c;
      any = true;
    }
  }
  if (quoted) throw Error(ErrorCode::ConfigInvalid, "unterminated quote in CSV");
  if (any || !field.empty()) {
    fields.push_back(std::move(field));
    records.push_back(std::move(fields));
  }
  return records;
}

std::optional<double> opt_number(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return parse_double(s);
}

nlohmann::json opt_json(const std::optional<double>& v) {
  if (v) return *v;
  return nullptr;
}

std::optional<double> opt_from_json(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  return j[key].get<double>();
}

}  // namespace

std::string_view check_name(Check c) noexcept {
  switch (c) {
    case Check::moment: return "moment";
    case Check::reduce: return "reduce";
    case Check::sharpness: return "sharpness";
    case Check::estimate: return "estimate";
  }
  return "unknown";
}

Check parse_check(std::string_view name) {
  for (Check c : {Check::moment, Check::reduce, Check::sharpness, Check::estimate}) {
    if (check_name(c) == name) return c;
  }
  throw Error(ErrorCode::ConfigInvalid, "unknown check '" + std::string(name) + "'");
}

void SweepConfig::validate() const {
  try {
    make_curve(curve);
  } catch (const Error& e) {
    throw Error(ErrorCode::ConfigInvalid, std::string("curve: ") + e.what());
  }
  if (Ns.empty()) throw Error(ErrorCode::ConfigInvalid, "N list is empty");
  for (std::size_t i = 0; i < Ns.size(); ++i) {
    if (Ns[i] < 1) throw Error(ErrorCode::ConfigInvalid, "N values must be positive");
    if (i && Ns[i] <= Ns[i - 1]) throw Error(ErrorCode::ConfigInvalid, "N list must be strictly increasing");
  }
  if (ps.empty()) throw Error(ErrorCode::ConfigInvalid, "p list is empty");
  for (int p : ps) {
    if (p < 2) throw Error(ErrorCode::ConfigInvalid, "p values must be at least 2");
  }
  if (fit && Ns.size() < 3) throw Error(ErrorCode::ConfigInvalid, "a fit needs at least three N values");
  if (!coefficients::is_known_generator(coeffs)) {
    throw Error(ErrorCode::ConfigInvalid, "unknown coefficient generator '" + coeffs + "'");
  }
  parse_method(moment_method);
  if (format != "json" && format != "csv") throw Error(ErrorCode::ConfigInvalid, "format must be json or csv");
  if (!(mem_budget_mb > 0)) throw Error(ErrorCode::ConfigInvalid, "memory budget must be positive");
  if (!(fit_tolerance > 0)) throw Error(ErrorCode::ConfigInvalid, "fit tolerance must be positive");
  if (samples < 1) throw Error(ErrorCode::ConfigInvalid, "samples must be positive");
  ascent.validate();
}

SweepConfig sweep_config_from_json(const nlohmann::json& j) {
  SweepConfig c;
  try {
    if (j.contains("curve")) {
      if (j["curve"].is_string()) {
        c.curve = parse_curve(j["curve"].get<std::string>()).exponents;
      } else {
        c.curve = j["curve"].get<std::vector<int>>();
      }
    }
    c.Ns = j.value("N", std::vector<int>{});
    c.ps = j.value("p", std::vector<int>{});
    c.coeffs = j.value("coeffs", c.coeffs);
    c.seed = j.value("seed", c.seed);
    for (const auto& name : j.value("checks", std::vector<std::string>{})) c.checks.insert(parse_check(name));
    c.moment_method = j.value("moment_method", c.moment_method);
    c.samples = j.value("samples", c.samples);
    c.fit = j.value("fit", c.fit);
    c.fit_tolerance = j.value("fit_tolerance", c.fit_tolerance);
    c.out = j.value("out", c.out);
    c.format = j.value("format", c.format);
    c.mem_budget_mb = j.value("mem_budget_mb", c.mem_budget_mb);
    c.timestamp = j.value("timestamp", c.timestamp);
    if (j.contains("ascent")) {
      const auto& a = j["ascent"];
      c.ascent.max_iters = a.value("max_iters", c.ascent.max_iters);
      c.ascent.initial_step = a.value("initial_step", c.ascent.initial_step);
      c.ascent.max_step = a.value("max_step", c.ascent.max_step);
      c.ascent.backtrack_factor = a.value("backtrack_factor", c.ascent.backtrack_factor);
      c.ascent.max_backtracks = a.value("max_backtracks", c.ascent.max_backtracks);
      c.ascent.tolerance = a.value("tolerance", c.ascent.tolerance);
      c.ascent.multistarts = a.value("multistarts", c.ascent.multistarts);
      c.ascent.seed = a.value("seed", c.ascent.seed);
      c.ascent.oversample = a.value("oversample", c.ascent.oversample);
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ConfigInvalid, std::string("sweep config: ") + e.what());
  }
  return c;
}

nlohmann::json to_json(const SweepConfig& c) {
  nlohmann::json j;
  j["curve"] = c.curve;
  j["N"] = c.Ns;
  j["p"] = c.ps;
  j["coeffs"] = c.coeffs;
  j["seed"] = c.seed;
  auto& checks = j["checks"] = nlohmann::json::array();
  for (Check ch : c.checks) checks.push_back(std::string(check_name(ch)));
  j["moment_method"] = c.moment_method;
  j["samples"] = c.samples;
  j["fit"] = c.fit;
  j["fit_tolerance"] = c.fit_tolerance;
  j["format"] = c.format;
  j["mem_budget_mb"] = c.mem_budget_mb;
  j["ascent"] = {{"max_iters", c.ascent.max_iters},       {"initial_step", c.ascent.initial_step},
                 {"max_step", c.ascent.max_step},         {"backtrack_factor", c.ascent.backtrack_factor},
                 {"max_backtracks", c.ascent.max_backtracks}, {"tolerance", c.ascent.tolerance},
                 {"multistarts", c.ascent.multistarts},   {"seed", c.ascent.seed},
                 {"oversample", c.ascent.oversample}};
  return j;
}

bool SweepRow::failed() const { return notes.find("fail:") != std::string::npos; }

bool SweepReport::failed() const {
  if (std::any_of(rows.begin(), rows.end(), [](const SweepRow& r) { return r.failed(); })) return true;
  return std::any_of(fits.begin(), fits.end(), [](const FitResult& f) { return f.verdict == "inconsistent"; });
}

SweepReport run_sweep(const SweepConfig& config) {
  config.validate();
  SweepReport report;
  report.config = config;
  const CurveSpec curve = make_curve(config.curve);
  for (int p : config.ps) {
    for (int N : config.Ns) report.rows.push_back(compute_row(config, curve, N, p));
  }
  if (config.fit) {
    for (int p : config.ps) {
      std::vector<SweepRow> subset;
      for (const auto& r : report.rows) {
        if (r.p == p) subset.push_back(r);
      }
      std::vector<FitQuantity> quantities;
      if (config.checks.contains(Check::moment)) quantities.push_back(FitQuantity::lambda);
      if (config.checks.contains(Check::estimate)) quantities.push_back(FitQuantity::K);
      for (FitQuantity q : quantities) {
        try {
          report.fits.push_back(fit_exponent(subset, q, config.fit_tolerance));
        } catch (const Error& e) {
          report.fit_errors.push_back("p=" + std::to_string(p) + " " + std::string(quantity_name(q)) + ": " + e.what());
        }
      }
    }
  }
  if (config.timestamp) report.timestamp = utc_timestamp();
  return report;
}

nlohmann::json to_json(const SweepRow& row) {
  nlohmann::json j;
  j["curve"] = row.curve;
  j["N"] = row.N;
  j["p"] = row.p;
  j["lambda"] = opt_json(row.lambda);
  j["lambda_text"] = row.lambda_text;
  j["lambda_exact"] = row.lambda_exact;
  j["diag_lb"] = opt_json(row.diag_lb);
  j["major_arc_lb"] = opt_json(row.major_arc_lb);
  j["k_lower"] = opt_json(row.k_lower);
  j["k_hat"] = opt_json(row.k_hat);
  j["a_hat"] = opt_json(row.a_hat);
  j["decomp_residual"] = opt_json(row.decomp_residual);
  j["dominance_max_ratio"] = opt_json(row.dominance_max_ratio);
  j["bound_ratio"] = opt_json(row.bound_ratio);
  j["notes"] = row.notes;
  return j;
}

SweepRow row_from_json(const nlohmann::json& j) {
  SweepRow r;
  try {
    r.curve = j.at("curve").get<std::string>();
    r.N = j.at("N").get<int>();
    r.p = j.at("p").get<int>();
    r.lambda = opt_from_json(j, "lambda");
    r.lambda_text = j.value("lambda_text", std::string());
    r.lambda_exact = j.value("lambda_exact", false);
    r.diag_lb = opt_from_json(j, "diag_lb");
    r.major_arc_lb = opt_from_json(j, "major_arc_lb");
    r.k_lower = opt_from_json(j, "k_lower");
    r.k_hat = opt_from_json(j, "k_hat");
    r.a_hat = opt_from_json(j, "a_hat");
    r.decomp_residual = opt_from_json(j, "decomp_residual");
    r.dominance_max_ratio = opt_from_json(j, "dominance_max_ratio");
    r.bound_ratio = opt_from_json(j, "bound_ratio");
    r.notes = j.value("notes", std::string());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ConfigInvalid, std::string("report row: ") + e.what());
  }
  return r;
}

nlohmann::json to_json(const SweepReport& report) {
  nlohmann::json j;
  j["engine"] = std::string(kEngineName);
  j["version"] = std::string(kEngineVersion);
  j["config"] = to_json(report.config);
  auto& rows = j["rows"] = nlohmann::json::array();
  for (const auto& r : report.rows) rows.push_back(to_json(r));
  auto& fits = j["fits"] = nlohmann::json::array();
  for (const auto& f : report.fits) fits.push_back(to_json(f));
  j["fit_errors"] = report.fit_errors;
  j["failed"] = report.failed();
  if (!report.timestamp.empty()) j["timestamp"] = report.timestamp;
  return j;
}

std::string render_report(const SweepReport& report, std::string_view format) {
  if (format == "json") return to_json(report).dump(2) + "\n";
  if (format != "csv") throw Error(ErrorCode::ConfigInvalid, "unknown report format '" + std::string(format) + "'");
  std::ostringstream out;
  out << kCsvHeader << '\n';
  for (const auto& r : report.rows) {
    out << csv_field(r.curve) << ',' << r.N << ',' << r.p << ','
        << (r.lambda ? csv_field(r.lambda_text) : std::string()) << ',' << (r.lambda_exact ? "true" : "false") << ','
        << csv_number(r.diag_lb) << ',' << csv_number(r.major_arc_lb) << ',' << csv_number(r.k_lower) << ','
        << csv_number(r.k_hat) << ',' << csv_number(r.a_hat) << ',' << csv_number(r.decomp_residual) << ','
        << csv_number(r.dominance_max_ratio) << ',' << csv_number(r.bound_ratio) << ',' << csv_field(r.notes)
        << '\n';
  }
  return out.str();
}

void emit_report(const SweepReport& report, std::string_view format, const std::filesystem::path& path) {
  if (report.rows.empty()) throw Error(ErrorCode::InvalidArgument, "report has no rows");
  const std::string text = render_report(report, format);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoFailure, "cannot open " + path.string() + " for writing");
  out << text;
  out.flush();
  if (!out) throw Error(ErrorCode::IoFailure, "write failed for " + path.string());
}

SweepReport parse_report_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ConfigInvalid, std::string("report JSON: ") + e.what());
  }
  SweepReport report;
  if (j.contains("config")) report.config = sweep_config_from_json(j["config"]);
  for (const auto& row : j.value("rows", nlohmann::json::array())) report.rows.push_back(row_from_json(row));
  report.fit_errors = j.value("fit_errors", std::vector<std::string>{});
  report.timestamp = j.value("timestamp", std::string());
  return report;
}

std::vector<SweepRow> parse_report_csv(std::string_view text) {
  const auto records = parse_csv_records(text);
  if (records.empty()) throw Error(ErrorCode::ConfigInvalid, "CSV report is empty");
  std::string header;
  for (std::size_t i = 0; i < records[0].size(); ++i) header += (i ? "," : "") + records[0][i];
  if (header != kCsvHeader) throw Error(ErrorCode::ConfigInvalid, "unexpected CSV header");
  std::vector<SweepRow> rows;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& f = records[i];
    if (f.size() != 14) throw Error(ErrorCode::ConfigInvalid, "CSV row " + std::to_string(i) + " has wrong width");
    SweepRow r;
    r.curve = f[0];
    r.N = parse_int(f[1]);
    r.p = parse_int(f[2]);
    if (!f[3].empty()) {
      r.lambda_text = f[3];
      r.lambda = parse_double(f[3]);
    }
    r.lambda_exact = f[4] == "true";
    r.diag_lb = opt_number(f[5]);
    r.major_arc_lb = opt_number(f[6]);
    r.k_lower = opt_number(f[7]);
    r.k_hat = opt_number(f[8]);
    r.a_hat = opt_number(f[9]);
    r.decomp_residual = opt_number(f[10]);
    r.dominance_max_ratio = opt_number(f[11]);
    r.bound_ratio = opt_number(f[12]);
    r.notes = f[13];
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<SweepRow> read_report_rows(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  if (path.extension() == ".csv") return parse_report_csv(ss.str());
  return parse_report_json(ss.str()).rows;
}

}  // namespace torus
