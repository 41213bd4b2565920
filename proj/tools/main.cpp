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
// Command-line front end. Exit codes: 0 success, 1 a check failed, 2 bad
// configuration or an instance outside the configured budgets.

#include <charconv>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "torusmoments/coefficients.hpp"
#include "torusmoments/counting.hpp"
#include "torusmoments/error.hpp"
#include "torusmoments/estimator.hpp"
#include "torusmoments/fit.hpp"
#include "torusmoments/quadrature.hpp"
#include "torusmoments/reduction.hpp"
#include "torusmoments/sharpness.hpp"
#include "torusmoments/sweep.hpp"
#include "torusmoments/version.hpp"

namespace {

using namespace torus;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitConfig = 2;

struct Common {
  std::string curve = "1,3";
  std::string N;
  std::string p;
  std::string coeffs = "ones";
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "json";
  double mem_budget_mb = 1024.0;
};

int parse_int(const std::string& s, const char* what) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::ConfigInvalid, std::string("bad ") + what + " '" + s + "'");
  }
  return v;
}

// "4,6,8" or "4..32" or a mix of both.
std::vector<int> parse_int_list(const std::string& text, const char* what) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw Error(ErrorCode::ConfigInvalid, std::string("empty entry in ") + what);
    if (auto dots = item.find(".."); dots != std::string::npos) {
      const int lo = parse_int(item.substr(0, dots), what);
      const int hi = parse_int(item.substr(dots + 2), what);
      if (hi < lo) throw Error(ErrorCode::ConfigInvalid, std::string("empty range in ") + what);
      for (int v = lo; v <= hi; ++v) out.push_back(v);
    } else {
      out.push_back(parse_int(item, what));
    }
  }
  if (out.empty()) throw Error(ErrorCode::ConfigInvalid, std::string("missing ") + what);
  return out;
}

int single_int(const std::string& text, const char* what) {
  if (text.empty()) throw Error(ErrorCode::ConfigInvalid, std::string("--") + what + " is required");
  return parse_int(text, what);
}

double single_double(const std::string& text, const char* what) {
  if (text.empty()) throw Error(ErrorCode::ConfigInvalid, std::string("--") + what + " is required");
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::ConfigInvalid, std::string("bad ") + what + " '" + text + "'");
  }
  return v;
}

int half_even(int p) {
  if (p < 2 || p % 2 != 0) throw Error(ErrorCode::ConfigInvalid, "p must be an even integer >= 2");
  return p / 2;
}

std::string render_scalar(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// Scalar members only, one key,value line each.
std::string render_flat_csv(const nlohmann::json& j) {
  std::string out = "key,value\n";
  for (const auto& [key, value] : j.items()) {
    if (value.is_structured()) continue;
    out += csv_quote(key) + "," + csv_quote(render_scalar(value)) + "\n";
  }
  return out;
}

void check_format(const std::string& format) {
  if (format != "json" && format != "csv") throw Error(ErrorCode::ConfigInvalid, "--format must be json or csv");
}

void write_text(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoFailure, "cannot open " + path);
  out << text;
  if (!out) throw Error(ErrorCode::IoFailure, "write failed for " + path);
}

void emit(const nlohmann::json& j, const Common& c) {
  write_text(c.format == "csv" ? render_flat_csv(j) : j.dump(2) + "\n", c.out);
}

CountingOptions counting_options(const Common& c) {
  CountingOptions o;
  o.mem_budget_mb = c.mem_budget_mb;
  return o;
}

MomentMethod parse_method(const std::string& name) {
  if (name == "auto") return MomentMethod::automatic;
  if (name == "exact") return MomentMethod::exact;
  if (name == "fft") return MomentMethod::fft;
  if (name == "brute") return MomentMethod::brute_force;
  throw Error(ErrorCode::ConfigInvalid, "unknown method '" + name + "'");
}

void add_common(CLI::App* app, Common& c, bool lists) {
  app->add_option("--curve", c.curve, "curve exponents, e.g. 1,3")->capture_default_str();
  app->add_option("--N", c.N, lists ? "N values, e.g. 4,6,8 or 4..32" : "N");
  app->add_option("--p", c.p, lists ? "p values, e.g. 4,12" : "moment exponent p");
  app->add_option("--coeffs", c.coeffs, "ones|zero-mean|random-unit|random-gaussian|file:<path>")
      ->capture_default_str();
  app->add_option("--seed", c.seed, "seed for random coefficients and sampling")->capture_default_str();
  app->add_option("--out", c.out, "output file (default stdout)");
  app->add_option("--format", c.format, "json|csv")->capture_default_str();
  app->add_option("--mem-budget-mb", c.mem_budget_mb, "memory budget in MiB")->capture_default_str();
}

int run_moment(const Common& c, const std::string& method) {
  const CurveSpec curve = parse_curve(c.curve);
  const int N = single_int(c.N, "N");
  const int u = half_even(single_int(c.p, "p"));
  const auto coeffs = coefficients::from_name(c.coeffs, N, c.seed);
  const auto m = compute_moment(curve, coeffs, u, parse_method(method), counting_options(c));
  nlohmann::json j = to_json(m);
  j["curve"] = curve.label();
  j["N"] = N;
  j["coeffs"] = c.coeffs;
  emit(j, c);
  return kExitOk;
}

int run_oracle(const Common& c) {
  const CurveSpec curve = parse_curve(c.curve);
  const int N = single_int(c.N, "N");
  const int u = half_even(single_int(c.p, "p"));
  const auto coeffs = coefficients::from_name(c.coeffs, N, c.seed);
  const auto brute = brute_force_moment(curve, coeffs, u);
  const auto engine = compute_moment(curve, coeffs, u, MomentMethod::automatic, counting_options(c));
  bool agree = false;
  if (brute.exact_value && engine.exact_value) {
    agree = *brute.exact_value == *engine.exact_value;
  } else {
    const double scale = std::max(std::abs(brute.value), 1.0);
    agree = std::abs(brute.value - engine.value) <= 1e-8 * scale;
  }
  nlohmann::json j;
  j["curve"] = curve.label();
  j["N"] = N;
  j["p"] = 2 * u;
  j["coeffs"] = c.coeffs;
  j["oracle"] = to_json(brute);
  j["engine"] = to_json(engine);
  j["agree"] = agree;
  emit(j, c);
  return agree ? kExitOk : kExitCheckFailed;
}

int run_reduce(const Common& c) {
  const CurveSpec curve = parse_curve(c.curve);
  const int N = single_int(c.N, "N");
  const int u = half_even(single_int(c.p, "p"));
  const auto coeffs = coefficients::from_name(c.coeffs, N, c.seed);
  const auto report = full_reduction(curve, coeffs, u, counting_options(c));
  nlohmann::json j = to_json(report);
  j["passed"] = report.passed();
  emit(j, c);
  return report.passed() ? kExitOk : kExitCheckFailed;
}

int run_sharpness(const Common& c, std::uint64_t samples) {
  const CurveSpec curve = parse_curve(c.curve);
  const int N = single_int(c.N, "N");
  const int p = single_int(c.p, "p");
  half_even(p);
  const auto report = sharpness_report(curve, N, p, samples, c.seed, counting_options(c));
  nlohmann::json j = to_json(report);
  j["passed"] = report.passed();
  emit(j, c);
  return report.passed() ? kExitOk : kExitCheckFailed;
}

int run_estimate(const Common& c, AscentConfig ascent) {
  const CurveSpec curve = parse_curve(c.curve);
  const int N = single_int(c.N, "N");
  const double p = single_double(c.p, "p");
  ascent.seed = c.seed;
  ascent.mem_budget_mb = c.mem_budget_mb;
  const auto result = estimate_K(curve, N, p, ascent);
  const double floor = std::max(1.0, result.k_lower.value_or(1.0));
  const bool sound = result.K_hat >= floor * (1.0 - 1e-12);
  nlohmann::json j = to_json(result);
  j["passed"] = sound;
  emit(j, c);
  return sound ? kExitOk : kExitCheckFailed;
}

struct SweepFlags {
  std::string config;
  std::string checks = "moment";
  std::string method = "auto";
  std::uint64_t samples = 1000;
  bool fit = false;
  double tolerance = kDefaultFitTolerance;
  bool no_timestamp = false;
};

int run_sweep_cmd(const Common& c, const SweepFlags& f, const AscentConfig& ascent, const CLI::App& app) {
  SweepConfig config;
  if (!f.config.empty()) {
    std::ifstream in(f.config);
    if (!in) throw Error(ErrorCode::ConfigInvalid, "cannot read " + f.config);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::ConfigInvalid, std::string("config: ") + e.what());
    }
    config = sweep_config_from_json(j);
  } else {
    config.ascent = ascent;
    config.ascent.seed = c.seed;
  }
  // Command-line flags override the file.
  if (f.config.empty() || app.count("--curve")) config.curve = parse_curve(c.curve).exponents;
  if (!c.N.empty()) config.Ns = parse_int_list(c.N, "N");
  if (!c.p.empty()) config.ps = parse_int_list(c.p, "p");
  if (f.config.empty() || app.count("--coeffs")) config.coeffs = c.coeffs;
  if (f.config.empty() || app.count("--seed")) config.seed = c.seed;
  if (f.config.empty() || app.count("--checks")) {
    config.checks.clear();
    if (f.checks != "none") {
      std::stringstream ss(f.checks);
      std::string item;
      while (std::getline(ss, item, ',')) config.checks.insert(parse_check(item));
    }
  }
  if (f.config.empty() || app.count("--method")) config.moment_method = f.method;
  if (f.config.empty() || app.count("--samples")) config.samples = f.samples;
  if (app.count("--fit")) config.fit = true;
  if (f.config.empty() || app.count("--tolerance")) config.fit_tolerance = f.tolerance;
  if (f.config.empty() || app.count("--format")) config.format = c.format;
  if (f.config.empty() || app.count("--mem-budget-mb")) config.mem_budget_mb = c.mem_budget_mb;
  if (!c.out.empty()) config.out = c.out;
  if (f.no_timestamp) config.timestamp = false;
  config.validate();

  const auto report = run_sweep(config);
  if (config.out.empty() || config.out == "-") {
    std::cout << render_report(report, config.format);
  } else {
    emit_report(report, config.format, config.out);
  }
  return report.failed() ? kExitCheckFailed : kExitOk;
}

int run_fit(const Common& c, const std::string& input, const std::string& quantity, double tolerance) {
  if (input.empty()) throw Error(ErrorCode::ConfigInvalid, "--in is required");
  auto rows = read_report_rows(input);
  const FitQuantity q = parse_quantity(quantity);
  std::optional<int> p;
  if (!c.p.empty()) p = single_int(c.p, "p");
  std::vector<int> ps;
  for (const auto& r : rows) {
    if ((!p || r.p == *p) && std::find(ps.begin(), ps.end(), r.p) == ps.end()) ps.push_back(r.p);
  }
  if (ps.empty()) throw Error(ErrorCode::InsufficientRows, "no rows match");
  nlohmann::json out = nlohmann::json::array();
  bool failed = false;
  for (int pv : ps) {
    std::vector<SweepRow> subset;
    for (const auto& r : rows) {
      if (r.p == pv) subset.push_back(r);
    }
    const auto fit = fit_exponent(subset, q, tolerance);
    failed = failed || fit.verdict == "inconsistent";
    out.push_back(to_json(fit));
  }
  if (c.format == "csv") {
    std::string text;
    for (const auto& f : out) text += render_flat_csv(f);
    write_text(text, c.out);
  } else {
    write_text((out.size() == 1 ? out[0] : out).dump(2) + "\n", c.out);
  }
  return failed ? kExitCheckFailed : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Moments and extension constants of exponential sums over integer curves", "torusmoments"};
  app.set_version_flag("--version", std::string(kEngineVersion));
  app.require_subcommand(1);

  Common common;
  AscentConfig ascent;
  auto add_ascent = [&](CLI::App* sub) {
    sub->add_option("--max-iters", ascent.max_iters, "ascent iterations per start")->capture_default_str();
    sub->add_option("--multistarts", ascent.multistarts, "number of starting vectors")->capture_default_str();
    sub->add_option("--tolerance-ascent", ascent.tolerance, "relative improvement to stop")->capture_default_str();
    sub->add_option("--oversample", ascent.oversample, "grid factor for non-even p")->capture_default_str();
  };

  std::string method = "auto";
  auto* moment = app.add_subcommand("moment", "even moment Lambda = integral of |F|^p");
  add_common(moment, common, false);
  moment->add_option("--method", method, "auto|exact|fft|brute")->capture_default_str();

  auto* reduce = app.add_subcommand("reduce", "shift decomposition and dominance checks");
  add_common(reduce, common, false);

  std::uint64_t samples = 1000;
  auto* sharp = app.add_subcommand("sharpness", "diagonal and major arc lower bounds");
  add_common(sharp, common, false);
  sharp->add_option("--samples", samples, "sampled points in the major arc")->capture_default_str();

  auto* estimate = app.add_subcommand("estimate", "lower estimate of the extension constant");
  add_common(estimate, common, false);
  add_ascent(estimate);

  SweepFlags sweep_flags;
  auto* sweep = app.add_subcommand("sweep", "run checks over a grid of (N, p)");
  add_common(sweep, common, true);
  add_ascent(sweep);
  sweep->add_option("--config", sweep_flags.config, "JSON sweep configuration");
  sweep->add_option("--checks", sweep_flags.checks, "comma list of moment,reduce,sharpness,estimate or none")
      ->capture_default_str();
  sweep->add_option("--method", sweep_flags.method, "auto|exact|fft|brute")->capture_default_str();
  sweep->add_option("--samples", sweep_flags.samples, "major arc samples")->capture_default_str();
  sweep->add_flag("--fit", sweep_flags.fit, "fit log-log exponents per p");
  sweep->add_option("--tolerance", sweep_flags.tolerance, "fit tolerance")->capture_default_str();
  sweep->add_flag("--no-timestamp", sweep_flags.no_timestamp, "omit the timestamp field");

  std::string fit_input;
  std::string quantity = "lambda";
  double fit_tolerance = kDefaultFitTolerance;
  auto* fit = app.add_subcommand("fit", "log-log exponent fit of a sweep report");
  add_common(fit, common, false);
  fit->add_option("--in", fit_input, "sweep report (.json or .csv)");
  fit->add_option("--quantity", quantity, "lambda|K")->capture_default_str();
  fit->add_option("--tolerance", fit_tolerance, "slope tolerance")->capture_default_str();

  auto* oracle = app.add_subcommand("oracle", "brute-force moment compared with the engine");
  add_common(oracle, common, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    check_format(common.format);
    if (moment->parsed()) return run_moment(common, method);
    if (reduce->parsed()) return run_reduce(common);
    if (sharp->parsed()) return run_sharpness(common, samples);
    if (estimate->parsed()) return run_estimate(common, ascent);
    if (sweep->parsed()) return run_sweep_cmd(common, sweep_flags, ascent, *sweep);
    if (fit->parsed()) return run_fit(common, fit_input, quantity, fit_tolerance);
    if (oracle->parsed()) return run_oracle(common);
  } catch (const Error& e) {
    std::cerr << "torusmoments: " << error_name(e.code()) << ": " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "torusmoments: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  return kExitConfig;
}
