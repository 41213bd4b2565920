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
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "torusmoments/estimator.hpp"
#include "torusmoments/fit.hpp"

namespace torus {

enum class Check { moment, reduce, sharpness, estimate };
std::string_view check_name(Check c) noexcept;
Check parse_check(std::string_view name);

struct SweepConfig {
  std::vector<int> curve{1, 3};
  std::vector<int> Ns;
  std::vector<int> ps;
  std::string coeffs = "ones";
  std::uint64_t seed = 0;
  std::set<Check> checks;
  std::string moment_method = "auto";  // auto | exact | fft | brute
  std::uint64_t samples = 1000;        // major arc samples
  bool fit = false;
  double fit_tolerance = kDefaultFitTolerance;
  std::string out;
  std::string format = "json";
  double mem_budget_mb = 1024.0;
  AscentConfig ascent;
  bool timestamp = true;

  // Throws ConfigInvalid.
  void validate() const;
};

SweepConfig sweep_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SweepConfig& c);

struct SweepRow {
  std::string curve;
  int N = 0;
  int p = 0;
  std::optional<double> lambda;
  std::string lambda_text;  // exact digits, or the shortest float
  bool lambda_exact = false;
  std::optional<double> diag_lb;
  std::optional<double> major_arc_lb;
  std::optional<double> k_lower;
  std::optional<double> k_hat;
  std::optional<double> a_hat;
  std::optional<double> decomp_residual;
  std::optional<double> dominance_max_ratio;
  std::optional<double> bound_ratio;
  std::string notes;  // ';'-separated tokens; "fail:" marks a violated check

  bool failed() const;
  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

struct SweepReport {
  SweepConfig config;
  std::vector<SweepRow> rows;
  std::vector<FitResult> fits;
  std::vector<std::string> fit_errors;
  std::string timestamp;

  bool failed() const;
};

SweepReport run_sweep(const SweepConfig& config);

inline constexpr std::string_view kCsvHeader =
    "curve,N,p,lambda,lambda_exact,diag_lb,major_arc_lb,k_lower,k_hat,a_hat,decomp_residual,"
    "dominance_max_ratio,bound_ratio,notes";

// format is "json" or "csv"; anything else throws ConfigInvalid.
std::string render_report(const SweepReport& report, std::string_view format);
void emit_report(const SweepReport& report, std::string_view format, const std::filesystem::path& path);

nlohmann::json to_json(const SweepReport& report);
nlohmann::json to_json(const SweepRow& row);
SweepRow row_from_json(const nlohmann::json& j);
SweepReport parse_report_json(std::string_view text);
std::vector<SweepRow> parse_report_csv(std::string_view text);
// Reads a JSON or CSV report, chosen by the file extension.
std::vector<SweepRow> read_report_rows(const std::filesystem::path& path);

}  // namespace torus
