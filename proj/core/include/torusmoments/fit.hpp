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

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "torusmoments/curve.hpp"

namespace torus {

struct SweepRow;

enum class FitQuantity { lambda, K };
std::string_view quantity_name(FitQuantity q) noexcept;
FitQuantity parse_quantity(std::string_view name);

inline constexpr double kDefaultFitTolerance = 0.6;

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // max |log y - (intercept + slope log x)|
};

// Least squares on (log x, log y); all values must be positive.
LineFit fit_log_log(std::span<const double> x, std::span<const double> y);

struct PredictedExponent {
  double value = 0.0;
  bool in_theorem_range = false;  // p >= k(k+1)
};

// lambda: p - K inside the range, max(p/2, p - K) below it.
// K: (1/2)(1 - 2K/p) inside the range, max(0, (1/2)(1 - 2K/p)) below it.
PredictedExponent predicted_exponent(const CurveSpec& curve, int p, FitQuantity q);

struct FitResult {
  std::string curve;
  int p = 0;
  FitQuantity quantity = FitQuantity::lambda;
  std::vector<int> Ns;
  std::vector<double> values;
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;
  double predicted = 0.0;
  bool in_theorem_range = false;
  double tolerance = kDefaultFitTolerance;
  bool within_tolerance = false;
  // "consistent", "inconsistent" or "out-of-theorem-range".
  std::string verdict;

  // Full curve (1..k) only: the moment exponent p - k(k+1) next to
  // p - k(k+1)/2, and which one the fitted slope is closer to.
  std::optional<double> vinogradov_full;
  std::optional<double> vinogradov_half;
  std::optional<std::string> vinogradov_supported;
};

// Rows must share one curve and p; at least three distinct N.
FitResult fit_exponent(std::span<const SweepRow> rows, FitQuantity quantity,
                       double tolerance = kDefaultFitTolerance);

nlohmann::json to_json(const FitResult& f);

}  // namespace torus
