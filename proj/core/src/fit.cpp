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
#include "torusmoments/fit.hpp"

#include <algorithm>
#include <cmath>

#include "torusmoments/error.hpp"
#include "torusmoments/summation.hpp"
#include "torusmoments/sweep.hpp"

namespace torus {

std::string_view quantity_name(FitQuantity q) noexcept { return q == FitQuantity::lambda ? "lambda" : "K"; }

FitQuantity parse_quantity(std::string_view name) {
  if (name == "lambda") return FitQuantity::lambda;
  if (name == "K" || name == "k") return FitQuantity::K;
  throw Error(ErrorCode::ConfigInvalid, "unknown fit quantity '" + std::string(name) + "'");
}

LineFit fit_log_log(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw Error(ErrorCode::InsufficientRows, "need at least two points");
  const std::size_t n = x.size();
  std::vector<double> lx(n), ly(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(x[i] > 0) || !(y[i] > 0)) throw Error(ErrorCode::InvalidArgument, "log-log fit needs positive values");
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
  }
  CompensatedSum sx, sy;
  for (std::size_t i = 0; i < n; ++i) {
    sx.add(lx[i]);
    sy.add(ly[i]);
  }
  const double mx = sx.value() / n;
  const double my = sy.value() / n;
  CompensatedSum sxx, sxy;
  for (std::size_t i = 0; i < n; ++i) {
    sxx.add((lx[i] - mx) * (lx[i] - mx));
    sxy.add((lx[i] - mx) * (ly[i] - my));
  }
  if (sxx.value() == 0.0) throw Error(ErrorCode::InsufficientRows, "log-log fit needs distinct x values");
  LineFit f;
  f.slope = sxy.value() / sxx.value();
  f.intercept = my - f.slope * mx;
  for (std::size_t i = 0; i < n; ++i) {
    f.residual = std::max(f.residual, std::abs(ly[i] - (f.intercept + f.slope * lx[i])));
  }
  return f;
}

PredictedExponent predicted_exponent(const CurveSpec& curve, int p, FitQuantity q) {
  PredictedExponent e;
  e.in_theorem_range = p >= curve.critical_p;
  const double K = curve.weight_sum;
  if (q == FitQuantity::lambda) {
    e.value = e.in_theorem_range ? p - K : std::max(p / 2.0, p - K);
  } else {
    const double theorem = 0.5 * (1.0 - 2.0 * K / p);
    e.value = e.in_theorem_range ? theorem : std::max(0.0, theorem);
  }
  return e;
}

FitResult fit_exponent(std::span<const SweepRow> rows, FitQuantity quantity, double tolerance) {
  if (rows.size() < 3) throw Error(ErrorCode::InsufficientRows, "fit needs at least three rows");
  FitResult f;
  f.curve = rows.front().curve;
  f.p = rows.front().p;
  f.quantity = quantity;
  f.tolerance = tolerance;
  std::vector<double> xs;
  for (const auto& r : rows) {
    if (r.curve != f.curve || r.p != f.p) {
      throw Error(ErrorCode::InvalidArgument, "fit rows must share one curve and p");
    }
    const auto& v = quantity == FitQuantity::lambda ? r.lambda : r.k_hat;
    if (!v) {
      throw Error(ErrorCode::InsufficientRows,
                  "row N=" + std::to_string(r.N) + " has no " + std::string(quantity_name(quantity)));
    }
    f.Ns.push_back(r.N);
    xs.push_back(r.N);
    f.values.push_back(*v);
  }
  auto sorted = f.Ns;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(ErrorCode::InvalidArgument, "fit rows must have distinct N");
  }
  const auto line = fit_log_log(xs, f.values);
  f.slope = line.slope;
  f.intercept = line.intercept;
  f.residual = line.residual;

  const CurveSpec curve = parse_curve(f.curve);
  const auto pred = predicted_exponent(curve, f.p, quantity);
  f.predicted = pred.value;
  f.in_theorem_range = pred.in_theorem_range;
  f.within_tolerance = std::abs(f.slope - f.predicted) <= tolerance;
  if (!pred.in_theorem_range) {
    f.verdict = "out-of-theorem-range";
  } else {
    f.verdict = f.within_tolerance ? "consistent" : "inconsistent";
  }
  if (quantity == FitQuantity::lambda && curve.is_full()) {
    const double k = curve.top;
    f.vinogradov_full = f.p - k * (k + 1);
    f.vinogradov_half = f.p - k * (k + 1) / 2;
    f.vinogradov_supported = std::abs(f.slope - *f.vinogradov_half) <= std::abs(f.slope - *f.vinogradov_full)
                                 ? "p-k(k+1)/2"
                                 : "p-k(k+1)";
  }
  return f;
}

nlohmann::json to_json(const FitResult& f) {
  nlohmann::json j;
  j["curve"] = f.curve;
  j["p"] = f.p;
  j["quantity"] = std::string(quantity_name(f.quantity));
  j["N"] = f.Ns;
  j["values"] = f.values;
  j["slope"] = f.slope;
  j["intercept"] = f.intercept;
  j["residual"] = f.residual;
  j["predicted"] = f.predicted;
  j["in_theorem_range"] = f.in_theorem_range;
  j["tolerance"] = f.tolerance;
  j["within_tolerance"] = f.within_tolerance;
  j["verdict"] = f.verdict;
  if (f.vinogradov_full) {
    j["vinogradov"] = {{"full_exponent", *f.vinogradov_full},
                       {"half_exponent", *f.vinogradov_half},
                       {"supported", *f.vinogradov_supported}};
  }
  return j;
}

}  // namespace torus
