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
#include "torusmoments/sharpness.hpp"

#include <cmath>
#include <random>

#include "torusmoments/error.hpp"
#include "torusmoments/extension.hpp"
#include "torusmoments/reduction.hpp"

namespace torus {

namespace {

void require_even(int p) {
  if (p < 2 || p % 2 != 0) throw Error(ErrorCode::InvalidArgument, "p must be a positive even integer");
}

}  // namespace

MajorArcBox major_arc_box(const CurveSpec& curve, int N) {
  if (N < 1) throw Error(ErrorCode::InvalidArgument, "major arc box needs N >= 1");
  MajorArcBox box;
  box.measure = 1.0;
  const double d = curve.dim();
  for (int e : curve.exponents) {
    const double w = 1.0 / (8.0 * d * std::pow(double(N), e));
    box.half_widths.push_back(w);
    box.measure *= 2.0 * w;
  }
  return box;
}

BigInt diagonal_lower_bound(int N, int u) {
  BigInt r = 1;
  for (int i = 0; i < u; ++i) r *= 2 * N + 1;
  return r;
}

MajorArcMinimum major_arc_min(const CurveSpec& curve, int N, std::uint64_t samples, std::uint64_t seed) {
  if (samples < 1) throw Error(ErrorCode::InvalidArgument, "samples must be at least 1");
  const auto box = major_arc_box(curve, N);
  const auto ones = coefficients::ones(N);
  const int d = curve.dim();
  MajorArcMinimum out;
  out.floor = kCosineConstant * (2 * N + 1);
  out.min_real = std::numeric_limits<double>::infinity();
  auto visit = [&](std::vector<double> alpha) {
    TorusPoint pt(alpha);
    const double re = eval_extension(curve, ones, pt).real();
    ++out.points;
    if (re < out.min_real) {
      out.min_real = re;
      out.argmin = TorusPoint(std::move(alpha));
    }
  };
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << d); ++mask) {
    std::vector<double> alpha;
    for (int j = 0; j < d; ++j) alpha.push_back(((mask >> j) & 1) ? box.half_widths[j] : -box.half_widths[j]);
    visit(std::move(alpha));
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (std::uint64_t s = 0; s < samples; ++s) {
    std::vector<double> alpha;
    for (int j = 0; j < d; ++j) alpha.push_back(unit(rng) * box.half_widths[j]);
    visit(std::move(alpha));
  }
  return out;
}

double major_arc_moment_bound(const CurveSpec& curve, int N, int p) {
  require_even(p);
  return std::pow(kCosineConstant * (2 * N + 1), p) * major_arc_box(curve, N).measure;
}

KLowerBound k_lower_bound(const MomentValue& lambda_ones, int N) {
  KLowerBound k;
  k.lambda = lambda_ones;
  const double root = std::pow(lambda_ones.value, 1.0 / lambda_ones.p());
  k.value = root / std::sqrt(2.0 * N + 1.0);
  k.sqrt_n_normalized = N > 0 ? root / std::sqrt(double(N)) : root;
  return k;
}

KLowerBound k_lower_bound(const CurveSpec& curve, int N, int p, const CountingOptions& options) {
  require_even(p);
  return k_lower_bound(compute_moment(curve, coefficients::ones(N), p / 2, MomentMethod::automatic, options), N);
}

SharpnessReport sharpness_report(const CurveSpec& curve, int N, int p, std::uint64_t samples, std::uint64_t seed,
                                 const CountingOptions& options) {
  require_even(p);
  SharpnessReport r;
  r.curve = curve.label();
  r.N = N;
  r.p = p;
  r.lambda = compute_moment(curve, coefficients::ones(N), p / 2, MomentMethod::automatic, options);
  r.diagonal = diagonal_lower_bound(N, p / 2);
  r.box = major_arc_box(curve, N);
  r.major_arc_bound = major_arc_moment_bound(curve, N, p);
  r.arc_min = major_arc_min(curve, N, samples, seed);
  r.k_lower = k_lower_bound(r.lambda, N);
  r.theorem_exponent = 0.5 * (1.0 - 2.0 * curve.weight_sum / p);
  if (r.lambda.exact) {
    r.diagonal_holds = *r.lambda.exact_value >= r.diagonal;
  } else {
    r.diagonal_holds = r.lambda.value >= to_double(r.diagonal);
  }
  r.major_arc_holds = r.lambda.value >= r.major_arc_bound;
  r.cosine_holds = r.arc_min.min_real >= r.arc_min.floor;
  return r;
}

nlohmann::json to_json(const SharpnessReport& r) {
  nlohmann::json j;
  j["curve"] = r.curve;
  j["N"] = r.N;
  j["p"] = r.p;
  j["lambda"] = to_json(r.lambda);
  j["diagonal_lower_bound"] = r.diagonal.str();
  j["major_arc_moment_bound"] = r.major_arc_bound;
  j["major_arc_half_widths"] = r.box.half_widths;
  j["major_arc_measure"] = r.box.measure;
  j["major_arc_min_real"] = r.arc_min.min_real;
  j["major_arc_min_point"] = r.arc_min.argmin.coords;
  j["major_arc_points"] = r.arc_min.points;
  j["cosine_floor"] = r.arc_min.floor;
  j["k_lower_bound"] = r.k_lower.value;
  j["k_lower_bound_sqrt_n"] = r.k_lower.sqrt_n_normalized;
  j["theorem_exponent"] = r.theorem_exponent;
  j["constants"] = {{"cosine", kCosineConstant}, {"diagonal", 1}};
  j["checks"] = {{"lambda_ge_diagonal", r.diagonal_holds},
                 {"lambda_ge_major_arc", r.major_arc_holds},
                 {"major_arc_min_ge_cosine_floor", r.cosine_holds}};
  j["passed"] = r.passed();
  return j;
}

}  // namespace torus
