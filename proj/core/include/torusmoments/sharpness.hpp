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
#include <vector>

#include <nlohmann/json.hpp>

#include "torusmoments/counting.hpp"
#include "torusmoments/curve.hpp"
#include "torusmoments/quadrature.hpp"

namespace torus {

// Omega_N = {alpha : |alpha_i| <= 1/(8 d N^{k_i})}.
struct MajorArcBox {
  std::vector<double> half_widths;
  double measure = 0.0;
};

MajorArcBox major_arc_box(const CurveSpec& curve, int N);

// Every phase on Omega_N is at most pi/4, so Re F >= cos(pi/4) (2N+1) there.
inline constexpr double kCosineConstant = 0.70710678118654752440;

// (2N+1)^u: the diagonal solutions m = n.
BigInt diagonal_lower_bound(int N, int u);

struct MajorArcMinimum {
  double min_real = 0.0;
  TorusPoint argmin;
  std::uint64_t points = 0;
  double floor = 0.0;  // cos(pi/4) (2N+1)
};

// Minimum of Re F (a = 1) over the 2^d corners of Omega_N plus seeded samples.
MajorArcMinimum major_arc_min(const CurveSpec& curve, int N, std::uint64_t samples, std::uint64_t seed);

// (cos(pi/4) (2N+1))^p |Omega_N|.
double major_arc_moment_bound(const CurveSpec& curve, int N, int p);

struct KLowerBound {
  double value = 0.0;             // (2N+1)^{-1/2} Lambda^{1/p}
  double sqrt_n_normalized = 0.0;  // N^{-1/2} Lambda^{1/p}
  MomentValue lambda;
};

KLowerBound k_lower_bound(const CurveSpec& curve, int N, int p, const CountingOptions& options = {});
KLowerBound k_lower_bound(const MomentValue& lambda_ones, int N);

struct SharpnessReport {
  std::string curve;
  int N = 0;
  int p = 0;
  MomentValue lambda;
  BigInt diagonal;
  double major_arc_bound = 0.0;
  MajorArcBox box;
  MajorArcMinimum arc_min;
  KLowerBound k_lower;
  double theorem_exponent = 0.0;  // (1/2)(1 - 2K/p)
  bool diagonal_holds = false;
  bool major_arc_holds = false;
  bool cosine_holds = false;

  bool passed() const noexcept { return diagonal_holds && major_arc_holds && cosine_holds; }
};

SharpnessReport sharpness_report(const CurveSpec& curve, int N, int p, std::uint64_t samples = 1000,
                                 std::uint64_t seed = 0, const CountingOptions& options = {});

nlohmann::json to_json(const SharpnessReport& r);

}  // namespace torus
