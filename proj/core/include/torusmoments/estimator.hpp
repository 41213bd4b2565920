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
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "torusmoments/coefficients.hpp"
#include "torusmoments/counting.hpp"
#include "torusmoments/curve.hpp"
#include "torusmoments/quadrature.hpp"

namespace torus {

struct AscentConfig {
  int max_iters = 200;
  double initial_step = 0.5;  // step length on the unit sphere
  double max_step = 1.0;
  double backtrack_factor = 0.5;
  int max_backtracks = 40;
  double tolerance = 1e-9;    // relative objective improvement
  int multistarts = 8;        // includes the a = 1 and major-arc starts
  std::uint64_t seed = 0;
  int oversample = 2;         // grid factor for non-even p
  double mem_budget_mb = 1024.0;

  void validate() const;
};

struct EstimateResult {
  std::string curve;
  int N = 0;
  double p = 0.0;
  double K_hat = 0.0;
  CoefficientVector argmax;   // unit l2 norm
  int iterations = 0;         // accepted steps over all starts
  int best_start = 0;
  bool converged = false;
  bool monotone = true;       // no accepted step decreased the objective
  std::optional<double> k_lower;
  double certified_lower = 0.0;  // max(K_hat, k_lower)
  double restriction_estimate = 0.0;  // K_hat^2
  TorusGrid grid;
  bool approximate = false;   // grid carries no exactness certificate
  std::optional<double> quadrature_error;  // relative change on a doubled grid
  std::vector<double> start_values;  // K reached from each start
  std::vector<double> objective_history;  // accepted objectives of the best start
  double theorem_exponent = 0.0;  // (1/2)(1 - 2K/p)
};

// Phi(a) = (1/#nodes) sum |F_a|^p on the grid.
double moment_objective(const CurveSpec& curve, const CoefficientVector& coeffs, double p, const TorusGrid& grid);

// dPhi/dRe a_n and dPhi/dIm a_n interleaved, for even p on a Nyquist grid.
std::vector<double> moment_gradient(const CurveSpec& curve, const CoefficientVector& coeffs, int p,
                                    const TorusGrid& grid);

// Grid used by the estimator: Nyquist for even p, oversampled otherwise.
TorusGrid estimator_grid(const CurveSpec& curve, int N, double p, const AscentConfig& config);

// Projected gradient ascent of ||F_a||_p over the unit sphere; a lower estimate
// of K_{p,d,N}.
EstimateResult estimate_K(const CurveSpec& curve, int N, double p, const AscentConfig& config = {});

// Duality estimate A ~ K^2.
double restriction_constant(const EstimateResult& result);
double restriction_constant(const CurveSpec& curve, int N, double p, const AscentConfig& config = {});

nlohmann::json to_json(const EstimateResult& r);

}  // namespace torus
