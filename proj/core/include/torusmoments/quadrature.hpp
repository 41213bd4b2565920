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
#include <limits>
#include <span>
#include <vector>

#include "torusmoments/coefficients.hpp"
#include "torusmoments/counting.hpp"
#include "torusmoments/curve.hpp"

namespace torus {

// Equispaced nodes alpha_j in {0, 1/M_j, ..., (M_j - 1)/M_j} per axis.
struct TorusGrid {
  std::vector<std::int64_t> dims;
  // Set when every M_j >= 2 u N^{k_j} + 1 for the recorded (u, N).
  bool nyquist = false;
  int certified_u = 0;
  int certified_N = 0;

  int dim() const noexcept { return static_cast<int>(dims.size()); }
  double node_count() const noexcept;
};

struct GridOptions {
  // Round every axis up to a 2^a 3^b 5^c 7^d length.
  bool efficient_sizes = false;
  double mem_budget_mb = 1024.0;
  double max_nodes = 1e10;
};

std::int64_t next_fft_size(std::int64_t n);

TorusGrid make_grid(std::vector<std::int64_t> dims);
bool grid_certifies(const TorusGrid& grid, const CurveSpec& curve, int N, int u);

// M_j = 2 u N^{k_j} + 1, which integrates |F|^{2u} exactly.
TorusGrid nyquist_grid(const CurveSpec& curve, int N, int u, const GridOptions& options = {});

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct GridPowerMeans {
  std::vector<double> means;  // (1/#nodes) sum |F|^p for each requested p
  double max_abs = 0.0;
};

GridPowerMeans grid_power_means(const CurveSpec& curve, const CoefficientVector& coeffs,
                                std::span<const double> exponents, const TorusGrid& grid);

// Rectangle-rule L^p norm; p = kInfinity gives the grid maximum of |F|.
double lp_norm(const CurveSpec& curve, const CoefficientVector& coeffs, double p, const TorusGrid& grid);

MomentValue even_moment_fft(const CurveSpec& curve, const CoefficientVector& coeffs, int u,
                            const GridOptions& options = {});
// Throws GridTooLarge when the grid cannot certify exactness.
MomentValue even_moment_fft(const CurveSpec& curve, const CoefficientVector& coeffs, int u,
                            const TorusGrid& grid);

enum class MomentMethod { automatic, exact, fft, brute_force };

// automatic takes the exact counting path when the coefficients are exact and
// the predicted work fits, otherwise the Nyquist-grid path.
MomentValue compute_moment(const CurveSpec& curve, const CoefficientVector& coeffs, int u,
                           MomentMethod method = MomentMethod::automatic, const CountingOptions& options = {});

struct LogConvexityReport {
  double p0 = 0.0;
  double p1 = 0.0;
  double norm_p0 = 0.0;
  double norm_p1 = 0.0;
  double norm_inf = 0.0;
  double lhs = 0.0;  // ||F||_{p1}
  double rhs = 0.0;  // ||F||_{p0}^{p0/p1} ||F||_inf^{1 - p0/p1}
  double slack = 0.0;
  bool holds = false;
};

LogConvexityReport log_convexity_check(const CurveSpec& curve, const CoefficientVector& coeffs, double p0,
                                       double p1, const TorusGrid& grid);

}  // namespace torus
