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
#include "torusmoments/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include "grid_eval.hpp"
#include "torusmoments/error.hpp"
#include "torusmoments/summation.hpp"

namespace torus {

namespace {

bool is_even_integer(double p) { return std::isfinite(p) && p >= 0 && p == std::round(p) && std::fmod(p, 2.0) == 0.0; }

// |z|^p with exact integer powers of |z|^2 for even p.
double abs_power(std::complex<double> z, double p, bool even) {
  if (even) {
    const double r2 = std::norm(z);
    double out = 1.0;
    for (int i = 0, half = static_cast<int>(p / 2); i < half; ++i) out *= r2;
    return out;
  }
  return std::pow(std::abs(z), p);
}

}  // namespace

double TorusGrid::node_count() const noexcept {
  double n = 1.0;
  for (auto m : dims) n *= static_cast<double>(m);
  return n;
}

std::int64_t next_fft_size(std::int64_t n) {
  if (n <= 1) return 1;
  for (std::int64_t m = n;; ++m) {
    std::int64_t r = m;
    for (std::int64_t f : {2, 3, 5, 7}) {
      while (r % f == 0) r /= f;
    }
    if (r == 1) return m;
  }
}

TorusGrid make_grid(std::vector<std::int64_t> dims) {
  for (auto m : dims) {
    if (m < 1) throw Error(ErrorCode::InvalidArgument, "grid dimensions must be positive");
  }
  TorusGrid g;
  g.dims = std::move(dims);
  return g;
}

bool grid_certifies(const TorusGrid& grid, const CurveSpec& curve, int N, int u) {
  if (grid.dim() != curve.dim()) return false;
  for (int j = 0; j < curve.dim(); ++j) {
    const double need = 2.0 * u * std::pow(double(N), curve.exponents[j]) + 1.0;
    if (static_cast<double>(grid.dims[j]) < need) return false;
  }
  return true;
}

TorusGrid nyquist_grid(const CurveSpec& curve, int N, int u, const GridOptions& options) {
  if (u < 1) throw Error(ErrorCode::InvalidArgument, "depth u must be at least 1");
  const auto bounds = depth_bounds(curve, N, u);
  TorusGrid g;
  for (i128 b : bounds) {
    const i128 m = 2 * b + 1;
    if (m > (i128(1) << 40)) throw Error(ErrorCode::GridTooLarge, "grid axis longer than 2^40 nodes");
    auto len = static_cast<std::int64_t>(m);
    if (options.efficient_sizes) len = next_fft_size(len);
    g.dims.push_back(len);
  }
  if (g.node_count() > options.max_nodes) {
    throw Error(ErrorCode::GridTooLarge, "Nyquist grid has more nodes than the configured limit");
  }
  // One transform line per worker plus two scratch lines.
  const double bytes = 3.0 * 16.0 * static_cast<double>(g.dims.back()) * static_cast<double>(worker_count());
  if (bytes > options.mem_budget_mb * 1024.0 * 1024.0) {
    throw Error(ErrorCode::GridTooLarge, "transform buffers exceed the memory budget");
  }
  g.nyquist = true;
  g.certified_u = u;
  g.certified_N = N;
  return g;
}

GridPowerMeans grid_power_means(const CurveSpec& curve, const CoefficientVector& coeffs,
                                std::span<const double> exponents, const TorusGrid& grid) {
  for (double p : exponents) {
    if (!(p >= 0.0)) throw Error(ErrorCode::InvalidArgument, "exponent must be nonnegative");
  }
  detail::GridEvaluator eval(curve, coeffs, grid);
  const std::size_t np = exponents.size();
  std::vector<bool> even(np);
  for (std::size_t i = 0; i < np; ++i) even[i] = is_even_integer(exponents[i]);

  struct Partial {
    std::vector<CompensatedSum> sums;
    double max_abs = 0.0;
  };
  std::vector<Partial> partials(eval.chunk_count(), Partial{std::vector<CompensatedSum>(np), 0.0});
  eval.for_each_slab([&](std::size_t chunk, std::size_t, std::span<const std::complex<double>> values, auto&) {
    Partial& part = partials[chunk];
    for (const auto& z : values) {
      part.max_abs = std::max(part.max_abs, std::abs(z));
      for (std::size_t i = 0; i < np; ++i) {
        if (std::isfinite(exponents[i])) part.sums[i].add(abs_power(z, exponents[i], even[i]));
      }
    }
  });

  GridPowerMeans out;
  out.means.assign(np, 0.0);
  std::vector<CompensatedSum> totals(np);
  for (const auto& part : partials) {
    out.max_abs = std::max(out.max_abs, part.max_abs);
    for (std::size_t i = 0; i < np; ++i) totals[i].add(part.sums[i]);
  }
  const double nodes = eval.node_count();
  for (std::size_t i = 0; i < np; ++i) {
    out.means[i] = std::isfinite(exponents[i]) ? totals[i].value() / nodes : out.max_abs;
  }
  return out;
}

double lp_norm(const CurveSpec& curve, const CoefficientVector& coeffs, double p, const TorusGrid& grid) {
  if (!(p >= 1.0)) throw Error(ErrorCode::InvalidArgument, "p must be at least 1");
  const double ps[] = {p};
  const auto m = grid_power_means(curve, coeffs, ps, grid);
  if (std::isinf(p)) return m.max_abs;
  return std::pow(m.means[0], 1.0 / p);
}

MomentValue even_moment_fft(const CurveSpec& curve, const CoefficientVector& coeffs, int u,
                            const TorusGrid& grid) {
  if (u < 1) throw Error(ErrorCode::InvalidArgument, "depth u must be at least 1");
  if (grid.dim() != curve.dim()) throw Error(ErrorCode::DimensionMismatch, "grid and curve dimensions differ");
  if (!grid_certifies(grid, curve, coeffs.N(), u)) {
    throw Error(ErrorCode::GridTooLarge, "grid is below the Nyquist size 2uN^k+1; exactness cannot be certified");
  }
  const double ps[] = {2.0 * u};
  MomentValue m;
  m.u = u;
  m.exact = false;
  m.path = MomentPath::fft;
  m.value = grid_power_means(curve, coeffs, ps, grid).means[0];
  return m;
}

MomentValue even_moment_fft(const CurveSpec& curve, const CoefficientVector& coeffs, int u,
                            const GridOptions& options) {
  GridOptions o = options;
  o.efficient_sizes = true;
  return even_moment_fft(curve, coeffs, u, nyquist_grid(curve, coeffs.N(), u, o));
}

MomentValue compute_moment(const CurveSpec& curve, const CoefficientVector& coeffs, int u, MomentMethod method,
                           const CountingOptions& options) {
  GridOptions grid_options;
  grid_options.mem_budget_mb = options.mem_budget_mb;
  switch (method) {
    case MomentMethod::exact: return even_moment(curve, coeffs, u, options);
    case MomentMethod::fft: return even_moment_fft(curve, coeffs, u, grid_options);
    case MomentMethod::brute_force: return brute_force_moment(curve, coeffs, u);
    case MomentMethod::automatic: break;
  }
  if (coeffs.is_exact()) {
    const auto plan = plan_counts(curve, coeffs.N(), u, options);
    constexpr double kMaxExactWork = 5e8;
    if (plan.bytes <= 0.5 * options.mem_budget_mb * 1024.0 * 1024.0 && plan.pair_work <= kMaxExactWork) {
      return even_moment(curve, coeffs, u, options);
    }
  }
  return even_moment_fft(curve, coeffs, u, grid_options);
}

LogConvexityReport log_convexity_check(const CurveSpec& curve, const CoefficientVector& coeffs, double p0,
                                       double p1, const TorusGrid& grid) {
  if (!(p0 >= 2.0 && p0 < p1)) throw Error(ErrorCode::InvalidArgument, "need 2 <= p0 < p1");
  LogConvexityReport r;
  r.p0 = p0;
  r.p1 = p1;
  const double ps[] = {p0, p1};
  const auto m = grid_power_means(curve, coeffs, ps, grid);
  r.norm_p0 = std::pow(m.means[0], 1.0 / p0);
  r.norm_p1 = std::isinf(p1) ? m.max_abs : std::pow(m.means[1], 1.0 / p1);
  r.norm_inf = m.max_abs;
  const double theta = std::isinf(p1) ? 0.0 : p0 / p1;
  r.lhs = r.norm_p1;
  r.rhs = std::pow(r.norm_p0, theta) * std::pow(r.norm_inf, 1.0 - theta);
  r.slack = r.rhs - r.lhs;
  // Both sides come from the same grid sums; allow only rounding.
  r.holds = r.lhs <= r.rhs * (1.0 + 1e-12);
  return r;
}

}  // namespace torus
