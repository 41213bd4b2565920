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
#include "torusmoments/reduction.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "torusmoments/error.hpp"
#include "torusmoments/summation.hpp"

namespace torus {

namespace {

BigInt pow_big(BigInt base, int exp) {
  BigInt r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

std::vector<i128> shift_box_bounds(const CurveSpec& curve, int N, int u) {
  std::vector<i128> b;
  for (int l : curve.complement) b.push_back(checked_mul(2 * u, checked_pow(N, l)));
  return b;
}

std::vector<ShiftVector> enumerate_box(const CurveSpec& curve, const std::vector<i128>& bounds, std::uint64_t cap) {
  BigInt count = 1;
  for (i128 b : bounds) count *= to_big(2 * b + 1);
  if (count > cap) {
    throw Error(ErrorCode::EnumerationTooLarge, count.str() + " shifts exceed the cap of " + std::to_string(cap));
  }
  std::vector<ShiftVector> out;
  out.reserve(static_cast<std::size_t>(count));
  std::vector<i128> cur;
  for (i128 b : bounds) cur.push_back(-b);
  for (;;) {
    ShiftVector h{std::vector<i128>(static_cast<std::size_t>(curve.top), 0)};
    for (std::size_t i = 0; i < bounds.size(); ++i) h.h[static_cast<std::size_t>(curve.complement[i] - 1)] = cur[i];
    out.push_back(std::move(h));
    std::size_t pos = bounds.size();
    while (pos > 0) {
      --pos;
      if (cur[pos] < bounds[pos]) {
        ++cur[pos];
        break;
      }
      cur[pos] = -bounds[pos];
      if (pos == 0) return out;
    }
    if (bounds.empty()) return out;
  }
}

BigGaussian sum_shifts(const SparseLattice& full, const std::vector<ShiftVector>& shifts, ComplexCompensatedSum& fsum) {
  BigGaussian total;
  for (const auto& h : shifts) {
    const auto m = shifted_moment(full, h);
    if (m.exact) {
      total.re += m.exact_value.re;
      total.im += m.exact_value.im;
    }
    fsum.add(m.value);
  }
  return total;
}

double abs_big(const BigInt& x) { return std::abs(to_double(x)); }

struct Context {
  CurveSpec full;
  SparseLattice full_counts;
  MomentValue lambda;
  MomentValue lambda_zero;
};

Context prepare(const CurveSpec& curve, const CoefficientVector& coeffs, int u, const CountingOptions& options) {
  Context c{full_curve(curve.top), {}, {}, {}};
  c.full_counts = representation_counts(c.full, coeffs, u, options);
  c.lambda_zero = even_moment(c.full_counts);
  c.lambda = curve.is_full() ? c.lambda_zero : even_moment(curve, coeffs, u, options);
  return c;
}

void fill_decomposition(ReductionReport& r, const CurveSpec& curve, const Context& c, int N, int u) {
  const auto shifts = complement_shifts(curve, N, u);
  ComplexCompensatedSum fsum;
  const BigGaussian total = sum_shifts(c.full_counts, shifts, fsum);
  r.shifts_checked = shifts.size();
  if (c.lambda.exact && c.full_counts.is_exact()) {
    r.residual_is_exact = true;
    r.decomposition_residual = abs_big(BigInt(*c.lambda.exact_value - total.re));
    r.decomposition_imag = abs_big(total.im);
  } else {
    r.decomposition_residual = std::abs(c.lambda.value - fsum.value().real());
    r.decomposition_imag = std::abs(fsum.value().imag());
  }

  // Shell just outside the box along each complement axis.
  const auto bounds = shift_box_bounds(curve, N, u);
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    for (int sign : {-1, 1}) {
      ShiftVector h{std::vector<i128>(static_cast<std::size_t>(curve.top), 0)};
      h.h[static_cast<std::size_t>(curve.complement[i] - 1)] = sign * (bounds[i] + 1);
      const auto m = shifted_moment(c.full_counts, h);
      if (m.value != 0.0) ++r.outside_box_nonzero;
    }
  }
}

void fill_dominance(ReductionReport& r, const CurveSpec& curve, const Context& c, int N, int u,
                    const DominanceSampling& sampling) {
  std::vector<ShiftVector> shifts;
  if (sampling.samples == 0) {
    shifts = complement_shifts(curve, N, u);
  } else {
    const auto bounds = shift_box_bounds(curve, N, u);
    std::mt19937_64 rng(sampling.seed);
    for (std::uint64_t s = 0; s < sampling.samples; ++s) {
      ShiftVector h{std::vector<i128>(static_cast<std::size_t>(curve.top), 0)};
      for (std::size_t i = 0; i < bounds.size(); ++i) {
        std::uniform_int_distribution<long long> pick(-static_cast<long long>(bounds[i]),
                                                      static_cast<long long>(bounds[i]));
        h.h[static_cast<std::size_t>(curve.complement[i] - 1)] = pick(rng);
      }
      shifts.push_back(std::move(h));
    }
  }
  const double zero = c.lambda_zero.value;
  double max_ratio = 0.0;
  for (const auto& h : shifts) {
    const auto m = shifted_moment(c.full_counts, h);
    bool violates;
    if (m.exact && c.lambda_zero.exact) {
      const BigInt& z = *c.lambda_zero.exact_value;
      violates = m.exact_value.re * m.exact_value.re + m.exact_value.im * m.exact_value.im > z * z;
    } else {
      violates = zero > 0 ? std::abs(m.value) / zero > 1.0 + kDominanceTolerance : std::abs(m.value) > 0;
    }
    if (violates) ++r.dominance_violations;
    if (zero > 0) max_ratio = std::max(max_ratio, std::abs(m.value) / zero);
  }
  r.dominance_max_ratio = max_ratio;
  r.shifts_checked = std::max<std::uint64_t>(r.shifts_checked, shifts.size());
}

void fill_bound(ReductionReport& r, const CurveSpec& curve, const Context& c, int N, int u) {
  const int s = curve.complement_size();
  const double scale = std::pow(2.0 * u, s) * std::pow(double(N), curve.complement_sum());
  if (c.lambda.exact && c.lambda_zero.exact && s == 0) {
    r.bound_ratio = (*c.lambda.exact_value == *c.lambda_zero.exact_value) ? 1.0 : c.lambda.value / c.lambda_zero.value;
  } else {
    r.bound_ratio = c.lambda.value / (scale * c.lambda_zero.value);
  }
  r.bound_ratio_limit = to_double(complement_shift_count(curve, N, u)) / scale;
  r.crude_constant_suffices = *r.bound_ratio <= 1.0;
}

ReductionReport header(const CurveSpec& curve, const CoefficientVector& coeffs, int u, const Context& c) {
  ReductionReport r;
  r.curve = curve.label();
  r.N = coeffs.N();
  r.u = u;
  r.lambda = c.lambda;
  r.lambda_zero = c.lambda_zero;
  const BigInt count = complement_shift_count(curve, coeffs.N(), u);
  r.shift_count = count > std::numeric_limits<std::uint64_t>::max() ? std::numeric_limits<std::uint64_t>::max()
                                                                     : static_cast<std::uint64_t>(count);
  try {
    r.tight_shift_count = tight_shifts(curve, c.full_counts).size();
  } catch (const Error& e) {
    if (e.code() != ErrorCode::EnumerationTooLarge) throw;
    r.tight_shift_count = std::numeric_limits<std::uint64_t>::max();
  }
  return r;
}

}  // namespace

BigInt complement_shift_count(const CurveSpec& curve, int N, int u) {
  BigInt count = 1;
  for (int l : curve.complement) count *= 4 * BigInt(u) * pow_big(BigInt(N), l) + 1;
  return count;
}

std::vector<ShiftVector> complement_shifts(const CurveSpec& curve, int N, int u, std::uint64_t cap) {
  if (u < 1) throw Error(ErrorCode::InvalidArgument, "depth u must be at least 1");
  return enumerate_box(curve, shift_box_bounds(curve, N, u), cap);
}

std::vector<ShiftVector> tight_shifts(const CurveSpec& curve, const SparseLattice& full_counts, std::uint64_t cap) {
  std::vector<i128> spread;
  for (int l : curve.complement) {
    const int axis = l - 1;
    i128 lo = 0, hi = 0;
    bool first = true;
    for (const auto& e : full_counts.entries()) {
      const i128 v = full_counts.box().component(e.code, axis);
      if (first || v < lo) lo = v;
      if (first || v > hi) hi = v;
      first = false;
    }
    spread.push_back(hi - lo);
  }
  return enumerate_box(curve, spread, cap);
}

bool ReductionReport::passed() const {
  if (decomposition_residual) {
    const double tol = residual_is_exact ? 0.0 : 1e-8 * std::max(1.0, lambda ? lambda->value : 1.0);
    if (*decomposition_residual > tol) return false;
    if (decomposition_imag && *decomposition_imag > (residual_is_exact ? 0.0 : 1e-10 * std::max(1.0, lambda ? lambda->value : 1.0))) return false;
  }
  if (dominance_violations != 0 || outside_box_nonzero != 0) return false;
  if (bound_ratio && bound_ratio_limit && *bound_ratio > *bound_ratio_limit * (1.0 + 1e-12)) return false;
  return true;
}

ReductionReport verify_decomposition(const CurveSpec& curve, const CoefficientVector& coeffs, int u,
                                     const CountingOptions& options) {
  const Context c = prepare(curve, coeffs, u, options);
  ReductionReport r = header(curve, coeffs, u, c);
  fill_decomposition(r, curve, c, coeffs.N(), u);
  return r;
}

ReductionReport verify_dominance(const CurveSpec& curve, const CoefficientVector& coeffs, int u,
                                 const DominanceSampling& sampling, const CountingOptions& options) {
  const Context c = prepare(curve, coeffs, u, options);
  ReductionReport r = header(curve, coeffs, u, c);
  fill_dominance(r, curve, c, coeffs.N(), u, sampling);
  return r;
}

ReductionReport theorem_bound_check(const CurveSpec& curve, const CoefficientVector& coeffs, int u,
                                    const CountingOptions& options) {
  const Context c = prepare(curve, coeffs, u, options);
  ReductionReport r = header(curve, coeffs, u, c);
  fill_bound(r, curve, c, coeffs.N(), u);
  return r;
}

ReductionReport full_reduction(const CurveSpec& curve, const CoefficientVector& coeffs, int u,
                               const CountingOptions& options) {
  const Context c = prepare(curve, coeffs, u, options);
  ReductionReport r = header(curve, coeffs, u, c);
  fill_decomposition(r, curve, c, coeffs.N(), u);
  fill_dominance(r, curve, c, coeffs.N(), u, {});
  fill_bound(r, curve, c, coeffs.N(), u);
  return r;
}

nlohmann::json to_json(const MomentValue& m) {
  nlohmann::json j;
  j["value"] = m.value;
  j["exact"] = m.exact;
  if (m.exact && m.exact_value) j["exact_value"] = m.exact_value->str();
  j["u"] = m.u;
  j["p"] = m.p();
  j["path"] = std::string(path_name(m.path));
  return j;
}

nlohmann::json to_json(const ReductionReport& r) {
  auto opt = [](const auto& o) -> nlohmann::json {
    if (o) return *o;
    return nullptr;
  };
  nlohmann::json j;
  j["curve"] = r.curve;
  j["N"] = r.N;
  j["u"] = r.u;
  j["p"] = 2 * r.u;
  j["lambda"] = r.lambda ? to_json(*r.lambda) : nlohmann::json(nullptr);
  j["lambda_zero"] = r.lambda_zero ? to_json(*r.lambda_zero) : nlohmann::json(nullptr);
  j["shift_count"] = r.shift_count;
  j["tight_shift_count"] = r.tight_shift_count;
  j["shifts_checked"] = r.shifts_checked;
  j["decomposition_residual"] = opt(r.decomposition_residual);
  j["decomposition_imag"] = opt(r.decomposition_imag);
  j["residual_is_exact"] = r.residual_is_exact;
  j["dominance_violations"] = r.dominance_violations;
  j["dominance_max_ratio"] = opt(r.dominance_max_ratio);
  j["bound_ratio"] = opt(r.bound_ratio);
  j["bound_ratio_limit"] = opt(r.bound_ratio_limit);
  j["crude_constant_suffices"] = opt(r.crude_constant_suffices);
  j["outside_box_nonzero"] = r.outside_box_nonzero;
  j["passed"] = r.passed();
  return j;
}

}  // namespace torus
