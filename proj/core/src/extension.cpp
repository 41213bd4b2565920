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
#include "torusmoments/extension.hpp"

#include <cmath>
#include <numbers>

#include "torusmoments/error.hpp"
#include "torusmoments/summation.hpp"

namespace torus {

double phase_fraction(double alpha, double m) noexcept {
  const double hi = alpha * m;
  const double lo = std::fma(alpha, m, -hi);
  double f = (hi - std::floor(hi)) + lo;
  f -= std::floor(f);
  return f >= 1.0 ? 0.0 : f;
}

std::complex<double> eval_extension(const CurveSpec& curve, const CoefficientVector& coeffs,
                                    const TorusPoint& point) {
  if (point.dim() != curve.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "torus point has dimension " + std::to_string(point.dim()) +
                                                  ", curve has " + std::to_string(curve.dim()));
  }
  const int N = coeffs.N();
  ComplexCompensatedSum sum;
  for (int n = -N; n <= N; ++n) {
    const auto a = coeffs.at(n);
    if (a == 0.0) continue;
    double phase = 0.0;
    for (int j = 0; j < curve.dim(); ++j) {
      phase += phase_fraction(point.coords[j], std::pow(static_cast<double>(n), curve.exponents[j]));
    }
    phase -= std::floor(phase);
    const double angle = 2.0 * std::numbers::pi * phase;
    sum.add(a * std::complex<double>(std::cos(angle), std::sin(angle)));
  }
  return sum.value();
}

double sup_norm_bound(const CoefficientVector& coeffs) {
  return std::sqrt(static_cast<double>(2 * coeffs.N() + 1)) * coeffs.norm2();
}

}  // namespace torus
