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

#include <complex>

#include "torusmoments/coefficients.hpp"
#include "torusmoments/curve.hpp"

namespace torus {

// Fractional part of alpha * m in [0, 1), computed with an error-free product
// so that large frequencies m do not destroy the phase.
double phase_fraction(double alpha, double m) noexcept;

// F_a(alpha) = sum_{|n|<=N} a_n e^{2 pi i alpha . (n^{k_1}, ..., n^{k_d})}.
std::complex<double> eval_extension(const CurveSpec& curve, const CoefficientVector& coeffs,
                                    const TorusPoint& point);

// sqrt(2N+1) * ||a||_2, an upper bound for |F_a| everywhere on the torus.
double sup_norm_bound(const CoefficientVector& coeffs);

}  // namespace torus
