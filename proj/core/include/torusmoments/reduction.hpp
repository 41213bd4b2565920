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

namespace torus {

inline constexpr std::uint64_t kDefaultShiftCap = 1'000'000;

// Number of admissible shifts in the box |h_l| <= 2uN^l over the complement
// degrees: prod (4uN^l + 1).
BigInt complement_shift_count(const CurveSpec& curve, int N, int u);

// Every admissible shift, h_j = 0 on the curve degrees, in lexicographic order
// of the complement coordinates. Throws EnumerationTooLarge above cap.
std::vector<ShiftVector> complement_shifts(const CurveSpec& curve, int N, int u,
                                           std::uint64_t cap = kDefaultShiftCap);

// Shifts limited to the actual spread of W_u on the full curve:
// |h_l| <= max v_l - min v_l over the support.
std::vector<ShiftVector> tight_shifts(const CurveSpec& curve, const SparseLattice& full_counts,
                                      std::uint64_t cap = kDefaultShiftCap);

struct ReductionReport {
  std::string curve;
  int N = 0;
  int u = 0;
  std::optional<MomentValue> lambda;
  std::optional<MomentValue> lambda_zero;
  std::uint64_t shift_count = 0;        // |h_l| <= 2uN^l box
  std::uint64_t tight_shift_count = 0;  // spread of W_u
  std::uint64_t shifts_checked = 0;

  // |Lambda - sum_h Lambda(h)|, and the imaginary part of the shift sum.
  std::optional<double> decomposition_residual;
  std::optional<double> decomposition_imag;
  bool residual_is_exact = false;

  std::uint64_t dominance_violations = 0;
  std::optional<double> dominance_max_ratio;

  // Lambda / ((2u)^s N^{sum l} Lambda(0)) and the limit implied by the box size.
  std::optional<double> bound_ratio;
  std::optional<double> bound_ratio_limit;
  std::optional<bool> crude_constant_suffices;

  // Shifts just outside the box that carried nonzero weight.
  std::uint64_t outside_box_nonzero = 0;

  bool passed() const;
};

ReductionReport verify_decomposition(const CurveSpec& curve, const CoefficientVector& coeffs, int u,
                                     const CountingOptions& options = {});

struct DominanceSampling {
  // 0 checks every admissible shift.
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

// Float mode tolerance on |Lambda(h)| / Lambda(0).
inline constexpr double kDominanceTolerance = 1e-10;

ReductionReport verify_dominance(const CurveSpec& curve, const CoefficientVector& coeffs, int u,
                                 const DominanceSampling& sampling = {}, const CountingOptions& options = {});

ReductionReport theorem_bound_check(const CurveSpec& curve, const CoefficientVector& coeffs, int u,
                                    const CountingOptions& options = {});

// All three checks on one instance, sharing the representation counts.
ReductionReport full_reduction(const CurveSpec& curve, const CoefficientVector& coeffs, int u,
                               const CountingOptions& options = {});

nlohmann::json to_json(const MomentValue& m);
nlohmann::json to_json(const ReductionReport& r);

}  // namespace torus
