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
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "torusmoments/coefficients.hpp"
#include "torusmoments/curve.hpp"
#include "torusmoments/lattice.hpp"

namespace torus {

struct CountingOptions {
  double mem_budget_mb = 1024.0;
  // Use the dense box when its volume is at most this multiple of the
  // predicted sparse support.
  double dense_threshold = 4.0;
};

enum class MomentPath { sparse, dense, fft, brute_force };
std::string_view path_name(MomentPath path) noexcept;

// An even moment Lambda = integral of |F|^{2u}.
struct MomentValue {
  double value = 0.0;
  bool exact = false;
  std::optional<BigInt> exact_value;
  int u = 0;
  MomentPath path = MomentPath::sparse;

  int p() const noexcept { return 2 * u; }
  // Decimal digits of the exact value, or the shortest round-trip float.
  std::string text() const;
};

struct CountingPlan {
  double box_volume = 0.0;
  double support_estimate = 0.0;
  double pair_work = 0.0;   // products formed by the sparse path
  bool dense = false;
  double bytes = 0.0;
};

CountingPlan plan_counts(const CurveSpec& curve, int N, int u, const CountingOptions& options = {});

// W_u(v) = sum over u-tuples with sum_i n_i^{k_j} = v_j of a_{n_1} ... a_{n_u}.
SparseLattice representation_counts(const CurveSpec& curve, const CoefficientVector& coeffs, int u,
                                    const CountingOptions& options = {});

// Lambda = sum_v |W_u(v)|^2.
MomentValue even_moment(const CurveSpec& curve, const CoefficientVector& coeffs, int u,
                        const CountingOptions& options = {});
MomentValue even_moment(const SparseLattice& counts);

inline constexpr double kOracleTupleLimit = 1e8;

// Enumerates every 2u-tuple (n_1..n_u, m_1..m_u) directly.
MomentValue brute_force_moment(const CurveSpec& curve, const CoefficientVector& coeffs, int u);

struct ShiftVector {
  std::vector<i128> h;  // h_1..h_k stored at index j-1

  int k() const noexcept { return static_cast<int>(h.size()); }
  bool is_zero() const noexcept;
  ShiftVector negated() const;
  std::string label() const;
};

// Admissible shifts have length k and vanish at every curve exponent.
void check_admissible(const CurveSpec& curve, const ShiftVector& shift);

struct ShiftedMoment {
  std::complex<double> value;
  bool exact = false;
  BigGaussian exact_value;
};

// Lambda(h) on the full curve (1..k): sum_v W(v + h) conj(W(v)).
ShiftedMoment shifted_moment(const CurveSpec& curve, const CoefficientVector& coeffs, int u,
                             const ShiftVector& shift, const CountingOptions& options = {});
// Same, reusing representation counts of the full curve. No admissibility
// check beyond the length of h.
ShiftedMoment shifted_moment(const SparseLattice& full_counts, const ShiftVector& shift);

}  // namespace torus
