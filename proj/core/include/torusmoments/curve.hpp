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

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "torusmoments/exact.hpp"

namespace torus {

// An integer curve n -> (n^{k_1}, ..., n^{k_d}) with 1 <= k_1 < ... < k_d = k.
struct CurveSpec {
  std::vector<int> exponents;
  int top = 0;          // k
  int weight_sum = 0;   // sum of the exponents
  std::vector<int> complement;  // {1..k} minus the exponents, sorted
  int critical_p = 0;   // k(k+1)

  int dim() const noexcept { return static_cast<int>(exponents.size()); }
  int complement_size() const noexcept { return static_cast<int>(complement.size()); }
  int complement_sum() const noexcept;
  bool contains(int degree) const noexcept;
  // True for the full moment curve (1, 2, ..., k).
  bool is_full() const noexcept { return complement.empty() && exponents.front() == 1; }

  // "1,3"
  std::string label() const;

  friend bool operator==(const CurveSpec& a, const CurveSpec& b) { return a.exponents == b.exponents; }
};

CurveSpec make_curve(std::span<const int> exponents);
CurveSpec make_curve(std::initializer_list<int> exponents);
// Parses a comma separated list such as "1,3".
CurveSpec parse_curve(std::string_view text);
// The curve (1, 2, ..., k).
CurveSpec full_curve(int k);

struct TorusPoint {
  std::vector<double> coords;

  TorusPoint() = default;
  // Coordinates are reduced to [0, 1).
  explicit TorusPoint(std::vector<double> raw);

  int dim() const noexcept { return static_cast<int>(coords.size()); }
};

using LatticePoint = std::vector<i128>;

// (n^{k_1}, ..., n^{k_d}) for n = -N..N, in coefficient index order. Throws
// IntegerOverflow when depth * N^k does not fit comfortably in 128 bits.
std::vector<LatticePoint> frequency_map(const CurveSpec& curve, int N, int depth = 1);

// Largest |component| allowed per axis for a depth-fold sum: depth * N^{k_j}.
std::vector<i128> depth_bounds(const CurveSpec& curve, int N, int depth);

}  // namespace torus
