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
#include <ostream>
#include <span>
#include <vector>

#include "torusmoments/curve.hpp"
#include "torusmoments/exact.hpp"

namespace torus {

// Mixed-radix encoding of the integer box |v_j| <= bounds[j] into a single
// unsigned code. Codes are additive: code(v + w) = code(v) + code(w) - origin()
// whenever v, w and v + w all lie in the box.
class LatticeBox {
 public:
  LatticeBox() = default;
  explicit LatticeBox(std::vector<i128> bounds);

  int dim() const noexcept { return static_cast<int>(bounds_.size()); }
  const std::vector<i128>& bounds() const noexcept { return bounds_; }
  u128 volume() const noexcept { return volume_; }
  u128 origin() const noexcept { return origin_; }

  bool contains(std::span<const i128> v) const noexcept;
  u128 encode(std::span<const i128> v) const;
  LatticePoint decode(u128 code) const;
  i128 component(u128 code, int axis) const noexcept;

 private:
  std::vector<i128> bounds_;
  std::vector<u128> strides_;
  u128 volume_ = 1;
  u128 origin_ = 0;
};

struct LatticeEntry {
  u128 code = 0;
  GaussianInt exact;
  std::complex<double> value;
};

// Weights W(v) on integer vectors, sorted by code with no zero entries. In
// exact mode both the Gaussian-integer weight and its floating image are set.
class SparseLattice {
 public:
  SparseLattice() = default;
  SparseLattice(LatticeBox box, int depth, bool exact, std::vector<LatticeEntry> entries);

  int dim() const noexcept { return box_.dim(); }
  int depth() const noexcept { return depth_; }
  bool is_exact() const noexcept { return exact_; }
  std::size_t size() const noexcept { return entries_.size(); }
  const LatticeBox& box() const noexcept { return box_; }
  const std::vector<LatticeEntry>& entries() const noexcept { return entries_; }

  LatticePoint point(std::size_t i) const { return box_.decode(entries_[i].code); }
  // nullptr when v is outside the box or carries zero weight.
  const LatticeEntry* find(std::span<const i128> v) const;
  const LatticeEntry* find_code(u128 code) const;

  // One JSON object per line: {"v": [...], "re": ..., "im": ...}.
  void dump_json_lines(std::ostream& out) const;

 private:
  LatticeBox box_;
  int depth_ = 0;
  bool exact_ = false;
  std::vector<LatticeEntry> entries_;
};

}  // namespace torus
