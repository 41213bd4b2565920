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
#include "torusmoments/lattice.hpp"

#include <algorithm>

#include "torusmoments/error.hpp"

namespace torus {

LatticeBox::LatticeBox(std::vector<i128> bounds) : bounds_(std::move(bounds)) {
  strides_.reserve(bounds_.size());
  constexpr u128 kMaxVolume = u128(1) << 127;
  volume_ = 1;
  origin_ = 0;
  for (i128 b : bounds_) {
    if (b < 0) throw Error(ErrorCode::InvalidArgument, "negative lattice bound");
    const u128 radix = static_cast<u128>(b) * 2 + 1;
    strides_.push_back(volume_);
    u128 next;
    if (__builtin_mul_overflow(volume_, radix, &next) || next > kMaxVolume) {
      throw Error(ErrorCode::IntegerOverflow, "lattice box volume exceeds 2^127");
    }
    origin_ += static_cast<u128>(b) * volume_;
    volume_ = next;
  }
}

bool LatticeBox::contains(std::span<const i128> v) const noexcept {
  if (v.size() != bounds_.size()) return false;
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (v[j] > bounds_[j] || v[j] < -bounds_[j]) return false;
  }
  return true;
}

u128 LatticeBox::encode(std::span<const i128> v) const {
  if (!contains(v)) throw Error(ErrorCode::InvalidArgument, "lattice point outside its box");
  u128 code = 0;
  for (std::size_t j = 0; j < v.size(); ++j) {
    code += static_cast<u128>(v[j] + bounds_[j]) * strides_[j];
  }
  return code;
}

i128 LatticeBox::component(u128 code, int axis) const noexcept {
  const auto j = static_cast<std::size_t>(axis);
  const u128 radix = static_cast<u128>(bounds_[j]) * 2 + 1;
  return static_cast<i128>((code / strides_[j]) % radix) - bounds_[j];
}

LatticePoint LatticeBox::decode(u128 code) const {
  LatticePoint v(bounds_.size());
  for (int j = 0; j < dim(); ++j) v[static_cast<std::size_t>(j)] = component(code, j);
  return v;
}

SparseLattice::SparseLattice(LatticeBox box, int depth, bool exact, std::vector<LatticeEntry> entries)
    : box_(std::move(box)), depth_(depth), exact_(exact), entries_(std::move(entries)) {}

const LatticeEntry* SparseLattice::find_code(u128 code) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), code,
                             [](const LatticeEntry& e, u128 c) { return e.code < c; });
  if (it == entries_.end() || it->code != code) return nullptr;
  return &*it;
}

const LatticeEntry* SparseLattice::find(std::span<const i128> v) const {
  if (!box_.contains(v)) return nullptr;
  return find_code(box_.encode(v));
}

void SparseLattice::dump_json_lines(std::ostream& out) const {
  const auto precision = out.precision(17);
  for (const auto& e : entries_) {
    out << "{\"v\": [";
    const auto v = box_.decode(e.code);
    for (std::size_t j = 0; j < v.size(); ++j) out << (j ? ", " : "") << to_string(v[j]);
    out << "], \"re\": ";
    if (exact_) {
      out << to_string(e.exact.re) << ", \"im\": " << to_string(e.exact.im);
    } else {
      out << e.value.real() << ", \"im\": " << e.value.imag();
    }
    out << "}\n";
  }
  out.precision(precision);
}

}  // namespace torus
