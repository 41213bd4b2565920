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
#include "torusmoments/curve.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>

#include "torusmoments/error.hpp"

namespace torus {

namespace {

// Keeps u*N^k, and sums of two such values, well inside the signed range.
constexpr int kMaxComponentBits = 120;

}  // namespace

int CurveSpec::complement_sum() const noexcept {
  return std::accumulate(complement.begin(), complement.end(), 0);
}

bool CurveSpec::contains(int degree) const noexcept {
  return std::find(exponents.begin(), exponents.end(), degree) != exponents.end();
}

std::string CurveSpec::label() const {
  std::string out;
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(exponents[i]);
  }
  return out;
}

CurveSpec make_curve(std::span<const int> exponents) {
  if (exponents.empty()) throw Error(ErrorCode::InvalidArgument, "curve needs at least one exponent");
  for (int e : exponents) {
    if (e < 1) throw Error(ErrorCode::NonPositiveExponent, "exponent " + std::to_string(e) + " < 1");
  }
  for (std::size_t i = 1; i < exponents.size(); ++i) {
    if (exponents[i] <= exponents[i - 1]) {
      throw Error(ErrorCode::NonIncreasingExponents, "exponents must be strictly increasing");
    }
  }
  CurveSpec c;
  c.exponents.assign(exponents.begin(), exponents.end());
  c.top = c.exponents.back();
  if (c.top > 64) throw Error(ErrorCode::IntegerOverflow, "top degree above 64 is not supported");
  c.weight_sum = std::accumulate(c.exponents.begin(), c.exponents.end(), 0);
  for (int j = 1; j <= c.top; ++j) {
    if (!c.contains(j)) c.complement.push_back(j);
  }
  c.critical_p = c.top * (c.top + 1);
  if (c.weight_sum + c.complement_sum() != c.top * (c.top + 1) / 2) {
    throw Error(ErrorCode::InvalidArgument, "complement identity violated");
  }
  return c;
}

CurveSpec make_curve(std::initializer_list<int> exponents) {
  return make_curve(std::span<const int>(exponents.begin(), exponents.size()));
}

CurveSpec parse_curve(std::string_view text) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    std::string_view tok = text.substr(pos, comma - pos);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    int v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size()) {
      throw Error(ErrorCode::ConfigInvalid, "cannot parse curve '" + std::string(text) + "'");
    }
    out.push_back(v);
    pos = comma + 1;
  }
  return make_curve(out);
}

CurveSpec full_curve(int k) {
  std::vector<int> e(static_cast<std::size_t>(k));
  std::iota(e.begin(), e.end(), 1);
  return make_curve(e);
}

TorusPoint::TorusPoint(std::vector<double> raw) : coords(std::move(raw)) {
  for (double& x : coords) {
    x -= std::floor(x);
    if (x >= 1.0) x = 0.0;
  }
}

std::vector<i128> depth_bounds(const CurveSpec& curve, int N, int depth) {
  if (N < 0) throw Error(ErrorCode::InvalidArgument, "N must be nonnegative");
  if (depth < 1) throw Error(ErrorCode::InvalidArgument, "depth must be positive");
  std::vector<i128> bounds;
  bounds.reserve(curve.exponents.size());
  const i128 limit = i128(1) << kMaxComponentBits;
  for (int e : curve.exponents) {
    const i128 b = checked_mul(checked_pow(N, e), depth);
    if (b > limit) {
      throw Error(ErrorCode::IntegerOverflow,
                  "depth * N^" + std::to_string(e) + " exceeds the 128-bit key range");
    }
    bounds.push_back(b);
  }
  return bounds;
}

std::vector<LatticePoint> frequency_map(const CurveSpec& curve, int N, int depth) {
  depth_bounds(curve, N, depth);
  std::vector<LatticePoint> out;
  out.reserve(static_cast<std::size_t>(2 * N + 1));
  for (int n = -N; n <= N; ++n) {
    LatticePoint v;
    v.reserve(curve.exponents.size());
    for (int e : curve.exponents) v.push_back(checked_pow(n, e));
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace torus
