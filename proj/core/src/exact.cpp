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
#include "torusmoments/exact.hpp"

#include <algorithm>

namespace torus {

std::string to_string(i128 value) {
  if (value == 0) return "0";
  const bool negative = value < 0;
  // Work with the magnitude in unsigned arithmetic so that INT128_MIN is fine.
  u128 mag = negative ? u128(0) - static_cast<u128>(value) : static_cast<u128>(value);
  std::string out;
  while (mag != 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(mag % 10)));
    mag /= 10;
  }
  if (negative) out.push_back('-');
  std::reverse(out.begin(), out.end());
  return out;
}

BigInt to_big(i128 value) {
  const bool negative = value < 0;
  u128 mag = negative ? u128(0) - static_cast<u128>(value) : static_cast<u128>(value);
  BigInt hi = static_cast<std::uint64_t>(mag >> 64);
  BigInt r = (hi << 64) + BigInt(static_cast<std::uint64_t>(mag));
  return negative ? BigInt(-r) : r;
}

double to_double(const BigInt& value) { return value.convert_to<double>(); }

i128 checked_pow(i128 base, int exp) {
  if (exp < 0) throw Error(ErrorCode::InvalidArgument, "negative exponent");
  i128 r = 1;
  for (int i = 0; i < exp; ++i) r = checked_mul(r, base);
  return r;
}

BigGaussian multiply(const BigGaussian& a, const BigGaussian& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

BigGaussian to_big(const GaussianInt& z) { return {to_big(z.re), to_big(z.im)}; }

void ExactAccumulator::add(i128 value) {
  if (!promoted_) {
    i128 r;
    if (!__builtin_add_overflow(small_, value, &r)) {
      small_ = r;
      return;
    }
    big_ = to_big(small_);
    promoted_ = true;
  }
  big_ += to_big(value);
}

void ExactAccumulator::add(const BigInt& value) {
  if (!promoted_) {
    big_ = to_big(small_);
    promoted_ = true;
  }
  big_ += value;
}

void ExactAccumulator::add_norm(const GaussianInt& z) {
  i128 a, b, s;
  if (!__builtin_mul_overflow(z.re, z.re, &a) && !__builtin_mul_overflow(z.im, z.im, &b) &&
      !__builtin_add_overflow(a, b, &s)) {
    add(s);
    return;
  }
  const BigInt re = to_big(z.re);
  const BigInt im = to_big(z.im);
  add(BigInt(re * re + im * im));
}

BigInt ExactAccumulator::value() const { return promoted_ ? big_ : to_big(small_); }

}  // namespace torus
