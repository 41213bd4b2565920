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

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

#include "torusmoments/error.hpp"

namespace torus {

__extension__ using i128 = __int128;
__extension__ using u128 = unsigned __int128;
using BigInt = boost::multiprecision::cpp_int;

std::string to_string(i128 value);
BigInt to_big(i128 value);
double to_double(const BigInt& value);

inline i128 checked_add(i128 a, i128 b) {
  i128 r;
  if (__builtin_add_overflow(a, b, &r)) {
    throw Error(ErrorCode::IntegerOverflow, "128-bit addition overflow");
  }
  return r;
}

inline i128 checked_sub(i128 a, i128 b) {
  i128 r;
  if (__builtin_sub_overflow(a, b, &r)) {
    throw Error(ErrorCode::IntegerOverflow, "128-bit subtraction overflow");
  }
  return r;
}

inline i128 checked_mul(i128 a, i128 b) {
  i128 r;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw Error(ErrorCode::IntegerOverflow, "128-bit multiplication overflow");
  }
  return r;
}

// base^exp, throwing IntegerOverflow instead of wrapping.
i128 checked_pow(i128 base, int exp);

struct GaussianInt {
  i128 re = 0;
  i128 im = 0;

  bool is_zero() const noexcept { return re == 0 && im == 0; }
  GaussianInt conj() const noexcept { return {re, -im}; }

  friend bool operator==(const GaussianInt&, const GaussianInt&) = default;
};

inline GaussianInt operator+(const GaussianInt& a, const GaussianInt& b) {
  return {checked_add(a.re, b.re), checked_add(a.im, b.im)};
}

inline GaussianInt operator*(const GaussianInt& a, const GaussianInt& b) {
  return {checked_sub(checked_mul(a.re, b.re), checked_mul(a.im, b.im)),
          checked_add(checked_mul(a.re, b.im), checked_mul(a.im, b.re))};
}

inline GaussianInt& operator+=(GaussianInt& a, const GaussianInt& b) {
  a = a + b;
  return a;
}

struct BigGaussian {
  BigInt re = 0;
  BigInt im = 0;

  friend bool operator==(const BigGaussian&, const BigGaussian&) = default;
};

BigGaussian multiply(const BigGaussian& a, const BigGaussian& b);
BigGaussian to_big(const GaussianInt& z);

// Exact integer sum that stays in 128-bit arithmetic until a partial sum would
// overflow, then continues in arbitrary precision.
class ExactAccumulator {
 public:
  void add(i128 value);
  void add(const BigInt& value);
  // Adds re^2 + im^2.
  void add_norm(const GaussianInt& z);

  bool promoted() const noexcept { return promoted_; }
  BigInt value() const;

 private:
  i128 small_ = 0;
  BigInt big_ = 0;
  bool promoted_ = false;
};

}  // namespace torus
