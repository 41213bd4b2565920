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
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "torusmoments/exact.hpp"

namespace torus {

// Weights a_n for |n| <= N stored at index n + N.
class CoefficientVector {
 public:
  CoefficientVector() = default;
  explicit CoefficientVector(std::vector<std::complex<double>> values);
  explicit CoefficientVector(std::vector<GaussianInt> exact_values);

  int N() const noexcept { return N_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::complex<double> at(int n) const { return values_.at(static_cast<std::size_t>(n + N_)); }
  const std::vector<std::complex<double>>& values() const noexcept { return values_; }

  // Exact coefficients are Gaussian integers and enable exact counting.
  bool is_exact() const noexcept { return exact_.has_value(); }
  const std::vector<GaussianInt>& exact_values() const;

  double norm2() const;
  CoefficientVector scaled(std::complex<double> c) const;
  CoefficientVector normalized() const;

 private:
  int N_ = 0;
  std::vector<std::complex<double>> values_;
  std::optional<std::vector<GaussianInt>> exact_;
};

namespace coefficients {

CoefficientVector ones(int N);
// a_n = (-1)^n.
CoefficientVector zero_mean(int N);
// Unit-modulus entries with seeded uniform phases.
CoefficientVector random_unit(int N, std::uint64_t seed);
// Gaussian integers with real and imaginary parts uniform in [-radius, radius].
CoefficientVector random_gaussian(int N, std::uint64_t seed, int radius = 3);
CoefficientVector spike(int N, int at_n, std::complex<double> value = 1.0);
CoefficientVector zeros(int N);

// Resolves "ones", "zero-mean", "random-unit", "random-gaussian" or
// "file:<path>". A file must hold exactly 2N+1 entries.
CoefficientVector from_name(std::string_view name, int N, std::uint64_t seed);
bool is_known_generator(std::string_view name);

}  // namespace coefficients

// {"N": int, "values": [[re, im], ...]} ordered n = -N..N. Entries that are
// all integral load as exact coefficients.
CoefficientVector read_coefficients(const std::filesystem::path& path);
CoefficientVector parse_coefficients_json(std::string_view text);
std::string coefficients_to_json(const CoefficientVector& coeffs);
void write_coefficients(const std::filesystem::path& path, const CoefficientVector& coeffs);

}  // namespace torus
