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
#include "torusmoments/coefficients.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "torusmoments/error.hpp"

namespace torus {

namespace {

int half_length(std::size_t size) {
  if (size == 0 || size % 2 == 0) {
    throw Error(ErrorCode::InvalidArgument, "coefficient vector must have odd length 2N+1");
  }
  return static_cast<int>((size - 1) / 2);
}

}  // namespace

CoefficientVector::CoefficientVector(std::vector<std::complex<double>> values)
    : N_(half_length(values.size())), values_(std::move(values)) {}

CoefficientVector::CoefficientVector(std::vector<GaussianInt> exact_values)
    : N_(half_length(exact_values.size())) {
  values_.reserve(exact_values.size());
  for (const auto& z : exact_values) {
    values_.emplace_back(static_cast<double>(z.re), static_cast<double>(z.im));
  }
  exact_ = std::move(exact_values);
}

const std::vector<GaussianInt>& CoefficientVector::exact_values() const {
  if (!exact_) throw Error(ErrorCode::InvalidArgument, "coefficients are not exact");
  return *exact_;
}

double CoefficientVector::norm2() const {
  double s = 0.0;
  for (const auto& v : values_) s += std::norm(v);
  return std::sqrt(s);
}

CoefficientVector CoefficientVector::scaled(std::complex<double> c) const {
  if (exact_ && c.real() == std::round(c.real()) && c.imag() == std::round(c.imag())) {
    const GaussianInt g{static_cast<i128>(c.real()), static_cast<i128>(c.imag())};
    std::vector<GaussianInt> out;
    out.reserve(exact_->size());
    for (const auto& z : *exact_) out.push_back(z * g);
    return CoefficientVector(std::move(out));
  }
  std::vector<std::complex<double>> out(values_);
  for (auto& v : out) v *= c;
  return CoefficientVector(std::move(out));
}

CoefficientVector CoefficientVector::normalized() const {
  const double n = norm2();
  if (n == 0.0) throw Error(ErrorCode::InvalidArgument, "cannot normalize a zero vector");
  return scaled(1.0 / n);
}

namespace coefficients {

CoefficientVector ones(int N) {
  return CoefficientVector(std::vector<GaussianInt>(static_cast<std::size_t>(2 * N + 1), GaussianInt{1, 0}));
}

CoefficientVector zeros(int N) {
  return CoefficientVector(std::vector<GaussianInt>(static_cast<std::size_t>(2 * N + 1), GaussianInt{0, 0}));
}

CoefficientVector zero_mean(int N) {
  std::vector<GaussianInt> v;
  for (int n = -N; n <= N; ++n) v.push_back({(n % 2 == 0) ? 1 : -1, 0});
  return CoefficientVector(std::move(v));
}

CoefficientVector random_unit(int N, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> phase(0.0, 1.0);
  std::vector<std::complex<double>> v;
  for (int n = -N; n <= N; ++n) v.push_back(std::polar(1.0, 2.0 * std::numbers::pi * phase(rng)));
  return CoefficientVector(std::move(v));
}

CoefficientVector random_gaussian(int N, std::uint64_t seed, int radius) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> part(-radius, radius);
  std::vector<GaussianInt> v;
  for (int n = -N; n <= N; ++n) {
    const int re = part(rng);
    const int im = part(rng);
    v.push_back({re, im});
  }
  return CoefficientVector(std::move(v));
}

CoefficientVector spike(int N, int at_n, std::complex<double> value) {
  if (at_n < -N || at_n > N) throw Error(ErrorCode::InvalidArgument, "spike index out of range");
  std::vector<std::complex<double>> v(static_cast<std::size_t>(2 * N + 1));
  v[static_cast<std::size_t>(at_n + N)] = value;
  if (value.real() == std::round(value.real()) && value.imag() == std::round(value.imag())) {
    std::vector<GaussianInt> e(v.size());
    e[static_cast<std::size_t>(at_n + N)] = {static_cast<i128>(value.real()), static_cast<i128>(value.imag())};
    return CoefficientVector(std::move(e));
  }
  return CoefficientVector(std::move(v));
}

bool is_known_generator(std::string_view name) {
  return name == "ones" || name == "zero-mean" || name == "random-unit" ||
         name == "random-gaussian" || name.starts_with("file:");
}

CoefficientVector from_name(std::string_view name, int N, std::uint64_t seed) {
  if (N < 0) throw Error(ErrorCode::ConfigInvalid, "N must be nonnegative");
  if (name == "ones") return ones(N);
  if (name == "zero-mean") return zero_mean(N);
  if (name == "random-unit") return random_unit(N, seed);
  if (name == "random-gaussian") return random_gaussian(N, seed);
  if (name.starts_with("file:")) {
    auto c = read_coefficients(std::filesystem::path(std::string(name.substr(5))));
    if (c.N() != N) {
      throw Error(ErrorCode::ConfigInvalid, "coefficient file has N=" + std::to_string(c.N()) +
                                                ", expected N=" + std::to_string(N));
    }
    return c;
  }
  throw Error(ErrorCode::ConfigInvalid, "unknown coefficient generator '" + std::string(name) + "'");
}

}  // namespace coefficients

CoefficientVector parse_coefficients_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ConfigInvalid, std::string("coefficient JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("N") || !j.contains("values") || !j["values"].is_array()) {
    throw Error(ErrorCode::ConfigInvalid, "coefficient JSON needs fields N and values");
  }
  const int N = j["N"].get<int>();
  const auto& vals = j["values"];
  if (N < 0 || vals.size() != static_cast<std::size_t>(2 * N + 1)) {
    throw Error(ErrorCode::ConfigInvalid, "coefficient JSON must hold 2N+1 values");
  }
  std::vector<std::complex<double>> v;
  bool integral = true;
  for (const auto& e : vals) {
    if (!e.is_array() || e.size() != 2) throw Error(ErrorCode::ConfigInvalid, "each value must be [re, im]");
    const double re = e[0].get<double>();
    const double im = e[1].get<double>();
    integral = integral && re == std::round(re) && im == std::round(im) && std::abs(re) < 0x1p52 &&
               std::abs(im) < 0x1p52;
    v.emplace_back(re, im);
  }
  if (integral) {
    std::vector<GaussianInt> g;
    for (const auto& z : v) g.push_back({static_cast<i128>(z.real()), static_cast<i128>(z.imag())});
    return CoefficientVector(std::move(g));
  }
  return CoefficientVector(std::move(v));
}

CoefficientVector read_coefficients(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_coefficients_json(ss.str());
}

std::string coefficients_to_json(const CoefficientVector& coeffs) {
  nlohmann::json j;
  j["N"] = coeffs.N();
  auto& vals = j["values"] = nlohmann::json::array();
  for (const auto& v : coeffs.values()) vals.push_back({v.real(), v.imag()});
  return j.dump();
}

void write_coefficients(const std::filesystem::path& path, const CoefficientVector& coeffs) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoFailure, "cannot write " + path.string());
  out << coefficients_to_json(coeffs) << '\n';
  if (!out) throw Error(ErrorCode::IoFailure, "write failed for " + path.string());
}

}  // namespace torus
