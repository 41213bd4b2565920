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
#include <doctest.h>

#include <cmath>

#include "torusmoments/coefficients.hpp"
#include "torusmoments/extension.hpp"
#include "torusmoments/sharpness.hpp"

using namespace torus;

TEST_CASE("major arc box") {
  const auto box = major_arc_box(make_curve({1, 3}), 2);
  CHECK(box.half_widths[0] == 1.0 / 32);
  CHECK(box.half_widths[1] == 1.0 / 128);
  // Full widths 1/16 and 1/64.
  CHECK(box.measure == 1.0 / 1024);
  const auto b3 = major_arc_box(make_curve({1, 2, 3}), 2);
  CHECK(b3.half_widths[0] == 1.0 / 48);
  CHECK(b3.half_widths[2] == 1.0 / 192);
}

TEST_CASE("diagonal lower bound") {
  CHECK(diagonal_lower_bound(2, 2) == 25);
  CHECK(diagonal_lower_bound(1, 1) == 3);
  CHECK(diagonal_lower_bound(3, 2) == 49);
  CHECK(diagonal_lower_bound(10, 30) == BigInt("4640650289117164100520051333566036654601"));
}

TEST_CASE("real part on the major arc") {
  const auto c13 = make_curve({1, 3});
  const double floor = kCosineConstant * 5;
  CHECK(eval_extension(c13, coefficients::ones(2), TorusPoint({1.0 / 32, 1.0 / 128})).real() >= floor);
  CHECK(eval_extension(c13, coefficients::ones(2), TorusPoint({0.0, 0.0})).real() == doctest::Approx(5.0));
  const auto m = major_arc_min(make_curve({1, 2, 3}), 2, 1000, 0);
  CHECK(m.points == 1008);
  CHECK(m.min_real >= m.floor);
  CHECK(m.floor == doctest::Approx(5 * std::sqrt(2.0) / 2));
  for (const auto& e : std::vector<std::vector<int>>{{1, 2}, {1, 3}, {2, 3}, {1, 4}, {1, 2, 3}}) {
    for (int N : {1, 4, 9}) {
      const auto mm = major_arc_min(make_curve(e), N, 500, 7);
      CHECK(mm.min_real >= mm.floor);
    }
  }
}

TEST_CASE("major arc moment bound") {
  const double b = major_arc_moment_bound(make_curve({1, 3}), 2, 4);
  CHECK(b == doctest::Approx(156.25 / 1024).epsilon(1e-12));
  CHECK(b <= 61.0);
  const double b8 = major_arc_moment_bound(make_curve({1, 3}), 8, 12);
  const double b16 = major_arc_moment_bound(make_curve({1, 3}), 16, 12);
  CHECK(b16 / b8 == doctest::Approx(std::pow(33.0 / 17.0, 12) / 16).epsilon(1e-12));
  // Doubling N multiplies the bound by about 2^{p-K} = 256 once N is large.
  const double big = major_arc_moment_bound(make_curve({1, 3}), 2000, 12) /
                     major_arc_moment_bound(make_curve({1, 3}), 1000, 12);
  CHECK(big == doctest::Approx(256.0).epsilon(0.01));
}

TEST_CASE("k lower bound") {
  const auto k = k_lower_bound(make_curve({1, 3}), 2, 4);
  CHECK(k.value == doctest::Approx(std::pow(61.0, 0.25) / std::sqrt(5.0)).epsilon(1e-14));
  CHECK(k.value == doctest::Approx(1.2498).epsilon(1e-4));
  CHECK(k.sqrt_n_normalized == doctest::Approx(std::pow(61.0, 0.25) / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(k_lower_bound(make_curve({1, 3}), 1, 2).value == doctest::Approx(1.0).epsilon(1e-15));
  const auto k8 = k_lower_bound(make_curve({1, 3}), 8, 12);
  CHECK(k8.value > 1.0);
  CHECK(k8.lambda.exact);
}

TEST_CASE("sharpness report holds on every small instance") {
  for (const auto& e : std::vector<std::vector<int>>{{1, 2}, {1, 3}, {2, 3}, {1, 2, 3}, {1, 4}}) {
    for (int N = 1; N <= 4; ++N) {
      for (int p : {2, 4, 6}) {
        const auto r = sharpness_report(make_curve(e), N, p, 200, 1);
        CAPTURE(r.curve);
        CAPTURE(N);
        CAPTURE(p);
        CHECK(r.passed());
        CHECK(r.lambda.value >= to_double(r.diagonal));
        CHECK(r.lambda.value >= r.major_arc_bound);
      }
    }
  }
  const auto r = sharpness_report(make_curve({1, 3}), 8, 12, 100, 0);
  CHECK(r.passed());
  CHECK(r.theorem_exponent == doctest::Approx(1.0 / 6));
  const auto j = to_json(r);
  CHECK(j["diagonal_lower_bound"] == "24137569");
}
