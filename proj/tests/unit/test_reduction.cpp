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

#include "oracles.hpp"
#include "torusmoments/coefficients.hpp"
#include "torusmoments/error.hpp"
#include "torusmoments/reduction.hpp"

using namespace torus;

TEST_CASE("complement shift enumeration") {
  const auto c13 = make_curve({1, 3});
  CHECK(complement_shift_count(c13, 1, 1) == 5);
  CHECK(complement_shifts(c13, 1, 1).size() == 5);
  CHECK(complement_shift_count(c13, 2, 2) == 33);
  const auto s = complement_shifts(c13, 2, 2);
  REQUIRE(s.size() == 33);
  CHECK(s.front().h == std::vector<i128>{0, -16, 0});
  CHECK(s.back().h == std::vector<i128>{0, 16, 0});
  for (const auto& h : s) CHECK_NOTHROW(check_admissible(c13, h));

  const auto full = complement_shifts(make_curve({1, 2, 3}), 3, 2);
  REQUIRE(full.size() == 1);
  CHECK(full[0].is_zero());

  // (2,3): shifts in degree 1 only, |h_1| <= 2u N.
  CHECK(complement_shift_count(make_curve({2, 3}), 2, 2) == 17);
  // (1,4): degrees 2 and 3.
  CHECK(complement_shift_count(make_curve({1, 4}), 2, 2) == BigInt(33) * 65);
  CHECK_THROWS_WITH_AS(complement_shifts(make_curve({1, 4}), 2, 2, 100), doctest::Contains("EnumerationTooLarge"),
                       Error);
}

TEST_CASE("decomposition identity, frozen instances") {
  const auto r1 = verify_decomposition(make_curve({1, 3}), coefficients::ones(1), 1);
  CHECK(r1.lambda->exact_value == BigInt(3));
  CHECK(r1.decomposition_residual == 0.0);
  CHECK(r1.residual_is_exact);

  const auto r2 = verify_decomposition(make_curve({1, 3}), coefficients::ones(2), 2);
  CHECK(r2.lambda->exact_value == BigInt(61));
  CHECK(r2.shift_count == 33);
  CHECK(r2.decomposition_residual == 0.0);
  CHECK(r2.outside_box_nonzero == 0);

  const auto r3 = verify_decomposition(make_curve({1, 2, 3}), coefficients::ones(2), 2);
  CHECK(r3.lambda->exact_value == r3.lambda_zero->exact_value);
  CHECK(r3.decomposition_residual == 0.0);
}

TEST_CASE("decomposition identity against the shifted-system oracle") {
  // Lambda for (1,3) is the sum over h_2 of the solution counts of the full
  // system with n^2 sums differing by h_2.
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const auto a = coefficients::random_gaussian(2, seed);
    std::vector<oracle::Gauss> ga;
    for (const auto& z : a.exact_values()) ga.push_back({static_cast<long long>(z.re), static_cast<long long>(z.im)});
    std::complex<long double> total = 0;
    for (int h = -16; h <= 16; ++h) total += oracle::shifted({1, 3}, 2, ga, 2, {{2, h}});
    const auto r = verify_decomposition(make_curve({1, 3}), a, 2);
    CHECK(r.lambda->exact_value == BigInt(static_cast<long long>(total.real())));
    CHECK(total.imag() == 0);
    CHECK(r.decomposition_residual == 0.0);
    CHECK(r.passed());
  }
}

TEST_CASE("dominance over every admissible shift") {
  const auto r = verify_dominance(make_curve({1, 3}), coefficients::ones(2), 2);
  CHECK(r.dominance_violations == 0);
  CHECK(r.shifts_checked == 33);
  CHECK(r.dominance_max_ratio == doctest::Approx(1.0));
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto a = coefficients::random_unit(2, seed);
    const auto rr = verify_dominance(make_curve({1, 3}), a, 2);
    CHECK(rr.dominance_violations == 0);
    CHECK(*rr.dominance_max_ratio <= 1.0 + kDominanceTolerance);
  }
  DominanceSampling sampling;
  sampling.samples = 10;
  sampling.seed = 4;
  const auto sampled = verify_dominance(make_curve({1, 4}), coefficients::ones(2), 2, sampling);
  CHECK(sampled.dominance_violations == 0);
}

TEST_CASE("theorem bound ratio") {
  const auto full = theorem_bound_check(make_curve({1, 2, 3}), coefficients::ones(2), 2);
  CHECK(full.bound_ratio == 1.0);

  const auto r13 = theorem_bound_check(make_curve({1, 3}), coefficients::ones(2), 2);
  // Lambda = 61, Lambda(0) = 45 on the full curve, (2u)^s N^{sum l} = 4 * 4.
  CHECK(r13.lambda_zero->exact_value == BigInt(45));
  CHECK(*r13.bound_ratio == doctest::Approx(61.0 / (16.0 * 45.0)));
  CHECK(r13.crude_constant_suffices == true);

  const auto r14 = theorem_bound_check(make_curve({1, 4}), coefficients::ones(2), 2);
  CHECK(r14.bound_ratio.has_value());
  CHECK(r14.crude_constant_suffices.has_value());
}

TEST_CASE("full reduction report serializes every field") {
  const auto r = full_reduction(make_curve({1, 3}), coefficients::ones(2), 2);
  CHECK(r.passed());
  const auto j = to_json(r);
  for (const char* key : {"curve", "N", "u", "lambda", "lambda_zero", "shift_count", "tight_shift_count",
                          "shifts_checked", "decomposition_residual", "dominance_violations", "dominance_max_ratio",
                          "bound_ratio", "bound_ratio_limit", "crude_constant_suffices", "outside_box_nonzero",
                          "passed"}) {
    CHECK_MESSAGE(j.contains(key), key);
  }
  CHECK(j["lambda"]["exact_value"] == "61");
}
