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

#include "oracles.hpp"
#include "torusmoments/coefficients.hpp"
#include "torusmoments/error.hpp"
#include "torusmoments/estimator.hpp"
#include "torusmoments/sharpness.hpp"

using namespace torus;

namespace {

// Central differences of the grid objective in every real direction.
std::vector<double> finite_difference(const CurveSpec& c, const CoefficientVector& a, int p, const TorusGrid& g,
                                      double step) {
  std::vector<double> out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::complex<double> dir : {std::complex<double>(1, 0), std::complex<double>(0, 1)}) {
      auto plus = a.values(), minus = a.values();
      plus[i] += step * dir;
      minus[i] -= step * dir;
      const double fp = moment_objective(c, CoefficientVector(plus), p, g);
      const double fm = moment_objective(c, CoefficientVector(minus), p, g);
      out.push_back((fp - fm) / (2 * step));
    }
  }
  return out;
}

double max_abs(const std::vector<double>& v) {
  double m = 0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

AscentConfig quick() {
  AscentConfig c;
  c.multistarts = 4;
  return c;
}

}  // namespace

TEST_CASE("gradient of a constant function") {
  const auto c13 = make_curve({1, 3});
  const auto a = coefficients::spike(2, 0, 0.7);
  const auto g = moment_gradient(c13, a, 4, nyquist_grid(c13, 2, 2));
  REQUIRE(g.size() == 10);
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (i == 4) {
      CHECK(g[i] == doctest::Approx(4 * 0.7 * 0.7 * 0.7).epsilon(1e-12));
    } else {
      CHECK(std::abs(g[i]) < 1e-12);
    }
  }
  const auto z = moment_gradient(c13, coefficients::zeros(2), 4, nyquist_grid(c13, 2, 2));
  CHECK(max_abs(z) == 0.0);
}

TEST_CASE("gradient matches central differences") {
  const auto c13 = make_curve({1, 3});
  const auto ones = coefficients::ones(2).scaled(1 / std::sqrt(5.0));
  const auto grid = nyquist_grid(c13, 2, 2);
  const auto g = moment_gradient(c13, ones, 4, grid);
  const auto fd = finite_difference(c13, ones, 4, grid, 1e-5);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(std::abs(g[i] - fd[i]) <= 1e-5 * max_abs(fd));

  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto e = seed % 2 ? std::vector<int>{1, 2, 3} : std::vector<int>{1, 3};
    const auto c = make_curve(e);
    const auto a = coefficients::random_unit(2, seed).normalized();
    const int p = 4 + 2 * static_cast<int>(seed % 3);
    const auto gr = nyquist_grid(c, 2, p / 2);
    const auto an = moment_gradient(c, a, p, gr);
    const auto num = finite_difference(c, a, p, gr, 1e-5);
    for (std::size_t i = 0; i < an.size(); ++i) CHECK(std::abs(an[i] - num[i]) <= 1e-5 * max_abs(num));
  }
}

TEST_CASE("gradient preconditions") {
  const auto c13 = make_curve({1, 3});
  CHECK_THROWS_WITH_AS(moment_gradient(c13, coefficients::ones(2), 3, nyquist_grid(c13, 2, 2)),
                       doctest::Contains("OddExponentUnsupported"), Error);
  CHECK_THROWS_AS(moment_gradient(c13, coefficients::ones(2), 6, nyquist_grid(c13, 2, 2)), Error);
}

TEST_CASE("objective is the even moment on a Nyquist grid") {
  const auto c13 = make_curve({1, 3});
  CHECK(moment_objective(c13, coefficients::ones(2), 4, nyquist_grid(c13, 2, 2)) ==
        doctest::Approx(61.0).epsilon(1e-12));
}

TEST_CASE("Parseval: K = 1 at p = 2") {
  for (int N = 1; N <= 4; ++N) {
    const auto r = estimate_K(make_curve({1, 3}), N, 2, quick());
    CHECK(std::abs(r.K_hat - 1.0) <= 1e-9);
    CHECK(restriction_constant(r) == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("estimate respects the a = 1 floor") {
  const auto r = estimate_K(make_curve({1, 3}), 2, 4, quick());
  CHECK(r.K_hat >= std::pow(61.0, 0.25) / std::sqrt(5.0));
  CHECK(r.restriction_estimate >= 1.562);
  CHECK(r.k_lower.has_value());
  CHECK(r.certified_lower >= *r.k_lower);
  CHECK(r.monotone);
  CHECK(r.argmax.norm2() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(moment_objective(make_curve({1, 3}), r.argmax, 4, r.grid) ==
        doctest::Approx(std::pow(r.K_hat, 4)).epsilon(1e-9));
  for (std::size_t i = 1; i < r.objective_history.size(); ++i) {
    CHECK(r.objective_history[i] >= r.objective_history[i - 1] * (1 - 1e-12));
  }
}

TEST_CASE("estimate matches a sphere grid search at N = 1, p = 4") {
  const double oracle_k = oracle::sphere_search_k4({1, 3});
  const auto r = estimate_K(make_curve({1, 3}), 1, 4);
  CHECK(std::abs(r.K_hat - oracle_k) <= 1e-3);
  CHECK(r.K_hat <= oracle_k + 1e-9);
}

TEST_CASE("non-even exponents run on an oversampled grid") {
  const auto r = estimate_K(make_curve({1, 3}), 2, 3.0, quick());
  CHECK(r.approximate);
  CHECK(r.quadrature_error.has_value());
  CHECK(*r.quadrature_error < 1e-3);
  CHECK(r.K_hat >= 1.0);
}

TEST_CASE("restriction estimate grows with N") {
  const double a1 = restriction_constant(make_curve({1, 3}), 1, 6, quick());
  const double a2 = restriction_constant(make_curve({1, 3}), 2, 6, quick());
  CHECK(a2 >= a1);
}

TEST_CASE("estimates are reproducible") {
  AscentConfig c = quick();
  c.seed = 17;
  const auto r1 = estimate_K(make_curve({1, 2, 3}), 2, 6, c);
  const auto r2 = estimate_K(make_curve({1, 2, 3}), 2, 6, c);
  CHECK(r1.K_hat == r2.K_hat);
  CHECK(r1.argmax.values() == r2.argmax.values());
  CHECK(to_json(r1).dump() == to_json(r2).dump());
  CHECK(to_json(r1).contains("argmax"));
}

TEST_CASE("ascent configuration validation") {
  AscentConfig c;
  c.multistarts = 0;
  CHECK_THROWS_AS(c.validate(), Error);
  c = AscentConfig{};
  c.backtrack_factor = 1.5;
  CHECK_THROWS_AS(c.validate(), Error);
  c = AscentConfig{};
  CHECK_NOTHROW(c.validate());
}
