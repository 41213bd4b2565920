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
// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "torusmoments/coefficients.hpp"
#include "torusmoments/counting.hpp"
#include "torusmoments/estimator.hpp"
#include "torusmoments/fit.hpp"
#include "torusmoments/quadrature.hpp"
#include "torusmoments/reduction.hpp"
#include "torusmoments/sharpness.hpp"
#include "torusmoments/sweep.hpp"

using namespace torus;

namespace {

// Pinned tolerances.
constexpr double kFftRelTol = 1e-8;
constexpr double kLpMomentRelTol = 1e-8;
constexpr double kParsevalTol = 1e-10;
constexpr double kC1Seconds = 60.0;
constexpr double kC3Seconds = 60.0;
constexpr double kC5Seconds = 600.0;
constexpr double kC5Lo = 7.2, kC5Hi = 8.6;
constexpr double kC6Lo = 1.7, kC6Hi = 2.4;
constexpr double kParsevalK = 1e-9;
constexpr double kFloorRounding = 1e-12;
constexpr double kGradientRelTol = 1e-5;
constexpr double kFiniteDifferenceStep = 1e-5;
constexpr double kSphereOracleTol = 1e-3;

const std::vector<std::vector<int>> kCurves{{1, 2}, {1, 3}, {2, 3}, {1, 2, 3}, {1, 4}};
constexpr int kRandomVectors = 5;

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string num(double x) {
  std::ostringstream s;
  s << x;
  return s.str();
}

double rel(double got, double want) { return std::abs(got - want) / std::max(std::abs(want), 1e-300); }

std::vector<CoefficientVector> instance_vectors(int N) {
  std::vector<CoefficientVector> v{coefficients::ones(N)};
  for (int s = 0; s < kRandomVectors; ++s) v.push_back(coefficients::random_gaussian(N, 1000 + s));
  return v;
}

Outcome criterion1() {
  Outcome o;
  int instances = 0;
  double worst_fft = 0;
  for (const auto& e : kCurves) {
    const auto c = make_curve(e);
    for (int N = 1; N <= 3; ++N) {
      for (int u = 1; u <= 2; ++u) {
        for (const auto& a : instance_vectors(N)) {
          const auto engine = even_moment(c, a, u);
          const auto brute = brute_force_moment(c, a, u);
          const auto fft = even_moment_fft(c, a, u);
          ++instances;
          if (!engine.exact || engine.exact_value != brute.exact_value) {
            o.pass = false;
            o.detail += " mismatch(" + c.label() + ",N=" + std::to_string(N) + ",u=" + std::to_string(u) + ")";
          }
          worst_fft = std::max(worst_fft, rel(fft.value, engine.value));
        }
      }
    }
  }
  const auto fixed = even_moment(make_curve({1, 3}), coefficients::ones(2), 2);
  if (fixed.exact_value != BigInt(61)) o.pass = false;
  if (worst_fft > kFftRelTol) o.pass = false;
  o.detail = std::to_string(instances) + " instances exact, Lambda((1,3),2,2)=" + fixed.text() +
             ", worst fft rel err " + num(worst_fft) + o.detail;
  return o;
}

Outcome criterion2() {
  Outcome o;
  double worst = 0, worst_parseval = 0;
  for (const auto& e : kCurves) {
    const auto c = make_curve(e);
    for (int N = 1; N <= 3; ++N) {
      for (int u = 1; u <= 2; ++u) {
        for (const auto& a : instance_vectors(N)) {
          const auto grid = nyquist_grid(c, N, u);
          const double lp = lp_norm(c, a, 2.0 * u, grid);
          worst = std::max(worst, rel(std::pow(lp, 2 * u), even_moment(c, a, u).value));
          worst_parseval = std::max(worst_parseval, std::abs(lp_norm(c, a, 2.0, grid) - a.norm2()));
        }
      }
    }
  }
  o.pass = worst <= kLpMomentRelTol && worst_parseval <= kParsevalTol;
  o.detail = "worst rel err " + num(worst) + ", worst Parseval err " + num(worst_parseval);
  return o;
}

Outcome criterion3() {
  Outcome o;
  const auto c13 = make_curve({1, 3});
  int runs = 0;
  std::uint64_t violations = 0, shifts = 0;
  for (int N = 1; N <= 3; ++N) {
    for (int u = 1; u <= 2; ++u) {
      std::vector<CoefficientVector> vecs{coefficients::ones(N)};
      for (int s = 0; s < 3; ++s) vecs.push_back(coefficients::random_gaussian(N, 2000 + s));
      for (const auto& a : vecs) {
        const auto dec = verify_decomposition(c13, a, u);
        const auto dom = verify_dominance(c13, a, u);
        ++runs;
        shifts += dom.shifts_checked;
        violations += dom.dominance_violations;
        if (!dec.residual_is_exact || dec.decomposition_residual != 0.0 || dec.outside_box_nonzero != 0) {
          o.pass = false;
        }
      }
    }
  }
  if (violations != 0) o.pass = false;
  o.detail = std::to_string(runs) + " instances residual 0, " + std::to_string(shifts) + " shifts, " +
             std::to_string(violations) + " dominance violations";
  return o;
}

Outcome criterion4() {
  Outcome o;
  int checked = 0;
  for (const auto& e : kCurves) {
    for (int N = 1; N <= 3; ++N) {
      for (int p : {2, 4}) {
        const auto r = sharpness_report(make_curve(e), N, p, 1000, 0);
        ++checked;
        // Zero tolerance: exact integers against the diagonal; the major arc
        // bound and cosine floor compared as computed.
        const bool diag = *r.lambda.exact_value >= r.diagonal;
        const bool arc = r.lambda.value >= r.major_arc_bound;
        const bool cosine = r.arc_min.min_real >= r.arc_min.floor;
        if (!(diag && arc && cosine && r.arc_min.points >= 1000)) {
          o.pass = false;
          o.detail += " fail(" + r.curve + ",N=" + std::to_string(N) + ",p=" + std::to_string(p) + ")";
        }
      }
    }
  }
  // The exponent-fit instances are computed too.
  for (int N : {4, 6, 8, 12}) {
    const auto r = sharpness_report(make_curve({1, 3}), N, 12, 1000, 0);
    ++checked;
    if (!r.passed()) o.pass = false;
  }
  o.detail = std::to_string(checked) + " (curve,N,p) instances" + o.detail;
  return o;
}

Outcome fit_criterion(std::vector<int> Ns, int p, double lo, double hi, bool fft) {
  Outcome o;
  const auto c13 = make_curve({1, 3});
  std::vector<SweepRow> rows;
  for (int N : Ns) {
    SweepRow r;
    r.curve = c13.label();
    r.N = N;
    r.p = p;
    const auto m = fft ? even_moment_fft(c13, coefficients::ones(N), p / 2)
                       : even_moment(c13, coefficients::ones(N), p / 2);
    r.lambda = m.value;
    rows.push_back(r);
  }
  const auto f = fit_exponent(rows, FitQuantity::lambda);
  o.pass = f.slope >= lo && f.slope <= hi;
  std::ostringstream s;
  s << "slope " << f.slope << " in [" << lo << ", " << hi << "], predicted " << f.predicted << ", verdict "
    << f.verdict;
  o.detail = s.str();
  return o;
}

Outcome criterion7() {
  Outcome o;
  std::ostringstream s;
  const auto c13 = make_curve({1, 3});
  AscentConfig cfg;

  double worst_parseval = 0;
  for (int N = 1; N <= 3; ++N) worst_parseval = std::max(worst_parseval, std::abs(estimate_K(c13, N, 2, cfg).K_hat - 1));
  if (worst_parseval > kParsevalK) o.pass = false;

  int floor_runs = 0;
  for (const auto& e : kCurves) {
    for (int N = 1; N <= 2; ++N) {
      for (double p : {2.0, 3.0, 4.0, 6.0}) {
        const auto r = estimate_K(make_curve(e), N, p, cfg);
        const double floor = std::max(1.0, r.k_lower.value_or(1.0));
        ++floor_runs;
        if (r.K_hat < floor * (1 - kFloorRounding)) o.pass = false;
      }
    }
  }

  double worst_grad = 0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto a = coefficients::random_unit(2, 3000 + seed).normalized();
    const int p = 4 + 2 * static_cast<int>(seed % 2);
    const auto grid = nyquist_grid(c13, 2, p / 2);
    const auto g = moment_gradient(c13, a, p, grid);
    double scale = 0, err = 0;
    std::size_t k = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (std::complex<double> dir : {std::complex<double>(1, 0), std::complex<double>(0, 1)}) {
        auto plus = a.values(), minus = a.values();
        plus[i] += kFiniteDifferenceStep * dir;
        minus[i] -= kFiniteDifferenceStep * dir;
        const double fd = (moment_objective(c13, CoefficientVector(plus), p, grid) -
                           moment_objective(c13, CoefficientVector(minus), p, grid)) /
                          (2 * kFiniteDifferenceStep);
        scale = std::max(scale, std::abs(fd));
        err = std::max(err, std::abs(fd - g[k++]));
      }
    }
    worst_grad = std::max(worst_grad, err / scale);
  }
  if (worst_grad > kGradientRelTol) o.pass = false;

  const double oracle_k = oracle::sphere_search_k4({1, 3});
  const double k_hat = estimate_K(c13, 1, 4, cfg).K_hat;
  if (std::abs(k_hat - oracle_k) > kSphereOracleTol) o.pass = false;

  s << "K(p=2) err " << worst_parseval << ", floor held on " << floor_runs << " runs, gradient rel err "
    << worst_grad << ", N=1 p=4 K_hat " << k_hat << " vs oracle " << oracle_k;
  o.detail = s.str();
  return o;
}

Outcome criterion8() {
  SweepConfig c;
  c.curve = {1, 3};
  c.Ns = {2, 3, 4};
  c.ps = {4, 6};
  c.coeffs = "random-unit";
  c.seed = 42;
  c.checks = {Check::moment, Check::reduce, Check::sharpness, Check::estimate};
  c.samples = 200;
  c.fit = true;
  c.ascent.multistarts = 3;
  c.ascent.seed = 42;
  auto strip = [](SweepReport r) {
    r.timestamp.clear();
    return r;
  };
  const auto r1 = strip(run_sweep(c));
  const auto r2 = strip(run_sweep(c));
  Outcome o;
  const auto j1 = render_report(r1, "json"), j2 = render_report(r2, "json");
  const auto c1 = render_report(r1, "csv"), c2 = render_report(r2, "csv");
  o.pass = j1 == j2 && c1 == c2;
  o.detail = std::to_string(r1.rows.size()) + " rows, json " + std::to_string(j1.size()) + " bytes " +
             (j1 == j2 ? "identical" : "differ") + ", csv " + (c1 == c2 ? "identical" : "differ");
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "oracle equivalence", kC1Seconds, criterion1},
      {2, "quadrature exactness", 0, criterion2},
      {3, "decomposition identity", kC3Seconds, criterion3},
      {4, "sharpness inequalities", 0, criterion4},
      {5, "exponent fit p=12", kC5Seconds, [] { return fit_criterion({4, 6, 8, 12, 16, 24}, 12, kC5Lo, kC5Hi, true); }},
      {6, "below-critical fit p=4", 0,
       [] {
         std::vector<int> Ns;
         for (int N = 4; N <= 32; ++N) Ns.push_back(N);
         return fit_criterion(Ns, 4, kC6Lo, kC6Hi, false);
       }},
      {7, "estimator soundness", 0, criterion7},
      {8, "determinism", 0, criterion8},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_s > 0 && secs > c.budget_s) {
      o.pass = false;
      o.detail += " (over the " + std::to_string(static_cast<int>(c.budget_s)) + " s budget)";
    }
    std::printf("[%s] criterion %d %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
