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
#include <benchmark/benchmark.h>

#include "torusmoments/coefficients.hpp"
#include "torusmoments/counting.hpp"
#include "torusmoments/extension.hpp"
#include "torusmoments/quadrature.hpp"

namespace {

using namespace torus;

void BM_RepresentationCounts(benchmark::State& state) {
  const auto curve = make_curve({1, 3});
  const int N = static_cast<int>(state.range(0));
  const int u = static_cast<int>(state.range(1));
  const auto coeffs = coefficients::ones(N);
  for (auto _ : state) {
    auto counts = representation_counts(curve, coeffs, u);
    benchmark::DoNotOptimize(counts);
  }
}
BENCHMARK(BM_RepresentationCounts)->Args({8, 3})->Args({16, 3})->Args({8, 6})->Unit(benchmark::kMillisecond);

void BM_EvenMomentFft(benchmark::State& state) {
  const auto curve = make_curve({1, 3});
  const int N = static_cast<int>(state.range(0));
  const int u = static_cast<int>(state.range(1));
  const auto coeffs = coefficients::ones(N);
  for (auto _ : state) {
    auto m = even_moment_fft(curve, coeffs, u);
    benchmark::DoNotOptimize(m.value);
  }
}
BENCHMARK(BM_EvenMomentFft)->Args({8, 2})->Args({8, 6})->Args({16, 6})->Unit(benchmark::kMillisecond);

void BM_EvalExtension(benchmark::State& state) {
  const auto curve = make_curve({1, 2, 3});
  const auto coeffs = coefficients::random_unit(static_cast<int>(state.range(0)), 1);
  const TorusPoint alpha({0.1234, 0.5678, 0.9012});
  for (auto _ : state) benchmark::DoNotOptimize(eval_extension(curve, coeffs, alpha));
}
BENCHMARK(BM_EvalExtension)->Arg(16)->Arg(256);

void BM_LpNorm(benchmark::State& state) {
  const auto curve = make_curve({1, 3});
  const int N = static_cast<int>(state.range(0));
  const auto coeffs = coefficients::random_unit(N, 2);
  const auto grid = nyquist_grid(curve, N, 2);
  for (auto _ : state) benchmark::DoNotOptimize(lp_norm(curve, coeffs, 3.5, grid));
}
BENCHMARK(BM_LpNorm)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
