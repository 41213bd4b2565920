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
#include "torusmoments/estimator.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "grid_eval.hpp"
#include "torusmoments/error.hpp"
#include "torusmoments/reduction.hpp"
#include "torusmoments/sharpness.hpp"
#include "torusmoments/summation.hpp"

namespace torus {

namespace {

using RealVector = std::vector<double>;

bool is_even_integer(double p) { return p == std::round(p) && std::fmod(p, 2.0) == 0.0; }

double abs_power(std::complex<double> z, double p, bool even) {
  if (even) {
    const double r2 = std::norm(z);
    double out = 1.0;
    for (int i = 0, half = static_cast<int>(p / 2); i < half; ++i) out *= r2;
    return out;
  }
  return std::pow(std::abs(z), p);
}

struct ObjectiveAndGradient {
  double value = 0.0;
  std::vector<std::complex<double>> wirtinger;  // dPhi/d conj(a_n)
};

ObjectiveAndGradient evaluate(const CurveSpec& curve, const CoefficientVector& coeffs, double p,
                              const TorusGrid& grid, bool with_gradient) {
  detail::GridEvaluator eval(curve, coeffs, grid);
  const bool even = is_even_integer(p);
  const std::size_t ncoef = eval.coefficient_count();
  struct Partial {
    CompensatedSum value;
    std::vector<ComplexCompensatedSum> grad;
  };
  std::vector<Partial> partials(eval.chunk_count());
  for (auto& part : partials) {
    if (with_gradient) part.grad.resize(ncoef);
  }
  eval.for_each_slab([&](std::size_t chunk, std::size_t, std::span<const std::complex<double>> values,
                         detail::GridEvaluator::Workspace& ws) {
    Partial& part = partials[chunk];
    std::vector<std::complex<double>> weighted;
    if (with_gradient) weighted.resize(values.size());
    for (std::size_t l = 0; l < values.size(); ++l) {
      const auto z = values[l];
      part.value.add(abs_power(z, p, even));
      if (with_gradient) weighted[l] = abs_power(z, p - 2.0, is_even_integer(p - 2.0)) * z;
    }
    if (!with_gradient) return;
    eval.forward(weighted.data(), ws);
    for (std::size_t i = 0; i < ncoef; ++i) {
      part.grad[i].add(std::conj(ws.phase[i]) * ws.scratch[eval.last_residue(i)]);
    }
  });
  ObjectiveAndGradient out;
  CompensatedSum total;
  std::vector<ComplexCompensatedSum> grad(with_gradient ? ncoef : 0);
  for (const auto& part : partials) {
    total.add(part.value);
    for (std::size_t i = 0; i < grad.size(); ++i) grad[i].add(part.grad[i]);
  }
  const double nodes = eval.node_count();
  out.value = total.value() / nodes;
  if (with_gradient) {
    out.wirtinger.resize(ncoef);
    for (std::size_t i = 0; i < ncoef; ++i) out.wirtinger[i] = grad[i].value() * (0.5 * p / nodes);
  }
  return out;
}

RealVector to_real(const CoefficientVector& a) {
  RealVector x;
  x.reserve(2 * a.size());
  for (const auto& v : a.values()) {
    x.push_back(v.real());
    x.push_back(v.imag());
  }
  return x;
}

CoefficientVector from_real(const RealVector& x) {
  std::vector<std::complex<double>> v(x.size() / 2);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = {x[2 * i], x[2 * i + 1]};
  return CoefficientVector(std::move(v));
}

double dot(const RealVector& a, const RealVector& b) {
  CompensatedSum s;
  for (std::size_t i = 0; i < a.size(); ++i) s.add(a[i] * b[i]);
  return s.value();
}

void normalize(RealVector& x) {
  const double n = std::sqrt(dot(x, x));
  for (auto& v : x) v /= n;
}

RealVector wirtinger_to_real(const std::vector<std::complex<double>>& w) {
  RealVector g;
  g.reserve(2 * w.size());
  for (const auto& z : w) {
    g.push_back(2.0 * z.real());
    g.push_back(2.0 * z.imag());
  }
  return g;
}

std::vector<CoefficientVector> starting_points(const CurveSpec& curve, int N, const AscentConfig& config) {
  std::vector<CoefficientVector> starts;
  starts.push_back(coefficients::ones(N).normalized());
  if (config.multistarts >= 2 && N >= 1) {
    // a_n = e^{2 pi i beta . nu(n)} with beta a corner of the major arc box.
    const auto box = major_arc_box(curve, N);
    std::vector<std::complex<double>> v;
    for (int n = -N; n <= N; ++n) {
      double phase = 0.0;
      for (int j = 0; j < curve.dim(); ++j) phase += box.half_widths[j] * std::pow(double(n), curve.exponents[j]);
      v.push_back(std::polar(1.0, 2.0 * std::numbers::pi * phase));
    }
    starts.push_back(CoefficientVector(std::move(v)).normalized());
  }
  for (int s = static_cast<int>(starts.size()); s < config.multistarts; ++s) {
    std::mt19937_64 rng(config.seed + static_cast<std::uint64_t>(s));
    std::normal_distribution<double> gauss;
    std::vector<std::complex<double>> v;
    for (int n = -N; n <= N; ++n) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      v.emplace_back(re, im);
    }
    starts.push_back(CoefficientVector(std::move(v)).normalized());
  }
  return starts;
}

struct AscentOutcome {
  RealVector x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
  bool monotone = true;
  std::vector<double> history;
};

AscentOutcome ascend(const CurveSpec& curve, const CoefficientVector& start, double p, const TorusGrid& grid,
                     const AscentConfig& config, double tolerance) {
  AscentOutcome out;
  out.x = to_real(start);
  normalize(out.x);
  auto current = evaluate(curve, from_real(out.x), p, grid, true);
  out.value = current.value;
  out.history.push_back(out.value);
  double step = config.initial_step;
  for (int iter = 0; iter < config.max_iters; ++iter) {
    RealVector g = wirtinger_to_real(current.wirtinger);
    const double radial = dot(g, out.x);
    for (std::size_t i = 0; i < g.size(); ++i) g[i] -= radial * out.x[i];
    const double gnorm = std::sqrt(dot(g, g));
    if (!(gnorm > 1e-15 * std::max(1.0, out.value))) {
      out.converged = true;
      return out;
    }
    bool accepted = false;
    RealVector trial(out.x.size());
    double trial_value = 0.0;
    for (int b = 0; b < config.max_backtracks; ++b) {
      for (std::size_t i = 0; i < trial.size(); ++i) trial[i] = out.x[i] + step * g[i] / gnorm;
      normalize(trial);
      trial_value = evaluate(curve, from_real(trial), p, grid, false).value;
      if (trial_value > out.value) {
        accepted = true;
        break;
      }
      step *= config.backtrack_factor;
    }
    if (!accepted) {
      out.converged = true;
      return out;
    }
    const double gain = (trial_value - out.value) / out.value;
    out.x = trial;
    current = evaluate(curve, from_real(out.x), p, grid, true);
    if (current.value < out.value) out.monotone = false;
    out.value = current.value;
    out.history.push_back(out.value);
    ++out.iterations;
    step = std::min(step / config.backtrack_factor, config.max_step);
    if (gain < tolerance) {
      out.converged = true;
      return out;
    }
  }
  return out;
}

}  // namespace

void AscentConfig::validate() const {
  if (max_iters < 1 || multistarts < 1 || max_backtracks < 1 || oversample < 1) {
    throw Error(ErrorCode::ConfigInvalid, "ascent counts must be positive");
  }
  if (!(initial_step > 0) || !(max_step > 0) || !(backtrack_factor > 0 && backtrack_factor < 1)) {
    throw Error(ErrorCode::ConfigInvalid, "ascent step parameters out of range");
  }
  if (!(tolerance > 0 && tolerance < 1)) throw Error(ErrorCode::ConfigInvalid, "tolerance must lie in (0, 1)");
}

double moment_objective(const CurveSpec& curve, const CoefficientVector& coeffs, double p, const TorusGrid& grid) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw Error(ErrorCode::InvalidArgument, "p must be finite and >= 1");
  return evaluate(curve, coeffs, p, grid, false).value;
}

std::vector<double> moment_gradient(const CurveSpec& curve, const CoefficientVector& coeffs, int p,
                                    const TorusGrid& grid) {
  if (p < 2 || p % 2 != 0) {
    throw Error(ErrorCode::OddExponentUnsupported, "analytic gradient needs an even exponent");
  }
  if (!grid_certifies(grid, curve, coeffs.N(), p / 2)) {
    throw Error(ErrorCode::InvalidArgument, "gradient grid must be Nyquist-sized for u = p/2");
  }
  return wirtinger_to_real(evaluate(curve, coeffs, p, grid, true).wirtinger);
}

TorusGrid estimator_grid(const CurveSpec& curve, int N, double p, const AscentConfig& config) {
  GridOptions options;
  options.efficient_sizes = true;
  options.mem_budget_mb = config.mem_budget_mb;
  if (is_even_integer(p)) return nyquist_grid(curve, N, static_cast<int>(p / 2), options);
  const int u = static_cast<int>(std::ceil(p / 2.0));
  auto base = nyquist_grid(curve, N, u, options);
  std::vector<std::int64_t> dims;
  for (auto m : base.dims) dims.push_back(next_fft_size(m * config.oversample));
  return make_grid(std::move(dims));
}

EstimateResult estimate_K(const CurveSpec& curve, int N, double p, const AscentConfig& config) {
  if (!(p >= 2.0) || !std::isfinite(p)) throw Error(ErrorCode::InvalidArgument, "estimate_K needs finite p >= 2");
  if (N < 0) throw Error(ErrorCode::InvalidArgument, "N must be nonnegative");
  config.validate();
  EstimateResult r;
  r.curve = curve.label();
  r.N = N;
  r.p = p;
  r.grid = estimator_grid(curve, N, p, config);
  const bool even = is_even_integer(p);
  r.approximate = !even;
  // Improvements below the quadrature error of a non-certified grid are noise.
  const double tolerance = even ? config.tolerance : std::max(config.tolerance, 1e-7);

  const auto starts = starting_points(curve, N, config);
  double best = -1.0;
  for (std::size_t s = 0; s < starts.size(); ++s) {
    const auto outcome = ascend(curve, starts[s], p, r.grid, config, tolerance);
    r.iterations += outcome.iterations;
    r.monotone = r.monotone && outcome.monotone;
    const double k = std::pow(outcome.value, 1.0 / p);
    r.start_values.push_back(k);
    if (outcome.value > best) {
      best = outcome.value;
      r.K_hat = k;
      r.argmax = from_real(outcome.x);
      r.best_start = static_cast<int>(s);
      r.converged = outcome.converged;
      r.objective_history = outcome.history;
    }
  }
  if (even) {
    CountingOptions counting;
    counting.mem_budget_mb = config.mem_budget_mb;
    r.k_lower = k_lower_bound(curve, N, static_cast<int>(p), counting).value;
  } else {
    r.k_lower = r.start_values.front();
    std::vector<std::int64_t> doubled;
    for (auto m : r.grid.dims) doubled.push_back(next_fft_size(2 * m));
    const double fine = moment_objective(curve, r.argmax, p, make_grid(std::move(doubled)));
    r.quadrature_error = std::abs(fine - best) / best;
  }
  r.certified_lower = std::max(r.K_hat, r.k_lower.value_or(0.0));
  r.restriction_estimate = r.K_hat * r.K_hat;
  r.theorem_exponent = 0.5 * (1.0 - 2.0 * curve.weight_sum / p);
  return r;
}

double restriction_constant(const EstimateResult& result) { return result.K_hat * result.K_hat; }

double restriction_constant(const CurveSpec& curve, int N, double p, const AscentConfig& config) {
  return restriction_constant(estimate_K(curve, N, p, config));
}

nlohmann::json to_json(const EstimateResult& r) {
  nlohmann::json j;
  j["curve"] = r.curve;
  j["N"] = r.N;
  j["p"] = r.p;
  j["K_hat"] = r.K_hat;
  j["restriction_estimate"] = r.restriction_estimate;
  j["restriction_label"] = "duality estimate";
  j["k_lower_bound"] = r.k_lower ? nlohmann::json(*r.k_lower) : nlohmann::json(nullptr);
  j["certified_lower"] = r.certified_lower;
  j["iterations"] = r.iterations;
  j["best_start"] = r.best_start;
  j["converged"] = r.converged;
  j["monotone"] = r.monotone;
  j["grid"] = r.grid.dims;
  j["approximate"] = r.approximate;
  j["quadrature_error"] = r.quadrature_error ? nlohmann::json(*r.quadrature_error) : nlohmann::json(nullptr);
  j["start_values"] = r.start_values;
  j["theorem_exponent"] = r.theorem_exponent;
  auto& arg = j["argmax"] = nlohmann::json::array();
  for (const auto& v : r.argmax.values()) arg.push_back({v.real(), v.imag()});
  return j;
}

}  // namespace torus
