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
// Reference computations used only by the tests. Each one takes the most
// direct route available (enumerate tuples, sum trigonometric polynomials
// node by node) and shares no code with the library beyond its data types.
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <numbers>
#include <vector>

namespace oracle {

struct Gauss {
  long long re = 0;
  long long im = 0;
};

inline Gauss mul(Gauss a, Gauss b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }

inline long long ipow(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Visits every u-tuple of indices in [-N, N].
inline void for_each_tuple(int N, int u, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> t(u, -N);
  for (;;) {
    visit(t);
    int i = u - 1;
    while (i >= 0 && t[i] == N) t[i--] = -N;
    if (i < 0) return;
    ++t[i];
  }
}

using Key = std::vector<long long>;

// Binned u-fold representation weights with Gaussian-integer coefficients.
inline std::map<Key, Gauss> counts(const std::vector<int>& exps, int N, const std::vector<Gauss>& a, int u) {
  std::map<Key, Gauss> bins;
  for_each_tuple(N, u, [&](const std::vector<int>& t) {
    Key v(exps.size(), 0);
    Gauss w{1, 0};
    for (int n : t) {
      for (std::size_t j = 0; j < exps.size(); ++j) v[j] += ipow(n, exps[j]);
      w = mul(w, a[n + N]);
    }
    auto& b = bins[v];
    b.re += w.re;
    b.im += w.im;
  });
  return bins;
}

inline long long moment_exact(const std::vector<int>& exps, int N, const std::vector<Gauss>& a, int u) {
  long long total = 0;
  for (const auto& [v, w] : counts(exps, N, a, u)) total += w.re * w.re + w.im * w.im;
  return total;
}

inline long long moment_ones(const std::vector<int>& exps, int N, int u) {
  return moment_exact(exps, N, std::vector<Gauss>(2 * N + 1, Gauss{1, 0}), u);
}

inline long double moment_float(const std::vector<int>& exps, int N, const std::vector<std::complex<double>>& a,
                                 int u) {
  std::map<Key, std::complex<long double>> bins;
  for_each_tuple(N, u, [&](const std::vector<int>& t) {
    Key v(exps.size(), 0);
    std::complex<long double> w = 1;
    for (int n : t) {
      for (std::size_t j = 0; j < exps.size(); ++j) v[j] += ipow(n, exps[j]);
      w *= std::complex<long double>(a[n + N]);
    }
    bins[v] += w;
  });
  long double total = 0;
  for (const auto& [v, w] : bins) total += std::norm(w);
  return total;
}

// Sum over 2u-tuples with matching curve power sums of the weight
// a_n... conj(a_m)..., restricted to tuples whose power sums in each extra
// degree differ by exactly the requested amount (degree -> difference).
inline std::complex<long double> shifted(const std::vector<int>& exps, int N, const std::vector<Gauss>& a, int u,
                                         const std::map<int, long long>& extra) {
  std::complex<long double> total = 0;
  for_each_tuple(N, 2 * u, [&](const std::vector<int>& t) {
    for (int e : exps) {
      long long s = 0;
      for (int i = 0; i < u; ++i) s += ipow(t[i], e) - ipow(t[u + i], e);
      if (s != 0) return;
    }
    for (const auto& [deg, diff] : extra) {
      long long s = 0;
      for (int i = 0; i < u; ++i) s += ipow(t[i], deg) - ipow(t[u + i], deg);
      if (s != diff) return;
    }
    Gauss w{1, 0};
    for (int i = 0; i < u; ++i) w = mul(w, a[t[i] + N]);
    for (int i = 0; i < u; ++i) w = mul(w, Gauss{a[t[u + i] + N].re, -a[t[u + i] + N].im});
    total += std::complex<long double>(w.re, w.im);
  });
  return total;
}

inline std::complex<long double> eval(const std::vector<int>& exps, const std::vector<std::complex<double>>& a,
                                      const std::vector<long double>& alpha) {
  const int N = static_cast<int>(a.size() / 2);
  std::complex<long double> f = 0;
  for (int n = -N; n <= N; ++n) {
    long double phase = 0;
    for (std::size_t j = 0; j < exps.size(); ++j) phase += alpha[j] * static_cast<long double>(ipow(n, exps[j]));
    phase -= std::floor(phase);
    f += std::complex<long double>(a[n + N]) * std::polar(1.0L, 2 * std::numbers::pi_v<long double> * phase);
  }
  return f;
}

// (1/#nodes) sum |F|^p by direct evaluation at every node; p = inf gives max|F|.
inline long double grid_mean(const std::vector<int>& exps, const std::vector<std::complex<double>>& a, double p,
                             const std::vector<long long>& dims) {
  std::vector<long long> idx(dims.size(), 0);
  long double total = 0;
  long double maxabs = 0;
  long long nodes = 0;
  for (;;) {
    std::vector<long double> alpha(dims.size());
    for (std::size_t j = 0; j < dims.size(); ++j) alpha[j] = static_cast<long double>(idx[j]) / dims[j];
    const long double r = std::abs(eval(exps, a, alpha));
    maxabs = std::max(maxabs, r);
    if (std::isfinite(p)) total += std::pow(r, static_cast<long double>(p));
    ++nodes;
    std::size_t j = dims.size();
    while (j > 0 && ++idx[j - 1] == dims[j - 1]) idx[--j] = 0;
    if (j == 0) break;
  }
  return std::isfinite(p) ? total / nodes : maxabs;
}

inline std::vector<std::complex<double>> to_complex(const std::vector<Gauss>& a) {
  std::vector<std::complex<double>> out;
  for (const auto& g : a) out.emplace_back(static_cast<double>(g.re), static_cast<double>(g.im));
  return out;
}

// max ||F_a||_4 over real unit vectors a = (a_{-1}, a_0, a_1) for the curve
// (1,3), N = 1: a coarse sweep of the sphere followed by shrinking local
// sweeps around the best point.
inline double sphere_search_k4(const std::vector<int>& exps) {
  auto value = [&](double t, double f) {
    const double x = std::sin(t) * std::cos(f), y = std::sin(t) * std::sin(f), z = std::cos(t);
    const std::vector<double> a{x, y, z};
    // Lambda = sum over bins of (sum of products)^2, weights are real.
    std::map<Key, double> bins;
    for_each_tuple(1, 2, [&](const std::vector<int>& tup) {
      Key v(exps.size(), 0);
      for (int n : tup) {
        for (std::size_t j = 0; j < exps.size(); ++j) v[j] += ipow(n, exps[j]);
      }
      bins[v] += a[tup[0] + 1] * a[tup[1] + 1];
    });
    double total = 0;
    for (const auto& [k, w] : bins) total += w * w;
    return std::pow(total, 0.25);
  };
  const double pi = std::numbers::pi;
  double best = 0, bt = 0, bf = 0;
  const int coarse = 400;
  for (int i = 0; i <= coarse; ++i) {
    for (int j = 0; j < 2 * coarse; ++j) {
      const double t = pi * i / coarse, f = pi * j / coarse;
      const double v = value(t, f);
      if (v > best) best = v, bt = t, bf = f;
    }
  }
  double radius = pi / coarse;
  for (int round = 0; round < 30; ++round) {
    const double ct = bt, cf = bf;
    for (int i = -20; i <= 20; ++i) {
      for (int j = -20; j <= 20; ++j) {
        const double t = ct + radius * i / 20, f = cf + radius * j / 20;
        const double v = value(t, f);
        if (v > best) best = v, bt = t, bf = f;
      }
    }
    radius *= 0.5;
  }
  return best;
}

}  // namespace oracle
