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
#include "torusmoments/counting.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "torusmoments/error.hpp"
#include "torusmoments/parallel.hpp"
#include "torusmoments/summation.hpp"

namespace torus {

namespace {

struct CodeHash {
  std::size_t operator()(u128 x) const noexcept {
    std::uint64_t h = static_cast<std::uint64_t>(x) ^ (static_cast<std::uint64_t>(x >> 64) * 0x9E3779B97F4A7C15ULL);
    h ^= h >> 33;
    h *= 0xFF51AFD7ED558CCDULL;
    h ^= h >> 33;
    return static_cast<std::size_t>(h);
  }
};

constexpr double kSparseBytesPerEntry = 112.0;
constexpr double kDenseBytesPerCell = 32.0;

double box_volume(const CurveSpec& curve, int N, int depth) {
  double v = 1.0;
  for (int e : curve.exponents) v *= 2.0 * depth * std::pow(double(N), e) + 1.0;
  return v;
}

int distinct_frequencies(const CurveSpec& curve, int N) {
  const bool all_even = std::all_of(curve.exponents.begin(), curve.exponents.end(),
                                    [](int e) { return e % 2 == 0; });
  return all_even ? N + 1 : 2 * N + 1;
}

// Multisets of size t drawn from m points bound the number of distinct sums.
double support_estimate(const CurveSpec& curve, int N, int depth) {
  const double m = distinct_frequencies(curve, N);
  const double multisets = std::exp(std::lgamma(m + depth) - std::lgamma(depth + 1.0) - std::lgamma(m));
  return std::min(box_volume(curve, N, depth), std::round(multisets));
}

double sparse_work(const CurveSpec& curve, int N, int depth) {
  if (depth <= 1) return 0.0;
  const int a = (depth + 1) / 2;
  const int b = depth / 2;
  double w = sparse_work(curve, N, a) + support_estimate(curve, N, a) * support_estimate(curve, N, b);
  if (a != b) w += sparse_work(curve, N, b);
  return w;
}

bool is_zero(const LatticeEntry& e, bool exact) {
  return exact ? e.exact.is_zero() : e.value == 0.0;
}

std::vector<LatticeEntry> base_terms(const CurveSpec& curve, const CoefficientVector& coeffs,
                                     const LatticeBox& box) {
  const int N = coeffs.N();
  const bool exact = coeffs.is_exact();
  const auto freqs = frequency_map(curve, N, 1);
  // Ordered map: merging of colliding frequencies happens in n order.
  std::map<u128, std::pair<GaussianInt, ComplexCompensatedSum>> merged;
  for (int n = -N; n <= N; ++n) {
    const auto idx = static_cast<std::size_t>(n + N);
    auto& slot = merged[box.encode(freqs[idx])];
    if (exact) slot.first += coeffs.exact_values()[idx];
    slot.second.add(coeffs.values()[idx]);
  }
  std::vector<LatticeEntry> out;
  for (const auto& [code, acc] : merged) {
    LatticeEntry e{code, acc.first, acc.second.value()};
    if (exact) e.value = {static_cast<double>(e.exact.re), static_cast<double>(e.exact.im)};
    if (!is_zero(e, exact)) out.push_back(e);
  }
  return out;
}

std::vector<LatticeEntry> convolve_sparse(const std::vector<LatticeEntry>& a, const std::vector<LatticeEntry>& b,
                                          u128 origin, bool exact) {
  std::unordered_map<u128, std::size_t, CodeHash> index;
  index.reserve(std::min<std::size_t>(a.size() * b.size(), std::size_t(1) << 24));
  std::vector<u128> codes;
  std::vector<GaussianInt> exact_acc;
  std::vector<ComplexCompensatedSum> float_acc;
  for (const auto& x : a) {
    for (const auto& y : b) {
      const u128 code = x.code + y.code - origin;
      auto [it, inserted] = index.try_emplace(code, codes.size());
      if (inserted) {
        codes.push_back(code);
        if (exact) {
          exact_acc.emplace_back();
        } else {
          float_acc.emplace_back();
        }
      }
      if (exact) {
        exact_acc[it->second] += x.exact * y.exact;
      } else {
        float_acc[it->second].add(x.value * y.value);
      }
    }
  }
  std::vector<LatticeEntry> out;
  out.reserve(codes.size());
  for (std::size_t i = 0; i < codes.size(); ++i) {
    LatticeEntry e;
    e.code = codes[i];
    if (exact) {
      e.exact = exact_acc[i];
      e.value = {static_cast<double>(e.exact.re), static_cast<double>(e.exact.im)};
    } else {
      e.value = float_acc[i].value();
    }
    if (!is_zero(e, exact)) out.push_back(e);
  }
  std::sort(out.begin(), out.end(), [](const LatticeEntry& x, const LatticeEntry& y) { return x.code < y.code; });
  return out;
}

std::vector<LatticeEntry> sparse_power(const std::vector<LatticeEntry>& base, int depth, u128 origin, bool exact,
                                       std::map<int, std::vector<LatticeEntry>>& memo) {
  if (depth == 1) return base;
  if (auto it = memo.find(depth); it != memo.end()) return it->second;
  const int a = (depth + 1) / 2;
  const int b = depth / 2;
  auto left = sparse_power(base, a, origin, exact, memo);
  auto right = (a == b) ? left : sparse_power(base, b, origin, exact, memo);
  auto out = convolve_sparse(left, right, origin, exact);
  memo[depth] = out;
  return out;
}

std::vector<LatticeEntry> dense_power(const std::vector<LatticeEntry>& base, int depth, const LatticeBox& box,
                                      bool exact) {
  const auto volume = static_cast<std::size_t>(box.volume());
  const u128 origin = box.origin();
  std::vector<LatticeEntry> cur = base;
  std::vector<GaussianInt> exact_cells;
  std::vector<ComplexCompensatedSum> float_cells;
  for (int step = 2; step <= depth; ++step) {
    if (exact) {
      exact_cells.assign(volume, GaussianInt{});
    } else {
      float_cells.assign(volume, ComplexCompensatedSum{});
    }
    for (const auto& x : cur) {
      for (const auto& y : base) {
        const auto cell = static_cast<std::size_t>(x.code + y.code - origin);
        if (exact) {
          exact_cells[cell] += x.exact * y.exact;
        } else {
          float_cells[cell].add(x.value * y.value);
        }
      }
    }
    cur.clear();
    for (std::size_t cell = 0; cell < volume; ++cell) {
      LatticeEntry e;
      e.code = cell;
      if (exact) {
        e.exact = exact_cells[cell];
        e.value = {static_cast<double>(e.exact.re), static_cast<double>(e.exact.im)};
      } else {
        e.value = float_cells[cell].value();
      }
      if (!is_zero(e, exact)) cur.push_back(e);
    }
  }
  return cur;
}

std::string shortest(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

}  // namespace

std::string_view path_name(MomentPath path) noexcept {
  switch (path) {
    case MomentPath::sparse: return "sparse";
    case MomentPath::dense: return "dense";
    case MomentPath::fft: return "fft";
    case MomentPath::brute_force: return "brute-force";
  }
  return "unknown";
}

std::string MomentValue::text() const {
  if (exact && exact_value) return exact_value->str();
  return shortest(value);
}

CountingPlan plan_counts(const CurveSpec& curve, int N, int u, const CountingOptions& options) {
  if (u < 1) throw Error(ErrorCode::InvalidArgument, "depth u must be at least 1");
  CountingPlan plan;
  plan.box_volume = box_volume(curve, N, u);
  plan.support_estimate = support_estimate(curve, N, u);
  const double budget = options.mem_budget_mb * 1024.0 * 1024.0;
  const double dense_bytes = plan.box_volume * kDenseBytesPerCell;
  plan.dense = u > 1 && plan.box_volume <= options.dense_threshold * plan.support_estimate && dense_bytes <= budget;
  if (plan.dense) {
    plan.bytes = dense_bytes;
    plan.pair_work = 0.0;
    for (int t = 1; t < u; ++t) plan.pair_work += support_estimate(curve, N, t) * distinct_frequencies(curve, N);
  } else {
    plan.bytes = plan.support_estimate * kSparseBytesPerEntry;
    plan.pair_work = sparse_work(curve, N, u);
  }
  return plan;
}

SparseLattice representation_counts(const CurveSpec& curve, const CoefficientVector& coeffs, int u,
                                    const CountingOptions& options) {
  const CountingPlan plan = plan_counts(curve, coeffs.N(), u, options);
  const double budget = options.mem_budget_mb * 1024.0 * 1024.0;
  if (plan.bytes > budget) {
    throw Error(ErrorCode::DepthTooLarge, "predicted support of " + shortest(plan.support_estimate) +
                                              " entries exceeds the memory budget");
  }
  LatticeBox box(depth_bounds(curve, coeffs.N(), u));
  const bool exact = coeffs.is_exact();
  auto base = base_terms(curve, coeffs, box);
  std::vector<LatticeEntry> entries;
  if (u == 1) {
    entries = std::move(base);
  } else if (plan.dense) {
    entries = dense_power(base, u, box, exact);
  } else {
    std::map<int, std::vector<LatticeEntry>> memo;
    entries = sparse_power(base, u, box.origin(), exact, memo);
  }
  return SparseLattice(std::move(box), u, exact, std::move(entries));
}

MomentValue even_moment(const SparseLattice& counts) {
  MomentValue m;
  m.u = counts.depth();
  m.exact = counts.is_exact();
  if (m.exact) {
    ExactAccumulator acc;
    for (const auto& e : counts.entries()) acc.add_norm(e.exact);
    m.exact_value = acc.value();
    m.value = to_double(*m.exact_value);
  } else {
    CompensatedSum acc;
    for (const auto& e : counts.entries()) acc.add(std::norm(e.value));
    m.value = acc.value();
  }
  return m;
}

MomentValue even_moment(const CurveSpec& curve, const CoefficientVector& coeffs, int u,
                        const CountingOptions& options) {
  const CountingPlan plan = plan_counts(curve, coeffs.N(), u, options);
  MomentValue m = even_moment(representation_counts(curve, coeffs, u, options));
  m.path = plan.dense ? MomentPath::dense : MomentPath::sparse;
  return m;
}

MomentValue brute_force_moment(const CurveSpec& curve, const CoefficientVector& coeffs, int u) {
  if (u < 1) throw Error(ErrorCode::InvalidArgument, "depth u must be at least 1");
  const int N = coeffs.N();
  const int width = 2 * N + 1;
  const int slots = 2 * u;
  if (std::pow(double(width), slots) > kOracleTupleLimit) {
    throw Error(ErrorCode::OracleTooLarge, "(2N+1)^(2u) exceeds the oracle limit of 1e8 tuples");
  }
  const int d = curve.dim();
  std::vector<std::vector<i128>> powers(static_cast<std::size_t>(d), std::vector<i128>(static_cast<std::size_t>(width)));
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < width; ++i) powers[j][i] = checked_pow(i - N, curve.exponents[j]);
  }
  const bool exact = coeffs.is_exact();

  struct Partial {
    ExactAccumulator re, im;
    ComplexCompensatedSum value;
  };
  std::vector<Partial> partials(static_cast<std::size_t>(width));

  // Chunk c fixes n_1 = c - N and enumerates the other 2u - 1 slots.
  for_each_chunk(static_cast<std::size_t>(width), 1, [&](std::size_t c, std::size_t, std::size_t) {
    std::vector<int> idx(static_cast<std::size_t>(slots), 0);
    idx[0] = static_cast<int>(c);
    Partial& out = partials[c];
    for (;;) {
      bool solves = true;
      for (int j = 0; j < d && solves; ++j) {
        i128 s = 0;
        for (int i = 0; i < u; ++i) s += powers[j][idx[i]] - powers[j][idx[u + i]];
        solves = (s == 0);
      }
      if (solves) {
        if (exact) {
          const auto& a = coeffs.exact_values();
          try {
            GaussianInt w{1, 0};
            for (int i = 0; i < u; ++i) w = w * a[idx[i]];
            for (int i = 0; i < u; ++i) w = w * a[idx[u + i]].conj();
            out.re.add(w.re);
            out.im.add(w.im);
          } catch (const Error&) {
            BigGaussian w{1, 0};
            for (int i = 0; i < u; ++i) w = multiply(w, to_big(a[idx[i]]));
            for (int i = 0; i < u; ++i) w = multiply(w, to_big(a[idx[u + i]].conj()));
            out.re.add(w.re);
            out.im.add(w.im);
          }
        } else {
          const auto& a = coeffs.values();
          std::complex<double> w = 1.0;
          for (int i = 0; i < u; ++i) w *= a[idx[i]];
          for (int i = 0; i < u; ++i) w *= std::conj(a[idx[u + i]]);
          out.value.add(w);
        }
      }
      int pos = slots - 1;
      while (pos >= 1 && ++idx[pos] == width) idx[pos--] = 0;
      if (pos < 1) break;
    }
  });

  MomentValue m;
  m.u = u;
  m.exact = exact;
  m.path = MomentPath::brute_force;
  if (exact) {
    ExactAccumulator re, im;
    for (const auto& p : partials) {
      re.add(p.re.value());
      im.add(p.im.value());
    }
    if (im.value() != 0) throw std::logic_error("brute-force moment has a nonzero imaginary part");
    m.exact_value = re.value();
    m.value = to_double(*m.exact_value);
  } else {
    ComplexCompensatedSum total;
    for (const auto& p : partials) total.add(p.value);
    m.value = total.value().real();
  }
  return m;
}

bool ShiftVector::is_zero() const noexcept {
  return std::all_of(h.begin(), h.end(), [](i128 x) { return x == 0; });
}

ShiftVector ShiftVector::negated() const {
  ShiftVector out{h};
  for (auto& x : out.h) x = -x;
  return out;
}

std::string ShiftVector::label() const {
  std::string s = "(";
  for (std::size_t j = 0; j < h.size(); ++j) s += (j ? "," : "") + to_string(h[j]);
  return s + ")";
}

void check_admissible(const CurveSpec& curve, const ShiftVector& shift) {
  if (shift.k() != curve.top) {
    throw Error(ErrorCode::InadmissibleShift, "shift must have length k = " + std::to_string(curve.top));
  }
  for (int e : curve.exponents) {
    if (shift.h[static_cast<std::size_t>(e - 1)] != 0) {
      throw Error(ErrorCode::InadmissibleShift, "h_" + std::to_string(e) + " must vanish for this curve");
    }
  }
}

namespace {

void add_product(ExactAccumulator& re, ExactAccumulator& im, const GaussianInt& a, const GaussianInt& b) {
  i128 rr, ii, ri, ir, r, i;
  if (!__builtin_mul_overflow(a.re, b.re, &rr) && !__builtin_mul_overflow(a.im, b.im, &ii) &&
      !__builtin_mul_overflow(a.re, b.im, &ri) && !__builtin_mul_overflow(a.im, b.re, &ir) &&
      !__builtin_sub_overflow(rr, ii, &r) && !__builtin_add_overflow(ri, ir, &i)) {
    re.add(r);
    im.add(i);
    return;
  }
  const auto p = multiply(to_big(a), to_big(b));
  re.add(p.re);
  im.add(p.im);
}

}  // namespace

ShiftedMoment shifted_moment(const SparseLattice& full_counts, const ShiftVector& shift) {
  if (shift.k() != full_counts.dim()) {
    throw Error(ErrorCode::InadmissibleShift, "shift length does not match the lattice dimension");
  }
  const bool exact = full_counts.is_exact();
  ExactAccumulator re, im;
  ComplexCompensatedSum sum;
  LatticePoint target(static_cast<std::size_t>(shift.k()));
  for (std::size_t i = 0; i < full_counts.size(); ++i) {
    const auto v = full_counts.point(i);
    bool inside = true;
    for (std::size_t j = 0; j < v.size() && inside; ++j) {
      target[j] = v[j] + shift.h[j];
      inside = target[j] <= full_counts.box().bounds()[j] && target[j] >= -full_counts.box().bounds()[j];
    }
    if (!inside) continue;
    const LatticeEntry* hit = full_counts.find(target);
    if (!hit) continue;
    const LatticeEntry& base = full_counts.entries()[i];
    if (exact) {
      add_product(re, im, hit->exact, base.exact.conj());
    } else {
      sum.add(hit->value * std::conj(base.value));
    }
  }
  ShiftedMoment out;
  out.exact = exact;
  if (exact) {
    out.exact_value = {re.value(), im.value()};
    out.value = {to_double(out.exact_value.re), to_double(out.exact_value.im)};
  } else {
    out.value = sum.value();
  }
  return out;
}

ShiftedMoment shifted_moment(const CurveSpec& curve, const CoefficientVector& coeffs, int u,
                             const ShiftVector& shift, const CountingOptions& options) {
  check_admissible(curve, shift);
  const auto counts = representation_counts(full_curve(curve.top), coeffs, u, options);
  return shifted_moment(counts, shift);
}

}  // namespace torus
