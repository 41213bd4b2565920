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
#include "grid_eval.hpp"

#include <cmath>
#include <mutex>
#include <numbers>

#include "torusmoments/error.hpp"

namespace torus::detail {

namespace {

// FFTW planning is not thread safe; execution with new arrays is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

FftwBuffer allocate(std::size_t n) {
  auto* p = static_cast<std::complex<double>*>(fftw_malloc(sizeof(std::complex<double>) * std::max<std::size_t>(n, 1)));
  if (!p) throw std::bad_alloc();
  return FftwBuffer(p);
}

std::int64_t residue(i128 value, std::int64_t modulus) {
  i128 r = value % modulus;
  if (r < 0) r += modulus;
  return static_cast<std::int64_t>(r);
}

fftw_complex* as_fftw(std::complex<double>* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

GridEvaluator::GridEvaluator(const CurveSpec& curve, const CoefficientVector& coeffs, const TorusGrid& grid)
    : coeffs_(coeffs.values()), dims_(grid.dims) {
  if (grid.dim() != curve.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "grid has " + std::to_string(grid.dim()) + " axes, curve has " +
                                                  std::to_string(curve.dim()));
  }
  for (auto m : dims_) {
    if (m < 1) throw Error(ErrorCode::InvalidArgument, "grid dimensions must be positive");
  }
  const int d = curve.dim();
  const int N = coeffs.N();
  const auto freqs = frequency_map(curve, N, 1);
  residues_.assign(static_cast<std::size_t>(d - 1), std::vector<std::int64_t>(coeffs_.size()));
  last_residue_.resize(coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    for (int j = 0; j + 1 < d; ++j) residues_[j][i] = residue(freqs[i][j], dims_[j]);
    last_residue_[i] = static_cast<std::size_t>(residue(freqs[i][d - 1], dims_[d - 1]));
  }
  for (int j = 0; j + 1 < d; ++j) slabs_ *= static_cast<std::size_t>(dims_[j]);
  length_ = static_cast<std::size_t>(dims_[d - 1]);

  auto a = allocate(length_);
  auto b = allocate(length_);
  std::lock_guard lock(planner_mutex());
  backward_ = fftw_plan_dft_1d(static_cast<int>(length_), as_fftw(a.get()), as_fftw(b.get()), FFTW_BACKWARD,
                               FFTW_ESTIMATE);
  forward_ = fftw_plan_dft_1d(static_cast<int>(length_), as_fftw(a.get()), as_fftw(b.get()), FFTW_FORWARD,
                              FFTW_ESTIMATE);
  if (!backward_ || !forward_) throw Error(ErrorCode::GridTooLarge, "FFTW could not plan the transform");
}

GridEvaluator::~GridEvaluator() {
  std::lock_guard lock(planner_mutex());
  if (backward_) fftw_destroy_plan(backward_);
  if (forward_) fftw_destroy_plan(forward_);
}

GridEvaluator::Workspace GridEvaluator::make_workspace() const {
  Workspace ws{allocate(length_), allocate(length_), allocate(length_), {}};
  ws.phase.resize(coeffs_.size());
  return ws;
}

void GridEvaluator::evaluate_slab(std::size_t slab, Workspace& ws) const {
  const std::size_t leading = dims_.size() - 1;
  std::vector<std::int64_t> node(leading);
  std::size_t rest = slab;
  for (std::size_t j = leading; j-- > 0;) {
    node[j] = static_cast<std::int64_t>(rest % static_cast<std::size_t>(dims_[j]));
    rest /= static_cast<std::size_t>(dims_[j]);
  }
  std::fill(ws.spectrum.get(), ws.spectrum.get() + length_, std::complex<double>{});
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    double frac = 0.0;
    for (std::size_t j = 0; j < leading; ++j) {
      const i128 r = (i128(node[j]) * residues_[j][i]) % dims_[j];
      frac += static_cast<double>(r) / static_cast<double>(dims_[j]);
    }
    frac -= std::floor(frac);
    const double angle = 2.0 * std::numbers::pi * frac;
    ws.phase[i] = {std::cos(angle), std::sin(angle)};
    ws.spectrum[last_residue_[i]] += coeffs_[i] * ws.phase[i];
  }
  fftw_execute_dft(backward_, as_fftw(ws.spectrum.get()), as_fftw(ws.values.get()));
}

void GridEvaluator::forward(const std::complex<double>* input, Workspace& ws) const {
  std::copy(input, input + length_, ws.spectrum.get());
  fftw_execute_dft(forward_, as_fftw(ws.spectrum.get()), as_fftw(ws.scratch.get()));
}

}  // namespace torus::detail
