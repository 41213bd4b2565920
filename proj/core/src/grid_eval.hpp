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
#pragma once

#include <fftw3.h>

#include <complex>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "torusmoments/coefficients.hpp"
#include "torusmoments/curve.hpp"
#include "torusmoments/parallel.hpp"
#include "torusmoments/quadrature.hpp"

namespace torus::detail {

struct FftwDeleter {
  void operator()(void* p) const noexcept { fftw_free(p); }
};
using FftwBuffer = std::unique_ptr<std::complex<double>[], FftwDeleter>;

// Evaluates F on a tensor grid one slab at a time. A slab fixes the nodes of
// the first d-1 axes; the last axis is filled by one inverse FFT of length
// M_d over the residues n^{k_d} mod M_d.
class GridEvaluator {
 public:
  static constexpr std::size_t kSlabsPerChunk = 4;

  struct Workspace {
    FftwBuffer spectrum;
    FftwBuffer values;
    FftwBuffer scratch;
    // e^{2 pi i sum_{j<d} alpha_j n^{k_j}} for the current slab, index n + N.
    std::vector<std::complex<double>> phase;
  };

  GridEvaluator(const CurveSpec& curve, const CoefficientVector& coeffs, const TorusGrid& grid);
  ~GridEvaluator();
  GridEvaluator(const GridEvaluator&) = delete;
  GridEvaluator& operator=(const GridEvaluator&) = delete;

  std::size_t slab_count() const noexcept { return slabs_; }
  std::size_t slab_length() const noexcept { return length_; }
  std::size_t chunk_count() const noexcept { return (slabs_ + kSlabsPerChunk - 1) / kSlabsPerChunk; }
  double node_count() const noexcept { return double(slabs_) * double(length_); }
  // Residue of n^{k_d} modulo M_d for index n + N.
  std::size_t last_residue(std::size_t index) const noexcept { return last_residue_[index]; }
  std::size_t coefficient_count() const noexcept { return coeffs_.size(); }

  Workspace make_workspace() const;
  // Fills ws.values with F on the slab and ws.phase with the slab phases.
  void evaluate_slab(std::size_t slab, Workspace& ws) const;
  // ws.scratch[m] = sum_l input[l] e^{-2 pi i l m / M_d}.
  void forward(const std::complex<double>* input, Workspace& ws) const;

  // body(chunk, slab, values, workspace) for every slab, chunks in parallel.
  template <class Body>
  void for_each_slab(Body&& body) const {
    for_each_chunk(slabs_, kSlabsPerChunk, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
      Workspace ws = make_workspace();
      for (std::size_t s = begin; s < end; ++s) {
        evaluate_slab(s, ws);
        body(chunk, s, std::span<const std::complex<double>>(ws.values.get(), length_), ws);
      }
    });
  }

 private:
  std::vector<std::complex<double>> coeffs_;
  std::vector<std::int64_t> dims_;
  // residues_[j][index] = n^{k_j} mod M_j for the leading axes.
  std::vector<std::vector<std::int64_t>> residues_;
  std::vector<std::size_t> last_residue_;
  std::size_t slabs_ = 1;
  std::size_t length_ = 1;
  fftw_plan backward_ = nullptr;
  fftw_plan forward_ = nullptr;
};

}  // namespace torus::detail
