// Copyright 2026 The slmq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SLMQ_TRANSFORM_HPP_
#define SLMQ_TRANSFORM_HPP_

#include <optional>
#include <vector>

#include "slmq/core.hpp"
#include "slmq/grating.hpp"

namespace slmq {

// Diffraction orders kept by the spatial filter: j1 <= j <= j2. The output
// dimension is d = j2 - j1 + 1 and row j' = j - j1 + 1 (rows ascend with j).
struct FilterWindow {
  int j1 = 0;
  int j2 = 0;
  int size() const { return j2 - j1 + 1; }
  bool contains(int j) const { return j >= j1 && j <= j2; }
};

void check_window(const FilterWindow& w);

struct ThroughputReport {
  double tau_literal = 0.0;          // sum over columns of the filtered fraction
  std::vector<double> column_kept;   // per column, sum_{j in window} |C_jl|^2
  double merge_probability = 1.0;    // 1/D
};

// The implemented d x D operation: row j' holds the order j = j1 + j' - 1
// Fourier coefficients of each column grating, scaled by 1/sqrt(D) when the
// interferometric merge factor is included.
struct TransformMatrix {
  int d = 0;
  int D = 0;
  std::vector<Complex> entries;  // row-major d x D
  FilterWindow window;
  bool include_merge_factor = true;
  ThroughputReport throughput;

  Complex at(int row, int col) const { return entries[size_t(row) * D + col]; }
  ComplexMatrix matrix() const;
};

// Assemble the matrix from one grating per input path. Every grating must
// respect the modulation cap.
TransformMatrix build_matrix(const std::vector<GratingSpec>& gratings,
                             const FilterWindow& window,
                             bool include_merge_factor = true);

// Replace grating l (1-based) by a sawtooth whose single diffraction order
// falls outside the window, so the column vanishes after filtering. The
// default order is j2 + 8, clamped to the modulation cap; if no cap-respecting
// order lies outside the window, errors advising a shorter grating period.
std::vector<GratingSpec> block_column(const std::vector<GratingSpec>& gratings,
                                      int l, const FilterWindow& window,
                                      std::optional<int> m_bar = std::nullopt);

struct ApplyResult {
  QuditStateVector state;       // unnormalized, norm^2 = postselection probability
  double probability = 0.0;     // merge x filtering
  QuditStateVector normalized;  // unit-norm state; zero vector if probability ~ 0
};

ApplyResult apply_to_state(const TransformMatrix& m, const QuditStateVector& psi);

struct MergeResult {
  QuditStateVector state;             // amplitudes scaled by 1/sqrt(D)
  double success_probability = 1.0;   // 1/D
  std::vector<double> step_factors;   // per-merge projection probabilities, product 1/D
};

// Interferometric merge of the D input paths, polarization bookkeeping
// abstracted to the amplitude scaling alpha_l -> alpha_l / sqrt(D).
MergeResult merge_paths(const QuditStateVector& psi);

// Per-order phase correction (a second modulator acting on the separated
// orders): row j' is multiplied by e^{i theta_j'}. Throughput is unchanged.
TransformMatrix phase_correct(const TransformMatrix& m,
                              const std::vector<double>& phases);

// Largest singular value; physicality means no amplification.
double largest_singular_value(const TransformMatrix& m);

}  // namespace slmq

#endif  // SLMQ_TRANSFORM_HPP_
