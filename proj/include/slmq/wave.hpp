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

#ifndef SLMQ_WAVE_HPP_
#define SLMQ_WAVE_HPP_

#include <vector>

#include "slmq/core.hpp"
#include "slmq/grating.hpp"
#include "slmq/transform.hpp"

namespace slmq {

// 1D sampling grid. Samples sit at cell midpoints, y_n = -span/2 + (n+1/2)*dy,
// so pixel boundaries are never hit exactly.
struct SamplingParams {
  double span = 0.0;  // meters
  double dy = 0.0;    // meters
};

// span = 16*max(omega_z, 4T); dy = omega_z/64, tightened to pixel_len/16 when
// a pixelated grating is present. Resolves both the envelope and pixel steps.
SamplingParams default_sampling(const ModeGeometry& geom, bool pixelated);

struct SampledField {
  double y_start = 0.0;  // coordinate of sample 0
  double dy = 0.0;
  std::vector<Complex> values;

  int size() const { return int(values.size()); }
  double y_at(int n) const { return y_start + n * dy; }
  double power() const;  // discrete norm^2
};

// Gaussian envelope modulated by the grating phase, unit discrete norm:
// v_n = G_z(y_n) e^{i Phi(y_n mod T)}. Checks the geometry and grid adequacy.
SampledField sample_field(const GratingSpec& g, const ModeGeometry& geom,
                          const SamplingParams& grid);

// Unitary discrete Fourier transform mapped to the lens focal plane,
// y = f*k_y/k. Energy is conserved exactly.
SampledField far_field(const SampledField& in, const ModeGeometry& geom);

// Overlap of the focal-plane field with unit-norm Gaussian modes centered at
// y_j = j*delta_y for each order in the window.
std::vector<Complex> project_modes(const SampledField& ff,
                                   const ModeGeometry& geom,
                                   const FilterWindow& window);

struct PipelineReport {
  std::vector<Complex> beta_wave;    // grid-simulated amplitudes, window order
  std::vector<Complex> beta_matrix;  // matrix-path amplitudes
  double global_phase = 0.0;         // alignment applied to beta_wave
  double max_rel_error = 0.0;        // max_j |dβ_j| / max_j |β_matrix| after alignment
  double aligned_distance = 0.0;     // L2 distance after alignment
  double merged_power = 0.0;         // field norm^2 after the coherent merge
  double kept_power = 0.0;           // sum over window of |beta_wave|^2
  double mode_capture = 0.0;         // power recovered over a wide order range
  double leak = 0.0;                 // merged_power - mode_capture
};

// First-principles check: sample each path's modulated field, propagate to the
// focal plane, merge coherently with the 1/sqrt(D) factor, project onto the
// output modes, and compare with the matrix path.
PipelineReport simulate_pipeline(const std::vector<GratingSpec>& gratings,
                                 const QuditStateVector& psi,
                                 const ModeGeometry& geom,
                                 const FilterWindow& window,
                                 const SamplingParams& grid);

}  // namespace slmq

#endif  // SLMQ_WAVE_HPP_
