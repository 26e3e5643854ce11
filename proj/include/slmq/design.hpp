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

#ifndef SLMQ_DESIGN_HPP_
#define SLMQ_DESIGN_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "slmq/core.hpp"
#include "slmq/grating.hpp"
#include "slmq/transform.hpp"

namespace slmq {

struct ParameterRanges {
  double phi_min = -kModulationCap;
  double phi_max = kModulationCap;
  double phi_step = 3.14159265358979323846 / 16.0;   // coarse grid
  double theta_step = 3.14159265358979323846 / 8.0;  // coarse grid
};

// Find per-column gratings whose windowed coefficients reproduce the target
// matrix up to one shared complex scale.
struct DesignProblem {
  ComplexMatrix target;  // d rows x D columns, d == window size
  FilterWindow window;
  std::vector<Family> families{Family::Sawtooth, Family::Binary,
                               Family::Triangular, Family::Constant};
  ParameterRanges ranges;
  std::optional<int> pixelation;  // search pixel shifts when present
  long budget = 100000;           // candidate evaluations
};

struct DesignResult {
  std::vector<GratingSpec> gratings;
  double residual = 0.0;
  Complex scale{0.0, 0.0};
  long evaluations = 0;
  std::uint64_t seed = 0;
};

// Scale-optimal Frobenius residual: min over complex c of ||c*pred - target||_F,
// attained at c = <pred, target> / ||pred||_F^2. Zero iff proportional.
std::pair<double, Complex> residual(const ComplexMatrix& pred,
                                    const ComplexMatrix& target);
std::pair<double, Complex> residual(const TransformMatrix& pred,
                                    const ComplexMatrix& target);

// Two stages: a per-column coarse grid over (family, phi, shift), seeded from
// the scale-free column directions, then joint coordinate descent with
// shrinking steps on (phi, theta, shift), under the 8*pi cap. Deterministic
// for a fixed seed; returns the best found, no global-optimality claim.
DesignResult search(const DesignProblem& problem, std::uint64_t seed);

}  // namespace slmq

#endif  // SLMQ_DESIGN_HPP_
