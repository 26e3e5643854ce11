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

#ifndef SLMQ_KRAUS_HPP_
#define SLMQ_KRAUS_HPP_

#include <cstdint>
#include <vector>

#include "slmq/core.hpp"
#include "slmq/transform.hpp"

namespace slmq {

// Convex sum of implementable transformations: displaying mask i for a
// fraction p_i of the time realizes rho -> sum_i p_i M_i rho M_i^dagger,
// i.e. Kraus elements K_i = sqrt(p_i) M_i.
struct KrausElement {
  double p = 1.0;
  TransformMatrix m;
};

struct KrausMap {
  std::vector<KrausElement> elements;
  int d() const { return elements.empty() ? 0 : elements.front().m.d; }
  int D() const { return elements.empty() ? 0 : elements.front().m.D; }
};

// Validates weights (sum 1 to 1e-12, each in (0,1]), matching shapes, and the
// trace-non-increasing condition sum_i p_i M_i^dagger M_i <= I to kTolEigen.
KrausMap make_kraus_map(std::vector<KrausElement> elements);

// rho' = sum_i p_i M_i rho M_i^dagger, symmetrized exactly.
DensityMatrix apply_map(const KrausMap& map, const DensityMatrix& rho);

// i.i.d. element indices for the time-multiplexed display, drawn with
// probabilities p_i from a deterministic seeded generator.
std::vector<int> schedule(const KrausMap& map, std::uint64_t total_windows,
                          std::uint64_t seed);

struct EmpiricalResult {
  DensityMatrix rho_hat;   // (1/W) sum_w M_{i(w)} rho M_{i(w)}^dagger
  double distance = 0.0;   // Frobenius distance to apply_map(map, rho)
};

EmpiricalResult empirical_map(const KrausMap& map, const DensityMatrix& rho,
                              std::uint64_t total_windows, std::uint64_t seed);

}  // namespace slmq

#endif  // SLMQ_KRAUS_HPP_
