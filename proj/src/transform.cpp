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

#include "slmq/transform.hpp"

#include <cmath>
#include <string>

#include <Eigen/Dense>
#include <Eigen/SVD>

namespace slmq {

void check_window(const FilterWindow& w) {
  if (w.j1 > w.j2)
    throw Error(ErrorCode::invalid_argument,
                "filter window requires j1 <= j2, got [" +
                    std::to_string(w.j1) + ", " + std::to_string(w.j2) + "]");
}

ComplexMatrix TransformMatrix::matrix() const {
  ComplexMatrix m(d, D);
  m.entries = entries;
  return m;
}

TransformMatrix build_matrix(const std::vector<GratingSpec>& gratings,
                             const FilterWindow& window,
                             bool include_merge_factor) {
  check_window(window);
  int D = int(gratings.size());
  if (D < 1) throw Error(ErrorCode::invalid_argument, "D must be >= 1");
  for (int l = 0; l < D; ++l) {
    double peak = validate_modulation(gratings[size_t(l)]);
    if (peak > kModulationCap + 1e-9)
      throw Error(ErrorCode::modulation_cap,
                  "grating for column " + std::to_string(l + 1) +
                      " has peak modulation " + std::to_string(peak) +
                      " rad, above the 8*pi maximum");
  }

  TransformMatrix m;
  m.d = window.size();
  m.D = D;
  m.window = window;
  m.include_merge_factor = include_merge_factor;
  m.entries.assign(size_t(m.d) * D, Complex{0.0, 0.0});
  m.throughput.merge_probability = 1.0 / D;
  m.throughput.column_kept.resize(size_t(D), 0.0);

  double scale = include_merge_factor ? 1.0 / std::sqrt(double(D)) : 1.0;
  for (int l = 0; l < D; ++l) {
    double kept = 0.0;
    for (int j = window.j1; j <= window.j2; ++j) {
      Complex c = coefficient(gratings[size_t(l)], j);
      kept += std::norm(c);
      m.entries[size_t(j - window.j1) * D + l] = scale * c;
    }
    m.throughput.column_kept[size_t(l)] = kept;
    m.throughput.tau_literal += 1.0 - kept;
  }
  return m;
}

std::vector<GratingSpec> block_column(const std::vector<GratingSpec>& gratings,
                                      int l, const FilterWindow& window,
                                      std::optional<int> m_bar) {
  check_window(window);
  if (l < 1 || l > int(gratings.size()))
    throw Error(ErrorCode::invalid_argument,
                "block_column: column index out of range");
  // Largest order realizable under the modulation cap: 2*pi*m <= 8*pi.
  const int cap_order = 4;
  int m;
  if (m_bar) {
    m = *m_bar;
    if (window.contains(m))
      throw Error(ErrorCode::invalid_argument,
                  "block_column: requested order lies inside the window");
    if (std::abs(m) > cap_order)
      throw Error(ErrorCode::modulation_cap,
                  "block_column: order " + std::to_string(m) +
                      " needs modulation above 8*pi; use a shorter grating "
                      "period to separate the orders instead");
  } else {
    if (window.j2 + 8 <= cap_order)
      m = window.j2 + 8;
    else if (window.j2 < cap_order)
      m = cap_order;
    else if (window.j1 > -cap_order)
      m = -cap_order;
    else
      throw Error(ErrorCode::modulation_cap,
                  "block_column: no order outside the window is reachable "
                  "under the 8*pi cap; use a shorter grating period to "
                  "separate the orders instead");
  }
  auto out = gratings;
  out[size_t(l - 1)] = GratingSpec::sawtooth(2.0 * std::acos(-1.0) * m);
  return out;
}

ApplyResult apply_to_state(const TransformMatrix& m, const QuditStateVector& psi) {
  if (psi.dim() != m.D)
    throw Error(ErrorCode::dimension_mismatch,
                "apply_to_state: state dimension " + std::to_string(psi.dim()) +
                    " does not match matrix D = " + std::to_string(m.D));
  ApplyResult out;
  out.state.amps.assign(size_t(m.d), Complex{0.0, 0.0});
  for (int r = 0; r < m.d; ++r) {
    Complex acc{0.0, 0.0};
    for (int c = 0; c < m.D; ++c) acc += m.at(r, c) * psi.amps[size_t(c)];
    out.state.amps[size_t(r)] = acc;
  }
  out.probability = out.state.norm_sq();
  if (out.probability > 1e-30) {
    out.normalized = out.state.normalized();
  } else {
    out.normalized.amps.assign(size_t(m.d), Complex{0.0, 0.0});
  }
  return out;
}

MergeResult merge_paths(const QuditStateVector& psi) {
  check_state(psi);
  double n = psi.norm_sq();
  if (std::abs(n - 1.0) > 1e-9)
    throw Error(ErrorCode::invalid_argument,
                "merge_paths expects a normalized input state");
  int D = psi.dim();
  MergeResult out;
  out.state = psi;
  double s = 1.0 / std::sqrt(double(D));
  for (auto& a : out.state.amps) a *= s;
  out.success_probability = 1.0 / D;
  // Merging path p into the bundle postselects polarization with probability
  // (p-1)/p; the product over p = 2..D telescopes to 1/D.
  for (int p = 2; p <= D; ++p)
    out.step_factors.push_back(double(p - 1) / double(p));
  return out;
}

TransformMatrix phase_correct(const TransformMatrix& m,
                              const std::vector<double>& phases) {
  if (int(phases.size()) != m.d)
    throw Error(ErrorCode::dimension_mismatch,
                "phase_correct: need exactly d = " + std::to_string(m.d) +
                    " phases, got " + std::to_string(phases.size()));
  TransformMatrix out = m;
  for (int r = 0; r < m.d; ++r) {
    Complex rot = std::polar(1.0, phases[size_t(r)]);
    for (int c = 0; c < m.D; ++c) out.entries[size_t(r) * m.D + c] *= rot;
  }
  return out;
}

double largest_singular_value(const TransformMatrix& m) {
  Eigen::MatrixXcd em(m.d, m.D);
  for (int r = 0; r < m.d; ++r)
    for (int c = 0; c < m.D; ++c) em(r, c) = m.at(r, c);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(em);
  return svd.singularValues()(0);
}

}  // namespace slmq
