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

#include "slmq/kraus.hpp"

#include <cmath>
#include <random>
#include <string>

#include <Eigen/Dense>

namespace slmq {

namespace {

// Uniform double in [0, 1) from the top 53 bits; identical across platforms.
double uniform01(std::mt19937_64& rng) {
  return double(rng() >> 11) * 0x1.0p-53;
}

Eigen::MatrixXcd to_eigen(const TransformMatrix& m) {
  Eigen::MatrixXcd out(m.d, m.D);
  for (int r = 0; r < m.d; ++r)
    for (int c = 0; c < m.D; ++c) out(r, c) = m.at(r, c);
  return out;
}

DensityMatrix conjugate(const TransformMatrix& m, const DensityMatrix& rho) {
  DensityMatrix out(m.d);
  // out = M rho M^dagger
  for (int r = 0; r < m.d; ++r) {
    for (int c = 0; c < m.d; ++c) {
      Complex acc{0.0, 0.0};
      for (int a = 0; a < m.D; ++a) {
        Complex left = m.at(r, a);
        if (left == Complex{0.0, 0.0}) continue;
        for (int b = 0; b < m.D; ++b)
          acc += left * rho.at(a, b) * std::conj(m.at(c, b));
      }
      out.at(r, c) = acc;
    }
  }
  return out;
}

void symmetrize(DensityMatrix& rho) {
  for (int r = 0; r < rho.dim(); ++r)
    for (int c = r; c < rho.dim(); ++c) {
      Complex v = 0.5 * (rho.at(r, c) + std::conj(rho.at(c, r)));
      rho.at(r, c) = v;
      rho.at(c, r) = std::conj(v);
    }
}

double frobenius_distance(const DensityMatrix& a, const DensityMatrix& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.m.entries.size(); ++i)
    s += std::norm(a.m.entries[i] - b.m.entries[i]);
  return std::sqrt(s);
}

}  // namespace

KrausMap make_kraus_map(std::vector<KrausElement> elements) {
  if (elements.empty())
    throw Error(ErrorCode::invalid_argument, "Kraus map needs at least one element");
  int d = elements.front().m.d, D = elements.front().m.D;
  double total = 0.0;
  for (const auto& e : elements) {
    if (!(e.p > 0.0) || e.p > 1.0)
      throw Error(ErrorCode::invalid_argument, "Kraus weights must lie in (0, 1]");
    if (e.m.d != d || e.m.D != D)
      throw Error(ErrorCode::dimension_mismatch,
                  "Kraus elements must share the same shape");
    total += e.p;
  }
  if (std::abs(total - 1.0) > kTolExact)
    throw Error(ErrorCode::invalid_argument,
                "Kraus weights must sum to 1, got " + std::to_string(total));

  // Trace non-increasing: sum_i p_i M_i^dagger M_i <= I.
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(D, D);
  for (const auto& e : elements) {
    Eigen::MatrixXcd em = to_eigen(e.m);
    acc += e.p * (em.adjoint() * em);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(acc, Eigen::EigenvaluesOnly);
  double top = es.eigenvalues().maxCoeff();
  if (top > 1.0 + kTolEigen)
    throw Error(ErrorCode::invalid_argument,
                "Kraus map amplifies: max eigenvalue of sum p M^t M is " +
                    std::to_string(top));

  KrausMap map;
  map.elements = std::move(elements);
  return map;
}

DensityMatrix apply_map(const KrausMap& map, const DensityMatrix& rho) {
  if (map.elements.empty())
    throw Error(ErrorCode::invalid_argument, "empty Kraus map");
  if (rho.dim() != map.D())
    throw Error(ErrorCode::dimension_mismatch,
                "apply_map: density matrix dimension " + std::to_string(rho.dim()) +
                    " does not match map D = " + std::to_string(map.D()));
  DensityMatrix out(map.d());
  for (const auto& e : map.elements) {
    DensityMatrix term = conjugate(e.m, rho);
    for (size_t i = 0; i < out.m.entries.size(); ++i)
      out.m.entries[i] += e.p * term.m.entries[i];
  }
  symmetrize(out);
  double tr_in = rho.trace_real(), tr_out = out.trace_real();
  if (tr_out > tr_in + kTolExact)
    throw Error(ErrorCode::numeric, "apply_map increased the trace");
  return out;
}

std::vector<int> schedule(const KrausMap& map, std::uint64_t total_windows,
                          std::uint64_t seed) {
  if (map.elements.empty())
    throw Error(ErrorCode::invalid_argument, "empty Kraus map");
  if (total_windows < 1)
    throw Error(ErrorCode::invalid_argument, "total_windows must be >= 1");
  std::vector<double> cdf;
  cdf.reserve(map.elements.size());
  double acc = 0.0;
  for (const auto& e : map.elements) cdf.push_back(acc += e.p);
  cdf.back() = 1.0;

  std::mt19937_64 rng(seed);
  std::vector<int> out;
  out.reserve(size_t(total_windows));
  for (std::uint64_t w = 0; w < total_windows; ++w) {
    double u = uniform01(rng);
    int idx = 0;
    while (u >= cdf[size_t(idx)] && idx + 1 < int(cdf.size())) ++idx;
    out.push_back(idx);
  }
  return out;
}

EmpiricalResult empirical_map(const KrausMap& map, const DensityMatrix& rho,
                              std::uint64_t total_windows, std::uint64_t seed) {
  if (rho.dim() != map.D())
    throw Error(ErrorCode::dimension_mismatch,
                "empirical_map: density matrix dimension does not match map");
  std::vector<std::uint64_t> counts(map.elements.size(), 0);
  for (int idx : schedule(map, total_windows, seed)) ++counts[size_t(idx)];

  DensityMatrix hat(map.d());
  for (size_t i = 0; i < map.elements.size(); ++i) {
    if (counts[i] == 0) continue;
    DensityMatrix term = conjugate(map.elements[i].m, rho);
    double w = double(counts[i]) / double(total_windows);
    for (size_t e = 0; e < hat.m.entries.size(); ++e)
      hat.m.entries[e] += w * term.m.entries[e];
  }
  symmetrize(hat);

  EmpiricalResult res;
  res.rho_hat = hat;
  res.distance = frobenius_distance(hat, apply_map(map, rho));
  return res;
}

}  // namespace slmq
