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

#include "slmq/core.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Dense>

namespace slmq {

namespace {

Eigen::MatrixXcd to_eigen(const ComplexMatrix& m) {
  Eigen::MatrixXcd out(m.rows, m.cols);
  for (int r = 0; r < m.rows; ++r)
    for (int c = 0; c < m.cols; ++c) out(r, c) = m.at(r, c);
  return out;
}

}  // namespace

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& e : entries) s += std::norm(e);
  return std::sqrt(s);
}

double QuditStateVector::norm_sq() const {
  double s = 0.0;
  for (const auto& a : amps) s += std::norm(a);
  return s;
}

QuditStateVector QuditStateVector::normalized() const {
  double n = std::sqrt(norm_sq());
  if (n < 1e-15)
    throw Error(ErrorCode::numeric, "cannot normalize a zero state");
  QuditStateVector out = *this;
  for (auto& a : out.amps) a /= n;
  return out;
}

void check_state(const QuditStateVector& psi) {
  if (psi.amps.empty())
    throw Error(ErrorCode::invalid_argument, "state has dimension 0");
  for (const auto& a : psi.amps)
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
      throw Error(ErrorCode::invalid_argument, "state has non-finite amplitude");
  double n = psi.norm_sq();
  if (!(n > 0.0) || n > 1.0 + kTolExact)
    throw Error(ErrorCode::invalid_argument,
                "state norm^2 must lie in (0, 1], got " + std::to_string(n));
}

double fidelity(const QuditStateVector& a, const QuditStateVector& b) {
  if (a.dim() != b.dim())
    throw Error(ErrorCode::dimension_mismatch,
                "fidelity: dimension mismatch " + std::to_string(a.dim()) +
                    " vs " + std::to_string(b.dim()));
  Complex ov{0.0, 0.0};
  for (int i = 0; i < a.dim(); ++i) ov += std::conj(a.amps[i]) * b.amps[i];
  double na = a.norm_sq(), nb = b.norm_sq();
  if (na <= 0.0 || nb <= 0.0)
    throw Error(ErrorCode::invalid_argument, "fidelity of a zero state");
  return std::norm(ov) / (na * nb);
}

double DensityMatrix::trace_real() const {
  double t = 0.0;
  for (int i = 0; i < dim(); ++i) t += at(i, i).real();
  return t;
}

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_eigen(m),
                                                     Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double DensityMatrix::hermiticity_defect() const {
  double worst = 0.0;
  for (int r = 0; r < dim(); ++r)
    for (int c = 0; c < dim(); ++c)
      worst = std::max(worst, std::abs(at(r, c) - std::conj(at(c, r))));
  return worst;
}

void check_density_matrix(const DensityMatrix& rho) {
  if (rho.dim() <= 0)
    throw Error(ErrorCode::invalid_argument, "density matrix has dimension 0");
  if (rho.hermiticity_defect() > kTolExact)
    throw Error(ErrorCode::invalid_argument, "density matrix is not Hermitian");
  double tr = rho.trace_real();
  if (!(tr > 0.0) || tr > 1.0 + kTolExact)
    throw Error(ErrorCode::invalid_argument,
                "density matrix trace must lie in (0, 1], got " + std::to_string(tr));
  if (rho.min_eigenvalue() < -kTolEigen)
    throw Error(ErrorCode::invalid_argument, "density matrix is not PSD");
}

DensityMatrix pure_density(const QuditStateVector& psi) {
  DensityMatrix rho(psi.dim());
  for (int r = 0; r < psi.dim(); ++r)
    for (int c = 0; c < psi.dim(); ++c)
      rho.at(r, c) = psi.amps[r] * std::conj(psi.amps[c]);
  return rho;
}

DensityMatrix maximally_mixed(int dim) {
  if (dim <= 0) throw Error(ErrorCode::invalid_argument, "dimension must be >= 1");
  DensityMatrix rho(dim);
  for (int i = 0; i < dim; ++i) rho.at(i, i) = Complex{1.0 / dim, 0.0};
  return rho;
}

double ModeGeometry::delta_y() const { return 2.0 * std::numbers::pi * f / (T * k); }

double ModeGeometry::omega_f() const { return 2.0 * f / (omega_z * k); }

std::vector<GeometryViolation> validate_geometry(const ModeGeometry& g) {
  std::vector<GeometryViolation> out;
  auto positive = [&out](double v, const char* name) {
    if (!(v > 0.0)) out.push_back({std::string(name) + " > 0", v});
  };
  positive(g.omega_z, "omega_z");
  positive(g.chi, "chi");
  positive(g.T, "T");
  positive(g.f, "f");
  positive(g.k, "k");
  positive(g.pixel_len, "pixel_len");
  if (g.D < 1) out.push_back({"D >= 1", double(g.D)});
  if (g.N < 1) out.push_back({"N >= 1", double(g.N)});
  if (!out.empty()) return out;

  // Input orthogonality: Gaussians spaced by chi overlap negligibly.
  double margin_in = g.chi - 2.0 * g.omega_z;
  if (margin_in <= 0.0) out.push_back({"chi > 2*omega_z", margin_in});
  // Output orthogonality: diffraction orders spaced by delta_y overlap negligibly.
  double margin_out = std::numbers::pi * g.omega_z / 2.0 - g.T;
  if (margin_out <= 0.0) out.push_back({"T < pi*omega_z/2", margin_out});
  // Pixel grid consistency.
  double rel = std::abs(double(g.N) * g.pixel_len - g.T) / g.T;
  if (rel > kTolExact) out.push_back({"N*pixel_len == T", rel});
  return out;
}

}  // namespace slmq
