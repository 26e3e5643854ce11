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

#ifndef SLMQ_CORE_HPP_
#define SLMQ_CORE_HPP_

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace slmq {

using Complex = std::complex<double>;

// Tolerances, stated once and reused everywhere:
// exact arithmetic paths use kTolExact, eigenvalue checks use kTolEigen.
inline constexpr double kTolExact = 1e-12;
inline constexpr double kTolEigen = 1e-10;

enum class ErrorCode {
  invalid_argument,
  parse,
  dimension_mismatch,
  modulation_cap,
  numeric,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Dense complex matrix, row-major. Used for design targets and as the
// storage layer under DensityMatrix.
struct ComplexMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<Complex> entries;  // rows*cols, row-major

  ComplexMatrix() = default;
  ComplexMatrix(int r, int c) : rows(r), cols(c), entries(size_t(r) * c) {}

  Complex& at(int r, int c) { return entries[size_t(r) * cols + c]; }
  const Complex& at(int r, int c) const { return entries[size_t(r) * cols + c]; }
  double frobenius_norm() const;
};

// Amplitude vector over path modes. The squared norm carries the accumulated
// postselection probability, so freshly prepared states have norm 1 and
// downstream operations are free to return sub-normalized values.
struct QuditStateVector {
  std::vector<Complex> amps;

  QuditStateVector() = default;
  explicit QuditStateVector(std::vector<Complex> a) : amps(std::move(a)) {}

  int dim() const { return static_cast<int>(amps.size()); }
  double norm_sq() const;
  // Unit-norm copy; throws on (numerically) zero states.
  QuditStateVector normalized() const;
};

// Checks the prepared-state invariant: finite amplitudes, 0 < ||psi||^2 <= 1 + kTolExact.
void check_state(const QuditStateVector& psi);

// |<a|b>|^2 / (||a||^2 ||b||^2). Symmetric, global-phase invariant.
double fidelity(const QuditStateVector& a, const QuditStateVector& b);

struct DensityMatrix {
  ComplexMatrix m;

  DensityMatrix() = default;
  explicit DensityMatrix(int dim) : m(dim, dim) {}

  int dim() const { return m.rows; }
  Complex& at(int r, int c) { return m.at(r, c); }
  const Complex& at(int r, int c) const { return m.at(r, c); }
  double trace_real() const;
  double min_eigenvalue() const;
  double hermiticity_defect() const;  // max |rho - rho^dagger| entry
};

// Hermitian to kTolExact, eigenvalues >= -kTolEigen, 0 < trace <= 1 + kTolExact.
void check_density_matrix(const DensityMatrix& rho);

DensityMatrix pure_density(const QuditStateVector& psi);
DensityMatrix maximally_mixed(int dim);

// Physical mode geometry. Lengths in meters, wavenumber in 1/m.
struct ModeGeometry {
  double omega_z = 0.0;   // Gaussian beam radius
  double chi = 0.0;       // center-to-center path spacing (input, x direction)
  int D = 0;              // number of input paths
  double T = 0.0;         // grating period (y direction)
  double f = 0.0;         // cylindrical lens focal length
  double k = 0.0;         // wavenumber 2*pi/lambda
  double pixel_len = 0.0; // pixel size along y
  int N = 0;              // pixels per grating period, N * pixel_len = T

  // Diffraction-order spacing at the focal plane, 2*pi*f/(T*k).
  double delta_y() const;
  // Focal-plane Gaussian radius, 2*f/(omega_z*k).
  double omega_f() const;
};

struct GeometryViolation {
  std::string predicate;  // e.g. "chi > 2*omega_z"
  double margin;          // how far past the boundary, negative = violated
};

// Report-style check: empty result iff the input/output orthogonality
// predicates hold and N * pixel_len == T to 1e-12 relative. Pure.
std::vector<GeometryViolation> validate_geometry(const ModeGeometry& g);

}  // namespace slmq

#endif  // SLMQ_CORE_HPP_
