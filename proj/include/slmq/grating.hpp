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

#ifndef SLMQ_GRATING_HPP_
#define SLMQ_GRATING_HPP_

#include <optional>
#include <vector>

#include "slmq/core.hpp"

namespace slmq {

// Phase excursion a realistic modulator can impose, peak to peak.
inline constexpr double kModulationCap = 8.0 * 3.14159265358979323846;

// sin(x)/x with sinc(0) = 1. Fixed convention throughout.
double sinc(double x);

enum class Family { Sawtooth, Binary, Triangular, Constant, Tabulated };

// One phase-grating profile over a single period, position measured as the
// fraction u = y/T in [0, 1).
//
//   Sawtooth(phi)   : phi * u
//   Binary(phi)     : 0 on [0, 1/2), phi on [1/2, 1)
//   Triangular(phi) : 2*phi*min(u, 1-u)   (valley at 0, peak phi at 1/2)
//   Constant(theta) : theta
//   Tabulated       : one phase per pixel, pixelation required
//
// With pixelation N the profile is sampled at each pixel's left edge and held
// constant across the pixel; shift_pixels relabels pixel n -> n - p cyclically.
// composed_with entries add their profiles pointwise.
struct GratingSpec {
  Family family = Family::Constant;
  double phi = 0.0;                     // sawtooth/binary/triangular modulation (rad)
  double theta = 0.0;                   // constant phase (rad)
  std::vector<double> phases;           // tabulated pixel phases (rad)
  std::optional<int> pixels;            // N per period; absent = ideal continuous
  int shift_pixels = 0;                 // meaningful only with pixelation
  std::vector<GratingSpec> composed_with;

  static GratingSpec sawtooth(double phi);
  static GratingSpec binary(double phi);
  static GratingSpec triangular(double phi);
  static GratingSpec constant(double theta);
  static GratingSpec tabulated(std::vector<double> pixel_phases);

  GratingSpec with_pixels(int n) const;
  GratingSpec with_shift(int p) const;

  friend bool operator==(const GratingSpec& a, const GratingSpec& b);
};

// Structural checks (tabulated length, shift without pixels, ...). Throws.
void check_spec(const GratingSpec& g);

// Exact piecewise-linear representation of the fully composed profile over one
// period: phase(u) = a + b*(u - u0) on [u0, u1). Segments tile [0, 1).
struct PhaseSegment {
  double u0, u1;
  double a, b;
  double value_at(double u) const { return a + b * (u - u0); }
  double left_value() const { return a; }
  double right_value() const { return a + b * (u1 - u0); }
};
std::vector<PhaseSegment> profile_segments(const GratingSpec& g);

// Lookup into a segment list built by profile_segments. Binary search; callers
// holding many evaluations should reuse the segment list.
double segments_phase_at(const std::vector<PhaseSegment>& segs, double u);

// Composed profile phase at period fraction u in [0, 1).
double phase_at(const GratingSpec& g, double u);

// Peak-to-peak phase of the fully composed profile (radians). Values above
// kModulationCap are physically unrealizable; build/compose enforce that.
double validate_modulation(const GratingSpec& g);

// Closed-form Fourier coefficient of an ideal (continuous) grating,
//   C_j = (1/T) \int_0^T e^{i Phi(y)} e^{-2 pi i j y / T} dy.
// Supports sawtooth/binary/triangular/constant, possibly composed with
// Constant(theta) terms and continuous Sawtooth(2 pi m) index shifts.
// Throws ErrorCode::invalid_argument for anything else.
Complex coeff_ideal(const GratingSpec& g, int j);

// Exact coefficient of the piecewise-constant (pixelated) profile:
//   C_j = sinc(pi j / N) * (1/N) * sum_n e^{i Phi_n} e^{-i pi j (2n+1)/N}.
// Requires the composed profile to live on one uniform pixel grid.
Complex coeff_pixelated(const GratingSpec& g, int j);

// Pixel phases of the fully composed profile, when it is uniform on a single
// N-pixel grid (base pixelated/tabulated; composed parts constant or on the
// same grid). Empty optional otherwise.
std::optional<std::vector<double>> uniform_pixel_phases(const GratingSpec& g);

struct QuadratureResult {
  Complex value;
  double err_estimate;  // Richardson comparison at n and 2n panels
  bool converged;       // err_estimate <= 1e-8
};

// Independent oracle: composite Gauss-Legendre integration of the exact
// profile, split at every breakpoint. Works for any spec. samples is the
// panel count of the coarse pass; requires samples >= 64*(|j|+1).
QuadratureResult coeff_quadrature(const GratingSpec& g, int j, int samples);

// Best available coefficient: exact pixel sum when the profile lives on a
// uniform grid, closed form for ideal supported shapes, quadrature otherwise.
Complex coefficient(const GratingSpec& g, int j);

// Transverse displacement by p pixels; coefficients pick up e^{-2 pi i j p/N}.
GratingSpec displace(const GratingSpec& g, int p);

// Pointwise profile sum. Throws ErrorCode::modulation_cap if the combined
// peak-to-peak modulation exceeds kModulationCap.
GratingSpec compose(const GratingSpec& g1, const GratingSpec& g2);

struct CoeffTable {
  int j_min = 0;
  int j_max = 0;
  std::vector<Complex> coeffs;        // j_max - j_min + 1 entries
  double captured_fraction = 0.0;     // sum |C_j|^2 over the table

  Complex at(int j) const { return coeffs[size_t(j - j_min)]; }
};
CoeffTable coeff_table(const GratingSpec& g, int j_min, int j_max);

}  // namespace slmq

#endif  // SLMQ_GRATING_HPP_
