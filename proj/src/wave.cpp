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

#include "slmq/wave.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <fftw3.h>

namespace slmq {

namespace {

constexpr double kPi = std::numbers::pi;

bool has_pixelation(const GratingSpec& g) {
  if (g.pixels) return true;
  for (const auto& c : g.composed_with)
    if (has_pixelation(c)) return true;
  return false;
}

double wrap_unit(double u) {
  double r = u - std::floor(u);
  return r >= 1.0 ? 0.0 : r;
}

void require_valid_geometry(const ModeGeometry& geom) {
  auto violations = validate_geometry(geom);
  if (violations.empty()) return;
  std::string msg = "geometry violated:";
  for (const auto& v : violations) msg += " [" + v.predicate + "]";
  throw Error(ErrorCode::invalid_argument, msg);
}

// Unitary DFT evaluated at the physical sample positions: for the signed bin
// m, F_m = (1/sqrt(M)) sum_n v_n e^{-i k_m y_n} with k_m = 2 pi m/(M dy).
std::vector<Complex> unitary_dft(const std::vector<Complex>& v, double y_start,
                                 double dy) {
  int m_count = int(v.size());
  std::vector<Complex> fft(v.size());
  fftw_plan plan = fftw_plan_dft_1d(
      m_count,
      reinterpret_cast<fftw_complex*>(const_cast<Complex*>(v.data())),
      reinterpret_cast<fftw_complex*>(fft.data()), FFTW_FORWARD, FFTW_ESTIMATE);
  fftw_execute(plan);
  fftw_destroy_plan(plan);

  std::vector<Complex> out(v.size());
  double inv_sqrt = 1.0 / std::sqrt(double(m_count));
  for (int i = 0; i < m_count; ++i) {
    int m_signed = i - m_count / 2;
    int m_fft = m_signed < 0 ? m_signed + m_count : m_signed;
    double k_m = 2.0 * kPi * double(m_signed) / (double(m_count) * dy);
    out[size_t(i)] = inv_sqrt * std::polar(1.0, -k_m * y_start) * fft[size_t(m_fft)];
  }
  return out;
}

}  // namespace

SamplingParams default_sampling(const ModeGeometry& geom, bool pixelated) {
  SamplingParams p;
  p.span = 16.0 * std::max(geom.omega_z, 4.0 * geom.T);
  p.dy = geom.omega_z / 64.0;
  if (pixelated) p.dy = std::min(p.dy, geom.pixel_len / 16.0);
  return p;
}

double SampledField::power() const {
  double s = 0.0;
  for (const auto& v : values) s += std::norm(v);
  return s;
}

namespace {

// 5-point Gauss-Legendre nodes and weights on [-1, 1].
constexpr double kGlx[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                            0.5384693101056831, 0.9061798459386640};
constexpr double kGlw[5] = {0.2369268850561891, 0.4786286704993665,
                            0.5688888888888889, 0.4786286704993665,
                            0.2369268850561891};

// Triangle-kernel sample of G(y) e^{i Phi(y mod T)} at y_c: the convolution
// (f * tri_dy)(y_c) with tri the unit-mass triangle of half-width dy. Its
// sinc^2 spectrum suppresses jump-tail aliases quadratically. The integral is
// split at every profile breakpoint and at the kernel's kink (so phase steps
// enter at their exact positions); smooth pieces go through Gauss-Legendre.
Complex kernel_sample(const std::vector<PhaseSegment>& segs, double omega_z,
                      double period, double y_c, double dy) {
  double y_lo = y_c - dy, y_hi = y_c + dy;
  double u0 = wrap_unit(y_lo / period);
  double width = (y_hi - y_lo) / period;  // < 1/4 by the sampling checks

  // Breakpoint offsets within the kernel support, as fractions of a period
  // measured from y_lo.
  double offsets[64];
  int n_off = 0;
  auto add_breaks = [&](double from, double to, double base) {
    auto it = std::upper_bound(
        segs.begin(), segs.end(), from,
        [](double v, const PhaseSegment& s) { return v < s.u1; });
    for (; it != segs.end() && it->u1 < to - 1e-15; ++it) {
      if (n_off < 60) offsets[n_off++] = base + (it->u1 - from);
    }
  };
  double first_span = std::min(u0 + width, 1.0) - u0;
  add_breaks(u0, u0 + first_span, 0.0);
  if (u0 + width > 1.0) {
    offsets[n_off++] = first_span;  // the period boundary itself
    add_breaks(0.0, u0 + width - 1.0, first_span);
  }
  offsets[n_off++] = 0.5 * width;  // kernel kink at y_c
  offsets[n_off++] = width;
  std::sort(offsets, offsets + n_off);

  Complex acc{0.0, 0.0};
  double lo = 0.0;
  for (int i = 0; i < n_off; ++i) {
    double hi = offsets[i];
    if (hi - lo < 1e-18) { lo = hi; continue; }
    double ya = y_lo + lo * period, yb = y_lo + hi * period;
    double c = 0.5 * (ya + yb), h = 0.5 * (yb - ya);
    Complex piece{0.0, 0.0};
    for (int q = 0; q < 5; ++q) {
      double y = c + h * kGlx[q];
      double weight = (1.0 - std::abs(y - y_c) / dy) / dy;
      double env = std::exp(-(y * y) / (omega_z * omega_z));
      double phase = segments_phase_at(segs, wrap_unit(y / period));
      piece += kGlw[q] * weight * env * std::polar(1.0, phase);
    }
    acc += piece * h;
    lo = hi;
  }
  return acc;
}

}  // namespace

SampledField sample_field(const GratingSpec& g, const ModeGeometry& geom,
                          const SamplingParams& grid) {
  require_valid_geometry(geom);
  if (!(grid.span > 0.0) || !(grid.dy > 0.0))
    throw Error(ErrorCode::invalid_argument, "sampling span and dy must be positive");
  if (grid.span < 8.0 * geom.omega_z || grid.span < 8.0 * geom.T)
    throw Error(ErrorCode::invalid_argument,
                "sampling span must cover at least 8*omega_z and 8 periods");
  if (grid.dy > geom.T / 8.0)
    throw Error(ErrorCode::invalid_argument,
                "sampling too coarse: dy must resolve the grating period");
  if (has_pixelation(g) && grid.dy > geom.pixel_len / 16.0 + 1e-15 * geom.pixel_len)
    throw Error(ErrorCode::invalid_argument,
                "sampling too coarse: dy must be <= pixel_len/16 for pixelated gratings");

  long m_count = std::lround(grid.span / grid.dy);
  if (m_count % 2 != 0) ++m_count;
  SampledField f;
  f.dy = grid.span / double(m_count);
  f.y_start = -0.5 * grid.span + 0.5 * f.dy;
  f.values.resize(size_t(m_count));

  // Each sample holds a triangle-kernel average of the modulated field (a
  // band limit, integrated piecewise-exactly so phase steps never alias
  // through point sampling). Normalization uses the envelope norm: the
  // physical phase factor has unit modulus, so power truncated by the band
  // limit stays accounted as out-of-band loss instead of being renormalized
  // away.
  auto segs = profile_segments(g);
  double env_norm_sq = 0.0;
  for (long n = 0; n < m_count; ++n) {
    double y = f.y_start + double(n) * f.dy;
    double env = std::exp(-(y * y) / (geom.omega_z * geom.omega_z));
    env_norm_sq += env * env;
    f.values[size_t(n)] = kernel_sample(segs, geom.omega_z, geom.T, y, f.dy);
  }
  double inv = 1.0 / std::sqrt(env_norm_sq);
  for (auto& v : f.values) v *= inv;
  return f;
}

SampledField far_field(const SampledField& in, const ModeGeometry& geom) {
  int m_count = in.size();
  if (m_count < 2)
    throw Error(ErrorCode::invalid_argument, "far_field needs a sampled input");
  SampledField out;
  // Focal-plane coordinate y = f*k_y/k turns the DFT frequency step into
  // dy' = 2*pi*f/(M*dy*k).
  out.dy = 2.0 * kPi * geom.f / (double(m_count) * in.dy * geom.k);
  out.y_start = -double(m_count / 2) * out.dy;
  out.values = unitary_dft(in.values, in.y_start, in.dy);
  return out;
}

std::vector<Complex> project_modes(const SampledField& ff,
                                   const ModeGeometry& geom,
                                   const FilterWindow& window) {
  check_window(window);
  require_valid_geometry(geom);
  double dy_mode = geom.delta_y();
  double w = geom.omega_f();
  double extent = -ff.y_start;  // grid covers [-extent, extent)
  int j_edge = std::max(std::abs(window.j1), std::abs(window.j2));
  if (double(j_edge) * dy_mode + 4.0 * w > extent)
    throw Error(ErrorCode::invalid_argument,
                "window orders not resolvable: focal-plane grid too narrow");

  // Undo the triangle-kernel sinc^2 droop at each mode's center frequency
  // k_y = 2*pi*j/T (dy_in recovered from the grid relation
  // dy' = 2*pi*f/(M*dy_in*k)).
  double dy_in = 2.0 * kPi * geom.f / (double(ff.size()) * ff.dy * geom.k);

  std::vector<Complex> beta(size_t(window.size()));
  for (int j = window.j1; j <= window.j2; ++j) {
    double center = double(j) * dy_mode;
    double mode_norm_sq = 0.0;
    Complex acc{0.0, 0.0};
    for (int n = 0; n < ff.size(); ++n) {
      double y = ff.y_at(n);
      double u = std::exp(-(y - center) * (y - center) / (w * w));
      mode_norm_sq += u * u;
      acc += u * ff.values[size_t(n)];
    }
    double s = sinc(kPi * double(j) * dy_in / geom.T);
    beta[size_t(j - window.j1)] = acc / (std::sqrt(mode_norm_sq) * s * s);
  }
  return beta;
}

PipelineReport simulate_pipeline(const std::vector<GratingSpec>& gratings,
                                 const QuditStateVector& psi,
                                 const ModeGeometry& geom,
                                 const FilterWindow& window,
                                 const SamplingParams& grid) {
  int D = int(gratings.size());
  if (psi.dim() != D)
    throw Error(ErrorCode::dimension_mismatch,
                "simulate_pipeline: state dimension does not match grating count");
  check_state(psi);
  check_window(window);

  // Coherent merge: sum per-path far fields in ascending l with the 1/sqrt(D)
  // postselection factor, so floating-point results are reproducible.
  SampledField total;
  double merge_scale = 1.0 / std::sqrt(double(D));
  std::vector<Complex> merged_points;
  double env_norm_sq = 0.0;
  for (int l = 0; l < D; ++l) {
    SampledField in = sample_field(gratings[size_t(l)], geom, grid);
    SampledField ff = far_field(in, geom);
    if (l == 0) {
      total = ff;
      for (auto& v : total.values) v = Complex{0.0, 0.0};
      merged_points.assign(in.values.size(), Complex{0.0, 0.0});
    }
    Complex a = merge_scale * psi.amps[size_t(l)];
    for (int n = 0; n < ff.size(); ++n) total.values[size_t(n)] += a * ff.values[size_t(n)];
    // Point-sampled track for the power bookkeeping: the phase factor has
    // unit modulus, so this carries the full (not band-limited) norm.
    auto segs = profile_segments(gratings[size_t(l)]);
    for (int n = 0; n < in.size(); ++n) {
      double y = in.y_at(n);
      double env = std::exp(-(y * y) / (geom.omega_z * geom.omega_z));
      if (l == 0) env_norm_sq += env * env;
      double phase = segments_phase_at(segs, wrap_unit(y / geom.T));
      merged_points[size_t(n)] += a * env * std::polar(1.0, phase);
    }
  }

  PipelineReport rep;
  for (const auto& v : merged_points) rep.merged_power += std::norm(v);
  rep.merged_power /= env_norm_sq;
  rep.beta_wave = project_modes(total, geom, window);

  TransformMatrix m = build_matrix(gratings, window, /*include_merge_factor=*/true);
  ApplyResult applied = apply_to_state(m, psi);
  rep.beta_matrix = applied.state.amps;

  // Align the global phase: physical states are rays.
  Complex overlap{0.0, 0.0};
  for (int i = 0; i < window.size(); ++i)
    overlap += std::conj(rep.beta_matrix[size_t(i)]) * rep.beta_wave[size_t(i)];
  rep.global_phase = std::abs(overlap) > 0.0 ? std::arg(overlap) : 0.0;
  Complex rot = std::polar(1.0, -rep.global_phase);

  double max_ref = 0.0;
  for (const auto& b : rep.beta_matrix) max_ref = std::max(max_ref, std::abs(b));
  double max_err = 0.0, dist_sq = 0.0;
  for (int i = 0; i < window.size(); ++i) {
    double diff = std::abs(rot * rep.beta_wave[size_t(i)] - rep.beta_matrix[size_t(i)]);
    max_err = std::max(max_err, diff);
    dist_sq += diff * diff;
  }
  rep.aligned_distance = std::sqrt(dist_sq);
  rep.max_rel_error = max_ref > 0.0 ? max_err / max_ref : max_err;

  for (const auto& b : rep.beta_wave) rep.kept_power += std::norm(b);

  // Wide capture: every order that both the input sampling (alias-free up to
  // T/(2*dy)) and the focal-plane extent can resolve, up to 8 beyond the window.
  double extent = -total.y_start;
  int j_grid = int(std::floor((extent - 4.0 * geom.omega_f()) / geom.delta_y()));
  int j_nyq = int(std::floor(geom.T / (2.0 * grid.dy)));
  int j_wide = std::min({window.j2 + 8, j_grid, j_nyq});
  int j_low = std::max({window.j1 - 8, -j_grid, -j_nyq});
  FilterWindow wide{j_low, j_wide};
  auto beta_wide = project_modes(total, geom, wide);
  for (const auto& b : beta_wide) rep.mode_capture += std::norm(b);
  rep.leak = rep.merged_power - rep.mode_capture;
  return rep;
}

}  // namespace slmq
