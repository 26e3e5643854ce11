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

#include "slmq/grating.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace slmq {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Tolerance for recognizing a sawtooth phi as an exact 2*pi multiple when
// reducing compositions to the index-shift law.
constexpr double kShiftTol = 1e-9;

int imod(int x, int m) {
  int r = x % m;
  return r < 0 ? r + m : r;
}

double wrap_unit(double u) {
  double r = u - std::floor(u);
  return r >= 1.0 ? 0.0 : r;
}

// Continuous family profile at fraction u in [0, 1).
double family_phase(const GratingSpec& g, double u) {
  switch (g.family) {
    case Family::Sawtooth:
      return g.phi * u;
    case Family::Binary:
      return u < 0.5 ? 0.0 : g.phi;
    case Family::Triangular:
      return 2.0 * g.phi * std::min(u, 1.0 - u);
    case Family::Constant:
      return g.theta;
    case Family::Tabulated:
      throw Error(ErrorCode::invalid_argument,
                  "tabulated grating has no continuous profile");
  }
  return 0.0;
}

// Flattened view of a composed spec: every component as an atom, each with the
// displacement accumulated from its ancestors (in period fractions).
struct Atom {
  const GratingSpec* spec;
  double extra_shift;  // ancestor displacement, fraction of a period
};

void flatten(const GratingSpec& g, double inherited, std::vector<Atom>& out) {
  double own = 0.0;
  if (g.shift_pixels != 0) {
    if (!g.pixels)
      throw Error(ErrorCode::invalid_argument,
                  "shift_pixels requires pixelation");
    own = double(imod(g.shift_pixels, *g.pixels)) / double(*g.pixels);
  }
  double total = wrap_unit(inherited + own);
  out.push_back({&g, total});
  for (const auto& c : g.composed_with) flatten(c, total, out);
}

std::vector<Atom> flatten(const GratingSpec& g) {
  std::vector<Atom> atoms;
  flatten(g, 0.0, atoms);
  return atoms;
}

// Pixel phases of one atom when it lives on an N-pixel grid, including its own
// and inherited displacement (which must be whole pixels for grid atoms).
std::vector<double> atom_pixel_phases(const Atom& atom) {
  const GratingSpec& g = *atom.spec;
  int n = *g.pixels;
  std::vector<double> out(n);
  int p = imod(int(std::lround(atom.extra_shift * n)), n);
  for (int i = 0; i < n; ++i) {
    int src = imod(i - p, n);
    out[i] = g.family == Family::Tabulated
                 ? g.phases[size_t(src)]
                 : family_phase(g, double(src) / double(n));
  }
  return out;
}

// Translate a profile by a period fraction a in (0, 1), wrapping at 1.
std::vector<PhaseSegment> rotate_segments(const std::vector<PhaseSegment>& segs,
                                          double a) {
  std::vector<PhaseSegment> rotated;
  rotated.reserve(segs.size() + 1);
  for (const auto& s : segs) {
    double v0 = s.u0 + a, v1 = s.u1 + a;
    if (v1 <= 1.0 + 1e-15) {
      rotated.push_back({std::min(v0, 1.0), std::min(v1, 1.0), s.a, s.b});
    } else if (v0 >= 1.0) {
      rotated.push_back({v0 - 1.0, v1 - 1.0, s.a, s.b});
    } else {
      rotated.push_back({v0, 1.0, s.a, s.b});
      rotated.push_back({0.0, v1 - 1.0, s.a + s.b * (1.0 - v0), s.b});
    }
  }
  std::sort(rotated.begin(), rotated.end(),
            [](const PhaseSegment& x, const PhaseSegment& y) { return x.u0 < y.u0; });
  return rotated;
}

std::vector<PhaseSegment> atom_segments(const Atom& atom) {
  const GratingSpec& g = *atom.spec;
  std::vector<PhaseSegment> segs;
  if (g.pixels || g.family == Family::Tabulated) {
    int n = *g.pixels;
    // Whole-pixel displacement relabels indices exactly; any fractional
    // remainder (mixed grids) becomes a continuous rotation below.
    double cells = atom.extra_shift * n;
    long whole = std::lround(cells);
    double frac = wrap_unit(atom.extra_shift - double(whole) / n);
    Atom aligned{atom.spec, double(imod(int(whole % n), n)) / double(n)};
    auto ph = atom_pixel_phases(aligned);
    segs.reserve(ph.size());
    for (int i = 0; i < n; ++i)
      segs.push_back({double(i) / n, double(i + 1) / n, ph[size_t(i)], 0.0});
    if (frac > 1e-12 && frac < 1.0 - 1e-12) segs = rotate_segments(segs, frac);
    return segs;
  }
  switch (g.family) {
    case Family::Sawtooth:
      segs.push_back({0.0, 1.0, 0.0, g.phi});
      break;
    case Family::Binary:
      segs.push_back({0.0, 0.5, 0.0, 0.0});
      segs.push_back({0.5, 1.0, g.phi, 0.0});
      break;
    case Family::Triangular:
      segs.push_back({0.0, 0.5, 0.0, 2.0 * g.phi});
      segs.push_back({0.5, 1.0, g.phi, -2.0 * g.phi});
      break;
    case Family::Constant:
      segs.push_back({0.0, 1.0, g.theta, 0.0});
      break;
    case Family::Tabulated:
      break;  // handled above
  }
  if (atom.extra_shift != 0.0) segs = rotate_segments(segs, atom.extra_shift);
  return segs;
}

std::vector<PhaseSegment> add_segments(const std::vector<PhaseSegment>& lhs,
                                       const std::vector<PhaseSegment>& rhs) {
  std::vector<double> cuts;
  cuts.reserve(lhs.size() + rhs.size() + 2);
  for (const auto& s : lhs) cuts.push_back(s.u0);
  for (const auto& s : rhs) cuts.push_back(s.u0);
  cuts.push_back(0.0);
  cuts.push_back(1.0);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(),
                         [](double a, double b) { return b - a < 1e-15; }),
             cuts.end());
  if (cuts.back() < 1.0) cuts.push_back(1.0);

  auto find = [](const std::vector<PhaseSegment>& segs, double u) {
    auto it = std::upper_bound(
        segs.begin(), segs.end(), u,
        [](double v, const PhaseSegment& s) { return v < s.u1; });
    return it == segs.end() ? &segs.back() : &*it;
  };

  std::vector<PhaseSegment> out;
  out.reserve(cuts.size() - 1);
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    double x0 = cuts[i], x1 = cuts[i + 1];
    double mid = 0.5 * (x0 + x1);
    const PhaseSegment* a = find(lhs, mid);
    const PhaseSegment* b = find(rhs, mid);
    out.push_back({x0, x1, a->value_at(x0) + b->value_at(x0), a->b + b->b});
  }
  return out;
}

// Closed forms for ideal gratings. The sinc convention is sin(x)/x.
Complex saw_coeff(double phi, int j) {
  double x = 0.5 * phi - double(j) * kPi;
  return std::polar(1.0, x) * sinc(x);
}

Complex binary_coeff(double phi, int j) {
  if (j == 0) return std::polar(1.0, 0.5 * phi) * std::cos(0.5 * phi);
  if (j % 2 == 0) return {0.0, 0.0};
  // Profile pinned with the step at T/2 over [0, T); this fixes the sign.
  return -(2.0 / (kPi * double(j))) * std::polar(1.0, 0.5 * phi) *
         std::sin(0.5 * phi);
}

Complex triangular_coeff(double phi, int j) {
  double xp = 0.5 * (phi + kPi * double(j));
  double xm = 0.5 * (phi - kPi * double(j));
  return 0.5 * (std::polar(1.0, xp) * sinc(xp) + std::polar(1.0, xm) * sinc(xm));
}

struct IdealDecomposition {
  bool ok = false;
  double theta = 0.0;      // accumulated constant phase
  double saw_slope = 0.0;  // accumulated sawtooth modulation
  const GratingSpec* principal = nullptr;  // at most one binary/triangular
};

IdealDecomposition analyze_ideal(const GratingSpec& g) {
  IdealDecomposition d;
  for (const auto& atom : flatten(g)) {
    const GratingSpec& a = *atom.spec;
    if (a.pixels || a.family == Family::Tabulated) return d;
    if (atom.extra_shift != 0.0) return d;  // displacement implies pixels
    switch (a.family) {
      case Family::Constant:
        d.theta += a.theta;
        break;
      case Family::Sawtooth:
        d.saw_slope += a.phi;
        break;
      case Family::Binary:
      case Family::Triangular:
        if (d.principal) return d;  // two non-linear shapes: no closed form
        d.principal = &a;
        break;
      case Family::Tabulated:
        return d;
    }
  }
  d.ok = true;
  return d;
}

Complex pixel_sum(const std::vector<double>& phases, int j) {
  int n = int(phases.size());
  Complex s{0.0, 0.0};
  for (int i = 0; i < n; ++i)
    s += std::polar(1.0, phases[size_t(i)] - kPi * double(j) * (2.0 * i + 1.0) / n);
  return sinc(kPi * double(j) / n) * s / double(n);
}

// 5-point Gauss-Legendre nodes and weights on [-1, 1].
constexpr double kGlx[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                            0.5384693101056831, 0.9061798459386640};
constexpr double kGlw[5] = {0.2369268850561891, 0.4786286704993665,
                            0.5688888888888889, 0.4786286704993665,
                            0.2369268850561891};

Complex integrate_segments(const std::vector<PhaseSegment>& segs, int j,
                           int panels) {
  Complex total{0.0, 0.0};
  for (const auto& s : segs) {
    double len = s.u1 - s.u0;
    if (len <= 0.0) continue;
    int n = std::max(1, int(std::ceil(panels * len)));
    double h = len / n;
    for (int p = 0; p < n; ++p) {
      double c = s.u0 + (p + 0.5) * h;
      Complex acc{0.0, 0.0};
      for (int q = 0; q < 5; ++q) {
        double u = c + 0.5 * h * kGlx[q];
        acc += kGlw[q] * std::polar(1.0, s.value_at(u) - kTwoPi * double(j) * u);
      }
      total += acc * (0.5 * h);
    }
  }
  return total;
}

}  // namespace

double sinc(double x) {
  if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

GratingSpec GratingSpec::sawtooth(double phi) {
  GratingSpec g;
  g.family = Family::Sawtooth;
  g.phi = phi;
  return g;
}

GratingSpec GratingSpec::binary(double phi) {
  GratingSpec g;
  g.family = Family::Binary;
  g.phi = phi;
  return g;
}

GratingSpec GratingSpec::triangular(double phi) {
  GratingSpec g;
  g.family = Family::Triangular;
  g.phi = phi;
  return g;
}

GratingSpec GratingSpec::constant(double theta) {
  GratingSpec g;
  g.family = Family::Constant;
  g.theta = theta;
  return g;
}

GratingSpec GratingSpec::tabulated(std::vector<double> pixel_phases) {
  GratingSpec g;
  g.family = Family::Tabulated;
  g.pixels = int(pixel_phases.size());
  g.phases = std::move(pixel_phases);
  return g;
}

bool operator==(const GratingSpec& a, const GratingSpec& b) {
  return a.family == b.family && a.phi == b.phi && a.theta == b.theta &&
         a.phases == b.phases && a.pixels == b.pixels &&
         a.shift_pixels == b.shift_pixels && a.composed_with == b.composed_with;
}

GratingSpec GratingSpec::with_pixels(int n) const {
  if (n < 1) throw Error(ErrorCode::invalid_argument, "pixels must be >= 1");
  GratingSpec g = *this;
  g.pixels = n;
  return g;
}

GratingSpec GratingSpec::with_shift(int p) const {
  GratingSpec g = *this;
  g.shift_pixels = p;
  return g;
}

void check_spec(const GratingSpec& g) {
  if (!std::isfinite(g.phi) || !std::isfinite(g.theta))
    throw Error(ErrorCode::invalid_argument, "grating phase is not finite");
  if (g.pixels && *g.pixels < 1)
    throw Error(ErrorCode::invalid_argument, "pixels must be >= 1");
  if (g.family == Family::Tabulated) {
    if (!g.pixels)
      throw Error(ErrorCode::invalid_argument, "tabulated grating requires pixelation");
    if (int(g.phases.size()) != *g.pixels)
      throw Error(ErrorCode::invalid_argument,
                  "tabulated grating needs one phase per pixel");
    for (double p : g.phases)
      if (!std::isfinite(p))
        throw Error(ErrorCode::invalid_argument, "tabulated phase is not finite");
  }
  if (g.shift_pixels != 0 && !g.pixels)
    throw Error(ErrorCode::invalid_argument, "shift_pixels requires pixelation");
  for (const auto& c : g.composed_with) check_spec(c);
}

std::vector<PhaseSegment> profile_segments(const GratingSpec& g) {
  check_spec(g);
  auto atoms = flatten(g);
  std::vector<PhaseSegment> segs = atom_segments(atoms[0]);
  for (size_t i = 1; i < atoms.size(); ++i)
    segs = add_segments(segs, atom_segments(atoms[i]));
  return segs;
}

double segments_phase_at(const std::vector<PhaseSegment>& segs, double u) {
  auto it = std::upper_bound(
      segs.begin(), segs.end(), u,
      [](double v, const PhaseSegment& s) { return v < s.u1; });
  const PhaseSegment& s = it == segs.end() ? segs.back() : *it;
  return s.value_at(u);
}

double phase_at(const GratingSpec& g, double u) {
  if (!(u >= 0.0 && u < 1.0))
    throw Error(ErrorCode::invalid_argument,
                "phase_at expects a period fraction in [0, 1)");
  return segments_phase_at(profile_segments(g), u);
}

double validate_modulation(const GratingSpec& g) {
  auto segs = profile_segments(g);
  double lo = segs.front().left_value(), hi = lo;
  for (const auto& s : segs) {
    lo = std::min(lo, std::min(s.left_value(), s.right_value()));
    hi = std::max(hi, std::max(s.left_value(), s.right_value()));
  }
  return hi - lo;
}

Complex coeff_ideal(const GratingSpec& g, int j) {
  check_spec(g);
  auto d = analyze_ideal(g);
  if (!d.ok)
    throw Error(ErrorCode::invalid_argument,
                "no closed form for this spec (pixelated or unsupported "
                "composition); use coeff_quadrature");
  Complex rot = std::polar(1.0, d.theta);
  if (!d.principal) {
    // Pure ramp plus constants: sawtooth closed form covers it, including the
    // zero-slope case where it degenerates to delta_j0.
    return rot * saw_coeff(d.saw_slope, j);
  }
  // A binary/triangular principal shape composed with sawtooth ramps is only
  // reducible when the accumulated ramp is a whole number of 2*pi turns, which
  // shifts the coefficient index.
  double turns = d.saw_slope / kTwoPi;
  double rturns = std::round(turns);
  if (std::abs(turns - rturns) > kShiftTol)
    throw Error(ErrorCode::invalid_argument,
                "no closed form: composed ramp is not a 2*pi multiple; use "
                "coeff_quadrature");
  int shifted = j - int(rturns);
  Complex base = d.principal->family == Family::Binary
                     ? binary_coeff(d.principal->phi, shifted)
                     : triangular_coeff(d.principal->phi, shifted);
  return rot * base;
}

std::optional<std::vector<double>> uniform_pixel_phases(const GratingSpec& g) {
  check_spec(g);
  auto atoms = flatten(g);
  int grid = 0;
  for (const auto& atom : atoms) {
    const GratingSpec& a = *atom.spec;
    if (a.family == Family::Constant && !a.pixels) continue;
    if (!a.pixels) return std::nullopt;  // continuous non-constant component
    if (grid == 0) grid = *a.pixels;
    if (*a.pixels != grid) return std::nullopt;
    // Inherited displacement must be whole pixels on this grid.
    double cells = atom.extra_shift * grid;
    if (std::abs(cells - std::lround(cells)) > 1e-9) return std::nullopt;
  }
  if (grid == 0) return std::nullopt;

  std::vector<double> phases(size_t(grid), 0.0);
  for (const auto& atom : atoms) {
    const GratingSpec& a = *atom.spec;
    if (a.family == Family::Constant && !a.pixels) {
      for (auto& p : phases) p += a.theta;
      continue;
    }
    auto ap = atom_pixel_phases(atom);
    for (int i = 0; i < grid; ++i) phases[size_t(i)] += ap[size_t(i)];
  }
  return phases;
}

Complex coeff_pixelated(const GratingSpec& g, int j) {
  if (!g.pixels && g.family != Family::Tabulated)
    throw Error(ErrorCode::invalid_argument,
                "coeff_pixelated requires a pixelated spec");
  auto phases = uniform_pixel_phases(g);
  if (!phases)
    throw Error(ErrorCode::invalid_argument,
                "composed profile does not live on a single pixel grid; use "
                "coeff_quadrature");
  return pixel_sum(*phases, j);
}

QuadratureResult coeff_quadrature(const GratingSpec& g, int j, int samples) {
  int required = 64 * (std::abs(j) + 1);
  if (samples < required)
    throw Error(ErrorCode::invalid_argument,
                "coeff_quadrature needs samples >= 64*(|j|+1) = " +
                    std::to_string(required));
  auto segs = profile_segments(g);
  Complex coarse = integrate_segments(segs, j, samples);
  Complex fine = integrate_segments(segs, j, 2 * samples);
  double err = std::abs(fine - coarse);
  return {fine, err, err <= 1e-8};
}

Complex coefficient(const GratingSpec& g, int j) {
  if (g.pixels || g.family == Family::Tabulated) {
    if (auto phases = uniform_pixel_phases(g)) return pixel_sum(*phases, j);
  } else if (analyze_ideal(g).ok) {
    return coeff_ideal(g, j);
  }
  int samples = std::max(512, 64 * (std::abs(j) + 1));
  return coeff_quadrature(g, j, samples).value;
}

GratingSpec displace(const GratingSpec& g, int p) {
  if (!g.pixels)
    throw Error(ErrorCode::invalid_argument, "displace requires pixelation");
  GratingSpec out = g;
  out.shift_pixels += p;
  return out;
}

GratingSpec compose(const GratingSpec& g1, const GratingSpec& g2) {
  check_spec(g1);
  check_spec(g2);
  GratingSpec out = g1;
  out.composed_with.push_back(g2);
  double peak = validate_modulation(out);
  if (peak > kModulationCap + 1e-9)
    throw Error(ErrorCode::modulation_cap,
                "combined peak modulation " + std::to_string(peak) +
                    " rad exceeds the 8*pi maximum");
  return out;
}

CoeffTable coeff_table(const GratingSpec& g, int j_min, int j_max) {
  if (j_min > j_max)
    throw Error(ErrorCode::invalid_argument, "coeff_table: empty order range");
  CoeffTable t;
  t.j_min = j_min;
  t.j_max = j_max;
  t.coeffs.reserve(size_t(j_max - j_min + 1));
  double captured = 0.0;
  for (int j = j_min; j <= j_max; ++j) {
    Complex c = coefficient(g, j);
    captured += std::norm(c);
    t.coeffs.push_back(c);
  }
  t.captured_fraction = captured;
  return t;
}

}  // namespace slmq
