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

#include "slmq/design.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace slmq {

namespace {

constexpr double kPi = std::numbers::pi;

// Lexicographic family order used to break ties (alphabetical by name).
int family_rank(Family f) {
  switch (f) {
    case Family::Binary: return 0;
    case Family::Constant: return 1;
    case Family::Sawtooth: return 2;
    case Family::Tabulated: return 3;
    case Family::Triangular: return 4;
  }
  return 5;
}

// One search point: a family grating, optional pixel shift, plus a composed
// constant phase (relative phase between columns).
struct Candidate {
  Family fam = Family::Constant;
  double phi = 0.0;
  double theta = 0.0;
  int shift = 0;
  int block_order = 0;  // nonzero: blocking sawtooth at that order

  double peak_modulation() const {
    if (block_order != 0) return 2.0 * kPi * std::abs(double(block_order));
    return fam == Family::Constant ? 0.0 : std::abs(phi);
  }
};

GratingSpec materialize(const Candidate& c, const std::optional<int>& pixels) {
  if (c.block_order != 0)
    return GratingSpec::sawtooth(2.0 * kPi * double(c.block_order));
  GratingSpec g;
  switch (c.fam) {
    case Family::Sawtooth: g = GratingSpec::sawtooth(c.phi); break;
    case Family::Binary: g = GratingSpec::binary(c.phi); break;
    case Family::Triangular: g = GratingSpec::triangular(c.phi); break;
    case Family::Constant: return GratingSpec::constant(c.theta);
    case Family::Tabulated:
      throw Error(ErrorCode::invalid_argument,
                  "tabulated masks are not synthesized by search");
  }
  if (pixels) {
    g = g.with_pixels(*pixels);
    if (c.shift != 0) g = g.with_shift(c.shift);
  }
  if (c.theta != 0.0) g.composed_with.push_back(GratingSpec::constant(c.theta));
  return g;
}

std::vector<Complex> column_coeffs(const Candidate& c,
                                   const std::optional<int>& pixels,
                                   const FilterWindow& w) {
  GratingSpec g = materialize(c, pixels);
  std::vector<Complex> out(size_t(w.size()));
  for (int j = w.j1; j <= w.j2; ++j)
    out[size_t(j - w.j1)] = coefficient(g, j);
  return out;
}

// true when a is strictly preferable to b (then by the documented tie-break).
bool better(double ra, const Candidate& a, double rb, const Candidate& b) {
  if (ra < rb - 1e-15) return true;
  if (ra > rb + 1e-15) return false;
  auto key = [](const Candidate& c) {
    return std::tuple(c.peak_modulation(), family_rank(c.fam), std::abs(c.phi),
                      c.shift, std::abs(c.theta));
  };
  return key(a) < key(b);
}

struct JointState {
  std::vector<Candidate> cols;
  std::vector<std::vector<Complex>> coeffs;  // per column, window order
};

// Scale-free joint residual over all columns with one shared complex scale.
std::pair<double, Complex> joint_residual(const JointState& s,
                                          const ComplexMatrix& target) {
  Complex inner{0.0, 0.0};
  double pred_sq = 0.0, target_sq = 0.0;
  int d = target.rows, cols = target.cols;
  for (int l = 0; l < cols; ++l)
    for (int r = 0; r < d; ++r) {
      Complex p = s.coeffs[size_t(l)][size_t(r)];
      Complex t = target.at(r, l);
      inner += std::conj(p) * t;
      pred_sq += std::norm(p);
      target_sq += std::norm(t);
    }
  if (pred_sq <= 0.0) return {std::sqrt(target_sq), Complex{0.0, 0.0}};
  double res_sq = target_sq - std::norm(inner) / pred_sq;
  return {std::sqrt(std::max(0.0, res_sq)), inner / pred_sq};
}

}  // namespace

std::pair<double, Complex> residual(const ComplexMatrix& pred,
                                    const ComplexMatrix& target) {
  if (pred.rows != target.rows || pred.cols != target.cols)
    throw Error(ErrorCode::dimension_mismatch, "residual: shape mismatch");
  Complex inner{0.0, 0.0};
  double pred_sq = 0.0;
  for (size_t i = 0; i < pred.entries.size(); ++i) {
    inner += std::conj(pred.entries[i]) * target.entries[i];
    pred_sq += std::norm(pred.entries[i]);
  }
  if (pred_sq <= 0.0) return {target.frobenius_norm(), Complex{0.0, 0.0}};
  Complex c = inner / pred_sq;
  double res_sq = 0.0;
  for (size_t i = 0; i < pred.entries.size(); ++i)
    res_sq += std::norm(c * pred.entries[i] - target.entries[i]);
  return {std::sqrt(res_sq), c};
}

std::pair<double, Complex> residual(const TransformMatrix& pred,
                                    const ComplexMatrix& target) {
  return residual(pred.matrix(), target);
}

DesignResult search(const DesignProblem& problem, std::uint64_t seed) {
  check_window(problem.window);
  const ComplexMatrix& target = problem.target;
  if (target.rows != problem.window.size())
    throw Error(ErrorCode::dimension_mismatch,
                "design target rows must equal the window size");
  if (target.cols < 1)
    throw Error(ErrorCode::invalid_argument, "design target needs >= 1 column");
  const ParameterRanges& rg = problem.ranges;
  if (!(rg.phi_step > 0.0) || !(rg.theta_step > 0.0) || rg.phi_min > rg.phi_max)
    throw Error(ErrorCode::invalid_argument, "invalid parameter ranges");
  double phi_lo = std::max(rg.phi_min, -kModulationCap);
  double phi_hi = std::min(rg.phi_max, kModulationCap);
  if (phi_lo > phi_hi)
    throw Error(ErrorCode::modulation_cap,
                "phi range incompatible with the modulation cap");

  const int D = target.cols;
  const int n_phi = int(std::lround((phi_hi - phi_lo) / rg.phi_step)) + 1;
  int shifts = problem.pixelation ? *problem.pixelation : 1;
  long grid_size = 0;
  for (Family f : problem.families)
    grid_size += f == Family::Constant ? 1 : long(n_phi) * shifts;
  grid_size *= D;
  if (problem.budget < grid_size)
    throw Error(ErrorCode::invalid_argument,
                "budget below the coarse-grid size (" +
                    std::to_string(grid_size) + ")");

  long evals = 0;
  auto spent = [&]() { return evals >= problem.budget; };

  // Stage 1: per-column scale-free match on the coarse grid. One candidate is
  // kept per family per column: the shared scale couples the columns, so the
  // family whose modulus fits jointly may not win the per-column direction
  // match (a binary column can point right with the wrong length).
  struct ColCandidate {
    Candidate c;
    double direction_residual = 0.0;
    Complex inner{0.0, 0.0};  // <pred, target_col>
    double pred_sq = 0.0;
    bool set = false;
  };
  std::vector<std::vector<ColCandidate>> menu(static_cast<size_t>(D));
  std::vector<double> t_norm_sq(size_t(D), 0.0);
  double target_sq = 0.0;
  for (int l = 0; l < D; ++l) {
    std::vector<Complex> t(size_t(target.rows));
    double t_sq = 0.0;
    for (int r = 0; r < target.rows; ++r) {
      t[size_t(r)] = target.at(r, l);
      t_sq += std::norm(t[size_t(r)]);
    }
    t_norm_sq[size_t(l)] = t_sq;
    target_sq += t_sq;
    if (t_sq < 1e-28) {
      // Zero target column: block it with an out-of-window order under the cap.
      Candidate c;
      c.block_order = problem.window.j2 < 4 ? 4 : (problem.window.j1 > -4 ? -4 : 0);
      if (c.block_order == 0)
        throw Error(ErrorCode::modulation_cap,
                    "cannot block a column: no order outside the window is "
                    "reachable under the cap");
      ColCandidate cc;
      cc.c = c;
      cc.set = true;
      menu[size_t(l)] = {cc};
      continue;
    }

    std::vector<ColCandidate> per_family;
    auto consider = [&](const Candidate& c, size_t slot) {
      ++evals;
      auto coeffs = column_coeffs(c, problem.pixelation, problem.window);
      Complex inner{0.0, 0.0};
      double pred_sq = 0.0;
      for (int r = 0; r < target.rows; ++r) {
        inner += std::conj(coeffs[size_t(r)]) * t[size_t(r)];
        pred_sq += std::norm(coeffs[size_t(r)]);
      }
      double r2 = pred_sq > 0.0 ? t_sq - std::norm(inner) / pred_sq : t_sq;
      double res = std::sqrt(std::max(0.0, r2));
      ColCandidate& slot_ref = per_family[slot];
      if (!slot_ref.set ||
          better(res, c, slot_ref.direction_residual, slot_ref.c)) {
        slot_ref.set = true;
        slot_ref.c = c;
        slot_ref.direction_residual = res;
        slot_ref.inner = inner;
        slot_ref.pred_sq = pred_sq;
      }
    };

    per_family.resize(problem.families.size());
    for (size_t fi = 0; fi < problem.families.size(); ++fi) {
      Family f = problem.families[fi];
      if (f == Family::Tabulated) continue;
      if (f == Family::Constant) {
        Candidate c;
        c.fam = f;
        consider(c, fi);
        continue;
      }
      for (int s = 0; s < shifts && !spent(); ++s)
        for (int i = 0; i < n_phi && !spent(); ++i) {
          Candidate c;
          c.fam = f;
          c.phi = phi_lo + i * rg.phi_step;
          c.shift = s;
          consider(c, fi);
        }
    }
    for (auto& cc : per_family)
      if (cc.set) menu[size_t(l)].push_back(cc);
    if (menu[size_t(l)].empty())
      throw Error(ErrorCode::invalid_argument, "no usable families for search");
  }

  // Pick the joint family combination. With the column phases free (composed
  // constants), the scale-optimal residual of a combination has the closed
  // form ||T||^2 - (sum_l |<p_l, t_l>|)^2 / sum_l ||p_l||^2.
  size_t combos = 1;
  std::vector<size_t> menu_cap(static_cast<size_t>(D));
  for (int l = 0; l < D; ++l) menu_cap[size_t(l)] = menu[size_t(l)].size();
  for (int l = 0; l < D; ++l) combos *= menu_cap[size_t(l)];
  if (combos > 4096) {
    // Keep the enumeration bounded: only the two best directions per column.
    for (int l = 0; l < D; ++l) {
      auto& m = menu[size_t(l)];
      std::sort(m.begin(), m.end(),
                [](const ColCandidate& a, const ColCandidate& b) {
                  return a.direction_residual < b.direction_residual;
                });
      if (m.size() > 2) m.resize(2);
      menu_cap[size_t(l)] = m.size();
    }
  }

  std::vector<size_t> pick(size_t(D), 0), best_pick(size_t(D), 0);
  double best_combo_r2 = 1e300;
  while (true) {
    ++evals;
    double inner_abs = 0.0, pred_sq = 0.0;
    for (int l = 0; l < D; ++l) {
      const ColCandidate& cc = menu[size_t(l)][pick[size_t(l)]];
      inner_abs += std::abs(cc.inner);
      pred_sq += cc.pred_sq;
    }
    double r2 = pred_sq > 0.0 ? target_sq - inner_abs * inner_abs / pred_sq
                              : target_sq;
    if (r2 < best_combo_r2 - 1e-15) {
      best_combo_r2 = r2;
      best_pick = pick;
    }
    int l = 0;
    while (l < D && ++pick[size_t(l)] == menu_cap[size_t(l)]) {
      pick[size_t(l)] = 0;
      ++l;
    }
    if (l == D) break;
  }

  // Seed the relative column phases: rotate every column so its inner product
  // aligns with the reference column's.
  std::vector<Candidate> best_cols(static_cast<size_t>(D));
  int ref = -1;
  for (int l = 0; l < D; ++l) {
    const ColCandidate& cc = menu[size_t(l)][best_pick[size_t(l)]];
    best_cols[size_t(l)] = cc.c;
    if (ref < 0 && cc.c.block_order == 0 && std::abs(cc.inner) > 0.0) ref = l;
  }
  if (ref >= 0) {
    double ref_arg = std::arg(menu[size_t(ref)][best_pick[size_t(ref)]].inner);
    for (int l = 0; l < D; ++l) {
      const ColCandidate& cc = menu[size_t(l)][best_pick[size_t(l)]];
      if (cc.c.block_order != 0 || std::abs(cc.inner) == 0.0) continue;
      double rel = std::arg(cc.inner) - ref_arg;
      if (std::abs(rel) > 1e-12 || best_cols[size_t(l)].fam == Family::Constant)
        best_cols[size_t(l)].theta = rel;
    }
  }

  auto evaluate_state = [&](JointState& s) {
    s.coeffs.resize(size_t(D));
    for (int l = 0; l < D; ++l) {
      ++evals;
      s.coeffs[size_t(l)] = column_coeffs(s.cols[size_t(l)], problem.pixelation,
                                          problem.window);
    }
  };

  // Stage 2: joint coordinate descent with shrinking steps.
  auto refine = [&](JointState s) {
    evaluate_state(s);
    auto [res, scale] = joint_residual(s, target);
    double phi_step = rg.phi_step, theta_step = rg.theta_step;
    while ((phi_step > 1e-10 || theta_step > 1e-10) && !spent()) {
      bool improved = false;
      for (int l = 0; l < D && !spent(); ++l) {
        Candidate& c = s.cols[size_t(l)];
        if (c.block_order != 0) continue;
        struct Probe { double* value; double step; double lo, hi; };
        double theta_lo = -4.0 * kPi, theta_hi = 4.0 * kPi;
        std::vector<Probe> probes;
        if (c.fam != Family::Constant)
          probes.push_back({&c.phi, phi_step, phi_lo, phi_hi});
        probes.push_back({&c.theta, theta_step, theta_lo, theta_hi});
        for (auto& pr : probes) {
          for (double dir : {+1.0, -1.0}) {
            if (spent()) break;
            double old = *pr.value;
            double trial = std::clamp(old + dir * pr.step, pr.lo, pr.hi);
            if (trial == old) continue;
            *pr.value = trial;
            auto saved = s.coeffs[size_t(l)];
            ++evals;
            s.coeffs[size_t(l)] =
                column_coeffs(c, problem.pixelation, problem.window);
            auto [r2, sc2] = joint_residual(s, target);
            if (r2 < res - 1e-18) {
              res = r2;
              scale = sc2;
              improved = true;
              break;  // keep moving this parameter next sweep
            }
            *pr.value = old;
            s.coeffs[size_t(l)] = saved;
          }
        }
        if (problem.pixelation && c.fam != Family::Constant) {
          int n = *problem.pixelation;
          for (int dp : {+1, -1}) {
            if (spent()) break;
            int old = c.shift;
            c.shift = (old + dp % n + n) % n;
            auto saved = s.coeffs[size_t(l)];
            ++evals;
            s.coeffs[size_t(l)] =
                column_coeffs(c, problem.pixelation, problem.window);
            auto [r2, sc2] = joint_residual(s, target);
            if (r2 < res - 1e-18) {
              res = r2;
              scale = sc2;
              improved = true;
              break;
            }
            c.shift = old;
            s.coeffs[size_t(l)] = saved;
          }
        }
      }
      if (!improved) {
        phi_step *= 0.5;
        theta_step *= 0.5;
      }
    }
    return std::tuple(res, scale, s);
  };

  JointState init;
  init.cols = best_cols;
  auto [best_res, best_scale, best_state] = refine(init);

  // Jittered restarts, deterministic for a fixed seed.
  std::mt19937_64 rng(seed);
  auto jitter01 = [&rng]() { return double(rng() >> 11) * 0x1.0p-53; };
  for (int restart = 0; restart < 2 && !spent(); ++restart) {
    JointState s;
    s.cols = best_cols;
    for (auto& c : s.cols) {
      if (c.block_order != 0 || c.fam == Family::Constant) continue;
      c.phi = std::clamp(c.phi + (2.0 * jitter01() - 1.0) * rg.phi_step, phi_lo,
                         phi_hi);
    }
    auto [r, sc, st] = refine(s);
    if (r < best_res) {
      best_res = r;
      best_scale = sc;
      best_state = st;
    }
  }

  DesignResult out;
  out.gratings.reserve(size_t(D));
  for (int l = 0; l < D; ++l)
    out.gratings.push_back(
        materialize(best_state.cols[size_t(l)], problem.pixelation));
  out.residual = best_res;
  out.scale = best_scale;
  out.evaluations = evals;
  out.seed = seed;
  return out;
}

}  // namespace slmq
