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

#include "slmq/io.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace slmq {

namespace {

constexpr double kPi = std::numbers::pi;

[[noreturn]] void parse_fail(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::parse, where + ": " + what);
}

const Json& need(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) parse_fail(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) parse_fail(where, std::string("missing field '") + key + "'");
  return *it;
}

double need_number(const Json& j, const char* key, const std::string& where) {
  const Json& v = need(j, key, where);
  if (!v.is_number()) parse_fail(where, std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

int need_int(const Json& j, const char* key, const std::string& where) {
  const Json& v = need(j, key, where);
  if (!v.is_number_integer()) parse_fail(where, std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

Complex complex_from_json(const Json& v, const std::string& where) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return {v[0].get<double>(), v[1].get<double>()};
  parse_fail(where, "complex values are [re, im] pairs (or bare reals)");
}

Json complex_to_json(const Complex& c) { return Json::array({c.real(), c.imag()}); }

FilterWindow window_from_json(const Json& j, const std::string& where) {
  const Json& w = need(j, "window", where);
  if (!w.is_array() || w.size() != 2 || !w[0].is_number_integer() ||
      !w[1].is_number_integer())
    parse_fail(where, "'window' must be [j1, j2]");
  FilterWindow win{w[0].get<int>(), w[1].get<int>()};
  check_window(win);
  return win;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

double phase_mod_2pi(const Complex& c) {
  double p = std::arg(c);
  if (p < 0.0) p += 2.0 * kPi;
  // arg can return exactly -0.0 phases; keep the result in [0, 2*pi).
  if (p >= 2.0 * kPi) p -= 2.0 * kPi;
  return p;
}

GratingSpec override_phase(GratingSpec g, double value) {
  if (g.family == Family::Constant)
    g.theta = value;
  else
    g.phi = value;
  return g;
}

SamplingParams sampling_from_config(const Json& config, const ModeGeometry& geom,
                                    const std::vector<GratingSpec>& columns) {
  bool pixelated = false;
  for (const auto& g : columns)
    if (g.pixels) pixelated = true;
  SamplingParams grid = default_sampling(geom, pixelated);
  if (config.contains("sampling")) {
    const Json& s = config["sampling"];
    if (s.contains("span_m")) grid.span = s["span_m"].get<double>();
    if (s.contains("dy_m")) grid.dy = s["dy_m"].get<double>();
  }
  return grid;
}

}  // namespace

Json grating_to_json(const GratingSpec& g) {
  Json j;
  switch (g.family) {
    case Family::Sawtooth: j["family"] = "sawtooth"; j["phi"] = g.phi; break;
    case Family::Binary: j["family"] = "binary"; j["phi"] = g.phi; break;
    case Family::Triangular: j["family"] = "triangular"; j["phi"] = g.phi; break;
    case Family::Constant: j["family"] = "constant"; j["theta"] = g.theta; break;
    case Family::Tabulated:
      j["family"] = "tabulated";
      j["phases"] = g.phases;
      break;
  }
  if (g.pixels) j["pixels"] = *g.pixels;
  if (g.shift_pixels != 0) j["shift"] = g.shift_pixels;
  if (!g.composed_with.empty()) {
    Json arr = Json::array();
    for (const auto& c : g.composed_with) arr.push_back(grating_to_json(c));
    j["compose"] = arr;
  }
  return j;
}

GratingSpec grating_from_json(const Json& j) {
  const std::string where = "grating";
  const Json& fam = need(j, "family", where);
  if (!fam.is_string()) parse_fail(where, "'family' must be a string");
  std::string name = fam.get<std::string>();

  GratingSpec g;
  if (name == "sawtooth") {
    g = GratingSpec::sawtooth(need_number(j, "phi", where));
  } else if (name == "binary") {
    g = GratingSpec::binary(need_number(j, "phi", where));
  } else if (name == "triangular") {
    g = GratingSpec::triangular(need_number(j, "phi", where));
  } else if (name == "constant") {
    g = GratingSpec::constant(need_number(j, "theta", where));
  } else if (name == "tabulated") {
    const Json& ph = need(j, "phases", where);
    if (!ph.is_array()) parse_fail(where, "'phases' must be an array");
    std::vector<double> phases;
    for (const auto& v : ph) {
      if (!v.is_number()) parse_fail(where, "'phases' entries must be numbers");
      phases.push_back(v.get<double>());
    }
    g = GratingSpec::tabulated(std::move(phases));
  } else {
    parse_fail(where, "unknown family '" + name + "'");
  }

  if (j.contains("pixels")) {
    int n = need_int(j, "pixels", where);
    if (g.family == Family::Tabulated) {
      if (n != *g.pixels) parse_fail(where, "'pixels' disagrees with phases length");
    } else {
      g = g.with_pixels(n);
    }
  }
  if (j.contains("shift")) g.shift_pixels = need_int(j, "shift", where);
  if (j.contains("compose")) {
    const Json& arr = j["compose"];
    if (!arr.is_array()) parse_fail(where, "'compose' must be an array");
    for (const auto& c : arr) g.composed_with.push_back(grating_from_json(c));
  }
  check_spec(g);
  return g;
}

Json geometry_to_json(const ModeGeometry& g) {
  return Json{{"omega_z_m", g.omega_z}, {"chi_m", g.chi},   {"D", g.D},
              {"T_m", g.T},             {"f_m", g.f},       {"k_per_m", g.k},
              {"pixel_len_m", g.pixel_len}, {"N", g.N}};
}

ModeGeometry geometry_from_json(const Json& j) {
  const std::string where = "geometry";
  ModeGeometry g;
  g.omega_z = need_number(j, "omega_z_m", where);
  g.chi = need_number(j, "chi_m", where);
  g.D = need_int(j, "D", where);
  g.T = need_number(j, "T_m", where);
  g.f = need_number(j, "f_m", where);
  g.k = need_number(j, "k_per_m", where);
  g.pixel_len = need_number(j, "pixel_len_m", where);
  g.N = need_int(j, "N", where);
  return g;
}

std::vector<Complex> amps_from_json(const Json& j) {
  if (!j.is_array() || j.empty())
    parse_fail("state", "expected a non-empty amplitude array");
  std::vector<Complex> amps;
  amps.reserve(j.size());
  for (const auto& v : j) amps.push_back(complex_from_json(v, "state"));
  return amps;
}

Json amps_to_json(const std::vector<Complex>& amps) {
  Json arr = Json::array();
  for (const auto& a : amps) arr.push_back(complex_to_json(a));
  return arr;
}

ComplexMatrix cmatrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array())
    parse_fail("matrix", "expected an array of rows");
  int rows = int(j.size()), cols = int(j[0].size());
  ComplexMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    if (int(j[r].size()) != cols) parse_fail("matrix", "ragged rows");
    for (int c = 0; c < cols; ++c)
      m.at(r, c) = complex_from_json(j[size_t(r)][size_t(c)], "matrix");
  }
  return m;
}

Json cmatrix_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (int r = 0; r < m.rows; ++r) {
    Json row = Json::array();
    for (int c = 0; c < m.cols; ++c) row.push_back(complex_to_json(m.at(r, c)));
    rows.push_back(row);
  }
  return rows;
}

TransformConfig transform_config_from_json(const Json& j) {
  const std::string where = "transform config";
  TransformConfig cfg;
  cfg.window = window_from_json(j, where);
  cfg.merge_factor = j.value("merge_factor", true);
  const Json& cols = need(j, "columns", where);
  if (!cols.is_array() || cols.empty())
    parse_fail(where, "'columns' must be a non-empty array (D must be >= 1)");
  for (const auto& c : cols) cfg.columns.push_back(grating_from_json(c));
  if (j.contains("D") && j["D"].get<int>() != int(cfg.columns.size()))
    parse_fail(where, "'D' disagrees with the number of columns");
  if (j.contains("blocked")) {
    const Json& b = j["blocked"];
    if (!b.is_array()) parse_fail(where, "'blocked' must be an array of columns");
    for (const auto& v : b)
      cfg.columns = block_column(cfg.columns, v.get<int>(), cfg.window);
  }
  return cfg;
}

Json transform_config_to_json(const TransformConfig& c) {
  Json cols = Json::array();
  for (const auto& g : c.columns) cols.push_back(grating_to_json(g));
  return Json{{"D", int(c.columns.size())},
              {"window", Json::array({c.window.j1, c.window.j2})},
              {"merge_factor", c.merge_factor},
              {"columns", cols}};
}

Json matrix_to_json(const TransformMatrix& m) {
  ComplexMatrix cm(m.d, m.D);
  cm.entries = m.entries;
  return Json{{"d", m.d},
              {"D", m.D},
              {"window", Json::array({m.window.j1, m.window.j2})},
              {"merge_factor", m.include_merge_factor},
              {"entries", cmatrix_to_json(cm)},
              {"throughput",
               Json{{"tau_literal", m.throughput.tau_literal},
                    {"column_kept", m.throughput.column_kept},
                    {"merge_probability", m.throughput.merge_probability}}}};
}

std::string matrix_to_csv(const TransformMatrix& m) {
  std::string out = "order,row,col,modulus,phase_rad\n";
  for (int r = 0; r < m.d; ++r)
    for (int c = 0; c < m.D; ++c) {
      Complex v = m.at(r, c);
      out += std::to_string(m.window.j1 + r) + "," + std::to_string(r + 1) +
             "," + std::to_string(c + 1) + "," + format_double(std::abs(v)) +
             "," + format_double(phase_mod_2pi(v)) + "\n";
    }
  return out;
}

KrausMap kraus_from_json(const Json& j) {
  const std::string where = "kraus config";
  const Json& els = need(j, "elements", where);
  if (!els.is_array() || els.empty())
    parse_fail(where, "'elements' must be a non-empty array");
  std::vector<KrausElement> elements;
  for (const auto& e : els) {
    KrausElement el;
    el.p = need_number(e, "p", where);
    TransformConfig cfg = transform_config_from_json(need(e, "transform", where));
    el.m = build_matrix(cfg.columns, cfg.window, cfg.merge_factor);
    elements.push_back(std::move(el));
  }
  return make_kraus_map(std::move(elements));
}

DesignProblem design_problem_from_json(const Json& j) {
  const std::string where = "design config";
  DesignProblem p;
  p.window = window_from_json(j, where);
  p.target = cmatrix_from_json(need(j, "target", where));
  if (j.contains("families")) {
    p.families.clear();
    for (const auto& f : j["families"]) {
      std::string name = f.get<std::string>();
      if (name == "sawtooth") p.families.push_back(Family::Sawtooth);
      else if (name == "binary") p.families.push_back(Family::Binary);
      else if (name == "triangular") p.families.push_back(Family::Triangular);
      else if (name == "constant") p.families.push_back(Family::Constant);
      else parse_fail(where, "unknown family '" + name + "'");
    }
  }
  if (j.contains("pixels")) p.pixelation = need_int(j, "pixels", where);
  if (j.contains("budget")) p.budget = j["budget"].get<long>();
  if (j.contains("phi_step")) p.ranges.phi_step = j["phi_step"].get<double>();
  if (j.contains("theta_step")) p.ranges.theta_step = j["theta_step"].get<double>();
  if (j.contains("phi_min")) p.ranges.phi_min = j["phi_min"].get<double>();
  if (j.contains("phi_max")) p.ranges.phi_max = j["phi_max"].get<double>();
  return p;
}

Json design_result_to_json(const DesignResult& r) {
  Json gratings = Json::array();
  for (const auto& g : r.gratings) gratings.push_back(grating_to_json(g));
  return Json{{"gratings", gratings},
              {"residual", r.residual},
              {"scale", complex_to_json(r.scale)},
              {"evaluations", r.evaluations},
              {"seed", r.seed}};
}

Json report_coeffs_json(const Json& config) {
  const std::string where = "coeffs config";
  GratingSpec base = grating_from_json(need(config, "grating", where));
  if (config.contains("pixels"))
    base = base.with_pixels(need_int(config, "pixels", where));

  const Json& orders = need(config, "orders", where);
  if (!orders.is_array() || orders.size() != 2)
    parse_fail(where, "'orders' must be [j_min, j_max]");
  int j_min = orders[0].get<int>(), j_max = orders[1].get<int>();
  if (j_min > j_max) parse_fail(where, "'orders' range is empty");

  std::vector<double> sweep;
  if (config.contains("phi_values")) {
    for (const auto& v : config["phi_values"]) sweep.push_back(v.get<double>());
  } else if (config.contains("sweep")) {
    const Json& s = config["sweep"];
    double from = need_number(s, "from", where);
    double to = need_number(s, "to", where);
    int count = need_int(s, "count", where);
    if (count < 2) parse_fail(where, "'sweep.count' must be >= 2");
    for (int i = 0; i < count; ++i)
      sweep.push_back(from + (to - from) * double(i) / double(count - 1));
  } else {
    sweep.push_back(base.family == Family::Constant ? base.theta : base.phi);
  }

  Json rows = Json::array();
  for (double phi : sweep) {
    GratingSpec g = override_phase(base, phi);
    for (int j = j_min; j <= j_max; ++j) {
      Complex c = coefficient(g, j);
      rows.push_back(Json{{"phi", phi},
                          {"j", j},
                          {"modulus_sq", std::norm(c)},
                          {"phase_mod_2pi", phase_mod_2pi(c)}});
    }
  }
  return Json{{"rows", rows}};
}

std::string report_coeffs_csv(const Json& config) {
  Json rep = report_coeffs_json(config);
  std::string out = "phi,j,modulus_sq,phase_mod_2pi\n";
  for (const auto& r : rep["rows"]) {
    out += format_double(r["phi"].get<double>()) + "," +
           std::to_string(r["j"].get<int>()) + "," +
           format_double(r["modulus_sq"].get<double>()) + "," +
           format_double(r["phase_mod_2pi"].get<double>()) + "\n";
  }
  return out;
}

Json report_matrix(const Json& config) {
  TransformConfig cfg = transform_config_from_json(config);
  return matrix_to_json(build_matrix(cfg.columns, cfg.window, cfg.merge_factor));
}

std::string report_matrix_csv(const Json& config) {
  TransformConfig cfg = transform_config_from_json(config);
  return matrix_to_csv(build_matrix(cfg.columns, cfg.window, cfg.merge_factor));
}

Json report_apply(const Json& config) {
  TransformConfig cfg = transform_config_from_json(config);
  QuditStateVector psi(amps_from_json(need(config, "state", "apply config")));
  check_state(psi);
  TransformMatrix m = build_matrix(cfg.columns, cfg.window, cfg.merge_factor);
  ApplyResult res = apply_to_state(m, psi);
  return Json{{"probability", res.probability},
              {"state", amps_to_json(res.state.amps)},
              {"normalized", amps_to_json(res.normalized.amps)},
              {"throughput",
               Json{{"tau_literal", m.throughput.tau_literal},
                    {"column_kept", m.throughput.column_kept},
                    {"merge_probability", m.throughput.merge_probability}}}};
}

Json report_oracle(const Json& config) {
  const std::string where = "oracle config";
  TransformConfig cfg = transform_config_from_json(config);
  ModeGeometry geom = geometry_from_json(need(config, "geometry", where));
  QuditStateVector psi(amps_from_json(need(config, "state", where)));
  check_state(psi);
  SamplingParams grid = sampling_from_config(config, geom, cfg.columns);

  PipelineReport rep = simulate_pipeline(cfg.columns, psi, geom, cfg.window, grid);
  Json out{{"beta_wave", amps_to_json(rep.beta_wave)},
           {"beta_matrix", amps_to_json(rep.beta_matrix)},
           {"global_phase_rad", rep.global_phase},
           {"max_rel_error", rep.max_rel_error},
           {"aligned_distance", rep.aligned_distance},
           {"merged_power", rep.merged_power},
           {"kept_power", rep.kept_power},
           {"mode_capture", rep.mode_capture},
           {"leak", rep.leak},
           {"grid", Json{{"span_m", grid.span}, {"dy_m", grid.dy}}}};
  if (config.value("check_refinement", false)) {
    SamplingParams fine{grid.span, grid.dy / 2.0};
    PipelineReport rf = simulate_pipeline(cfg.columns, psi, geom, cfg.window, fine);
    double worst = 0.0, scale = 0.0;
    for (const auto& b : rep.beta_wave) scale = std::max(scale, std::abs(b));
    for (size_t i = 0; i < rep.beta_wave.size(); ++i)
      worst = std::max(worst, std::abs(rf.beta_wave[i] - rep.beta_wave[i]));
    out["refinement_max_delta_rel"] = scale > 0.0 ? worst / scale : worst;
  }
  return out;
}

std::string report_oracle_fields_csv(const Json& config) {
  const std::string where = "oracle config";
  TransformConfig cfg = transform_config_from_json(config);
  ModeGeometry geom = geometry_from_json(need(config, "geometry", where));
  QuditStateVector psi(amps_from_json(need(config, "state", where)));
  check_state(psi);
  SamplingParams grid = sampling_from_config(config, geom, cfg.columns);

  SampledField total;
  double merge_scale = 1.0 / std::sqrt(double(cfg.columns.size()));
  for (size_t l = 0; l < cfg.columns.size(); ++l) {
    SampledField ff = far_field(sample_field(cfg.columns[l], geom, grid), geom);
    if (l == 0) {
      total = ff;
      for (auto& v : total.values) v = Complex{0.0, 0.0};
    }
    Complex a = merge_scale * psi.amps[l];
    for (int n = 0; n < ff.size(); ++n) total.values[size_t(n)] += a * ff.values[size_t(n)];
  }
  std::string out = "y_m,re,im\n";
  for (int n = 0; n < total.size(); ++n) {
    out += format_double(total.y_at(n)) + "," +
           format_double(total.values[size_t(n)].real()) + "," +
           format_double(total.values[size_t(n)].imag()) + "\n";
  }
  return out;
}

Json report_design(const Json& config, std::uint64_t seed) {
  DesignProblem p = design_problem_from_json(config);
  return design_result_to_json(search(p, seed));
}

Json report_kraus(const Json& config, std::uint64_t seed) {
  const std::string where = "kraus config";
  KrausMap map = kraus_from_json(config);
  DensityMatrix rho;
  if (config.contains("rho")) {
    rho.m = cmatrix_from_json(config["rho"]);
    if (rho.m.rows != rho.m.cols) parse_fail(where, "'rho' must be square");
    check_density_matrix(rho);
  } else if (config.contains("state")) {
    QuditStateVector psi(amps_from_json(config["state"]));
    check_state(psi);
    rho = pure_density(psi.normalized());
  } else {
    parse_fail(where, "need 'rho' or 'state'");
  }
  std::uint64_t windows = config.value("windows", std::uint64_t{10000});

  DensityMatrix exact = apply_map(map, rho);
  EmpiricalResult emp = empirical_map(map, rho, windows, seed);

  std::vector<std::uint64_t> counts(map.elements.size(), 0);
  for (int idx : schedule(map, windows, seed)) ++counts[size_t(idx)];
  std::vector<double> weights;
  for (const auto& e : map.elements) weights.push_back(e.p);

  return Json{{"seed", seed},
              {"windows", windows},
              {"weights", weights},
              {"counts", counts},
              {"exact", cmatrix_to_json(exact.m)},
              {"empirical", cmatrix_to_json(emp.rho_hat.m)},
              {"distance", emp.distance}};
}

Json report_pixel(const Json& config) {
  const std::string where = "pixel config";
  GratingSpec base = grating_from_json(need(config, "grating", where));
  GratingSpec ideal = base;
  ideal.pixels.reset();

  const Json& orders = need(config, "orders", where);
  int j_min = orders[0].get<int>(), j_max = orders[1].get<int>();
  if (j_min > j_max) parse_fail(where, "'orders' range is empty");
  std::vector<int> n_values;
  for (const auto& v : need(config, "N_values", where)) n_values.push_back(v.get<int>());

  Json per_n = Json::array();
  for (int n : n_values) {
    GratingSpec pix = ideal.with_pixels(n);
    Json coeffs = Json::array();
    double max_err = 0.0;
    for (int j = j_min; j <= j_max; ++j) {
      Complex cp = coeff_pixelated(pix, j);
      Complex ci = coefficient(ideal, j);
      double err = std::abs(cp - ci);
      max_err = std::max(max_err, err);
      coeffs.push_back(Json{{"j", j},
                            {"pixelated", complex_to_json(cp)},
                            {"ideal", complex_to_json(ci)},
                            {"abs_err", err}});
    }
    per_n.push_back(Json{{"N", n}, {"coeffs", coeffs}, {"max_abs_err", max_err}});
  }
  return Json{{"grating", grating_to_json(ideal)}, {"results", per_n}};
}

std::string report_pixel_csv(const Json& config) {
  Json rep = report_pixel(config);
  std::string out = "N,j,pix_re,pix_im,ideal_re,ideal_im,abs_err\n";
  for (const auto& block : rep["results"]) {
    int n = block["N"].get<int>();
    for (const auto& row : block["coeffs"]) {
      out += std::to_string(n) + "," + std::to_string(row["j"].get<int>()) +
             "," + format_double(row["pixelated"][0].get<double>()) + "," +
             format_double(row["pixelated"][1].get<double>()) + "," +
             format_double(row["ideal"][0].get<double>()) + "," +
             format_double(row["ideal"][1].get<double>()) + "," +
             format_double(row["abs_err"].get<double>()) + "\n";
    }
  }
  return out;
}

Json report_validate(const Json& geometry) {
  ModeGeometry geom = geometry_from_json(geometry);
  auto violations = validate_geometry(geom);
  Json arr = Json::array();
  for (const auto& v : violations)
    arr.push_back(Json{{"predicate", v.predicate}, {"margin", v.margin}});
  Json out{{"valid", violations.empty()}, {"violations", arr}};
  if (violations.empty())
    out["derived"] = Json{{"delta_y_m", geom.delta_y()}, {"omega_f_m", geom.omega_f()}};
  return out;
}

}  // namespace slmq
