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

#include <cmath>
#include <cstring>
#include <numbers>
#include <string>

#include <doctest.h>
#include <json.hpp>

#include "slmq.h"

namespace {

constexpr double kPi = std::numbers::pi;

const char* kLeftConfig = R"({
  "D": 3,
  "window": [-1, 1],
  "merge_factor": true,
  "columns": [
    {"family": "constant", "theta": 0.0},
    {"family": "sawtooth", "phi": -6.283185307179586},
    {"family": "sawtooth", "phi": 6.283185307179586}
  ]
})";

std::string take(char* s) {
  std::string out = s ? s : "";
  slmq_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("C API: version and status names") {
  CHECK(std::strlen(slmq_version()) > 0);
  CHECK(std::string(slmq_status_name(SLMQ_OK)) == "ok");
  CHECK(std::string(slmq_status_name(SLMQ_ERR_PARSE)) == "parse_error");
  CHECK(std::string(slmq_status_name(SLMQ_ERR_MODULATION)) == "modulation_cap");
}

TEST_CASE("C API: grating handles, coefficients and quadrature") {
  slmq_grating* g = nullptr;
  REQUIRE(slmq_grating_parse(R"({"family":"sawtooth","phi":6.283185307179586})",
                             &g) == SLMQ_OK);
  double c[2] = {0.0, 0.0};
  REQUIRE(slmq_grating_coeff(g, 1, c) == SLMQ_OK);
  CHECK(c[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(c[1] == doctest::Approx(0.0).epsilon(1e-12));

  double q[2] = {0.0, 0.0}, err = 1.0;
  int32_t converged = 0;
  REQUIRE(slmq_grating_coeff_quadrature(g, 1, 128, q, &err, &converged) == SLMQ_OK);
  CHECK(converged == 1);
  CHECK(std::abs(q[0] - 1.0) < 1e-9);
  // Too few samples for the requested order.
  CHECK(slmq_grating_coeff_quadrature(g, 2, 100, q, &err, &converged) ==
        SLMQ_ERR_INVALID_ARGUMENT);

  double phase = 0.0;
  REQUIRE(slmq_grating_phase(g, 0.5, &phase) == SLMQ_OK);
  CHECK(phase == doctest::Approx(kPi));
  double peak = 0.0;
  REQUIRE(slmq_grating_peak_modulation(g, &peak) == SLMQ_OK);
  CHECK(peak == doctest::Approx(2.0 * kPi));

  char* json = nullptr;
  REQUIRE(slmq_grating_to_json(g, &json) == SLMQ_OK);
  std::string text = take(json);
  CHECK(text.find("sawtooth") != std::string::npos);

  slmq_grating_free(g);
}

TEST_CASE("C API: displace and compose") {
  slmq_grating* g = nullptr;
  REQUIRE(slmq_grating_parse(
              R"({"family":"sawtooth","phi":6.283185307179586,"pixels":12})",
              &g) == SLMQ_OK);
  slmq_grating* moved = nullptr;
  REQUIRE(slmq_grating_displace(g, 6, &moved) == SLMQ_OK);
  double base[2], disp[2];
  REQUIRE(slmq_grating_coeff(g, 1, base) == SLMQ_OK);
  REQUIRE(slmq_grating_coeff(moved, 1, disp) == SLMQ_OK);
  CHECK(disp[0] == doctest::Approx(-base[0]).epsilon(1e-12));
  CHECK(disp[1] == doctest::Approx(-base[1]).epsilon(1e-12));

  slmq_grating* c1 = nullptr;
  slmq_grating* flipped = nullptr;
  REQUIRE(slmq_grating_parse(R"({"family":"constant","theta":3.141592653589793})",
                             &c1) == SLMQ_OK);
  REQUIRE(slmq_grating_compose(g, c1, &flipped) == SLMQ_OK);
  double f[2];
  REQUIRE(slmq_grating_coeff(flipped, 1, f) == SLMQ_OK);
  CHECK(f[0] == doctest::Approx(-base[0]).epsilon(1e-12));

  slmq_grating_free(g);
  slmq_grating_free(moved);
  slmq_grating_free(c1);
  slmq_grating_free(flipped);
}

TEST_CASE("C API: error reporting on bad input") {
  slmq_grating* g = nullptr;
  CHECK(slmq_grating_parse("{nonsense", &g) == SLMQ_ERR_PARSE);
  CHECK(std::strlen(slmq_last_error()) > 0);
  CHECK(slmq_grating_parse(R"({"family":"zigzag"})", &g) == SLMQ_ERR_PARSE);
  CHECK(slmq_grating_parse(nullptr, &g) == SLMQ_ERR_INVALID_ARGUMENT);
}

TEST_CASE("C API: transform build, entries, apply, phase correct") {
  slmq_transform* t = nullptr;
  REQUIRE(slmq_transform_build(kLeftConfig, &t) == SLMQ_OK);
  int32_t d = 0, cap_d = 0;
  REQUIRE(slmq_transform_dims(t, &d, &cap_d) == SLMQ_OK);
  CHECK(d == 3);
  CHECK(cap_d == 3);

  double e[2];
  REQUIRE(slmq_transform_entry(t, 0, 1, e) == SLMQ_OK);
  CHECK(e[0] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
  CHECK(slmq_transform_entry(t, 5, 0, e) == SLMQ_ERR_INVALID_ARGUMENT);

  double amps[6] = {0.0, 0.0, 1.0, 0.0, 0.0, 0.0};
  char* out = nullptr;
  REQUIRE(slmq_transform_apply(t, amps, 3, &out) == SLMQ_OK);
  auto rep = nlohmann::json::parse(take(out));
  CHECK(rep["probability"].get<double>() == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(rep["normalized"][0][0].get<double>() == doctest::Approx(1.0).epsilon(1e-12));

  double phases[3] = {kPi, 0.0, 0.0};
  slmq_transform* rotated = nullptr;
  REQUIRE(slmq_transform_phase_correct(t, phases, 3, &rotated) == SLMQ_OK);
  double r[2];
  REQUIRE(slmq_transform_entry(rotated, 0, 1, r) == SLMQ_OK);
  CHECK(r[0] == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-12));

  char* csv = nullptr;
  REQUIRE(slmq_transform_to_csv(t, &csv) == SLMQ_OK);
  CHECK(take(csv).rfind("order,row,col,", 0) == 0);
  char* js = nullptr;
  REQUIRE(slmq_transform_to_json(t, &js) == SLMQ_OK);
  CHECK(nlohmann::json::parse(take(js))["d"] == 3);

  slmq_transform_free(t);
  slmq_transform_free(rotated);
}

TEST_CASE("C API: report entry points") {
  // validate
  nlohmann::json geom{{"omega_z_m", 0.2e-3}, {"chi_m", 0.5e-3}, {"D", 3},
                      {"T_m", 0.08e-3},      {"f_m", 0.15},
                      {"k_per_m", 2.0 * kPi / 780e-9},
                      {"pixel_len_m", 0.08e-3 / 16}, {"N", 16}};
  char* out = nullptr;
  REQUIRE(slmq_validate_geometry(geom.dump().c_str(), &out) == SLMQ_OK);
  CHECK(nlohmann::json::parse(take(out))["valid"].get<bool>());

  // coeffs CSV
  nlohmann::json coeffs_cfg{
      {"grating", {{"family", "binary"}, {"phi", kPi}}},
      {"orders", nlohmann::json::array({-2, 2})}};
  REQUIRE(slmq_coeffs_csv(coeffs_cfg.dump().c_str(), &out) == SLMQ_OK);
  CHECK(take(out).rfind("phi,j,modulus_sq,phase_mod_2pi\n", 0) == 0);

  // matrix report (JSON + CSV)
  REQUIRE(slmq_matrix_report(kLeftConfig, 0, &out) == SLMQ_OK);
  CHECK(nlohmann::json::parse(take(out))["throughput"]["tau_literal"]
            .get<double>() == doctest::Approx(0.0).epsilon(1e-9));
  REQUIRE(slmq_matrix_report(kLeftConfig, 1, &out) == SLMQ_OK);
  CHECK(take(out).rfind("order,row,col,", 0) == 0);

  // apply report
  nlohmann::json apply_cfg = nlohmann::json::parse(kLeftConfig);
  apply_cfg["state"] = nlohmann::json::array({0.0, 1.0, 0.0});
  REQUIRE(slmq_apply_report(apply_cfg.dump().c_str(), &out) == SLMQ_OK);
  CHECK(nlohmann::json::parse(take(out))["probability"].get<double>() ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-12));

  // dimension mismatch surfaces as a typed status
  apply_cfg["state"] = nlohmann::json::array({1.0, 0.0});
  CHECK(slmq_apply_report(apply_cfg.dump().c_str(), &out) == SLMQ_ERR_DIMENSION);
}
