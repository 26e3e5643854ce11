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

#include "slmq.h"

#include <cstring>
#include <new>
#include <string>

#include "slmq/io.hpp"

using slmq::Error;
using slmq::ErrorCode;
using slmq::Json;

struct slmq_grating {
  slmq::GratingSpec spec;
};

struct slmq_transform {
  slmq::TransformMatrix m;
};

namespace {

thread_local std::string t_last_error;

int32_t code_of(ErrorCode c) {
  switch (c) {
    case ErrorCode::invalid_argument: return SLMQ_ERR_INVALID_ARGUMENT;
    case ErrorCode::parse: return SLMQ_ERR_PARSE;
    case ErrorCode::dimension_mismatch: return SLMQ_ERR_DIMENSION;
    case ErrorCode::modulation_cap: return SLMQ_ERR_MODULATION;
    case ErrorCode::numeric: return SLMQ_ERR_NUMERIC;
  }
  return SLMQ_ERR_INTERNAL;
}

// Runs fn, translating exceptions into status codes + thread-local message.
template <typename Fn>
int32_t guarded(Fn&& fn) {
  try {
    fn();
    t_last_error.clear();
    return SLMQ_OK;
  } catch (const Error& e) {
    t_last_error = e.what();
    return code_of(e.code());
  } catch (const Json::exception& e) {
    t_last_error = e.what();
    return SLMQ_ERR_PARSE;
  } catch (const std::exception& e) {
    t_last_error = e.what();
    return SLMQ_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = new (std::nothrow) char[s.size() + 1];
  if (!out) return nullptr;
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

int32_t emit(const std::string& text, char** out) {
  if (!out) {
    t_last_error = "null output pointer";
    return SLMQ_ERR_INVALID_ARGUMENT;
  }
  *out = dup_string(text);
  if (!*out) {
    t_last_error = "out of memory";
    return SLMQ_ERR_INTERNAL;
  }
  return SLMQ_OK;
}

Json parse_json(const char* text, const char* what) {
  if (!text) throw Error(ErrorCode::invalid_argument, std::string(what) + " is null");
  Json j = Json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded())
    throw Error(ErrorCode::parse, std::string(what) + " is not valid JSON");
  return j;
}

}  // namespace

extern "C" {

const char* slmq_version(void) { return "1.0.0"; }

const char* slmq_status_name(int32_t status) {
  switch (status) {
    case SLMQ_OK: return "ok";
    case SLMQ_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case SLMQ_ERR_PARSE: return "parse_error";
    case SLMQ_ERR_DIMENSION: return "dimension_mismatch";
    case SLMQ_ERR_MODULATION: return "modulation_cap";
    case SLMQ_ERR_NUMERIC: return "numeric_error";
    default: return "internal_error";
  }
}

const char* slmq_last_error(void) { return t_last_error.c_str(); }

void slmq_string_free(char* s) { delete[] s; }

int32_t slmq_grating_parse(const char* json, slmq_grating** out) {
  return guarded([&] {
    if (!out) throw Error(ErrorCode::invalid_argument, "null output handle");
    auto spec = slmq::grating_from_json(parse_json(json, "grating JSON"));
    *out = new slmq_grating{std::move(spec)};
  });
}

int32_t slmq_grating_to_json(const slmq_grating* g, char** out_json) {
  return guarded([&] {
    if (!g) throw Error(ErrorCode::invalid_argument, "null grating handle");
    if (emit(slmq::grating_to_json(g->spec).dump(), out_json) != SLMQ_OK)
      throw Error(ErrorCode::invalid_argument, t_last_error);
  });
}

int32_t slmq_grating_coeff(const slmq_grating* g, int32_t order,
                           double out_re_im[2]) {
  return guarded([&] {
    if (!g || !out_re_im)
      throw Error(ErrorCode::invalid_argument, "null argument");
    slmq::Complex c = slmq::coefficient(g->spec, order);
    out_re_im[0] = c.real();
    out_re_im[1] = c.imag();
  });
}

int32_t slmq_grating_coeff_quadrature(const slmq_grating* g, int32_t order,
                                      int32_t samples, double out_re_im[2],
                                      double* out_err, int32_t* out_converged) {
  return guarded([&] {
    if (!g || !out_re_im)
      throw Error(ErrorCode::invalid_argument, "null argument");
    auto q = slmq::coeff_quadrature(g->spec, order, samples);
    out_re_im[0] = q.value.real();
    out_re_im[1] = q.value.imag();
    if (out_err) *out_err = q.err_estimate;
    if (out_converged) *out_converged = q.converged ? 1 : 0;
  });
}

int32_t slmq_grating_phase(const slmq_grating* g, double period_fraction,
                           double* out_rad) {
  return guarded([&] {
    if (!g || !out_rad) throw Error(ErrorCode::invalid_argument, "null argument");
    *out_rad = slmq::phase_at(g->spec, period_fraction);
  });
}

int32_t slmq_grating_peak_modulation(const slmq_grating* g, double* out_rad) {
  return guarded([&] {
    if (!g || !out_rad) throw Error(ErrorCode::invalid_argument, "null argument");
    *out_rad = slmq::validate_modulation(g->spec);
  });
}

int32_t slmq_grating_displace(const slmq_grating* g, int32_t pixels,
                              slmq_grating** out) {
  return guarded([&] {
    if (!g || !out) throw Error(ErrorCode::invalid_argument, "null argument");
    *out = new slmq_grating{slmq::displace(g->spec, pixels)};
  });
}

int32_t slmq_grating_compose(const slmq_grating* a, const slmq_grating* b,
                             slmq_grating** out) {
  return guarded([&] {
    if (!a || !b || !out) throw Error(ErrorCode::invalid_argument, "null argument");
    *out = new slmq_grating{slmq::compose(a->spec, b->spec)};
  });
}

void slmq_grating_free(slmq_grating* g) { delete g; }

int32_t slmq_transform_build(const char* config_json, slmq_transform** out) {
  return guarded([&] {
    if (!out) throw Error(ErrorCode::invalid_argument, "null output handle");
    auto cfg = slmq::transform_config_from_json(parse_json(config_json, "config"));
    *out = new slmq_transform{
        slmq::build_matrix(cfg.columns, cfg.window, cfg.merge_factor)};
  });
}

int32_t slmq_transform_dims(const slmq_transform* t, int32_t* out_d,
                            int32_t* out_cap_d) {
  return guarded([&] {
    if (!t) throw Error(ErrorCode::invalid_argument, "null transform handle");
    if (out_d) *out_d = t->m.d;
    if (out_cap_d) *out_cap_d = t->m.D;
  });
}

int32_t slmq_transform_entry(const slmq_transform* t, int32_t row, int32_t col,
                             double out_re_im[2]) {
  return guarded([&] {
    if (!t || !out_re_im) throw Error(ErrorCode::invalid_argument, "null argument");
    if (row < 0 || row >= t->m.d || col < 0 || col >= t->m.D)
      throw Error(ErrorCode::invalid_argument, "entry index out of range");
    slmq::Complex c = t->m.at(row, col);
    out_re_im[0] = c.real();
    out_re_im[1] = c.imag();
  });
}

int32_t slmq_transform_to_json(const slmq_transform* t, char** out_json) {
  return guarded([&] {
    if (!t) throw Error(ErrorCode::invalid_argument, "null transform handle");
    if (emit(slmq::matrix_to_json(t->m).dump(), out_json) != SLMQ_OK)
      throw Error(ErrorCode::invalid_argument, t_last_error);
  });
}

int32_t slmq_transform_to_csv(const slmq_transform* t, char** out_csv) {
  return guarded([&] {
    if (!t) throw Error(ErrorCode::invalid_argument, "null transform handle");
    if (emit(slmq::matrix_to_csv(t->m), out_csv) != SLMQ_OK)
      throw Error(ErrorCode::invalid_argument, t_last_error);
  });
}

int32_t slmq_transform_apply(const slmq_transform* t, const double* amps_re_im,
                             int32_t dim, char** out_json) {
  return guarded([&] {
    if (!t || !amps_re_im) throw Error(ErrorCode::invalid_argument, "null argument");
    std::vector<slmq::Complex> amps;
    amps.reserve(size_t(dim));
    for (int32_t i = 0; i < dim; ++i)
      amps.emplace_back(amps_re_im[2 * i], amps_re_im[2 * i + 1]);
    slmq::QuditStateVector psi(std::move(amps));
    slmq::check_state(psi);
    auto res = slmq::apply_to_state(t->m, psi);
    Json out{{"probability", res.probability},
             {"state", slmq::amps_to_json(res.state.amps)},
             {"normalized", slmq::amps_to_json(res.normalized.amps)}};
    if (emit(out.dump(), out_json) != SLMQ_OK)
      throw Error(ErrorCode::invalid_argument, t_last_error);
  });
}

int32_t slmq_transform_phase_correct(const slmq_transform* t,
                                     const double* phases_rad, int32_t count,
                                     slmq_transform** out) {
  return guarded([&] {
    if (!t || !phases_rad || !out)
      throw Error(ErrorCode::invalid_argument, "null argument");
    std::vector<double> phases(phases_rad, phases_rad + count);
    *out = new slmq_transform{slmq::phase_correct(t->m, phases)};
  });
}

void slmq_transform_free(slmq_transform* t) { delete t; }

int32_t slmq_coeffs_csv(const char* config_json, char** out_csv) {
  return guarded([&] {
    std::string csv = slmq::report_coeffs_csv(parse_json(config_json, "config"));
    if (emit(csv, out_csv) != SLMQ_OK)
      throw Error(ErrorCode::invalid_argument, t_last_error);
  });
}

int32_t slmq_coeffs_json(const char* config_json, char** out_json) {
  return guarded([&] {
    Json rep = slmq::report_coeffs_json(parse_json(config_json, "config"));
    if (emit(rep.dump(), out_json) != SLMQ_OK)
      throw Error(ErrorCode::invalid_argument, t_last_error);
  });
}

int32_t slmq_matrix_report(const char* config_json, int32_t as_csv,
                           char** out_text) {
  return guarded([&] {
    Json cfg = parse_json(config_json, "config");
    std::string text =
        as_csv ? slmq::report_matrix_csv(cfg) : slmq::report_matrix(cfg).dump();
    if (emit(text, out_text) != SLMQ_OK)
      throw Error(ErrorCode::invalid_argument, t_last_error);
  });
}

int32_t slmq_apply_report(const char* config_json, char** out_json) {
  return guarded([&] {
    Json rep = slmq::report_apply(parse_json(config_json, "config"));
    if (emit(rep.dump(), out_json) != SLMQ_OK)
      throw Error(ErrorCode::invalid_argument, t_last_error);
  });
}

int32_t slmq_oracle_report(const char* config_json, char** out_json) {
  return guarded([&] {
    Json rep = slmq::report_oracle(parse_json(config_json, "config"));
    if (emit(rep.dump(), out_json) != SLMQ_OK)
      throw Error(ErrorCode::invalid_argument, t_last_error);
  });
}

int32_t slmq_oracle_fields_csv(const char* config_json, char** out_csv) {
  return guarded([&] {
    std::string csv =
        slmq::report_oracle_fields_csv(parse_json(config_json, "config"));
    if (emit(csv, out_csv) != SLMQ_OK)
      throw Error(ErrorCode::invalid_argument, t_last_error);
  });
}

int32_t slmq_design_report(const char* config_json, uint64_t seed,
                           char** out_json) {
  return guarded([&] {
    Json rep = slmq::report_design(parse_json(config_json, "config"), seed);
    if (emit(rep.dump(), out_json) != SLMQ_OK)
      throw Error(ErrorCode::invalid_argument, t_last_error);
  });
}

int32_t slmq_kraus_report(const char* config_json, uint64_t seed,
                          char** out_json) {
  return guarded([&] {
    Json rep = slmq::report_kraus(parse_json(config_json, "config"), seed);
    if (emit(rep.dump(), out_json) != SLMQ_OK)
      throw Error(ErrorCode::invalid_argument, t_last_error);
  });
}

int32_t slmq_pixel_report(const char* config_json, int32_t as_csv,
                          char** out_text) {
  return guarded([&] {
    Json cfg = parse_json(config_json, "config");
    std::string text =
        as_csv ? slmq::report_pixel_csv(cfg) : slmq::report_pixel(cfg).dump();
    if (emit(text, out_text) != SLMQ_OK)
      throw Error(ErrorCode::invalid_argument, t_last_error);
  });
}

int32_t slmq_validate_geometry(const char* geometry_json, char** out_json) {
  return guarded([&] {
    Json rep = slmq::report_validate(parse_json(geometry_json, "geometry"));
    if (emit(rep.dump(), out_json) != SLMQ_OK)
      throw Error(ErrorCode::invalid_argument, t_last_error);
  });
}

}  // extern "C"
