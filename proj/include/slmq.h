/* Copyright 2026 The slmq Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C API for the slmq engine: simulation, verification and inverse design of
 * phase-grating transformations on multipath qudits.
 *
 * Conventions:
 *   - Every function returns a status code (SLMQ_OK on success). On failure,
 *     slmq_last_error() gives a thread-local human-readable message.
 *   - Structured inputs and outputs are JSON strings (see README for the
 *     schemas); tables are CSV strings. Strings returned through char** are
 *     heap-allocated and released with slmq_string_free().
 *   - Handles are opaque; release them with the matching *_free function.
 *   - Angles are radians, lengths meters.
 */

#ifndef SLMQ_H_
#define SLMQ_H_

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum slmq_status {
  SLMQ_OK = 0,
  SLMQ_ERR_INVALID_ARGUMENT = 1,
  SLMQ_ERR_PARSE = 2,
  SLMQ_ERR_DIMENSION = 3,
  SLMQ_ERR_MODULATION = 4,
  SLMQ_ERR_NUMERIC = 5,
  SLMQ_ERR_INTERNAL = 6
} slmq_status;

const char* slmq_version(void);
const char* slmq_status_name(int32_t status);
/* Message for the most recent failure on this thread; empty if none. */
const char* slmq_last_error(void);
void slmq_string_free(char* s);

/* ---- gratings ---------------------------------------------------------- */

typedef struct slmq_grating slmq_grating;

int32_t slmq_grating_parse(const char* json, slmq_grating** out);
int32_t slmq_grating_to_json(const slmq_grating* g, char** out_json);
/* Fourier coefficient of order j (pixel-exact or closed form as applicable). */
int32_t slmq_grating_coeff(const slmq_grating* g, int32_t order,
                           double out_re_im[2]);
/* Independent quadrature oracle; out_converged (may be NULL) is 1 when the
 * Richardson estimate met the 1e-8 target. samples >= 64*(|order|+1). */
int32_t slmq_grating_coeff_quadrature(const slmq_grating* g, int32_t order,
                                      int32_t samples, double out_re_im[2],
                                      double* out_err, int32_t* out_converged);
/* Composed profile phase at a period fraction u in [0, 1). */
int32_t slmq_grating_phase(const slmq_grating* g, double period_fraction,
                           double* out_rad);
/* Peak-to-peak modulation of the composed profile. */
int32_t slmq_grating_peak_modulation(const slmq_grating* g, double* out_rad);
int32_t slmq_grating_displace(const slmq_grating* g, int32_t pixels,
                              slmq_grating** out);
int32_t slmq_grating_compose(const slmq_grating* a, const slmq_grating* b,
                             slmq_grating** out);
void slmq_grating_free(slmq_grating* g);

/* ---- transforms -------------------------------------------------------- */

typedef struct slmq_transform slmq_transform;

/* config: {"D":3,"window":[-1,1],"merge_factor":true,"columns":[...]} */
int32_t slmq_transform_build(const char* config_json, slmq_transform** out);
int32_t slmq_transform_dims(const slmq_transform* t, int32_t* out_d,
                            int32_t* out_cap_d);
int32_t slmq_transform_entry(const slmq_transform* t, int32_t row, int32_t col,
                             double out_re_im[2]);
int32_t slmq_transform_to_json(const slmq_transform* t, char** out_json);
int32_t slmq_transform_to_csv(const slmq_transform* t, char** out_csv);
/* amps: interleaved re,im pairs, dim entries. Result JSON carries the output
 * state, its normalized form and the postselection probability. */
int32_t slmq_transform_apply(const slmq_transform* t, const double* amps_re_im,
                             int32_t dim, char** out_json);
int32_t slmq_transform_phase_correct(const slmq_transform* t,
                                     const double* phases_rad, int32_t count,
                                     slmq_transform** out);
void slmq_transform_free(slmq_transform* t);

/* ---- report-level entry points (one per CLI subcommand) ----------------- */

int32_t slmq_coeffs_csv(const char* config_json, char** out_csv);
int32_t slmq_coeffs_json(const char* config_json, char** out_json);
int32_t slmq_matrix_report(const char* config_json, int32_t as_csv,
                           char** out_text);
int32_t slmq_apply_report(const char* config_json, char** out_json);
int32_t slmq_oracle_report(const char* config_json, char** out_json);
int32_t slmq_oracle_fields_csv(const char* config_json, char** out_csv);
int32_t slmq_design_report(const char* config_json, uint64_t seed,
                           char** out_json);
int32_t slmq_kraus_report(const char* config_json, uint64_t seed,
                          char** out_json);
int32_t slmq_pixel_report(const char* config_json, int32_t as_csv,
                          char** out_text);
int32_t slmq_validate_geometry(const char* geometry_json, char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* SLMQ_H_ */
