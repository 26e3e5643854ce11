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

#ifndef SLMQ_IO_HPP_
#define SLMQ_IO_HPP_

#include <cstdint>
#include <string>

#include <json.hpp>

#include "slmq/core.hpp"
#include "slmq/design.hpp"
#include "slmq/grating.hpp"
#include "slmq/kraus.hpp"
#include "slmq/transform.hpp"
#include "slmq/wave.hpp"

// JSON wire formats. Angles are radians, lengths meters; length-bearing keys
// carry a unit suffix (omega_z_m, k_per_m, ...). Complex numbers are [re, im]
// pairs. CSV uses '.' decimals, '\n' newlines, and a mandatory header row.
namespace slmq {

using Json = nlohmann::json;

// {"family":"sawtooth","phi":6.2832,"pixels":12,"shift":0,"compose":[...]}
Json grating_to_json(const GratingSpec& g);
GratingSpec grating_from_json(const Json& j);

Json geometry_to_json(const ModeGeometry& g);
ModeGeometry geometry_from_json(const Json& j);

std::vector<Complex> amps_from_json(const Json& j);
Json amps_to_json(const std::vector<Complex>& amps);

ComplexMatrix cmatrix_from_json(const Json& j);
Json cmatrix_to_json(const ComplexMatrix& m);

// {"D":3,"window":[-1,1],"merge_factor":true,"columns":[<grating>...],
//  "blocked":[2]}  -- blocked columns are rewritten via block_column.
struct TransformConfig {
  std::vector<GratingSpec> columns;
  FilterWindow window;
  bool merge_factor = true;
};
TransformConfig transform_config_from_json(const Json& j);
Json transform_config_to_json(const TransformConfig& c);

Json matrix_to_json(const TransformMatrix& m);
std::string matrix_to_csv(const TransformMatrix& m);

KrausMap kraus_from_json(const Json& j);
DesignProblem design_problem_from_json(const Json& j);
Json design_result_to_json(const DesignResult& r);

// Report builders behind the CLI subcommands.
std::string report_coeffs_csv(const Json& config);
Json report_coeffs_json(const Json& config);
Json report_matrix(const Json& config);
std::string report_matrix_csv(const Json& config);
Json report_apply(const Json& config);
Json report_oracle(const Json& config);
std::string report_oracle_fields_csv(const Json& config);
Json report_design(const Json& config, std::uint64_t seed);
Json report_kraus(const Json& config, std::uint64_t seed);
Json report_pixel(const Json& config);
std::string report_pixel_csv(const Json& config);
Json report_validate(const Json& geometry);

}  // namespace slmq

#endif  // SLMQ_IO_HPP_
