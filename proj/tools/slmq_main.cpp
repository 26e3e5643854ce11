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

// slmq: phase-grating transformations on multipath qudits.
//
// Subcommands: coeffs, matrix, apply, oracle, design, kraus, pixel-report,
// validate. Each takes --config PATH (JSON), writes JSON or CSV to --output
// (default stdout), atomically (temp file + rename).

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "slmq.h"

namespace {

struct Options {
  std::string config_path;
  std::string output_path;  // empty = stdout
  std::string format;       // "", "json" or "csv"
  std::optional<std::uint64_t> seed;
};

int fail(int32_t status, const std::string& message) {
  nlohmann::json err{{"error",
                      {{"status", status},
                       {"name", slmq_status_name(status)},
                       {"message", message}}}};
  std::cerr << err.dump() << "\n";
  return status == SLMQ_OK ? 1 : int(status);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const Options& opt, const std::string& text) {
  if (opt.output_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << "\n";
    return;
  }
  std::string tmp = opt.output_path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write: " + tmp);
    out << text;
  }
  if (std::rename(tmp.c_str(), opt.output_path.c_str()) != 0)
    throw std::runtime_error("cannot move output into place: " + opt.output_path);
}

// --seed wins; otherwise an optional "seed" field in the config.
std::uint64_t resolve_seed(const Options& opt, const std::string& config) {
  if (opt.seed) return *opt.seed;
  auto j = nlohmann::json::parse(config, nullptr, false);
  if (!j.is_discarded() && j.contains("seed") && j["seed"].is_number())
    return j["seed"].get<std::uint64_t>();
  throw std::runtime_error("a seed is required: pass --seed or a 'seed' config field");
}

// Claims ownership of a C string result.
std::string take(char* s) {
  std::string out = s ? s : "";
  slmq_string_free(s);
  return out;
}

int run_command(const std::string& cmd, const Options& opt) {
  std::string config = read_file(opt.config_path);
  bool csv = opt.format == "csv" || (opt.format.empty() && cmd == "coeffs");

  char* text = nullptr;
  int32_t st = SLMQ_OK;
  if (cmd == "coeffs") {
    st = csv ? slmq_coeffs_csv(config.c_str(), &text)
             : slmq_coeffs_json(config.c_str(), &text);
  } else if (cmd == "matrix") {
    st = slmq_matrix_report(config.c_str(), csv ? 1 : 0, &text);
  } else if (cmd == "apply") {
    if (csv) return fail(SLMQ_ERR_INVALID_ARGUMENT, "apply emits JSON only");
    st = slmq_apply_report(config.c_str(), &text);
  } else if (cmd == "oracle") {
    st = csv ? slmq_oracle_fields_csv(config.c_str(), &text)
             : slmq_oracle_report(config.c_str(), &text);
  } else if (cmd == "design") {
    if (csv) return fail(SLMQ_ERR_INVALID_ARGUMENT, "design emits JSON only");
    st = slmq_design_report(config.c_str(), resolve_seed(opt, config), &text);
  } else if (cmd == "kraus") {
    if (csv) return fail(SLMQ_ERR_INVALID_ARGUMENT, "kraus emits JSON only");
    st = slmq_kraus_report(config.c_str(), resolve_seed(opt, config), &text);
  } else if (cmd == "pixel-report") {
    st = slmq_pixel_report(config.c_str(), csv ? 1 : 0, &text);
  } else if (cmd == "validate") {
    if (csv) return fail(SLMQ_ERR_INVALID_ARGUMENT, "validate emits JSON only");
    st = slmq_validate_geometry(config.c_str(), &text);
  } else {
    return fail(SLMQ_ERR_INVALID_ARGUMENT, "unknown subcommand: " + cmd);
  }

  if (st != SLMQ_OK) return fail(st, slmq_last_error());
  std::string result = take(text);
  write_output(opt, result);

  if (cmd == "validate") {
    auto rep = nlohmann::json::parse(result, nullptr, false);
    if (!rep.is_discarded() && rep.contains("valid") && !rep["valid"].get<bool>())
      return 10;  // geometry violations found (report already written)
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"phase-grating transformations on multipath qudits"};
  app.set_version_flag("--version", std::string(slmq_version()));
  app.require_subcommand(1);
  app.fallthrough();

  Options opt;
  app.add_option("--config", opt.config_path, "path to the JSON config")
      ->required();
  app.add_option("--output", opt.output_path, "output path (default stdout)");
  app.add_option("--format", opt.format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  std::uint64_t seed_value = 0;
  auto* seed_opt =
      app.add_option("--seed", seed_value, "seed for randomized subcommands");

  const char* names[] = {"coeffs", "matrix",       "apply",    "oracle",
                         "design", "kraus",        "pixel-report", "validate"};
  const char* descs[] = {
      "Fourier-coefficient tables (phi sweeps)",
      "build the transformation matrix",
      "apply the matrix to a state",
      "first-principles wave check against the matrix path",
      "inverse design: find gratings for a target matrix",
      "Kraus map: exact application and Monte-Carlo schedule",
      "pixelated vs ideal coefficient comparison",
      "check the mode geometry"};
  for (size_t i = 0; i < 8; ++i) app.add_subcommand(names[i], descs[i]);

  CLI11_PARSE(app, argc, argv);
  if (seed_opt->count() > 0) opt.seed = seed_value;

  try {
    return run_command(app.get_subcommands().front()->get_name(), opt);
  } catch (const std::exception& e) {
    return fail(SLMQ_ERR_INVALID_ARGUMENT, e.what());
  }
}
