// Copyright 2026 The cavtele Authors
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

#ifndef CAVTELE_TOOLS_CONFIG_H
#define CAVTELE_TOOLS_CONFIG_H

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cavtele/experiments.h"

namespace cavtele::cli {

enum class ExperimentKind { kSingle, kSweep, kMonteCarlo, kValidate };

std::string to_string(ExperimentKind kind);
/// Accepts single, sweep, monte-carlo (or mc), validate.
ExperimentKind parse_experiment_kind(std::string_view text);

/// Syntax or validation problem in a config file. `key()` is the dotted
/// path of the offending key when known; line/column are 1-based, 0 when
/// unknown.
class ConfigError : public std::runtime_error {
   public:
    ConfigError(const std::string &message, std::string key = {}, int line = 0, int column = 0);

    const std::string &key() const noexcept { return key_; }
    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

   private:
    std::string key_;
    int line_;
    int column_;
};

struct OutputPaths {
    std::string dir = "out";
    std::string csv = "results.csv";
    std::string plot = "plot.dat";
    std::string manifest = "manifest.json";
};

/// Fully resolved run description. Internal values are SI: rad/s and s.
struct RunConfig {
    ExperimentKind kind = ExperimentKind::kSingle;
    std::string preset_name = "strong";
    Preset preset = strong_coupling_preset();

    int sweep_points = 16;
    /// Explicit phi_B list; overrides sweep_points when non-empty.
    std::vector<double> sweep_phis;

    std::int64_t samples = 100000;
    double eta = 1.0;
    std::int64_t batch_size = 10000;

    std::uint64_t seed = 1;
    int threads = 1;
    OutputPaths output;

    std::vector<double> phis() const;
};

/// Parses the YAML run configuration documented in README.md. An empty
/// document yields the defaults (strong preset, single run). Unknown keys
/// are rejected.
RunConfig parse_config(std::string_view text);

/// Reads and parses `path`; I/O failures become ConfigError.
RunConfig load_config(const std::string &path);

/// Serializes the resolved configuration so that parse_config() reproduces
/// every preset value bit for bit (rates and times are written in SI form
/// with round-trip precision).
std::string serialize_config(const RunConfig &config);

}  // namespace cavtele::cli

#endif  // CAVTELE_TOOLS_CONFIG_H
