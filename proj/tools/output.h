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

#ifndef CAVTELE_TOOLS_OUTPUT_H
#define CAVTELE_TOOLS_OUTPUT_H

#include <filesystem>
#include <ostream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "cavtele/experiments.h"
#include "config.h"

namespace cavtele::cli {

/// Version string written into every manifest.
std::string tool_version();

struct SingleOutput {
    SiteRun alice;
    SiteRun bob;
    TeleportReport report;
};

using ExperimentOutput =
    std::variant<SingleOutput, SweepResult, MonteCarloStats, std::vector<CheckResult>>;

/// Runs the experiment described by `config`. Integration failures
/// propagate as IntegrationFailure.
ExperimentOutput run_experiment(const RunConfig &config);

/// True unless the output is a validation run with a failed check.
bool all_checks_passed(const ExperimentOutput &output);

// CSV writers. Numbers use the shortest round-trip decimal form and never
// depend on the process locale.
void write_single_csv(std::ostream &out, const TeleportReport &report);
void write_sweep_csv(std::ostream &out, const SweepResult &sweep);
void write_monte_carlo_csv(std::ostream &out, const MonteCarloStats &stats);
void write_validation_csv(std::ostream &out, const std::vector<CheckResult> &checks);

// Plot data: one gnuplot-style block per curve, introduced by a "# name"
// comment and separated by two blank lines.
void write_pulse_plot(std::ostream &out, const SiteRun &alice, const SiteRun &bob);
void write_sweep_plot(std::ostream &out, const SweepResult &sweep);
void write_monte_carlo_plot(std::ostream &out, const MonteCarloStats &stats);
void write_validation_plot(std::ostream &out, const std::vector<CheckResult> &checks);

/// Resolved parameters (SI and MHz / us forms), tool version and a result
/// summary.
nlohmann::json make_manifest(const RunConfig &config, const ExperimentOutput &output);

/// Raised for file-system failures; the message names the path.
class OutputError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

struct EmittedFiles {
    std::filesystem::path csv;
    std::filesystem::path plot;
    std::filesystem::path manifest;
};

/// Writes the CSV, plot data and manifest under config.output.dir.
EmittedFiles emit_results(const RunConfig &config, const ExperimentOutput &output);

}  // namespace cavtele::cli

#endif  // CAVTELE_TOOLS_OUTPUT_H
