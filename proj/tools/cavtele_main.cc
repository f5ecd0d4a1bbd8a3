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

// Command-line front end: cavtele {run,sweep,mc,validate} [options].

#include <fmt/format.h>

#include <CLI11.hpp>
#include <cstdio>
#include <optional>
#include <string>

#include "config.h"
#include "output.h"

namespace {

using namespace cavtele;
using namespace cavtele::cli;

enum ExitCode : int {
    kOk = 0,
    kIoError = 1,
    kConfigError = 2,
    kIntegrationError = 3,
    kCheckFailed = 4,
};

struct Flags {
    std::string config;
    std::string preset;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::optional<int> threads;
    std::optional<double> tolerance;
    bool quiet = false;
};

void add_common(CLI::App *sub, Flags &f) {
    sub->add_option("--config", f.config, "YAML run configuration")->check(CLI::ExistingFile);
    sub->add_option("--preset", f.preset, "Built-in preset (strong, weak); ignored with --config");
    sub->add_option("--out", f.out, "Output directory");
    sub->add_option("--seed", f.seed, "Random seed");
    sub->add_option("--threads", f.threads, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--tolerance", f.tolerance, "Integrator tolerance")
        ->check(CLI::PositiveNumber);
    sub->add_flag("-q,--quiet", f.quiet, "Only report errors");
}

RunConfig resolve(const Flags &f, ExperimentKind kind) {
    RunConfig cfg;
    if (!f.config.empty()) {
        cfg = load_config(f.config);
    } else if (!f.preset.empty()) {
        cfg = parse_config("preset: " + f.preset + "\n");
    }
    cfg.kind = kind;
    if (!f.out.empty()) cfg.output.dir = f.out;
    if (f.seed) cfg.seed = *f.seed;
    if (f.threads) cfg.threads = *f.threads;
    if (f.tolerance) cfg.preset.evolve.tolerance = *f.tolerance;
    return cfg;
}

void print_summary(const ExperimentOutput &output) {
    std::visit(
        [](const auto &o) {
            using T = std::decay_t<decltype(o)>;
            if constexpr (std::is_same_v<T, SingleOutput>) {
                const auto &r = o.report;
                fmt::print("F = {:.6f}  P = {:.6f}  |chi| = {:.6f}  emission time = {:.4g} us\n",
                           r.fidelity, r.success_probability, std::abs(r.chi),
                           r.emission_time / units::kMicrosecond);
            } else if constexpr (std::is_same_v<T, SweepResult>) {
                for (std::size_t i = 0; i < o.phi_b.size(); ++i) {
                    fmt::print("phi_B = {:.4f}  F = {:.6f}  P = {:.6f}\n", o.phi_b[i],
                               o.fidelity[i], o.success_probability[i]);
                }
            } else if constexpr (std::is_same_v<T, MonteCarloStats>) {
                fmt::print("samples = {}  success rate = {:.6f} +- {:.6f} (exact {:.6f})\n",
                           o.samples, o.success_rate, o.success_sigma, o.expected_success_rate);
                fmt::print("verified fraction = {:.6f} +- {:.6f} (exact F^2 = {:.6f})\n",
                           o.verified_fraction, o.verified_sigma,
                           o.expected_fidelity * o.expected_fidelity);
            } else {
                for (const auto &c : o) {
                    fmt::print("[{}] {}: {}\n", c.passed ? "PASS" : "FAIL", c.name, c.detail);
                }
            }
        },
        output);
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Atom-cavity teleportation simulator"};
    app.set_version_flag("--version", tool_version());
    app.require_subcommand(1);

    Flags flags;
    struct Command {
        const char *name;
        const char *help;
        ExperimentKind kind;
    };
    const Command commands[] = {
        {"run", "Single teleportation run", ExperimentKind::kSingle},
        {"sweep", "Sweep Bob's motional phase", ExperimentKind::kSweep},
        {"mc", "Monte Carlo click sampling with detector efficiency", ExperimentKind::kMonteCarlo},
        {"validate", "Built-in invariant checks", ExperimentKind::kValidate},
    };
    std::optional<ExperimentKind> chosen;
    for (const auto &c : commands) {
        CLI::App *sub = app.add_subcommand(c.name, c.help);
        add_common(sub, flags);
        sub->callback([&chosen, kind = c.kind] { chosen = kind; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfigError;
    }

    RunConfig config;
    try {
        config = resolve(flags, *chosen);
    } catch (const ConfigError &e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kConfigError;
    } catch (const DomainError &e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kConfigError;
    }

    try {
        const ExperimentOutput output = run_experiment(config);
        const EmittedFiles files = emit_results(config, output);
        if (!flags.quiet) {
            print_summary(output);
            fmt::print("wrote {}, {}, {}\n", files.csv.string(), files.plot.string(),
                       files.manifest.string());
        }
        return all_checks_passed(output) ? kOk : kCheckFailed;
    } catch (const IntegrationFailure &e) {
        std::fprintf(stderr, "integration failure at t = %g s: %s\n", e.time(), e.what());
        return kIntegrationError;
    } catch (const DomainError &e) {
        std::fprintf(stderr, "invalid parameters: %s\n", e.what());
        return kConfigError;
    } catch (const std::exception &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kIoError;
    }
}
