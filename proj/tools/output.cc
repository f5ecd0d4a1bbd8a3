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

#include "output.h"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <cmath>
#include <fstream>
#include <system_error>

#ifndef CAVTELE_VERSION
#define CAVTELE_VERSION "unknown"
#endif

namespace cavtele::cli {

namespace {

using nlohmann::json;

// fmt's "{}" ignores the stream locale and round-trips doubles exactly.
template <class T>
std::string num(T x) {
    return fmt::format("{}", x);
}

std::string csv_quote(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

json profile_json(const DriveProfile &p) {
    auto rate = [](double r) { return json{{"rad_per_s", r}, {"mhz", units::to_mhz(r)}}; };
    auto time = [](double t) { return json{{"s", t}, {"us", t / units::kMicrosecond}}; };
    return json{
        {"omega0", rate(p.omega0)},   {"g0", rate(p.g0)},         {"omega_z", rate(p.omega_z)},
        {"delta", rate(p.delta)},     {"gamma", rate(p.gamma)},   {"kappa", rate(p.kappa)},
        {"t_c", time(p.t_c)},         {"delta_t", time(p.delta_t)},
        {"delta_g_rad", p.delta_g},   {"phi_rad", p.phi},
    };
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json summary_json(const SingleOutput &s) {
    const auto &r = s.report;
    json patterns = json::object();
    for (int k = 0; k < kPatternCount; ++k) {
        patterns[to_string(static_cast<BellPattern>(k))] = r.pattern_probability[k];
    }
    return json{
        {"fidelity", r.fidelity},
        {"success_probability", r.success_probability},
        {"chi", complex_json(r.chi)},
        {"abs_chi", std::abs(r.chi)},
        {"analyzer_fidelity", r.analyzer_fidelity},
        {"pattern_probability", patterns},
        {"emission_time_s", r.emission_time},
        {"emission_time_alice_s", r.emission_time_alice},
        {"emission_time_bob_s", r.emission_time_bob},
        {"emission_alice", r.emission_alice},
        {"emission_bob", r.emission_bob},
        {"residual_alice", r.residual_alice},
        {"residual_bob", r.residual_bob},
    };
}

json summary_json(const SweepResult &s) {
    double fmin = 1.0, pmin = 1.0, fmax = 0.0, pmax = 0.0;
    for (std::size_t i = 0; i < s.phi_b.size(); ++i) {
        fmin = std::min(fmin, s.fidelity[i]);
        fmax = std::max(fmax, s.fidelity[i]);
        pmin = std::min(pmin, s.success_probability[i]);
        pmax = std::max(pmax, s.success_probability[i]);
    }
    return json{{"points", s.phi_b.size()}, {"fidelity_min", fmin}, {"fidelity_max", fmax},
                {"success_probability_min", pmin}, {"success_probability_max", pmax}};
}

json summary_json(const MonteCarloStats &s) {
    json counts = json::object();
    for (int k = 0; k < kPatternCount; ++k) {
        counts[to_string(static_cast<BellPattern>(k))] = s.pattern_counts[k];
    }
    return json{
        {"samples", s.samples},
        {"successes", s.successes},
        {"verified", s.verified},
        {"eta", s.eta},
        {"success_rate", s.success_rate},
        {"success_sigma", s.success_sigma},
        {"expected_success_rate", s.expected_success_rate},
        {"mean_corrected_fidelity", s.mean_corrected_fidelity},
        {"verified_fraction", s.verified_fraction},
        {"verified_sigma", s.verified_sigma},
        {"expected_fidelity", s.expected_fidelity},
        {"pattern_counts", counts},
    };
}

json summary_json(const std::vector<CheckResult> &checks) {
    json list = json::array();
    bool all = true;
    for (const auto &c : checks) {
        list.push_back(json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
        all = all && c.passed;
    }
    return json{{"all_passed", all}, {"checks", list}};
}

void write_block_header(std::ostream &out, bool &first, const std::string &name,
                        const std::string &columns) {
    if (!first) out << "\n\n";
    first = false;
    out << "# " << name << "\n# " << columns << "\n";
}

template <class Writer>
std::filesystem::path write_file(const std::filesystem::path &path, Writer &&writer) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw OutputError("cannot open '" + path.string() + "' for writing");
    }
    writer(out);
    out.flush();
    if (!out) {
        throw OutputError("failed writing '" + path.string() + "'");
    }
    return path;
}

}  // namespace

std::string tool_version() { return CAVTELE_VERSION; }

ExperimentOutput run_experiment(const RunConfig &config) {
    const Preset &preset = config.preset;
    switch (config.kind) {
        case ExperimentKind::kSingle: {
            auto [a, b] = simulate_pair(preset);
            TeleportReport report = assemble_report(preset.qubit, a, b);
            return SingleOutput{std::move(a), std::move(b), report};
        }
        case ExperimentKind::kSweep: {
            const auto phis = config.phis();
            return sweep_phi_b(preset, phis, config.threads);
        }
        case ExperimentKind::kMonteCarlo: {
            MonteCarloOptions opts;
            opts.samples = config.samples;
            opts.eta = config.eta;
            opts.seed = config.seed;
            opts.threads = config.threads;
            opts.batch_size = config.batch_size;
            return monte_carlo(preset, opts);
        }
        case ExperimentKind::kValidate:
            return run_validation(preset, config.seed);
    }
    throw DomainError("unknown experiment kind");
}

bool all_checks_passed(const ExperimentOutput &output) {
    const auto *checks = std::get_if<std::vector<CheckResult>>(&output);
    if (checks == nullptr) return true;
    for (const auto &c : *checks) {
        if (!c.passed) return false;
    }
    return true;
}

void write_single_csv(std::ostream &out, const TeleportReport &r) {
    out << "F,P,abs_chi,arg_chi,analyzer_F,emission_time_s,emission_time_alice_s,"
           "emission_time_bob_s,emission_alice,emission_bob,residual_alice,residual_bob";
    for (int k = 0; k < kPatternCount; ++k) {
        out << ",p_" << to_string(static_cast<BellPattern>(k));
    }
    out << "\n";
    out << num(r.fidelity) << ',' << num(r.success_probability) << ',' << num(std::abs(r.chi))
        << ',' << num(std::arg(r.chi)) << ',' << num(r.analyzer_fidelity) << ','
        << num(r.emission_time) << ',' << num(r.emission_time_alice) << ','
        << num(r.emission_time_bob) << ',' << num(r.emission_alice) << ','
        << num(r.emission_bob) << ',' << num(r.residual_alice) << ',' << num(r.residual_bob);
    for (double p : r.pattern_probability) out << ',' << num(p);
    out << "\n";
}

void write_sweep_csv(std::ostream &out, const SweepResult &s) {
    out << "phi_B,F,P,abs_chi\n";
    for (std::size_t i = 0; i < s.phi_b.size(); ++i) {
        out << num(s.phi_b[i]) << ',' << num(s.fidelity[i]) << ','
            << num(s.success_probability[i]) << ',' << num(std::abs(s.chi[i])) << "\n";
    }
}

void write_monte_carlo_csv(std::ostream &out, const MonteCarloStats &stats) {
    out << "batch,samples,successes,verified";
    for (int k = 0; k < kPatternCount; ++k) {
        out << ',' << to_string(static_cast<BellPattern>(k));
    }
    out << ",fidelity_sum\n";
    for (std::size_t b = 0; b < stats.batches.size(); ++b) {
        const auto &batch = stats.batches[b];
        out << num(b) << ',' << num(batch.samples) << ',' << num(batch.successes) << ','
            << num(batch.verified);
        for (auto c : batch.pattern_counts) out << ',' << num(c);
        out << ',' << num(batch.fidelity_sum) << "\n";
    }
}

void write_validation_csv(std::ostream &out, const std::vector<CheckResult> &checks) {
    out << "check,passed,detail\n";
    for (const auto &c : checks) {
        out << csv_quote(c.name) << ',' << (c.passed ? '1' : '0') << ',' << csv_quote(c.detail)
            << "\n";
    }
}

void write_pulse_plot(std::ostream &out, const SiteRun &alice, const SiteRun &bob) {
    bool first = true;
    for (const auto *run : {&alice, &bob}) {
        const auto &pulse = run->pulse;
        const auto flux = pulse.flux();
        write_block_header(out, first, "flux_" + to_string(pulse.site()), "t_us |f(t)|^2_per_s");
        for (std::size_t i = 0; i < pulse.size(); ++i) {
            out << num(pulse.times()[i] / units::kMicrosecond) << ' ' << num(flux[i]) << "\n";
        }
    }
    for (const auto *run : {&alice, &bob}) {
        const auto norms = run->trajectory.squared_norms();
        const auto &t = run->trajectory.times();
        write_block_header(out, first, "norm_" + to_string(run->pulse.site()), "t_us norm^2");
        for (std::size_t i = 0; i < t.size(); ++i) {
            out << num(t[i] / units::kMicrosecond) << ' ' << num(norms[i]) << "\n";
        }
    }
}

void write_sweep_plot(std::ostream &out, const SweepResult &s) {
    bool first = true;
    write_block_header(out, first, "fidelity", "phi_B F");
    for (std::size_t i = 0; i < s.phi_b.size(); ++i) {
        out << num(s.phi_b[i]) << ' ' << num(s.fidelity[i]) << "\n";
    }
    write_block_header(out, first, "success_probability", "phi_B P");
    for (std::size_t i = 0; i < s.phi_b.size(); ++i) {
        out << num(s.phi_b[i]) << ' ' << num(s.success_probability[i]) << "\n";
    }
}

void write_monte_carlo_plot(std::ostream &out, const MonteCarloStats &stats) {
    bool first = true;
    write_block_header(out, first, "cumulative_success_rate", "samples rate");
    std::int64_t n = 0, s = 0;
    for (const auto &b : stats.batches) {
        n += b.samples;
        s += b.successes;
        out << num(n) << ' ' << num(static_cast<double>(s) / static_cast<double>(n)) << "\n";
    }
}

void write_validation_plot(std::ostream &out, const std::vector<CheckResult> &checks) {
    bool first = true;
    write_block_header(out, first, "checks", "index passed");
    for (std::size_t i = 0; i < checks.size(); ++i) {
        out << num(i) << ' ' << (checks[i].passed ? '1' : '0') << "\n";
    }
}

nlohmann::json make_manifest(const RunConfig &config, const ExperimentOutput &output) {
    const Preset &p = config.preset;
    json m;
    m["tool"] = "cavtele";
    m["version"] = tool_version();
    m["experiment"] = to_string(config.kind);
    m["preset"] = config.preset_name;
    m["seed"] = config.seed;
    m["threads"] = config.threads;
    m["matched"] = p.matched;
    m["t_end"] = json{{"s", p.t_end}, {"us", p.t_end / units::kMicrosecond}};
    m["evolve"] = json{{"tolerance", p.evolve.tolerance},
                       {"grid_intervals", p.evolve.grid_intervals}};
    m["qubit"] = json{{"alpha", complex_json(p.qubit.alpha())},
                      {"beta", complex_json(p.qubit.beta())}};
    m["alice"] = profile_json(p.alice);
    m["bob"] = profile_json(p.bob);
    if (config.kind == ExperimentKind::kSweep) {
        m["sweep_phi_b"] = config.phis();
    }
    if (config.kind == ExperimentKind::kMonteCarlo) {
        m["monte_carlo"] = json{{"samples", config.samples},
                                {"eta", config.eta},
                                {"batch_size", config.batch_size}};
    }
    m["config_yaml"] = serialize_config(config);
    m["results"] = std::visit([](const auto &o) { return summary_json(o); }, output);
    return m;
}

EmittedFiles emit_results(const RunConfig &config, const ExperimentOutput &output) {
    const std::filesystem::path dir = config.output.dir;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw OutputError("cannot create output directory '" + dir.string() + "': " +
                          ec.message());
    }
    EmittedFiles files;
    files.csv = write_file(dir / config.output.csv, [&](std::ostream &out) {
        std::visit(
            [&](const auto &o) {
                using T = std::decay_t<decltype(o)>;
                if constexpr (std::is_same_v<T, SingleOutput>) write_single_csv(out, o.report);
                if constexpr (std::is_same_v<T, SweepResult>) write_sweep_csv(out, o);
                if constexpr (std::is_same_v<T, MonteCarloStats>) write_monte_carlo_csv(out, o);
                if constexpr (std::is_same_v<T, std::vector<CheckResult>>) {
                    write_validation_csv(out, o);
                }
            },
            output);
    });
    files.plot = write_file(dir / config.output.plot, [&](std::ostream &out) {
        std::visit(
            [&](const auto &o) {
                using T = std::decay_t<decltype(o)>;
                if constexpr (std::is_same_v<T, SingleOutput>) write_pulse_plot(out, o.alice, o.bob);
                if constexpr (std::is_same_v<T, SweepResult>) write_sweep_plot(out, o);
                if constexpr (std::is_same_v<T, MonteCarloStats>) write_monte_carlo_plot(out, o);
                if constexpr (std::is_same_v<T, std::vector<CheckResult>>) {
                    write_validation_plot(out, o);
                }
            },
            output);
    });
    files.manifest = write_file(dir / config.output.manifest, [&](std::ostream &out) {
        out << make_manifest(config, output).dump(2) << "\n";
    });
    return files;
}

}  // namespace cavtele::cli
