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

#include "config.h"

#include <fmt/format.h>
#include <yaml-cpp/yaml.h>

#include <array>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "cavtele/adiabatic.h"

namespace cavtele::cli {

namespace {

enum class Unit { kRate, kTime, kAngle };

struct FieldSpec {
    const char *name;
    double DriveProfile::*member;
    Unit unit;
    // Lower bound check: 0 = none, 1 = >= 0, 2 = > 0.
    int sign;
};

constexpr std::array<FieldSpec, 10> kProfileFields{{
    {"kappa", &DriveProfile::kappa, Unit::kRate, 1},
    {"gamma", &DriveProfile::gamma, Unit::kRate, 1},
    {"g0", &DriveProfile::g0, Unit::kRate, 1},
    {"omega0", &DriveProfile::omega0, Unit::kRate, 1},
    {"delta", &DriveProfile::delta, Unit::kRate, 0},
    {"omega_z", &DriveProfile::omega_z, Unit::kRate, 0},
    {"delta_g", &DriveProfile::delta_g, Unit::kAngle, 0},
    {"phi", &DriveProfile::phi, Unit::kAngle, 0},
    {"t_c", &DriveProfile::t_c, Unit::kTime, 0},
    {"delta_t", &DriveProfile::delta_t, Unit::kTime, 2},
}};

// Key spellings per unit: the documented human form first, then the exact
// SI form used by serialize_config().
std::pair<std::string, std::string> key_forms(const FieldSpec &f) {
    const std::string n = f.name;
    switch (f.unit) {
        case Unit::kRate: return {n + "_mhz", n + "_rad_per_s"};
        case Unit::kTime: return {n + "_us", n + "_s"};
        case Unit::kAngle: return {n, ""};
    }
    return {n, ""};
}

ConfigError error_at(const YAML::Node &node, const std::string &key, const std::string &msg) {
    const auto mark = node.Mark();
    const bool known = mark.line >= 0;
    return ConfigError(msg, key, known ? mark.line + 1 : 0, known ? mark.column + 1 : 0);
}

template <class T>
T read(const YAML::Node &node, const std::string &key) {
    if (!node.IsScalar()) {
        throw error_at(node, key, "key '" + key + "' must be a scalar");
    }
    try {
        return node.as<T>();
    } catch (const YAML::Exception &) {
        throw error_at(node, key, "key '" + key + "' has an invalid value '" + node.Scalar() + "'");
    }
}

double read_finite(const YAML::Node &node, const std::string &key) {
    const double v = read<double>(node, key);
    if (!std::isfinite(v)) {
        throw error_at(node, key, "key '" + key + "' must be finite");
    }
    return v;
}

void reject_unknown(const YAML::Node &map, const std::string &prefix,
                    const std::set<std::string> &allowed) {
    if (!map.IsMap()) {
        throw error_at(map, prefix, "'" + prefix + "' must be a mapping");
    }
    for (const auto &kv : map) {
        const auto name = kv.first.as<std::string>();
        if (!allowed.contains(name)) {
            const std::string path = prefix.empty() ? name : prefix + "." + name;
            throw error_at(kv.first, path, "unknown key '" + path + "'");
        }
    }
}

std::set<std::string> profile_keys() {
    std::set<std::string> keys;
    for (const auto &f : kProfileFields) {
        auto [human, si] = key_forms(f);
        keys.insert(human);
        if (!si.empty()) keys.insert(si);
    }
    return keys;
}

// Applies overrides from `node` onto `p`. Returns the names of the fields
// that were set.
std::set<std::string> apply_profile(const YAML::Node &node, const std::string &prefix,
                                    DriveProfile &p) {
    reject_unknown(node, prefix, profile_keys());
    std::set<std::string> touched;
    for (const auto &f : kProfileFields) {
        const auto [human, si] = key_forms(f);
        const YAML::Node h = node[human];
        const bool has_si = !si.empty() && node[si];
        const YAML::Node s = has_si ? node[si] : YAML::Node();
        if (h && has_si) {
            throw error_at(s, prefix + "." + si,
                           "give either '" + prefix + "." + human + "' or '" + prefix + "." + si +
                               "', not both");
        }
        if (!h && !has_si) {
            continue;
        }
        const std::string key = prefix + "." + (h ? human : si);
        const YAML::Node &n = h ? h : s;
        double v = read_finite(n, key);
        if (h) {
            if (f.unit == Unit::kRate) v = units::from_mhz(v);
            if (f.unit == Unit::kTime) v *= units::kMicrosecond;
        }
        if ((f.sign == 1 && v < 0.0) || (f.sign == 2 && !(v > 0.0))) {
            throw error_at(n, key,
                           "key '" + key + "' must be " + (f.sign == 1 ? ">= 0" : "> 0"));
        }
        p.*(f.member) = v;
        touched.insert(f.name);
    }
    return touched;
}

Complex read_complex(const YAML::Node &node, const std::string &key) {
    if (node.IsSequence()) {
        if (node.size() != 2) {
            throw error_at(node, key, "key '" + key + "' must be [re, im]");
        }
        return {read_finite(node[0], key), read_finite(node[1], key)};
    }
    return {read_finite(node, key), 0.0};
}

template <class T>
std::string num(T x) {
    return fmt::format("{}", x);
}

void emit_profile(std::ostringstream &os, const char *name, const DriveProfile &p, bool skip_drive) {
    os << name << ":\n";
    for (const auto &f : kProfileFields) {
        const std::string field = f.name;
        if (skip_drive && (field == "omega0" || field == "t_c" || field == "delta_t")) {
            continue;
        }
        const auto [human, si] = key_forms(f);
        const double v = p.*(f.member);
        os << "  " << (si.empty() ? human : si) << ": " << num(v);
        if (f.unit == Unit::kRate) os << "  # " << num(units::to_mhz(v)) << " MHz";
        if (f.unit == Unit::kTime) os << "  # " << num(v / units::kMicrosecond) << " us";
        os << "\n";
    }
}

}  // namespace

ConfigError::ConfigError(const std::string &message, std::string key, int line, int column)
    : std::runtime_error(line > 0 ? fmt::format("line {}, column {}: {}", line, column, message)
                                  : message),
      key_(std::move(key)),
      line_(line),
      column_(column) {}

std::string to_string(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::kSingle: return "single";
        case ExperimentKind::kSweep: return "sweep";
        case ExperimentKind::kMonteCarlo: return "monte-carlo";
        case ExperimentKind::kValidate: return "validate";
    }
    return "?";
}

ExperimentKind parse_experiment_kind(std::string_view text) {
    if (text == "single" || text == "run") return ExperimentKind::kSingle;
    if (text == "sweep") return ExperimentKind::kSweep;
    if (text == "monte-carlo" || text == "mc") return ExperimentKind::kMonteCarlo;
    if (text == "validate") return ExperimentKind::kValidate;
    throw ConfigError("unknown experiment kind '" + std::string(text) +
                          "' (expected single, sweep, monte-carlo or validate)",
                      "experiment");
}

std::vector<double> RunConfig::phis() const {
    return sweep_phis.empty() ? uniform_phases(sweep_points) : sweep_phis;
}

RunConfig parse_config(std::string_view text) {
    YAML::Node root;
    try {
        root = YAML::Load(std::string(text));
    } catch (const YAML::ParserException &e) {
        throw ConfigError("syntax error: " + e.msg, "", e.mark.line + 1, e.mark.column + 1);
    }

    RunConfig cfg;
    if (!root || root.IsNull()) {
        return cfg;
    }
    reject_unknown(root, "",
                   {"experiment", "preset", "seed", "threads", "tolerance", "grid_intervals",
                    "t_end_us", "t_end_s", "matched", "qubit", "alice", "bob", "sweep",
                    "monte_carlo", "output"});

    if (const auto n = root["experiment"]) {
        try {
            cfg.kind = parse_experiment_kind(read<std::string>(n, "experiment"));
        } catch (const ConfigError &e) {
            throw error_at(n, "experiment", e.what());
        }
    }
    if (const auto n = root["preset"]) {
        cfg.preset_name = read<std::string>(n, "preset");
        try {
            cfg.preset = preset_by_name(cfg.preset_name);
        } catch (const DomainError &e) {
            throw error_at(n, "preset", e.what());
        }
    }
    Preset &p = cfg.preset;

    if (const auto n = root["seed"]) cfg.seed = read<std::uint64_t>(n, "seed");
    if (const auto n = root["threads"]) {
        cfg.threads = read<int>(n, "threads");
        if (cfg.threads < 1) throw error_at(n, "threads", "key 'threads' must be >= 1");
    }
    if (const auto n = root["tolerance"]) {
        p.evolve.tolerance = read_finite(n, "tolerance");
        if (!(p.evolve.tolerance > 0.0)) {
            throw error_at(n, "tolerance", "key 'tolerance' must be > 0");
        }
    }
    if (const auto n = root["grid_intervals"]) {
        p.evolve.grid_intervals = read<int>(n, "grid_intervals");
        if (p.evolve.grid_intervals < 2) {
            throw error_at(n, "grid_intervals", "key 'grid_intervals' must be >= 2");
        }
    }
    if (root["t_end_us"] && root["t_end_s"]) {
        throw error_at(root["t_end_s"], "t_end_s", "give either 't_end_us' or 't_end_s', not both");
    }
    if (const auto n = root["t_end_us"]) p.t_end = read_finite(n, "t_end_us") * units::kMicrosecond;
    if (const auto n = root["t_end_s"]) p.t_end = read_finite(n, "t_end_s");
    if (!(p.t_end > 0.0)) {
        throw ConfigError("key 't_end' must be > 0", "t_end_us");
    }
    if (const auto n = root["matched"]) p.matched = read<bool>(n, "matched");

    if (const auto n = root["qubit"]) {
        reject_unknown(n, "qubit", {"alpha", "beta"});
        const Complex alpha = n["alpha"] ? read_complex(n["alpha"], "qubit.alpha") : p.qubit.alpha();
        const Complex beta = n["beta"] ? read_complex(n["beta"], "qubit.beta") : p.qubit.beta();
        try {
            p.qubit = Qubit(alpha, beta);
        } catch (const DomainError &e) {
            throw error_at(n, "qubit", e.what());
        }
    }

    if (const auto n = root["alice"]) apply_profile(n, "alice", p.alice);
    if (const auto n = root["bob"]) {
        const auto touched = apply_profile(n, "bob", p.bob);
        if (p.matched) {
            for (const char *k : {"omega0", "t_c", "delta_t"}) {
                if (touched.contains(k)) {
                    throw error_at(n, std::string("bob.") + k,
                                   std::string("bob.") + k +
                                       " is derived from alice when 'matched' is true");
                }
            }
        }
    }
    if (p.matched) {
        try {
            p.bob = matched_drive(p.alice, p.bob);
        } catch (const DomainError &e) {
            throw ConfigError(e.what(), "alice.g0_mhz");
        }
    }

    if (const auto n = root["sweep"]) {
        reject_unknown(n, "sweep", {"points", "phi_b", "phi_a"});
        if (const auto m = n["points"]) {
            cfg.sweep_points = read<int>(m, "sweep.points");
            if (cfg.sweep_points < 1) {
                throw error_at(m, "sweep.points", "key 'sweep.points' must be >= 1");
            }
        }
        if (const auto m = n["phi_b"]) {
            if (!m.IsSequence() || m.size() == 0) {
                throw error_at(m, "sweep.phi_b", "key 'sweep.phi_b' must be a non-empty list");
            }
            for (const auto &v : m) cfg.sweep_phis.push_back(read_finite(v, "sweep.phi_b"));
        }
        if (const auto m = n["phi_a"]) p.alice.phi = read_finite(m, "sweep.phi_a");
    }

    if (const auto n = root["monte_carlo"]) {
        reject_unknown(n, "monte_carlo", {"samples", "eta", "batch_size"});
        if (const auto m = n["samples"]) {
            cfg.samples = read<std::int64_t>(m, "monte_carlo.samples");
            if (cfg.samples < 1) {
                throw error_at(m, "monte_carlo.samples", "key 'monte_carlo.samples' must be >= 1");
            }
        }
        if (const auto m = n["eta"]) {
            cfg.eta = read_finite(m, "monte_carlo.eta");
            if (cfg.eta < 0.0 || cfg.eta > 1.0) {
                throw error_at(m, "monte_carlo.eta", "key 'monte_carlo.eta' must lie in [0, 1]");
            }
        }
        if (const auto m = n["batch_size"]) {
            cfg.batch_size = read<std::int64_t>(m, "monte_carlo.batch_size");
            if (cfg.batch_size < 1) {
                throw error_at(m, "monte_carlo.batch_size",
                               "key 'monte_carlo.batch_size' must be >= 1");
            }
        }
    }

    if (const auto n = root["output"]) {
        reject_unknown(n, "output", {"dir", "csv", "plot", "manifest"});
        if (const auto m = n["dir"]) cfg.output.dir = read<std::string>(m, "output.dir");
        if (const auto m = n["csv"]) cfg.output.csv = read<std::string>(m, "output.csv");
        if (const auto m = n["plot"]) cfg.output.plot = read<std::string>(m, "output.plot");
        if (const auto m = n["manifest"]) cfg.output.manifest = read<std::string>(m, "output.manifest");
    }

    try {
        p.validate();
    } catch (const DomainError &e) {
        throw ConfigError(e.what());
    }
    return cfg;
}

RunConfig load_config(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_config(buf.str());
    } catch (const ConfigError &e) {
        throw ConfigError(path + ": " + e.what(), e.key());
    }
}

std::string serialize_config(const RunConfig &c) {
    const Preset &p = c.preset;
    std::ostringstream os;
    os << "experiment: " << to_string(c.kind) << "\n";
    os << "preset: " << c.preset_name << "\n";
    os << "seed: " << num(c.seed) << "\n";
    os << "threads: " << num(c.threads) << "\n";
    os << "tolerance: " << num(p.evolve.tolerance) << "\n";
    os << "grid_intervals: " << num(p.evolve.grid_intervals) << "\n";
    os << "t_end_s: " << num(p.t_end) << "\n";
    os << "matched: " << (p.matched ? "true" : "false") << "\n";
    os << "qubit:\n";
    os << "  alpha: [" << num(p.qubit.alpha().real()) << ", " << num(p.qubit.alpha().imag())
       << "]\n";
    os << "  beta: [" << num(p.qubit.beta().real()) << ", " << num(p.qubit.beta().imag()) << "]\n";
    emit_profile(os, "alice", p.alice, false);
    emit_profile(os, "bob", p.bob, p.matched);
    os << "sweep:\n  points: " << num(c.sweep_points) << "\n";
    if (!c.sweep_phis.empty()) {
        os << "  phi_b: [";
        for (std::size_t i = 0; i < c.sweep_phis.size(); ++i) {
            os << (i ? ", " : "") << num(c.sweep_phis[i]);
        }
        os << "]\n";
    }
    os << "monte_carlo:\n";
    os << "  samples: " << num(c.samples) << "\n";
    os << "  eta: " << num(c.eta) << "\n";
    os << "  batch_size: " << num(c.batch_size) << "\n";
    os << "output:\n";
    os << "  dir: \"" << c.output.dir << "\"\n";
    os << "  csv: \"" << c.output.csv << "\"\n";
    os << "  plot: \"" << c.output.plot << "\"\n";
    os << "  manifest: \"" << c.output.manifest << "\"\n";
    return os.str();
}

}  // namespace cavtele::cli
