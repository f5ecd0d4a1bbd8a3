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

#include "cavtele/experiments.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <thread>

#include "cavtele/adiabatic.h"

namespace cavtele {

namespace {

// Runs fn(i) for i in [0, n) on up to `threads` workers. The exception
// thrown for the lowest index, if any, is rethrown.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)> &fn) {
    const std::size_t workers =
        std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, threads)));
    std::vector<std::exception_ptr> errors(n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            try {
                fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < n; i = next++) {
                    try {
                        fn(i);
                    } catch (...) {
                        errors[i] = std::current_exception();
                    }
                }
            });
        }
    }
    for (auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}


std::string fmt_double(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

}  // namespace

void Preset::validate() const {
    alice.validate();
    bob.validate();
    if (!(t_end > 0.0)) {
        throw DomainError("preset '" + name + "': t_end must be > 0");
    }
    if (!(evolve.tolerance > 0.0) || evolve.grid_intervals < 2) {
        throw DomainError("preset '" + name + "': tolerance must be > 0 and grid_intervals >= 2");
    }
    if (matched) {
        const DriveProfile expect = matched_drive(alice, bob);
        const double scale = std::max(1.0, std::abs(expect.omega0));
        if (std::abs(expect.omega0 - bob.omega0) > 1e-9 * scale || expect.t_c != bob.t_c ||
            expect.delta_t != bob.delta_t) {
            throw DomainError("preset '" + name +
                              "' is flagged matched but bob.omega0/t_c/delta_t do not follow "
                              "the matching condition");
        }
    }
}

Preset strong_coupling_preset() {
    const double kappa = units::from_mhz(4.0);
    DriveProfile a;
    a.kappa = kappa;
    a.gamma = kappa;
    a.g0 = 8.0 * kappa;
    a.delta_g = units::kPi / 3.0;
    a.omega_z = 0.05 * kappa;
    a.phi = 0.0;
    a.delta = 0.0;
    a.omega0 = a.g0;
    a.t_c = 0.6 * units::kMicrosecond;
    a.delta_t = 0.2 * units::kMicrosecond;

    Preset p;
    p.name = "strong";
    p.alice = a;
    p.bob = matched_drive(a);
    p.t_end = 3.0 * units::kMicrosecond;
    return p;
}

Preset weak_coupling_preset() {
    const double kappa = units::from_mhz(4.0);
    DriveProfile a;
    a.kappa = kappa;
    a.gamma = kappa;
    a.g0 = kappa;
    a.delta_g = units::kPi / 3.0;
    a.omega_z = 0.05 * kappa;
    a.phi = 0.0;
    a.delta = 40.0 * kappa;
    a.omega0 = 6.0 * a.g0;
    a.t_c = 120.0 * units::kMicrosecond;
    a.delta_t = 40.0 * units::kMicrosecond;

    Preset p;
    p.name = "weak";
    p.alice = a;
    p.bob = matched_drive(a);
    p.t_end = 400.0 * units::kMicrosecond;
    return p;
}

Preset preset_by_name(std::string_view name) {
    if (name == "strong") return strong_coupling_preset();
    if (name == "weak") return weak_coupling_preset();
    throw DomainError("unknown preset '" + std::string(name) + "' (expected strong or weak)");
}

std::vector<std::string> preset_names() { return {"strong", "weak"}; }

Preset with_phases(const Preset &preset, double phi_alice, double phi_bob) {
    Preset out = preset;
    out.alice.phi = phi_alice;
    out.bob.phi = phi_bob;
    return out;
}

SiteRun simulate_site(const SiteState &initial, const DriveProfile &p, double t_end,
                      const EvolveOptions &options) {
    Trajectory traj = evolve(initial, p, t_end, options);
    EmittedPulse pulse = extract_pulse(traj, p);
    return {std::move(traj), std::move(pulse)};
}

TeleportReport assemble_report(const Qubit &qubit, const SiteRun &alice, const SiteRun &bob) {
    TeleportReport r;
    r.emission_alice = alice.pulse.squared_norm();
    r.emission_bob = bob.pulse.squared_norm();
    r.success_probability = success_probability(alice.pulse, bob.pulse);
    r.fidelity = fidelity(qubit, alice.pulse, bob.pulse);
    const JointState joint = make_joint_state(qubit, alice.pulse, bob.pulse);
    r.chi = joint.chi;
    const BellAnalysis analysis = bell_analyzer(joint);
    r.analyzer_fidelity = analysis.average_fidelity();
    r.pattern_probability = analysis.pattern_probability;
    r.emission_time_alice = emission_completion_time(alice.pulse);
    r.emission_time_bob = emission_completion_time(bob.pulse);
    r.emission_time = std::max(r.emission_time_alice, r.emission_time_bob);
    r.residual_alice = alice.trajectory.squared_norms().back();
    r.residual_bob = bob.trajectory.squared_norms().back();
    return r;
}

std::pair<SiteRun, SiteRun> simulate_pair(const Preset &preset) {
    preset.validate();
    SiteRun a = simulate_site(alice_initial_state(preset.qubit), preset.alice, preset.t_end,
                              preset.evolve);
    SiteRun b = simulate_site(bob_initial_state(), preset.bob, preset.t_end, preset.evolve);
    return {std::move(a), std::move(b)};
}

TeleportReport run_teleportation(const Preset &preset) {
    const auto [a, b] = simulate_pair(preset);
    return assemble_report(preset.qubit, a, b);
}

SweepPointFailure::SweepPointFailure(const IntegrationFailure &cause, double phi_b)
    : IntegrationFailure("sweep point phi_B = " + fmt_double(phi_b) + " rad: " + cause.what(),
                         cause.time()),
      phi_b_(phi_b) {}

std::vector<double> uniform_phases(int n) {
    if (n < 1) {
        throw DomainError("phase grid needs at least one point");
    }
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        out[i] = 2.0 * units::kPi * i / n;
    }
    return out;
}

SweepResult sweep_phi_b(const Preset &preset, std::span<const double> phis, int threads) {
    if (phis.empty()) {
        throw DomainError("sweep needs at least one phi_B value");
    }
    preset.validate();
    const SiteRun alice = simulate_site(alice_initial_state(preset.qubit), preset.alice,
                                        preset.t_end, preset.evolve);

    std::vector<std::optional<TeleportReport>> reports(phis.size());
    parallel_for(phis.size(), threads, [&](std::size_t i) {
        DriveProfile bob = preset.bob;
        bob.phi = phis[i];
        try {
            const SiteRun b = simulate_site(bob_initial_state(), bob, preset.t_end, preset.evolve);
            reports[i] = assemble_report(preset.qubit, alice, b);
        } catch (const IntegrationFailure &e) {
            throw SweepPointFailure(e, phis[i]);
        }
    });

    SweepResult out;
    for (std::size_t i = 0; i < phis.size(); ++i) {
        const auto &r = *reports[i];
        out.phi_b.push_back(phis[i]);
        out.fidelity.push_back(r.fidelity);
        out.success_probability.push_back(r.success_probability);
        out.chi.push_back(r.chi);
        out.emission_time.push_back(r.emission_time);
    }
    return out;
}

MonteCarloStats monte_carlo(const JointState &joint, const MonteCarloOptions &options) {
    if (options.samples < 1 || options.batch_size < 1) {
        throw DomainError("monte carlo needs samples >= 1 and batch_size >= 1");
    }
    if (!(options.eta >= 0.0 && options.eta <= 1.0)) {
        throw DomainError("detector efficiency eta must lie in [0, 1]");
    }
    const BellSampler sampler(joint);
    const BellAnalysis &analysis = sampler.analysis();
    std::array<double, kSuccessPatternCount> pattern_fidelity{};
    for (int k = 0; k < kSuccessPatternCount; ++k) {
        const auto pattern = static_cast<BellPattern>(k);
        pattern_fidelity[k] =
            analysis.pattern_probability[k] > 0.0 ? analysis.corrected_fidelity(pattern) : 0.0;
    }

    const std::int64_t n_batches = (options.samples + options.batch_size - 1) / options.batch_size;
    std::vector<MonteCarloBatch> batches(static_cast<std::size_t>(n_batches));
    parallel_for(batches.size(), options.threads, [&](std::size_t i) {
        const auto idx = static_cast<std::uint64_t>(i);
        std::seed_seq seq{static_cast<std::uint32_t>(options.seed),
                          static_cast<std::uint32_t>(options.seed >> 32),
                          static_cast<std::uint32_t>(idx), static_cast<std::uint32_t>(idx >> 32)};
        std::mt19937_64 rng(seq);
        std::uniform_real_distribution<double> uniform(0.0, 1.0);
        MonteCarloBatch &batch = batches[i];
        const std::int64_t begin = static_cast<std::int64_t>(i) * options.batch_size;
        batch.samples = std::min(options.batch_size, options.samples - begin);
        for (std::int64_t s = 0; s < batch.samples; ++s) {
            const BellOutcome outcome = sampler.sample(options.eta, rng);
            ++batch.pattern_counts[static_cast<int>(outcome.pattern)];
            if (!is_success(outcome.pattern)) {
                continue;
            }
            ++batch.successes;
            const double f = pattern_fidelity[static_cast<int>(outcome.pattern)];
            batch.fidelity_sum += f;
            if (uniform(rng) < f * f) {
                ++batch.verified;
            }
        }
    });

    MonteCarloStats st;
    st.eta = options.eta;
    double fidelity_sum = 0.0;
    for (const auto &b : batches) {
        st.samples += b.samples;
        st.successes += b.successes;
        st.verified += b.verified;
        for (int k = 0; k < kPatternCount; ++k) {
            st.pattern_counts[k] += b.pattern_counts[k];
        }
        fidelity_sum += b.fidelity_sum;
    }
    st.batches = std::move(batches);
    const double n = static_cast<double>(st.samples);
    st.success_rate = st.successes / n;
    st.success_sigma = std::sqrt(st.success_rate * (1.0 - st.success_rate) / n);
    st.expected_success_rate = options.eta * options.eta * analysis.success_probability();
    if (st.successes > 0) {
        const double m = static_cast<double>(st.successes);
        st.mean_corrected_fidelity = fidelity_sum / m;
        st.verified_fraction = st.verified / m;
        st.verified_sigma = std::sqrt(st.verified_fraction * (1.0 - st.verified_fraction) / m);
    }
    st.expected_fidelity = analysis.success_probability() > 0.0 ? analysis.average_fidelity() : 0.0;
    return st;
}

MonteCarloStats monte_carlo(const Preset &preset, const MonteCarloOptions &options) {
    const auto [a, b] = simulate_pair(preset);
    return monte_carlo(make_joint_state(preset.qubit, a.pulse, b.pulse), options);
}

std::vector<CheckResult> run_validation(const Preset &preset, std::uint64_t seed) {
    std::vector<CheckResult> out;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    {
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            DriveProfile p;
            p.omega0 = 0.01 + 10.0 * unit(rng);
            p.g0 = 0.01 + 10.0 * unit(rng);
            const auto ha = hamiltonian_alice(p, p.t_c);
            const auto hb = hamiltonian_bob(p, p.t_c);
            const auto [d1, d2] = dark_states_alice(p.omega0, p.g0);
            const auto db = dark_state_bob(p.omega0, p.g0);
            worst = std::max({worst, (ha * d1.amplitudes()).norm() / ha.norm(),
                              (ha * d2.amplitudes()).norm() / ha.norm(),
                              (hb * db.amplitudes()).norm() / hb.norm()});
        }
        out.push_back({"dark_state_nullity", worst < 1e-12, "max |H D|/|H| = " + fmt_double(worst)});
    }

    {
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            const Qubit q = Qubit::normalized(Complex(unit(rng) - 0.5, unit(rng) - 0.5),
                                              Complex(unit(rng) - 0.5, unit(rng) - 0.5));
            const Complex chi = std::polar(unit(rng), 2.0 * units::kPi * unit(rng));
            const double f_bf = bell_analyzer(JointState{q, chi}).average_fidelity();
            worst = std::max(worst, std::abs(f_bf - fidelity_from_overlap(q, chi)));
        }
        out.push_back({"analyzer_matches_closed_form", worst < 1e-6,
                       "max |F_enum - F_closed| = " + fmt_double(worst)});
    }

    {
        const BellAnalysis a = bell_analyzer(JointState{Qubit::equal_superposition(), 1.0});
        double worst = std::abs(a.success_probability() - 0.5);
        for (int k = 0; k < kSuccessPatternCount; ++k) {
            worst = std::max(worst, std::abs(a.pattern_probability[k] - 0.125));
        }
        out.push_back({"pattern_probabilities", worst < 1e-9,
                       "max deviation from 1/8 = " + fmt_double(worst)});
    }

    {
        Preset lossless = preset;
        lossless.alice.gamma = 0.0;
        lossless.bob.gamma = 0.0;
        const auto [a, b] = simulate_pair(lossless);
        double worst = 0.0;
        for (const SiteRun *run : {&a, &b}) {
            const double lost = 1.0 - run->trajectory.squared_norms().back();
            worst = std::max(worst, std::abs(lost - run->pulse.squared_norm()));
        }
        out.push_back({"flux_balance_" + preset.name, worst < 1e-6,
                       "max |lost norm - emitted| = " + fmt_double(worst)});

        double rise = 0.0;
        for (const SiteRun *run : {&a, &b}) {
            const auto norms = run->trajectory.squared_norms();
            for (std::size_t i = 1; i < norms.size(); ++i) {
                rise = std::max(rise, norms[i] - norms[i - 1]);
            }
        }
        out.push_back({"norm_monotone_" + preset.name, rise <= 10.0 * preset.evolve.tolerance,
                       "max norm increase = " + fmt_double(rise)});
    }

    {
        Preset ideal = strong_coupling_preset();
        for (DriveProfile *p : {&ideal.alice, &ideal.bob}) {
            p->delta_g = 0.0;
            p->delta = 0.0;
            p->gamma = 0.0;
        }
        const auto [a, b] = simulate_pair(ideal);
        double worst = 1.0;
        for (const SiteRun *run : {&a, &b}) {
            const Site site = run->pulse.site();
            const PolarizationWeights w =
                site == Site::kAlice ? alice_polarization(ideal.qubit) : bob_polarization();
            const auto numeric = run->pulse.temporal_mode(w);
            const auto analytic_real = adiabatic_envelope(*(site == Site::kAlice ? &ideal.alice
                                                                                 : &ideal.bob),
                                                          site, run->pulse.times());
            const std::vector<Complex> analytic(analytic_real.begin(), analytic_real.end());
            const auto &t = run->pulse.times();
            const double ov = std::abs(overlap_integral(t, analytic, t, numeric));
            const double na = overlap_integral(t, analytic, t, analytic).real();
            const double nn = overlap_integral(t, numeric, t, numeric).real();
            worst = std::min(worst, ov / std::sqrt(na * nn));
        }
        out.push_back({"adiabatic_pulse_overlap", worst > 0.99,
                       "min normalized overlap = " + fmt_double(worst)});
    }
    return out;
}

}  // namespace cavtele
