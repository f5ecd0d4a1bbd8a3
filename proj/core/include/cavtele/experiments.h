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

#ifndef CAVTELE_EXPERIMENTS_H
#define CAVTELE_EXPERIMENTS_H

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cavtele/dynamics.h"
#include "cavtele/errors.h"
#include "cavtele/measurement.h"

namespace cavtele {

namespace units {
inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kMicrosecond = 1e-6;
/// Angular frequency for a rate quoted as nu = rate / 2pi in MHz.
constexpr double from_mhz(double nu_mhz) { return 2.0 * kPi * nu_mhz * 1e6; }
constexpr double to_mhz(double rate) { return rate / (2.0 * kPi * 1e6); }
}  // namespace units

/// A complete two-site teleportation setup.
struct Preset {
    std::string name;
    DriveProfile alice;
    DriveProfile bob;
    Qubit qubit = Qubit::equal_superposition();
    double t_end = 0.0;
    EvolveOptions evolve;
    /// When set, validate() insists that bob.omega0 follows matched_drive().
    bool matched = true;

    void validate() const;
};

/// kappa/2pi = 4 MHz, gamma = kappa, g0 = 8 kappa, delta_g = pi/3,
/// omega_z = 0.05 kappa, Omega_A0 = g0, Omega_B0 = sqrt2 g0, delta = 0,
/// t_c = 0.6 us, delta_t = 0.2 us; integrated to 3 us.
Preset strong_coupling_preset();

/// g0 = gamma = kappa, delta = 40 kappa, delta_t = 40 us, t_c = 120 us,
/// Omega_A0 = 6 g0, Omega_B0 = sqrt2 Omega_A0; integrated to 400 us.
Preset weak_coupling_preset();

/// "strong" or "weak". Throws DomainError otherwise.
Preset preset_by_name(std::string_view name);
std::vector<std::string> preset_names();

/// Copy of `preset` with the motional phases replaced.
Preset with_phases(const Preset &preset, double phi_alice, double phi_bob);

struct SiteRun {
    Trajectory trajectory;
    EmittedPulse pulse;
};

SiteRun simulate_site(const SiteState &initial, const DriveProfile &p, double t_end,
                      const EvolveOptions &options);

/// Evolves both sites of `preset` from their initial states.
std::pair<SiteRun, SiteRun> simulate_pair(const Preset &preset);

struct TeleportReport {
    double fidelity = 0.0;
    double success_probability = 0.0;
    Complex chi;
    /// Fidelity from the brute-force analyzer; agrees with `fidelity` up to
    /// quadrature error.
    double analyzer_fidelity = 0.0;
    std::array<double, kPatternCount> pattern_probability{};
    /// Later of the two 99% emission completion times.
    double emission_time = 0.0;
    double emission_time_alice = 0.0;
    double emission_time_bob = 0.0;
    /// Integrated photon flux of each cavity.
    double emission_alice = 0.0;
    double emission_bob = 0.0;
    /// Squared norm left in the conditional state at t_end.
    double residual_alice = 0.0;
    double residual_bob = 0.0;
};

TeleportReport assemble_report(const Qubit &qubit, const SiteRun &alice, const SiteRun &bob);

/// Evolves both sites, extracts the pulses and evaluates the Bell
/// measurement. Propagates IntegrationFailure.
TeleportReport run_teleportation(const Preset &preset);

struct SweepResult {
    std::vector<double> phi_b;
    std::vector<double> fidelity;
    std::vector<double> success_probability;
    std::vector<Complex> chi;
    std::vector<double> emission_time;
};

/// Raised when one sweep point fails; carries the offending phase.
class SweepPointFailure : public IntegrationFailure {
   public:
    SweepPointFailure(const IntegrationFailure &cause, double phi_b);
    double phi_b() const noexcept { return phi_b_; }

   private:
    double phi_b_;
};

/// `n` equally spaced phases on [0, 2pi).
std::vector<double> uniform_phases(int n);

/// Runs the protocol for each phi_B with the preset's phi_A. Alice is
/// evolved once; points run on up to `threads` workers and come back in
/// input order regardless of thread count.
SweepResult sweep_phi_b(const Preset &preset, std::span<const double> phis, int threads = 1);

struct MonteCarloOptions {
    std::int64_t samples = 100000;
    double eta = 1.0;
    std::uint64_t seed = 1;
    int threads = 1;
    std::int64_t batch_size = 10000;
};

struct MonteCarloBatch {
    std::int64_t samples = 0;
    std::int64_t successes = 0;
    /// Heralded runs whose corrected atom passed a projective test onto the
    /// input qubit.
    std::int64_t verified = 0;
    std::array<std::int64_t, kPatternCount> pattern_counts{};
    double fidelity_sum = 0.0;
};

struct MonteCarloStats {
    std::int64_t samples = 0;
    std::int64_t successes = 0;
    std::int64_t verified = 0;
    std::array<std::int64_t, kPatternCount> pattern_counts{};
    double eta = 1.0;

    double success_rate = 0.0;
    /// Binomial standard error of success_rate.
    double success_sigma = 0.0;
    /// Exact heralding probability eta^2 P.
    double expected_success_rate = 0.0;

    /// Mean exact corrected fidelity over heralded runs.
    double mean_corrected_fidelity = 0.0;
    /// verified / successes: an unbiased estimate of F^2.
    double verified_fraction = 0.0;
    double verified_sigma = 0.0;
    double expected_fidelity = 0.0;

    std::vector<MonteCarloBatch> batches;
};

/// Samples click patterns in fixed-size batches, each with its own
/// generator seeded from (seed, batch index); the result does not depend on
/// the thread count.
MonteCarloStats monte_carlo(const JointState &joint, const MonteCarloOptions &options);
MonteCarloStats monte_carlo(const Preset &preset, const MonteCarloOptions &options);

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Cross-module oracle checks: dark-state nullity, analyzer vs closed-form
/// fidelity, pattern statistics, flux balance, adiabatic pulse agreement and
/// norm monotonicity. `preset` feeds the flux-balance check.
std::vector<CheckResult> run_validation(const Preset &preset, std::uint64_t seed = 7);

}  // namespace cavtele

#endif  // CAVTELE_EXPERIMENTS_H
