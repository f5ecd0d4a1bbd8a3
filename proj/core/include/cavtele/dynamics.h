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

#ifndef CAVTELE_DYNAMICS_H
#define CAVTELE_DYNAMICS_H

#include <Eigen/Dense>
#include <vector>

#include "cavtele/hilbert.h"
#include "cavtele/pulse.h"

namespace cavtele {

/// Physical parameters of one atom-cavity site. Rates are angular
/// frequencies in rad/s, times in seconds, angles in radians.
///
///   Omega(t) = omega0 exp(-((t - t_c) / delta_t)^2)
///   g(t)     = g0 cos(delta_g sin(omega_z t + phi))
struct DriveProfile {
    double omega0 = 0.0;
    double t_c = 0.0;
    double delta_t = 1.0;
    double g0 = 0.0;
    double delta_g = 0.0;
    double omega_z = 0.0;
    double phi = 0.0;
    double delta = 0.0;
    double gamma = 0.0;
    double kappa = 0.0;

    /// Throws DomainError naming the first offending field.
    void validate() const;

    friend bool operator==(const DriveProfile &, const DriveProfile &) = default;
};

double omega_of_t(const DriveProfile &p, double t);
double g_of_t(const DriveProfile &p, double t);

using AliceMatrix = Eigen::Matrix<Complex, alice::kDim, alice::kDim>;
using BobMatrix = Eigen::Matrix<Complex, bob::kDim, bob::kDim>;

/// Conditional (no-jump) Hamiltonian of the sender site in the canonical
/// basis: drive couplings gL<->eL and gR<->eR, cavity couplings
/// eL<->g0|10> and eR<->g0|01>, -(delta + i gamma/2) on the excited
/// levels and -i kappa/2 on the one-photon kets.
AliceMatrix hamiltonian_alice(const DriveProfile &p, double t);

/// Receiver counterpart: g0'<->e0 drive, e0<->gL|01> and e0<->gR|10>
/// cavity couplings, -(delta + i gamma/2) on e0, -i kappa/2 on photon kets.
BobMatrix hamiltonian_bob(const DriveProfile &p, double t);

Eigen::MatrixXcd hamiltonian(Site site, const DriveProfile &p, double t);

struct EvolveOptions {
    /// Relative (and absolute) local error tolerance of the integrator.
    double tolerance = 1e-8;
    /// Number of uniform reporting intervals between the initial time and
    /// t_end.
    int grid_intervals = 2000;
};

/// States sampled on a uniform reporting grid.
class Trajectory {
   public:
    Trajectory(Site site, std::vector<double> times, Eigen::MatrixXcd amplitudes);

    Site site() const { return site_; }
    std::size_t size() const { return times_.size(); }
    const std::vector<double> &times() const { return times_; }
    /// dimension(site) x size() matrix; column i is the state at times()[i].
    const Eigen::MatrixXcd &amplitudes() const { return amplitudes_; }
    SiteState state(std::size_t i) const;
    std::vector<double> squared_norms() const;

   private:
    Site site_;
    std::vector<double> times_;
    Eigen::MatrixXcd amplitudes_;
};

/// Integrates d psi/dt = -i H(t) psi from state0.time() to t_end with an
/// adaptive Dormand-Prince 5(4) stepper and samples the dense output on the
/// reporting grid. Throws IntegrationFailure if the step size collapses.
Trajectory evolve(const SiteState &state0, const DriveProfile &p, double t_end,
                  const EvolveOptions &options = {});

/// Output field sqrt(kappa) times the one-photon amplitudes of the
/// trajectory (input-output relation).
EmittedPulse extract_pulse(const Trajectory &trajectory, const DriveProfile &p);

/// Earliest grid time at which the running integral of the flux reaches
/// `fraction` of the total. Throws UndefinedResult for an empty pulse.
double emission_completion_time(const EmittedPulse &pulse, double fraction = 0.99);

}  // namespace cavtele

#endif  // CAVTELE_DYNAMICS_H
