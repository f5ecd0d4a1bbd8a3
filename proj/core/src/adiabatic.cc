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

#include "cavtele/adiabatic.h"

#include <cmath>

#include "cavtele/errors.h"

namespace cavtele {

namespace {

const double kSqrt2 = std::sqrt(2.0);

}  // namespace

MixingAngle mixing_angle(Site site, double omega, double g) {
    if (omega == 0.0 && g == 0.0) {
        throw UndefinedResult("mixing angle is undefined when both omega and g vanish");
    }
    const double gw = site == Site::kAlice ? g : kSqrt2 * g;
    const double n = std::hypot(gw, omega);
    return {gw / n, omega / n};
}

std::pair<SiteState, SiteState> dark_states_alice(double omega, double g) {
    const auto [c, s] = mixing_angle(Site::kAlice, omega, g);
    Eigen::VectorXcd d1 = Eigen::VectorXcd::Zero(alice::kDim);
    Eigen::VectorXcd d2 = Eigen::VectorXcd::Zero(alice::kDim);
    d1(alice::kGL) = c;
    d1(alice::kG0PhotonL) = -s;
    d2(alice::kGR) = c;
    d2(alice::kG0PhotonR) = -s;
    return {SiteState(Site::kAlice, std::move(d1)), SiteState(Site::kAlice, std::move(d2))};
}

SiteState dark_state_bob(double omega, double g) {
    const auto [c, s] = mixing_angle(Site::kBob, omega, g);
    Eigen::VectorXcd d = Eigen::VectorXcd::Zero(bob::kDim);
    d(bob::kG0Prime) = c;
    d(bob::kGLPhotonR) = -s / kSqrt2;
    d(bob::kGRPhotonL) = -s / kSqrt2;
    return SiteState(Site::kBob, std::move(d));
}

std::vector<double> adiabatic_envelope(const DriveProfile &p, Site site,
                                       std::span<const double> grid) {
    std::vector<double> sin_theta(grid.size());
    std::vector<double> sin2(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double omega = omega_of_t(p, grid[i]);
        const double g = g_of_t(p, grid[i]);
        // The undefined point (no drive, no coupling) emits nothing.
        sin_theta[i] = (omega == 0.0 && g == 0.0) ? 0.0 : mixing_angle(site, omega, g).sin_theta;
        sin2[i] = sin_theta[i] * sin_theta[i];
    }
    const auto running = quadrature::cumulative_trapezoid(grid, sin2);
    const double root_kappa = std::sqrt(p.kappa);
    std::vector<double> f(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        f[i] = root_kappa * sin_theta[i] * std::exp(-0.5 * p.kappa * running[i]);
    }
    return f;
}

EmittedPulse analytic_pulse(const DriveProfile &p, Site site, std::span<const double> grid,
                            PolarizationWeights weights) {
    const auto f = adiabatic_envelope(p, site, grid);
    std::vector<Complex> left(f.size());
    std::vector<Complex> right(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        left[i] = weights.left * f[i];
        right[i] = weights.right * f[i];
    }
    return EmittedPulse(site, std::vector<double>(grid.begin(), grid.end()), std::move(left),
                        std::move(right));
}

EmittedPulse analytic_pulse(const DriveProfile &p, Site site, std::span<const double> grid) {
    const PolarizationWeights w =
        site == Site::kAlice ? PolarizationWeights{1.0, 0.0} : bob_polarization();
    return analytic_pulse(p, site, grid, w);
}

DriveProfile matched_drive(const DriveProfile &alice, const DriveProfile &bob) {
    if (!(alice.g0 > 0.0)) {
        throw DomainError("matched drive needs a nonzero sender coupling g0");
    }
    DriveProfile out = bob;
    out.omega0 = kSqrt2 * std::abs(bob.g0 / alice.g0) * alice.omega0;
    out.t_c = alice.t_c;
    out.delta_t = alice.delta_t;
    return out;
}

DriveProfile matched_drive(const DriveProfile &alice) { return matched_drive(alice, alice); }

}  // namespace cavtele
