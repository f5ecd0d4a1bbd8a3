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

#ifndef CAVTELE_ADIABATIC_H
#define CAVTELE_ADIABATIC_H

#include <span>
#include <utility>
#include <vector>

#include "cavtele/dynamics.h"
#include "cavtele/hilbert.h"
#include "cavtele/pulse.h"

namespace cavtele {

// Closed-form adiabatic-passage theory. Used to design matched drives and
// as an independent check on the integrated dynamics.

struct MixingAngle {
    double cos_theta;
    double sin_theta;
};

/// Alice: (g, Omega) / sqrt(g^2 + Omega^2).
/// Bob:   (sqrt2 g, Omega) / sqrt(2 g^2 + Omega^2).
/// Throws UndefinedResult when omega == g == 0.
MixingAngle mixing_angle(Site site, double omega, double g);

/// D1 = cos(theta) gL|00> - sin(theta) g0|10>,
/// D2 = cos(theta) gR|00> - sin(theta) g0|01>.
std::pair<SiteState, SiteState> dark_states_alice(double omega, double g);

/// cos(theta) g0'|00> - sin(theta) (gL|01> + gR|10>) / sqrt2.
SiteState dark_state_bob(double omega, double g);

/// Scalar adiabatic envelope
///   f(t) = sqrt(kappa) sin(theta(t)) exp(-kappa/2 int_{t0}^{t} sin^2(theta))
/// with the inner integral accumulated by the trapezoid rule on `grid`.
std::vector<double> adiabatic_envelope(const DriveProfile &p, Site site,
                                       std::span<const double> grid);

/// adiabatic_envelope() spread over the site's polarization weights.
EmittedPulse analytic_pulse(const DriveProfile &p, Site site, std::span<const double> grid,
                            PolarizationWeights weights);

/// Convenience overload: Bob's fixed weights, or (1, 0) for Alice.
EmittedPulse analytic_pulse(const DriveProfile &p, Site site, std::span<const double> grid);

/// Receiver drive whose mixing angle tracks the sender's:
/// Omega_B0 = sqrt2 |g_B0 / g_A0| Omega_A0 with the sender's t_c and
/// delta_t. All other fields come from `bob`. Throws DomainError when
/// alice.g0 == 0.
DriveProfile matched_drive(const DriveProfile &alice, const DriveProfile &bob);

/// Same, with Bob's site parameters copied from Alice's.
DriveProfile matched_drive(const DriveProfile &alice);

}  // namespace cavtele

#endif  // CAVTELE_ADIABATIC_H
