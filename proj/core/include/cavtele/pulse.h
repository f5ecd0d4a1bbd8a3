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

#ifndef CAVTELE_PULSE_H
#define CAVTELE_PULSE_H

#include <span>
#include <vector>

#include "cavtele/hilbert.h"

namespace cavtele {

/// Polarization amplitudes (left, right) carried by a single-photon pulse.
struct PolarizationWeights {
    Complex left;
    Complex right;
};

/// Alice's photon carries the qubit: (alpha, beta).
PolarizationWeights alice_polarization(const Qubit &qubit);

/// Bob's photon is maximally entangled with his atom; its polarization
/// amplitudes are (1/sqrt 2, 1/sqrt 2) with L <-> gR and R <-> gL.
PolarizationWeights bob_polarization();

/// Temporal amplitude of the photon leaking out of one cavity, sampled on a
/// time grid. Amplitudes are in s^(-1/2) so that the integral of
/// |amp_left|^2 + |amp_right|^2 is the emission probability.
class EmittedPulse {
   public:
    EmittedPulse(Site site, std::vector<double> times, std::vector<Complex> amp_left,
                 std::vector<Complex> amp_right);

    Site site() const { return site_; }
    std::size_t size() const { return times_.size(); }
    const std::vector<double> &times() const { return times_; }
    const std::vector<Complex> &amp_left() const { return amp_left_; }
    const std::vector<Complex> &amp_right() const { return amp_right_; }

    /// Integral of |amp_left|^2 + |amp_right|^2 over the grid.
    double squared_norm() const;

    /// |amp_left|^2 + |amp_right|^2 per grid point.
    std::vector<double> flux() const;

    /// conj(w.left) amp_left + conj(w.right) amp_right: the scalar envelope
    /// of the photon once its polarization state is factored out.
    std::vector<Complex> temporal_mode(PolarizationWeights w) const;

    /// Same pulse multiplied by a global phase factor.
    EmittedPulse with_phase(Complex phase) const;

   private:
    Site site_;
    std::vector<double> times_;
    std::vector<Complex> amp_left_;
    std::vector<Complex> amp_right_;
};

namespace quadrature {

std::vector<double> uniform_grid(double t0, double t1, int intervals);

/// Composite Simpson rule on a (possibly non-uniform) grid. An odd number of
/// intervals closes with a three-point end correction.
double simpson(std::span<const double> t, std::span<const double> f);
Complex simpson(std::span<const double> t, std::span<const Complex> f);

/// Running trapezoid integral; result[0] == 0.
std::vector<double> cumulative_trapezoid(std::span<const double> t, std::span<const double> f);

/// Linear interpolation of (t_src, f) onto t_dst, zero outside the source
/// support.
std::vector<Complex> interpolate_linear(std::span<const double> t_src,
                                        std::span<const Complex> f,
                                        std::span<const double> t_dst);

}  // namespace quadrature

/// Integral of conj(f_a) f_b. When the grids differ, f_b is interpolated
/// linearly onto the grid of f_a.
Complex overlap_integral(std::span<const double> t_a, std::span<const Complex> f_a,
                         std::span<const double> t_b, std::span<const Complex> f_b);

}  // namespace cavtele

#endif  // CAVTELE_PULSE_H
