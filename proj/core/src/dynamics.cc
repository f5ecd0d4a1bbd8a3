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

#include "cavtele/dynamics.h"

#include <array>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <string>

#include "cavtele/errors.h"

namespace odeint = boost::numeric::odeint;

namespace cavtele {

namespace {

constexpr Complex kI{0.0, 1.0};

void require(bool ok, const char *field, const char *what) {
    if (!ok) {
        throw DomainError(std::string("drive profile field '") + field + "' " + what);
    }
}

// Rate used to make time dimensionless inside the integrator. The cavity
// decay rate when present, otherwise the largest rate in the profile.
double time_scale(const DriveProfile &p, double span) {
    if (p.kappa > 0.0) {
        return p.kappa;
    }
    double s = std::max({p.omega0, p.g0, std::abs(p.delta), p.gamma});
    if (s > 0.0) {
        return s;
    }
    return span > 0.0 ? 1.0 / span : 1.0;
}

template <int N>
Eigen::Matrix<Complex, N, N> site_hamiltonian(const DriveProfile &p, double t) {
    if constexpr (N == alice::kDim) {
        return hamiltonian_alice(p, t);
    } else {
        return hamiltonian_bob(p, t);
    }
}

template <int N>
Trajectory evolve_fixed(const SiteState &state0, const DriveProfile &p, double t_end,
                        const EvolveOptions &options) {
    using State = std::array<Complex, N>;
    using Vec = Eigen::Matrix<Complex, N, 1>;

    const double t0 = state0.time();
    const double scale = time_scale(p, t_end - t0);
    const auto times = quadrature::uniform_grid(t0, t_end, options.grid_intervals);

    auto rhs = [&p, scale](const State &x, State &dxdt, double tau) {
        const auto h = site_hamiltonian<N>(p, tau / scale);
        Eigen::Map<const Vec> psi(x.data());
        Eigen::Map<Vec> out(dxdt.data());
        out.noalias() = (-kI / scale) * (h * psi);
    };

    State x{};
    for (int i = 0; i < N; ++i) {
        x[i] = state0[i];
    }

    Eigen::MatrixXcd samples(N, static_cast<Eigen::Index>(times.size()));
    samples.col(0) = state0.amplitudes();

    auto stepper = odeint::make_dense_output(options.tolerance, options.tolerance,
                                             odeint::runge_kutta_dopri5<State>());
    const double tau0 = t0 * scale;
    const double tau_end = t_end * scale;
    const double min_step = 1e-13 * std::max(1.0, std::abs(tau_end));
    stepper.initialize(x, tau0, std::min(1e-3, 1e-3 * (tau_end - tau0)));

    std::size_t next = 1;
    State sample{};
    while (next < times.size()) {
        const double tau_next = times[next] * scale;
        if (stepper.current_time() >= tau_next) {
            stepper.calc_state(tau_next, sample);
            for (int i = 0; i < N; ++i) {
                samples(i, static_cast<Eigen::Index>(next)) = sample[i];
            }
            ++next;
            continue;
        }
        try {
            stepper.do_step(rhs);
        } catch (const std::exception &e) {
            const double t_fail = stepper.current_time() / scale;
            throw IntegrationFailure(
                std::string("integration failed at t = ") + std::to_string(t_fail) + " s: " + e.what(),
                t_fail);
        }
        const double dt = stepper.current_time_step();
        const auto &cur = stepper.current_state();
        bool finite = std::isfinite(dt);
        for (const auto &c : cur) {
            finite = finite && std::isfinite(c.real()) && std::isfinite(c.imag());
        }
        if (!finite || dt < min_step) {
            const double t_fail = stepper.current_time() / scale;
            throw IntegrationFailure(
                "step size underflow at t = " + std::to_string(t_fail) + " s", t_fail);
        }
    }
    return Trajectory(state0.site(), times, std::move(samples));
}

}  // namespace

void DriveProfile::validate() const {
    require(std::isfinite(omega0) && omega0 >= 0.0, "omega0", "must be finite and >= 0");
    require(std::isfinite(g0) && g0 >= 0.0, "g0", "must be finite and >= 0");
    require(std::isfinite(kappa) && kappa >= 0.0, "kappa", "must be finite and >= 0");
    require(std::isfinite(gamma) && gamma >= 0.0, "gamma", "must be finite and >= 0");
    require(std::isfinite(delta_t) && delta_t > 0.0, "delta_t", "must be finite and > 0");
    require(std::isfinite(t_c), "t_c", "must be finite");
    require(std::isfinite(delta_g), "delta_g", "must be finite");
    require(std::isfinite(omega_z), "omega_z", "must be finite");
    require(std::isfinite(phi), "phi", "must be finite");
    require(std::isfinite(delta), "delta", "must be finite");
}

double omega_of_t(const DriveProfile &p, double t) {
    const double x = (t - p.t_c) / p.delta_t;
    return p.omega0 * std::exp(-x * x);
}

double g_of_t(const DriveProfile &p, double t) {
    return p.g0 * std::cos(p.delta_g * std::sin(p.omega_z * t + p.phi));
}

AliceMatrix hamiltonian_alice(const DriveProfile &p, double t) {
    using namespace alice;
    const double omega = omega_of_t(p, t);
    const double g = g_of_t(p, t);
    const Complex excited{-p.delta, -0.5 * p.gamma};
    const Complex photon{0.0, -0.5 * p.kappa};

    AliceMatrix h = AliceMatrix::Zero();
    h(kEL, kEL) = excited;
    h(kER, kER) = excited;
    h(kG0PhotonL, kG0PhotonL) = photon;
    h(kG0PhotonR, kG0PhotonR) = photon;
    h(kEL, kGL) = h(kGL, kEL) = omega;
    h(kER, kGR) = h(kGR, kER) = omega;
    h(kEL, kG0PhotonL) = h(kG0PhotonL, kEL) = g;
    h(kER, kG0PhotonR) = h(kG0PhotonR, kER) = g;
    return h;
}

BobMatrix hamiltonian_bob(const DriveProfile &p, double t) {
    using namespace bob;
    const double omega = omega_of_t(p, t);
    const double g = g_of_t(p, t);

    BobMatrix h = BobMatrix::Zero();
    h(kE0, kE0) = Complex{-p.delta, -0.5 * p.gamma};
    h(kGLPhotonR, kGLPhotonR) = Complex{0.0, -0.5 * p.kappa};
    h(kGRPhotonL, kGRPhotonL) = Complex{0.0, -0.5 * p.kappa};
    h(kE0, kG0Prime) = h(kG0Prime, kE0) = omega;
    // a_R |e0><gL| and a_L |e0><gR|
    h(kE0, kGLPhotonR) = h(kGLPhotonR, kE0) = g;
    h(kE0, kGRPhotonL) = h(kGRPhotonL, kE0) = g;
    return h;
}

Eigen::MatrixXcd hamiltonian(Site site, const DriveProfile &p, double t) {
    if (site == Site::kAlice) {
        return hamiltonian_alice(p, t);
    }
    return hamiltonian_bob(p, t);
}

Trajectory::Trajectory(Site site, std::vector<double> times, Eigen::MatrixXcd amplitudes)
    : site_(site), times_(std::move(times)), amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.rows() != dimension(site_) ||
        amplitudes_.cols() != static_cast<Eigen::Index>(times_.size())) {
        throw DomainError("trajectory shape does not match site dimension and time grid");
    }
}

SiteState Trajectory::state(std::size_t i) const {
    return SiteState(site_, amplitudes_.col(static_cast<Eigen::Index>(i)), times_.at(i));
}

std::vector<double> Trajectory::squared_norms() const {
    std::vector<double> out(times_.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = amplitudes_.col(static_cast<Eigen::Index>(i)).squaredNorm();
    }
    return out;
}

Trajectory evolve(const SiteState &state0, const DriveProfile &p, double t_end,
                  const EvolveOptions &options) {
    p.validate();
    if (!(t_end > state0.time())) {
        throw DomainError("evolve: t_end must exceed the initial time");
    }
    if (!(options.tolerance > 0.0) || options.grid_intervals < 1) {
        throw DomainError("evolve: tolerance must be > 0 and grid_intervals >= 1");
    }
    if (std::abs(state0.squared_norm() - 1.0) > kNormTolerance) {
        throw DomainError("evolve: initial state is not normalized");
    }
    if (state0.site() == Site::kAlice) {
        return evolve_fixed<alice::kDim>(state0, p, t_end, options);
    }
    return evolve_fixed<bob::kDim>(state0, p, t_end, options);
}

EmittedPulse extract_pulse(const Trajectory &trajectory, const DriveProfile &p) {
    int left = 0;
    int right = 0;
    if (trajectory.site() == Site::kAlice) {
        left = alice::kG0PhotonL;
        right = alice::kG0PhotonR;
    } else {
        left = bob::kGRPhotonL;
        right = bob::kGLPhotonR;
    }
    const double root_kappa = std::sqrt(p.kappa);
    const auto &a = trajectory.amplitudes();
    std::vector<Complex> amp_left(trajectory.size());
    std::vector<Complex> amp_right(trajectory.size());
    for (std::size_t i = 0; i < trajectory.size(); ++i) {
        const auto col = static_cast<Eigen::Index>(i);
        amp_left[i] = root_kappa * a(left, col);
        amp_right[i] = root_kappa * a(right, col);
    }
    return EmittedPulse(trajectory.site(), trajectory.times(), std::move(amp_left),
                        std::move(amp_right));
}

double emission_completion_time(const EmittedPulse &pulse, double fraction) {
    if (!(fraction > 0.0 && fraction < 1.0)) {
        throw DomainError("emission fraction must lie in (0, 1)");
    }
    const auto flux = pulse.flux();
    const auto running = quadrature::cumulative_trapezoid(pulse.times(), flux);
    if (running.empty() || !(running.back() > 0.0)) {
        throw UndefinedResult("emission completion time of an empty pulse is undefined");
    }
    const double target = fraction * running.back();
    for (std::size_t i = 0; i < running.size(); ++i) {
        if (running[i] >= target) {
            return pulse.times()[i];
        }
    }
    return pulse.times().back();
}

}  // namespace cavtele
