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

#include "cavtele/measurement.h"

#include <algorithm>
#include <cmath>

#include "cavtele/errors.h"

namespace cavtele {

namespace {

constexpr Complex kI{0.0, 1.0};

// Mode index = port * 4 + polarization * 2 + temporal.
//   port:         input a (Alice) / b (Bob); output 1 / 2
//   polarization: input L / R; output H (-> DxL) / V (-> DxR)
//   temporal:     0 = f_A, 1 = component of f_B orthogonal to f_A
constexpr int kModes = 8;
constexpr int kLeft = 0;
constexpr int kRight = 1;

constexpr int mode(int port, int pol, int temporal) { return port * 4 + pol * 2 + temporal; }
constexpr int detector_of(int m) { return m / 2; }

constexpr int kAtomGL = 0;
constexpr int kAtomGR = 1;

using ModeMatrix = Eigen::Matrix<Complex, kModes, kModes>;

ModeMatrix single_photon_optics() {
    const double r = 1.0 / std::sqrt(2.0);
    Eigen::Matrix2cd splitter;
    splitter << r, kI * r, kI * r, r;
    // Columns: L and R written in the H/V basis.
    Eigen::Matrix2cd circular;
    circular << r, r, kI * r, -kI * r;
    Eigen::Matrix2cd wave_plate;
    wave_plate << r, -kI * r, -kI * r, r;
    const Eigen::Matrix2cd pol = wave_plate * circular;

    ModeMatrix u = ModeMatrix::Zero();
    for (int po = 0; po < 2; ++po) {
        for (int pi = 0; pi < 2; ++pi) {
            for (int qo = 0; qo < 2; ++qo) {
                for (int qi = 0; qi < 2; ++qi) {
                    for (int k = 0; k < 2; ++k) {
                        u(mode(po, qo, k), mode(pi, qi, k)) = splitter(po, pi) * pol(qo, qi);
                    }
                }
            }
        }
    }
    return u;
}

BellPattern classify(int d1, int d2) {
    if (d1 == d2) {
        return BellPattern::kFailure;
    }
    const auto lo = static_cast<Detector>(std::min(d1, d2));
    const auto hi = static_cast<Detector>(std::max(d1, d2));
    if (lo == Detector::kD1L && hi == Detector::kD1R) return BellPattern::kD1L_D1R;
    if (lo == Detector::kD2L && hi == Detector::kD2R) return BellPattern::kD2L_D2R;
    if (lo == Detector::kD1L && hi == Detector::kD2R) return BellPattern::kD1L_D2R;
    if (lo == Detector::kD1R && hi == Detector::kD2L) return BellPattern::kD2L_D1R;
    return BellPattern::kFailure;
}

Eigen::Vector2cd qubit_vector(const Qubit &q) { return Eigen::Vector2cd(q.alpha(), q.beta()); }

Eigen::Matrix2cd correction_matrix(Correction c) {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Identity();
    if (c == Correction::kPhaseFlip) {
        m(1, 1) = -1.0;
    }
    return m;
}

}  // namespace

std::string to_string(Detector d) {
    switch (d) {
        case Detector::kD1L: return "D1L";
        case Detector::kD1R: return "D1R";
        case Detector::kD2L: return "D2L";
        case Detector::kD2R: return "D2R";
    }
    return "?";
}

std::string to_string(BellPattern pattern) {
    switch (pattern) {
        case BellPattern::kD1L_D1R: return "D1L_D1R";
        case BellPattern::kD2L_D2R: return "D2L_D2R";
        case BellPattern::kD1L_D2R: return "D1L_D2R";
        case BellPattern::kD2L_D1R: return "D2L_D1R";
        case BellPattern::kFailure: return "failure";
        case BellPattern::kNoTwoClicks: return "no_two_clicks";
    }
    return "?";
}

bool is_success(BellPattern pattern) {
    return static_cast<int>(pattern) < kSuccessPatternCount;
}

Correction correction_for(BellPattern pattern) {
    switch (pattern) {
        case BellPattern::kD1L_D1R:
        case BellPattern::kD2L_D2R: return Correction::kIdentity;
        case BellPattern::kD1L_D2R:
        case BellPattern::kD2L_D1R: return Correction::kPhaseFlip;
        default: return Correction::kNone;
    }
}

Qubit apply_correction(BellPattern pattern, const Qubit &bob) {
    switch (correction_for(pattern)) {
        case Correction::kIdentity: return bob;
        case Correction::kPhaseFlip: return Qubit(bob.alpha(), -bob.beta());
        case Correction::kNone: break;
    }
    throw UndefinedResult("no correction is defined for click pattern " + to_string(pattern));
}

std::vector<Complex> alice_envelope(const Qubit &qubit, const EmittedPulse &alice) {
    return alice.temporal_mode(alice_polarization(qubit));
}

std::vector<Complex> bob_envelope(const EmittedPulse &bob) {
    return bob.temporal_mode(bob_polarization());
}

Complex normalized_overlap(const Qubit &qubit, const EmittedPulse &alice, const EmittedPulse &bob) {
    const auto fa = alice_envelope(qubit, alice);
    const auto fb = bob_envelope(bob);
    const Complex ov = overlap_integral(alice.times(), fa, bob.times(), fb);
    const double na = overlap_integral(alice.times(), fa, alice.times(), fa).real();
    const double nb = overlap_integral(bob.times(), fb, bob.times(), fb).real();
    if (!(na > 0.0 && nb > 0.0)) {
        throw UndefinedResult("overlap of an empty pulse is undefined");
    }
    return ov / std::sqrt(na * nb);
}

JointState make_joint_state(const Qubit &qubit, const EmittedPulse &alice,
                            const EmittedPulse &bob) {
    Complex chi = normalized_overlap(qubit, alice, bob);
    // Quadrature round-off can push |chi| a hair above one.
    if (std::abs(chi) > 1.0) {
        chi /= std::abs(chi);
    }
    return JointState{qubit, chi, std::min(1.0, alice.squared_norm()),
                      std::min(1.0, bob.squared_norm())};
}

double BellAnalysis::success_probability() const {
    double p = 0.0;
    for (int k = 0; k < kSuccessPatternCount; ++k) {
        p += pattern_probability[k];
    }
    return p;
}

double BellAnalysis::corrected_fidelity(BellPattern pattern) const {
    if (!is_success(pattern)) {
        throw UndefinedResult("fidelity is only defined for heralding patterns");
    }
    const auto &rho = conditional_state[static_cast<int>(pattern)];
    const double tr = rho.trace().real();
    if (!(tr > 0.0)) {
        throw UndefinedResult("pattern " + to_string(pattern) + " has zero probability");
    }
    const Eigen::Matrix2cd c = correction_matrix(correction_for(pattern));
    const Eigen::Vector2cd psi = qubit_vector(qubit);
    const double overlap = (psi.adjoint() * c * rho * c.adjoint() * psi)(0, 0).real();
    return std::sqrt(std::max(0.0, overlap / tr));
}

double BellAnalysis::average_fidelity() const {
    const Eigen::Vector2cd psi = qubit_vector(qubit);
    double num = 0.0;
    double den = 0.0;
    for (int k = 0; k < kSuccessPatternCount; ++k) {
        const auto pattern = static_cast<BellPattern>(k);
        const Eigen::Matrix2cd c = correction_matrix(correction_for(pattern));
        const auto &rho = conditional_state[k];
        num += (psi.adjoint() * c * rho * c.adjoint() * psi)(0, 0).real();
        den += rho.trace().real();
    }
    if (!(den > 0.0)) {
        throw UndefinedResult("average fidelity undefined: no heralding probability");
    }
    return std::sqrt(std::max(0.0, num / den));
}

BellAnalysis bell_analyzer(const JointState &joint) {
    const double abs_chi = std::abs(joint.chi);
    if (!(abs_chi <= 1.0 + kNormTolerance)) {
        throw DomainError("joint state overlap |chi| exceeds 1");
    }
    if (!(joint.emission_alice >= 0.0 && joint.emission_alice <= 1.0 + kNormTolerance &&
          joint.emission_bob >= 0.0 && joint.emission_bob <= 1.0 + kNormTolerance)) {
        throw DomainError("emission probabilities must lie in [0, 1]");
    }
    const Complex chi = abs_chi > 1.0 ? joint.chi / abs_chi : joint.chi;
    const double orth = std::sqrt(std::max(0.0, 1.0 - std::norm(chi)));
    const Complex temporal_b[2] = {chi, orth};

    // amp[atom](m1, m2): photon 1 from Alice, photon 2 from Bob.
    std::array<ModeMatrix, 2> amp{ModeMatrix::Zero(), ModeMatrix::Zero()};
    const Complex alice_pol[2] = {joint.qubit.alpha(), joint.qubit.beta()};
    const double r = 1.0 / std::sqrt(2.0);
    for (int p = 0; p < 2; ++p) {
        for (int k = 0; k < 2; ++k) {
            // Bob: R photon with atom gL, L photon with atom gR.
            amp[kAtomGL](mode(0, p, 0), mode(1, kRight, k)) += alice_pol[p] * r * temporal_b[k];
            amp[kAtomGR](mode(0, p, 0), mode(1, kLeft, k)) += alice_pol[p] * r * temporal_b[k];
        }
    }

    const ModeMatrix u = single_photon_optics();
    for (auto &a : amp) {
        a = (u * a * u.transpose()).eval();
    }

    BellAnalysis out{joint.qubit};
    for (auto &rho : out.conditional_state) {
        rho.setZero();
    }
    const double emitted = joint.emission_alice * joint.emission_bob;
    for (int m = 0; m < kModes; ++m) {
        for (int n = m; n < kModes; ++n) {
            Eigen::Vector2cd phi;
            for (int atom = 0; atom < 2; ++atom) {
                phi(atom) = m == n ? std::sqrt(2.0) * amp[atom](m, m)
                                   : amp[atom](m, n) + amp[atom](n, m);
            }
            const double w = phi.squaredNorm();
            const int d1 = detector_of(m);
            const int d2 = detector_of(n);
            out.detector_pair_probability(std::min(d1, d2), std::max(d1, d2)) += w;
            const BellPattern pattern = classify(d1, d2);
            out.pattern_probability[static_cast<int>(pattern)] += emitted * w;
            if (is_success(pattern)) {
                out.conditional_state[static_cast<int>(pattern)] += emitted * phi * phi.adjoint();
            }
        }
    }
    out.pattern_probability[static_cast<int>(BellPattern::kNoTwoClicks)] = 1.0 - emitted;
    return out;
}

double success_probability(const EmittedPulse &alice, const EmittedPulse &bob) {
    return 0.5 * alice.squared_norm() * bob.squared_norm();
}

double fidelity(const Qubit &qubit, const EmittedPulse &alice, const EmittedPulse &bob) {
    const double p = success_probability(alice, bob);
    if (!(p > 0.0)) {
        throw UndefinedResult("fidelity is undefined when the success probability is zero");
    }
    const auto fa = alice_envelope(qubit, alice);
    const auto fb = bob_envelope(bob);
    const Complex ov = overlap_integral(alice.times(), fa, bob.times(), fb);
    const double a2 = std::norm(qubit.alpha());
    const double b2 = std::norm(qubit.beta());
    const double cross = std::norm(qubit.alpha() * qubit.beta() * ov) / p;
    return std::sqrt(a2 * a2 + b2 * b2 + cross);
}

double fidelity_from_overlap(const Qubit &qubit, Complex chi) {
    const double a2 = std::norm(qubit.alpha());
    const double b2 = std::norm(qubit.beta());
    return std::sqrt(a2 * a2 + b2 * b2 + 2.0 * a2 * b2 * std::norm(chi));
}

BellSampler::BellSampler(const JointState &joint)
    : analysis_(bell_analyzer(joint)),
      emission_alice_(joint.emission_alice),
      emission_bob_(joint.emission_bob) {
    double acc = 0.0;
    for (int i = 0; i < kDetectorCount; ++i) {
        for (int j = i; j < kDetectorCount; ++j) {
            const double w = analysis_.detector_pair_probability(i, j);
            if (w <= 0.0) {
                continue;
            }
            acc += w;
            cdf_.push_back(acc);
            cdf_pattern_.push_back(classify(i, j));
        }
    }
    if (cdf_.empty()) {
        throw DomainError("joint state produces no detector events");
    }
    for (auto &c : cdf_) {
        c /= acc;
    }
    cdf_.back() = 1.0;
}

BellOutcome BellSampler::sample(double eta, std::mt19937_64 &rng) const {
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    const bool emitted_a = uniform(rng) < emission_alice_;
    const bool emitted_b = uniform(rng) < emission_bob_;
    const double u = uniform(rng);
    const bool seen_1 = uniform(rng) < eta;
    const bool seen_2 = uniform(rng) < eta;

    BellPattern pattern = BellPattern::kNoTwoClicks;
    if (emitted_a && emitted_b && seen_1 && seen_2) {
        const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
        const std::size_t idx =
            std::min(static_cast<std::size_t>(it - cdf_.begin()), cdf_.size() - 1);
        pattern = cdf_pattern_[idx];
    }
    return {pattern, correction_for(pattern)};
}

BellOutcome sample_run(const JointState &joint, double eta, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return BellSampler(joint).sample(eta, rng);
}

}  // namespace cavtele
