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

#ifndef CAVTELE_MEASUREMENT_H
#define CAVTELE_MEASUREMENT_H

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cavtele/hilbert.h"
#include "cavtele/pulse.h"

namespace cavtele {

// Linear-optics Bell analyzer: 50-50 beam splitter S, quarter-wave plates
// W1/W2 turning circular into linear polarization, polarizing splitters
// P1/P2 and threshold detectors D1L, D1R (output port 1) and D2L, D2R
// (output port 2). Dx L registers photons that entered as left-circular.
//
// Conventions:
//   beam splitter  a -> (c + i d)/sqrt2,  b -> (i c + d)/sqrt2
//   circular basis L = (H + iV)/sqrt2, R = (H - iV)/sqrt2
//   wave plate     fast axis at 45 deg, Jones (1/sqrt2)[[1, -i], [-i, 1]],
//                  so L -> H and R -> -iV; the splitters send H to DxL and V
//                  to DxR.

enum class Detector { kD1L = 0, kD1R = 1, kD2L = 2, kD2R = 3 };
inline constexpr int kDetectorCount = 4;

/// Click patterns. kFailure: both photons reached the detectors but the
/// clicks do not herald (bunching into one detector, or same polarization
/// in both ports). kNoTwoClicks: a photon was lost before or at detection.
enum class BellPattern {
    kD1L_D1R = 0,
    kD2L_D2R = 1,
    kD1L_D2R = 2,
    kD2L_D1R = 3,
    kFailure = 4,
    kNoTwoClicks = 5,
};
inline constexpr int kPatternCount = 6;
inline constexpr int kSuccessPatternCount = 4;

enum class Correction { kIdentity, kPhaseFlip, kNone };

std::string to_string(Detector d);
std::string to_string(BellPattern pattern);
bool is_success(BellPattern pattern);
Correction correction_for(BellPattern pattern);

struct BellOutcome {
    BellPattern pattern;
    Correction correction;
};

/// Bob's atom after a heralded event, as a qubit on {gL, gR}. Applies the
/// identity or the phase flip beta -> -beta. Throws UndefinedResult for
/// non-heralding patterns.
Qubit apply_correction(BellPattern pattern, const Qubit &bob);

/// Everything the analyzer needs: the teleported qubit, the normalized
/// temporal overlap chi = <f_A|f_B> / (|f_A| |f_B|), and the probability
/// that each cavity actually delivered its photon.
struct JointState {
    Qubit qubit;
    Complex chi{1.0, 0.0};
    double emission_alice = 1.0;
    double emission_bob = 1.0;
};

/// Scalar temporal envelopes of both photons with polarization factored out.
std::vector<Complex> alice_envelope(const Qubit &qubit, const EmittedPulse &alice);
std::vector<Complex> bob_envelope(const EmittedPulse &bob);

/// Normalized overlap chi of the two envelopes.
Complex normalized_overlap(const Qubit &qubit, const EmittedPulse &alice, const EmittedPulse &bob);

JointState make_joint_state(const Qubit &qubit, const EmittedPulse &alice,
                            const EmittedPulse &bob);

/// Exact outcome statistics from enumerating the two-photon amplitude over
/// 8 modes (port x polarization x {f_A, f_A-orthogonal}).
struct BellAnalysis {
    Qubit qubit;
    /// Unconditional probability of each BellPattern.
    std::array<double, kPatternCount> pattern_probability{};
    /// Unnormalized density matrices of Bob's atom on {gL, gR} for the four
    /// heralding patterns, before correction. Trace equals the pattern
    /// probability.
    std::array<Eigen::Matrix2cd, kSuccessPatternCount> conditional_state{};
    /// Probability that the two photons land on detectors (i, j), i <= j,
    /// given that both were emitted. Upper triangle only.
    Eigen::Matrix4d detector_pair_probability = Eigen::Matrix4d::Zero();

    double success_probability() const;
    /// Fidelity of Bob's corrected state for one heralding pattern.
    double corrected_fidelity(BellPattern pattern) const;
    /// sqrt of the probability-weighted mean squared fidelity over the
    /// heralding patterns.
    double average_fidelity() const;
};

/// Throws DomainError when |chi| > 1 or an emission probability is outside
/// [0, 1].
BellAnalysis bell_analyzer(const JointState &joint);

/// P = (1/2) |f_A|^2 |f_B|^2.
double success_probability(const EmittedPulse &alice, const EmittedPulse &bob);

/// F = sqrt(|a|^4 + |b|^4 + |a b <f_A|f_B>|^2 / P). Throws UndefinedResult
/// when P == 0.
double fidelity(const Qubit &qubit, const EmittedPulse &alice, const EmittedPulse &bob);

/// The same closed form written in terms of the normalized overlap.
double fidelity_from_overlap(const Qubit &qubit, Complex chi);

/// Samples click patterns with imperfect detectors: each photon is
/// registered independently with probability eta. No dark counts.
class BellSampler {
   public:
    explicit BellSampler(const JointState &joint);

    const BellAnalysis &analysis() const { return analysis_; }
    BellOutcome sample(double eta, std::mt19937_64 &rng) const;

   private:
    BellAnalysis analysis_;
    double emission_alice_;
    double emission_bob_;
    std::vector<double> cdf_;
    std::vector<BellPattern> cdf_pattern_;
};

/// One sampled run with a fresh generator seeded by `seed`.
BellOutcome sample_run(const JointState &joint, double eta, std::uint64_t seed);

}  // namespace cavtele

#endif  // CAVTELE_MEASUREMENT_H
