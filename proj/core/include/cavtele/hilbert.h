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

#ifndef CAVTELE_HILBERT_H
#define CAVTELE_HILBERT_H

#include <Eigen/Dense>
#include <complex>
#include <string>

namespace cavtele {

using Complex = std::complex<double>;

/// Tolerance used for every normalization check in the library.
inline constexpr double kNormTolerance = 1e-9;

enum class Site { kAlice, kBob };

std::string to_string(Site site);

/// Atomic levels taking part in the sender's emission. The sender's e0 level
/// is not listed: g0 <-> e0 is dipole forbidden and nothing populates it.
enum class AliceLevel { kGL, kG0, kGR, kEL, kER };

/// Atomic levels taking part in the receiver's entangling emission.
enum class BobLevel { kG0Prime, kE0, kGL, kGR };

/// |x>|nL, nR> for one site. Only kets with nL + nR <= 1 that the site
/// Hamiltonian reaches from the initial state belong to the basis.
template <class Level>
struct BasisKet {
    Level atomic;
    int n_left = 0;
    int n_right = 0;

    friend bool operator==(const BasisKet &, const BasisKet &) = default;
};

using AliceKet = BasisKet<AliceLevel>;
using BobKet = BasisKet<BobLevel>;

// Canonical basis order. Matrices, trajectories and serialized fixtures all
// use these indices.
//
//   Alice: 0 gL|00>  1 gR|00>  2 eL|00>  3 eR|00>  4 g0|10>  5 g0|01>
//   Bob:   0 g0'|00> 1 e0|00>  2 gL|01>  3 gR|10>
namespace alice {
inline constexpr int kDim = 6;
inline constexpr int kGL = 0;
inline constexpr int kGR = 1;
inline constexpr int kEL = 2;
inline constexpr int kER = 3;
inline constexpr int kG0PhotonL = 4;
inline constexpr int kG0PhotonR = 5;
}  // namespace alice

namespace bob {
inline constexpr int kDim = 4;
inline constexpr int kG0Prime = 0;
inline constexpr int kE0 = 1;
inline constexpr int kGLPhotonR = 2;
inline constexpr int kGRPhotonL = 3;
}  // namespace bob

int dimension(Site site);

/// Index of `ket` in the canonical order; throws DomainError for kets outside
/// the truncated basis (e.g. g0|11> or anything on Alice's e0).
int basis_index(const AliceKet &ket);
int basis_index(const BobKet &ket);

AliceKet alice_ket(int index);
BobKet bob_ket(int index);

/// Human readable label such as "g0|10>".
std::string ket_label(Site site, int index);

/// Normalized sender qubit alpha|gL> + beta|gR>.
class Qubit {
   public:
    /// Throws DomainError when | |alpha|^2 + |beta|^2 - 1 | > kNormTolerance.
    Qubit(Complex alpha, Complex beta);

    /// Rescales (alpha, beta) to unit norm. Throws DomainError for the zero
    /// vector.
    static Qubit normalized(Complex alpha, Complex beta);

    /// (|gL> + |gR>)/sqrt(2), the state with the lowest teleportation
    /// fidelity for a given pulse overlap.
    static Qubit equal_superposition();

    Complex alpha() const { return alpha_; }
    Complex beta() const { return beta_; }

   private:
    Complex alpha_;
    Complex beta_;
};

/// Amplitudes of one site over its canonical basis at a given time.
class SiteState {
   public:
    SiteState(Site site, Eigen::VectorXcd amplitudes, double time = 0.0);

    Site site() const { return site_; }
    const Eigen::VectorXcd &amplitudes() const { return amplitudes_; }
    Complex operator[](int index) const { return amplitudes_(index); }
    double time() const { return time_; }
    double squared_norm() const { return amplitudes_.squaredNorm(); }

   private:
    Site site_;
    Eigen::VectorXcd amplitudes_;
    double time_;
};

/// (alpha|gL> + beta|gR>)|00> at t = 0.
SiteState alice_initial_state(const Qubit &qubit);

/// |g0'>|00> at t = 0.
SiteState bob_initial_state();

}  // namespace cavtele

#endif  // CAVTELE_HILBERT_H
