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

#include "cavtele/hilbert.h"

#include <array>
#include <cmath>

#include "cavtele/errors.h"

namespace cavtele {

namespace {

constexpr std::array<AliceKet, alice::kDim> kAliceBasis{{
    {AliceLevel::kGL, 0, 0},
    {AliceLevel::kGR, 0, 0},
    {AliceLevel::kEL, 0, 0},
    {AliceLevel::kER, 0, 0},
    {AliceLevel::kG0, 1, 0},
    {AliceLevel::kG0, 0, 1},
}};

constexpr std::array<BobKet, bob::kDim> kBobBasis{{
    {BobLevel::kG0Prime, 0, 0},
    {BobLevel::kE0, 0, 0},
    {BobLevel::kGL, 0, 1},
    {BobLevel::kGR, 1, 0},
}};

constexpr std::array<const char *, alice::kDim> kAliceLabels{
    "gL|00>", "gR|00>", "eL|00>", "eR|00>", "g0|10>", "g0|01>"};
constexpr std::array<const char *, bob::kDim> kBobLabels{"g0'|00>", "e0|00>", "gL|01>",
                                                         "gR|10>"};

template <class Ket, std::size_t N>
int find_index(const std::array<Ket, N> &basis, const Ket &ket, const char *site) {
    for (std::size_t i = 0; i < N; ++i) {
        if (basis[i] == ket) {
            return static_cast<int>(i);
        }
    }
    throw DomainError(std::string("ket is outside the truncated ") + site + " basis (nL=" +
                      std::to_string(ket.n_left) + ", nR=" + std::to_string(ket.n_right) + ")");
}

void check_index(int index, int dim) {
    if (index < 0 || index >= dim) {
        throw DomainError("basis index " + std::to_string(index) + " out of range [0, " +
                          std::to_string(dim) + ")");
    }
}

}  // namespace

std::string to_string(Site site) { return site == Site::kAlice ? "alice" : "bob"; }

int dimension(Site site) { return site == Site::kAlice ? alice::kDim : bob::kDim; }

int basis_index(const AliceKet &ket) { return find_index(kAliceBasis, ket, "alice"); }

int basis_index(const BobKet &ket) { return find_index(kBobBasis, ket, "bob"); }

AliceKet alice_ket(int index) {
    check_index(index, alice::kDim);
    return kAliceBasis[index];
}

BobKet bob_ket(int index) {
    check_index(index, bob::kDim);
    return kBobBasis[index];
}

std::string ket_label(Site site, int index) {
    check_index(index, dimension(site));
    return site == Site::kAlice ? kAliceLabels[index] : kBobLabels[index];
}

Qubit::Qubit(Complex alpha, Complex beta) : alpha_(alpha), beta_(beta) {
    double n = std::norm(alpha) + std::norm(beta);
    if (!(std::abs(n - 1.0) <= kNormTolerance)) {
        throw DomainError("qubit is not normalized: |alpha|^2 + |beta|^2 = " + std::to_string(n));
    }
}

Qubit Qubit::normalized(Complex alpha, Complex beta) {
    double n = std::sqrt(std::norm(alpha) + std::norm(beta));
    if (n == 0.0) {
        throw DomainError("cannot normalize the zero qubit");
    }
    return Qubit(alpha / n, beta / n);
}

Qubit Qubit::equal_superposition() {
    const double s = 1.0 / std::sqrt(2.0);
    return Qubit(s, s);
}

SiteState::SiteState(Site site, Eigen::VectorXcd amplitudes, double time)
    : site_(site), amplitudes_(std::move(amplitudes)), time_(time) {
    if (amplitudes_.size() != dimension(site_)) {
        throw DomainError("state vector has dimension " + std::to_string(amplitudes_.size()) +
                          ", " + to_string(site_) + " basis has " +
                          std::to_string(dimension(site_)));
    }
}

SiteState alice_initial_state(const Qubit &qubit) {
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(alice::kDim);
    psi(alice::kGL) = qubit.alpha();
    psi(alice::kGR) = qubit.beta();
    return SiteState(Site::kAlice, std::move(psi), 0.0);
}

SiteState bob_initial_state() {
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(bob::kDim);
    psi(bob::kG0Prime) = 1.0;
    return SiteState(Site::kBob, std::move(psi), 0.0);
}

}  // namespace cavtele
