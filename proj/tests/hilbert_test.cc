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

#include <cmath>

#include "gtest/gtest.h"

#include "cavtele/errors.h"

using namespace cavtele;

TEST(Hilbert, dimensions) {
    EXPECT_EQ(dimension(Site::kAlice), 6);
    EXPECT_EQ(dimension(Site::kBob), 4);
}

TEST(Hilbert, canonical_order) {
    EXPECT_EQ(basis_index(AliceKet{AliceLevel::kGL, 0, 0}), 0);
    EXPECT_EQ(basis_index(AliceKet{AliceLevel::kGR, 0, 0}), 1);
    EXPECT_EQ(basis_index(AliceKet{AliceLevel::kEL, 0, 0}), 2);
    EXPECT_EQ(basis_index(AliceKet{AliceLevel::kER, 0, 0}), 3);
    EXPECT_EQ(basis_index(AliceKet{AliceLevel::kG0, 1, 0}), 4);
    EXPECT_EQ(basis_index(AliceKet{AliceLevel::kG0, 0, 1}), 5);
    EXPECT_EQ(basis_index(BobKet{BobLevel::kG0Prime, 0, 0}), 0);
    EXPECT_EQ(basis_index(BobKet{BobLevel::kE0, 0, 0}), 1);
    EXPECT_EQ(basis_index(BobKet{BobLevel::kGL, 0, 1}), 2);
    EXPECT_EQ(basis_index(BobKet{BobLevel::kGR, 1, 0}), 3);
}

TEST(Hilbert, out_of_basis_kets_rejected) {
    EXPECT_THROW(basis_index(AliceKet{AliceLevel::kG0, 1, 1}), DomainError);
    EXPECT_THROW(basis_index(AliceKet{AliceLevel::kG0, 0, 0}), DomainError);
    EXPECT_THROW(basis_index(AliceKet{AliceLevel::kGL, 1, 0}), DomainError);
    EXPECT_THROW(basis_index(BobKet{BobLevel::kGL, 1, 0}), DomainError);
    EXPECT_THROW(basis_index(BobKet{BobLevel::kE0, 0, 1}), DomainError);
    EXPECT_THROW(alice_ket(6), DomainError);
    EXPECT_THROW(bob_ket(-1), DomainError);
}

TEST(Hilbert, index_round_trip) {
    for (int i = 0; i < alice::kDim; ++i) {
        EXPECT_EQ(basis_index(alice_ket(i)), i);
        EXPECT_FALSE(ket_label(Site::kAlice, i).empty());
    }
    for (int i = 0; i < bob::kDim; ++i) {
        EXPECT_EQ(basis_index(bob_ket(i)), i);
    }
}

TEST(Hilbert, alice_initial_state) {
    auto s = alice_initial_state(Qubit(1.0, 0.0));
    EXPECT_EQ(s.site(), Site::kAlice);
    EXPECT_EQ(s[alice::kGL], Complex(1.0));
    EXPECT_DOUBLE_EQ(s.squared_norm(), 1.0);

    const double r = 1.0 / std::sqrt(2.0);
    s = alice_initial_state(Qubit(r, r));
    EXPECT_EQ(s[alice::kGL], s[alice::kGR]);

    s = alice_initial_state(Qubit(0.6, Complex(0.0, 0.8)));
    EXPECT_EQ(s[alice::kGL], Complex(0.6));
    EXPECT_EQ(s[alice::kGR], Complex(0.0, 0.8));
    EXPECT_NEAR(s.squared_norm(), 1.0, 1e-15);
    for (int i = 2; i < alice::kDim; ++i) EXPECT_EQ(s[i], Complex(0.0));
}

TEST(Hilbert, bob_initial_state) {
    const auto s = bob_initial_state();
    EXPECT_EQ(s[bob::kG0Prime], Complex(1.0));
    EXPECT_EQ(s[bob::kGLPhotonR], Complex(0.0));
    EXPECT_DOUBLE_EQ(s.squared_norm(), 1.0);
}

TEST(Hilbert, qubit_normalization) {
    EXPECT_THROW(Qubit(1.0, 1.0), DomainError);
    EXPECT_THROW(Qubit(0.0, 0.0), DomainError);
    EXPECT_NO_THROW(Qubit(1.0 + 2e-10, 0.0));
    EXPECT_THROW(Qubit(1.0 + 1e-9, 0.0), DomainError);
    EXPECT_THROW(Qubit::normalized(0.0, 0.0), DomainError);
    const auto q = Qubit::normalized(3.0, 4.0);
    EXPECT_DOUBLE_EQ(q.alpha().real(), 0.6);
    EXPECT_DOUBLE_EQ(q.beta().real(), 0.8);
}

TEST(Hilbert, site_state_dimension_checked) {
    EXPECT_THROW(SiteState(Site::kBob, Eigen::VectorXcd::Zero(6)), DomainError);
    EXPECT_NO_THROW(SiteState(Site::kAlice, Eigen::VectorXcd::Zero(6)));
}
