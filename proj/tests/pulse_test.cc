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


#include "cavtele/pulse.h"

#include <cmath>
#include <numbers>

#include "gtest/gtest.h"

#include "cavtele/errors.h"

using namespace cavtele;

namespace {

std::vector<double> sample(const std::vector<double> &t, double (*f)(double)) {
    std::vector<double> out;
    for (double x : t) out.push_back(f(x));
    return out;
}

}  // namespace

TEST(Quadrature, uniform_grid) {
    const auto t = quadrature::uniform_grid(1.0, 3.0, 4);
    ASSERT_EQ(t.size(), 5u);
    EXPECT_EQ(t.front(), 1.0);
    EXPECT_EQ(t.back(), 3.0);
    EXPECT_DOUBLE_EQ(t[2], 2.0);
}

TEST(Quadrature, simpson_exactness) {
    // Even interval counts integrate cubics exactly; the odd-count end
    // correction is exact for quadratics.
    for (int n : {2, 4, 10}) {
        const auto t = quadrature::uniform_grid(0.0, 2.0, n);
        const auto f = sample(t, [](double x) { return x * x * x - 2 * x + 1; });
        EXPECT_NEAR(quadrature::simpson(t, f), 2.0, 1e-13) << n;
    }
    for (int n : {3, 7, 11}) {
        const auto t = quadrature::uniform_grid(0.0, 2.0, n);
        const auto f = sample(t, [](double x) { return 3 * x * x - 2 * x + 1; });
        EXPECT_NEAR(quadrature::simpson(t, f), 8.0 - 4.0 + 2.0, 1e-13) << n;
    }
}

TEST(Quadrature, simpson_odd_count_converges) {
    double last = 1.0;
    for (int n : {11, 21, 41}) {
        const auto t = quadrature::uniform_grid(0.0, std::numbers::pi, n);
        const auto f = sample(t, [](double x) { return std::sin(x); });
        const double err = std::abs(quadrature::simpson(t, f) - 2.0);
        EXPECT_LT(err, last / 8) << n;
        last = err;
    }
}

TEST(Quadrature, simpson_nonuniform_grid) {
    std::vector<double> t{0.0, 0.1, 0.35, 0.4, 0.8, 1.0};
    const auto f = sample(t, [](double x) { return x * x; });
    EXPECT_NEAR(quadrature::simpson(t, f), 1.0 / 3.0, 1e-13);
}

TEST(Quadrature, simpson_converges_on_smooth_function) {
    const auto t = quadrature::uniform_grid(0.0, std::numbers::pi, 201);
    const auto f = sample(t, [](double x) { return std::sin(x); });
    EXPECT_NEAR(quadrature::simpson(t, f), 2.0, 1e-8);
}

TEST(Quadrature, cumulative_trapezoid) {
    const auto t = quadrature::uniform_grid(0.0, 1.0, 4);
    const auto f = sample(t, [](double x) { return 2 * x; });
    const auto c = quadrature::cumulative_trapezoid(t, f);
    ASSERT_EQ(c.size(), t.size());
    EXPECT_EQ(c[0], 0.0);
    for (std::size_t i = 0; i < t.size(); ++i) EXPECT_NEAR(c[i], t[i] * t[i], 1e-15);
}

TEST(Quadrature, interpolate_linear) {
    std::vector<double> src{0.0, 1.0, 2.0};
    std::vector<Complex> f{0.0, Complex(2.0, 1.0), 4.0};
    std::vector<double> dst{-1.0, 0.5, 1.5, 2.0, 3.0};
    const auto g = quadrature::interpolate_linear(src, f, dst);
    EXPECT_EQ(g[0], Complex(0.0));
    EXPECT_NEAR(std::abs(g[1] - Complex(1.0, 0.5)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(g[2] - Complex(3.0, 0.5)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(g[3] - Complex(4.0)), 0.0, 1e-15);
    EXPECT_EQ(g[4], Complex(0.0));
}

TEST(Pulse, norm_flux_and_temporal_mode) {
    const double kappa = 2.0;
    const auto t = quadrature::uniform_grid(0.0, 20.0, 4000);
    std::vector<Complex> left, right;
    for (double x : t) {
        const double f = std::sqrt(kappa) * std::exp(-kappa * x / 2);
        left.push_back(0.6 * f);
        right.push_back(Complex(0.0, 0.8) * f);
    }
    EmittedPulse p(Site::kAlice, t, left, right);
    EXPECT_NEAR(p.squared_norm(), 1.0, 1e-9);
    EXPECT_NEAR(p.flux()[0], kappa, 1e-14);

    const auto mode = p.temporal_mode({0.6, Complex(0.0, 0.8)});
    EXPECT_NEAR(std::abs(mode[0] - std::sqrt(kappa)), 0.0, 1e-14);
    const auto orth = p.temporal_mode({Complex(0.0, 0.8), 0.6});
    EXPECT_NEAR(std::abs(orth[10]), 0.0, 1e-14);

    const auto q = p.with_phase(std::polar(1.0, 0.3));
    EXPECT_NEAR(q.squared_norm(), p.squared_norm(), 1e-15);
}

TEST(Pulse, mismatched_lengths_rejected) {
    EXPECT_THROW(EmittedPulse(Site::kBob, {0.0, 1.0}, {0.0}, {0.0, 0.0}), DomainError);
}

TEST(Pulse, overlap_integral_same_and_shifted_grids) {
    const auto ta = quadrature::uniform_grid(-10.0, 10.0, 2000);
    std::vector<Complex> fa;
    for (double x : ta) fa.push_back(std::exp(-x * x / 2));
    // <f|f> = sqrt(pi)
    EXPECT_NEAR(std::abs(overlap_integral(ta, fa, ta, fa) - std::sqrt(std::numbers::pi)), 0.0,
                1e-10);

    const auto tb = quadrature::uniform_grid(-12.0, 8.0, 3001);
    std::vector<Complex> fb;
    for (double x : tb) fb.push_back(std::exp(-(x - 1) * (x - 1) / 2) * std::polar(1.0, 0.4));
    // Gaussians displaced by 1: sqrt(pi) e^{-1/4}
    const Complex expected = std::sqrt(std::numbers::pi) * std::exp(-0.25) * std::polar(1.0, 0.4);
    EXPECT_NEAR(std::abs(overlap_integral(ta, fa, tb, fb) - expected), 0.0, 1e-5);
}

TEST(Pulse, polarization_weights) {
    const Qubit q(0.6, Complex(0.0, 0.8));
    const auto w = alice_polarization(q);
    EXPECT_EQ(w.left, q.alpha());
    EXPECT_EQ(w.right, q.beta());
    const auto b = bob_polarization();
    EXPECT_NEAR(std::norm(b.left) + std::norm(b.right), 1.0, 1e-15);
}
