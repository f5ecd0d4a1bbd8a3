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

#include <algorithm>
#include <cmath>

#include "cavtele/errors.h"

namespace cavtele {

PolarizationWeights alice_polarization(const Qubit &qubit) {
    return {qubit.alpha(), qubit.beta()};
}

PolarizationWeights bob_polarization() {
    const double s = 1.0 / std::sqrt(2.0);
    return {s, s};
}

EmittedPulse::EmittedPulse(Site site, std::vector<double> times, std::vector<Complex> amp_left,
                           std::vector<Complex> amp_right)
    : site_(site),
      times_(std::move(times)),
      amp_left_(std::move(amp_left)),
      amp_right_(std::move(amp_right)) {
    if (amp_left_.size() != times_.size() || amp_right_.size() != times_.size()) {
        throw DomainError("pulse amplitude arrays must match the time grid length");
    }
}

std::vector<double> EmittedPulse::flux() const {
    std::vector<double> out(times_.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = std::norm(amp_left_[i]) + std::norm(amp_right_[i]);
    }
    return out;
}

double EmittedPulse::squared_norm() const {
    auto f = flux();
    return quadrature::simpson(times_, f);
}

std::vector<Complex> EmittedPulse::temporal_mode(PolarizationWeights w) const {
    std::vector<Complex> out(times_.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = std::conj(w.left) * amp_left_[i] + std::conj(w.right) * amp_right_[i];
    }
    return out;
}

EmittedPulse EmittedPulse::with_phase(Complex phase) const {
    auto l = amp_left_;
    auto r = amp_right_;
    for (auto &a : l) a *= phase;
    for (auto &a : r) a *= phase;
    return EmittedPulse(site_, times_, std::move(l), std::move(r));
}

namespace quadrature {

std::vector<double> uniform_grid(double t0, double t1, int intervals) {
    if (intervals < 1) {
        throw DomainError("grid needs at least one interval");
    }
    std::vector<double> t(static_cast<std::size_t>(intervals) + 1);
    const double h = (t1 - t0) / intervals;
    for (int i = 0; i <= intervals; ++i) {
        t[i] = t0 + h * i;
    }
    t.back() = t1;
    return t;
}

namespace {

template <class T>
T simpson_impl(std::span<const double> t, std::span<const T> f) {
    if (t.size() != f.size()) {
        throw DomainError("quadrature: abscissa and ordinate lengths differ");
    }
    const std::size_t n = t.size();
    if (n < 2) {
        return T{};
    }
    if (n == 2) {
        return 0.5 * (t[1] - t[0]) * (f[0] + f[1]);
    }
    const std::size_t intervals = n - 1;
    const std::size_t paired = intervals - intervals % 2;
    T sum{};
    for (std::size_t i = 0; i + 2 <= paired; i += 2) {
        const double h0 = t[i + 1] - t[i];
        const double h1 = t[i + 2] - t[i + 1];
        const double hs = h0 + h1;
        sum += hs / 6.0 *
               ((2.0 - h1 / h0) * f[i] + hs * hs / (h0 * h1) * f[i + 1] + (2.0 - h0 / h1) * f[i + 2]);
    }
    if (paired != intervals) {
        // Quadratic through the last three samples, integrated over the last
        // interval only.
        const std::size_t k = n - 1;
        const double h0 = t[k - 1] - t[k - 2];
        const double h1 = t[k] - t[k - 1];
        const double w0 = -h1 * h1 * h1 / (6.0 * h0 * (h0 + h1));
        const double w1 = h1 * h1 / (6.0 * h0) + 0.5 * h1;
        const double w2 = (h1 * h1 / 3.0 + 0.5 * h0 * h1) / (h0 + h1);
        sum += w0 * f[k - 2] + w1 * f[k - 1] + w2 * f[k];
    }
    return sum;
}

}  // namespace

double simpson(std::span<const double> t, std::span<const double> f) {
    return simpson_impl<double>(t, f);
}

Complex simpson(std::span<const double> t, std::span<const Complex> f) {
    return simpson_impl<Complex>(t, f);
}

std::vector<double> cumulative_trapezoid(std::span<const double> t, std::span<const double> f) {
    if (t.size() != f.size()) {
        throw DomainError("quadrature: abscissa and ordinate lengths differ");
    }
    std::vector<double> out(t.size(), 0.0);
    for (std::size_t i = 1; i < t.size(); ++i) {
        out[i] = out[i - 1] + 0.5 * (t[i] - t[i - 1]) * (f[i] + f[i - 1]);
    }
    return out;
}

std::vector<Complex> interpolate_linear(std::span<const double> t_src,
                                        std::span<const Complex> f,
                                        std::span<const double> t_dst) {
    if (t_src.size() != f.size()) {
        throw DomainError("interpolation: abscissa and ordinate lengths differ");
    }
    std::vector<Complex> out(t_dst.size(), Complex{});
    if (t_src.empty()) {
        return out;
    }
    for (std::size_t i = 0; i < t_dst.size(); ++i) {
        const double x = t_dst[i];
        if (x < t_src.front() || x > t_src.back()) {
            continue;
        }
        auto it = std::upper_bound(t_src.begin(), t_src.end(), x);
        if (it == t_src.end()) {
            out[i] = f.back();
            continue;
        }
        const std::size_t j = static_cast<std::size_t>(it - t_src.begin());
        const double h = t_src[j] - t_src[j - 1];
        const double w = h > 0.0 ? (x - t_src[j - 1]) / h : 0.0;
        out[i] = (1.0 - w) * f[j - 1] + w * f[j];
    }
    return out;
}

}  // namespace quadrature

Complex overlap_integral(std::span<const double> t_a, std::span<const Complex> f_a,
                         std::span<const double> t_b, std::span<const Complex> f_b) {
    std::vector<Complex> b_on_a;
    std::span<const Complex> b = f_b;
    if (!std::equal(t_a.begin(), t_a.end(), t_b.begin(), t_b.end())) {
        b_on_a = quadrature::interpolate_linear(t_b, f_b, t_a);
        b = b_on_a;
    }
    std::vector<Complex> integrand(t_a.size());
    for (std::size_t i = 0; i < integrand.size(); ++i) {
        integrand[i] = std::conj(f_a[i]) * b[i];
    }
    return quadrature::simpson(t_a, std::span<const Complex>(integrand));
}

}  // namespace cavtele
