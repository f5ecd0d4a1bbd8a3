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


#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "cavtele/experiments.h"

namespace {

using namespace cavtele;

void BM_evolve_strong_alice(benchmark::State &state) {
    const Preset p = strong_coupling_preset();
    const auto s0 = alice_initial_state(p.qubit);
    const EvolveOptions opts{std::pow(10.0, -static_cast<double>(state.range(0))), 2000};
    for (auto _ : state) {
        benchmark::DoNotOptimize(evolve(s0, p.alice, p.t_end, opts));
    }
}
BENCHMARK(BM_evolve_strong_alice)->Arg(6)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_evolve_strong_bob(benchmark::State &state) {
    const Preset p = strong_coupling_preset();
    for (auto _ : state) {
        benchmark::DoNotOptimize(evolve(bob_initial_state(), p.bob, p.t_end, p.evolve));
    }
}
BENCHMARK(BM_evolve_strong_bob)->Unit(benchmark::kMillisecond);

void BM_evolve_weak_alice(benchmark::State &state) {
    const Preset p = weak_coupling_preset();
    const auto s0 = alice_initial_state(p.qubit);
    for (auto _ : state) {
        benchmark::DoNotOptimize(evolve(s0, p.alice, p.t_end, p.evolve));
    }
}
BENCHMARK(BM_evolve_weak_alice)->Unit(benchmark::kMillisecond);

void BM_bell_analyzer(benchmark::State &state) {
    const JointState joint{Qubit(0.6, Complex(0.0, 0.8)), std::polar(0.9, 0.3), 0.99, 0.98};
    for (auto _ : state) {
        benchmark::DoNotOptimize(bell_analyzer(joint));
    }
}
BENCHMARK(BM_bell_analyzer);

void BM_sample_clicks(benchmark::State &state) {
    const BellSampler sampler(JointState{Qubit::equal_superposition(), 0.95});
    std::mt19937_64 rng(1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sampler.sample(0.7, rng));
    }
}
BENCHMARK(BM_sample_clicks);

void BM_strong_sweep(benchmark::State &state) {
    const Preset p = strong_coupling_preset();
    const auto phis = uniform_phases(16);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sweep_phi_b(p, phis));
    }
}
BENCHMARK(BM_strong_sweep)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
