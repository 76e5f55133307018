// SPDX-License-Identifier: Apache-2.0
//
// massivese - spectral efficiency optimization for multi-cell massive MIMO
// Copyright (C) 2026 The massivese authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// Serial reference against the OpenMP path for each parallel kernel. The
// second benchmark argument selects the thread count (0 = serial path).

#include "massivese/exec.hpp"
#include "massivese/mc_oracle.hpp"
#include "massivese/moments.hpp"
#include "massivese/optimizer.hpp"

#include <benchmark/benchmark.h>

#include <numeric>

using namespace massivese;

namespace
{
Exec setup(const benchmark::State &state)
{
    const int threads = static_cast<int>(state.range(0));
    if (threads == 0)
        return Exec::serial;
    set_threads(threads);
    return Exec::parallel;
}

void thread_args(benchmark::internal::Benchmark *b)
{
    b->Arg(0);
    for (int t = 1; t <= std::max(1, max_threads()); t *= 2)
        b->Arg(t);
    b->ArgName("threads")->Unit(benchmark::kMillisecond)->UseRealTime();
}

void BM_moments_average(benchmark::State &state)
{
    const Exec exec = setup(state);
    const HexNetwork net(3);
    for (auto _ : state)
        benchmark::DoNotOptimize(compute_moments_average(net, 20000, 1, exec));
}
BENCHMARK(BM_moments_average)->Apply(thread_args);

void BM_sweep(benchmark::State &state)
{
    const Exec exec = setup(state);
    const HexNetwork net(3);
    const ReuseCatalog cat(net, compute_moments_average(net, 5000, 1, Exec::serial));
    SweepSpec spec;
    spec.m_values = log_m_grid(10, 1e6, 20);
    for (auto _ : state)
        benchmark::DoNotOptimize(sweep(spec, cat, exec));
}
BENCHMARK(BM_sweep)->Apply(thread_args);

McScenario bench_scenario()
{
    const HexNetwork net(2);
    SeConfig cfg;
    cfg.M = 100;
    cfg.K = 10;
    cfg.beta = 3;
    Engine rng = make_stream(1, streams::positions);
    return sample_scenario(net, make_pilot_plan(3, net, 10), cfg, rng);
}

void BM_antenna_expectations(benchmark::State &state)
{
    const Exec exec = setup(state);
    const McScenario sc = bench_scenario();
    const std::size_t bs0[] = {0};
    for (auto _ : state)
        benchmark::DoNotOptimize(estimate_expectations(Scheme::zf, sc, bs0, 512, 1, exec));
}
BENCHMARK(BM_antenna_expectations)->Apply(thread_args);

void BM_gram_expectations(benchmark::State &state)
{
    const Exec exec = setup(state);
    const McScenario sc = bench_scenario();
    const std::vector<Scheme> schemes(all_schemes.begin(), all_schemes.end());
    for (auto _ : state)
        benchmark::DoNotOptimize(gram_expectations(sc, schemes, 2048, 1, exec));
}
BENCHMARK(BM_gram_expectations)->Apply(thread_args);
} // namespace

BENCHMARK_MAIN();
