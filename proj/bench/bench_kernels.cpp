// SPDX-License-Identifier: Apache-2.0
//
// chansim - statistical radio channel simulation for positioning evaluation
// Copyright (C) 2026 The chansim authors
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
#include <benchmark/benchmark.h>

#include "chansim/harness.hpp"

using namespace chansim;

namespace
{

Cir random_cir(int clusters)
{
    RandomStream r(21);
    Cir cir;
    cir.clusters.push_back({0.0, 1.0, 0.0, Origin::Los, BuilderTag::None});
    for (int n = 1; n < clusters; ++n)
        cir.clusters.push_back({300e-9 * r.uniform_open_closed(), r.uniform_open_closed(), r.uniform_phase(),
                                Origin::Statistical, BuilderTag::LC});
    sort_by_delay(cir.clusters);
    return cir;
}

void BM_BandlimitedCir(benchmark::State &state)
{
    const auto cir = random_cir(static_cast<int>(state.range(0)));
    SignalParams p;
    for (auto _ : state)
        benchmark::DoNotOptimize(bandlimited_cir(cir, p));
}
BENCHMARK(BM_BandlimitedCir)->Arg(1)->Arg(25)->Arg(50);

void BM_BandlimitedCirReference(benchmark::State &state)
{
    const auto cir = random_cir(static_cast<int>(state.range(0)));
    SignalParams p;
    for (auto _ : state)
        benchmark::DoNotOptimize(bandlimited_cir_reference(cir, p));
}
BENCHMARK(BM_BandlimitedCirReference)->Arg(1)->Arg(25)->Arg(50);

void run_drops_bench(benchmark::State &state, Execution exec)
{
    SimConfig cfg = config_from_text("");
    cfg.num_drops = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(run_drops(cfg, CombinerMode::TwoBuilderGR_104_66, exec));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_RunDropsSerial(benchmark::State &state) { run_drops_bench(state, Execution::Serial); }
void BM_RunDropsParallel(benchmark::State &state) { run_drops_bench(state, Execution::Parallel); }
BENCHMARK(BM_RunDropsSerial)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RunDropsParallel)->Arg(256)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
