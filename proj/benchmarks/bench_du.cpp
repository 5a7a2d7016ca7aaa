// Copyright 2026 The qdu Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "qdu/du.hpp"
#include "qdu/fidelity.hpp"

namespace {

using namespace qdu;

void BM_HaarUnitary(benchmark::State& state) {
  Rng rng(1);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(haar_unitary(n, rng));
}
BENCHMARK(BM_HaarUnitary)->Arg(2)->Arg(4)->Arg(8);

void BM_RandomChannel(benchmark::State& state) {
  Rng rng(2);
  const int d = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(random_channel(2, d, rng));
}
BENCHMARK(BM_RandomChannel)->Arg(2)->Arg(4);

void BM_Canonicalize(benchmark::State& state) {
  Rng rng(3);
  const KrausChannel ch = random_channel(static_cast<int>(state.range(0)), 4, rng);
  for (auto _ : state) benchmark::DoNotOptimize(canonicalize(ch));
}
BENCHMARK(BM_Canonicalize)->Arg(2)->Arg(4);

void BM_Bounds(benchmark::State& state) {
  Rng rng(4);
  const CanonicalKraus ck = canonicalize(random_channel(2, static_cast<int>(state.range(0)), rng));
  for (auto _ : state) benchmark::DoNotOptimize(du_bounds(ck));
}
BENCHMARK(BM_Bounds)->Arg(2)->Arg(4);

void BM_Optimize(benchmark::State& state) {
  Rng rng(5);
  const KrausChannel ch = random_channel(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(du_optimize(ch, 32, rng));
}
BENCHMARK(BM_Optimize)->Args({2, 2})->Args({2, 4})->Args({3, 3})->Args({4, 4});

void BM_Dispatcher(benchmark::State& state) {
  Rng rng(6);
  const KrausChannel ch = random_channel(2, static_cast<int>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(du(ch));
}
BENCHMARK(BM_Dispatcher)->Arg(2)->Arg(4);

void BM_ExactMixedUnitary(benchmark::State& state) {
  Rng rng(7);
  const KrausChannel ch = random_mixed_unitary(2, 4, rng);
  for (auto _ : state) benchmark::DoNotOptimize(du(ch));
}
BENCHMARK(BM_ExactMixedUnitary);

void BM_ProcessFidelity(benchmark::State& state) {
  Rng rng(8);
  const KrausChannel ch = random_channel(2, 4, rng);
  const UnitaryMatrix u = haar_unitary(2, rng);
  for (auto _ : state) benchmark::DoNotOptimize(process_fidelity(ch, u));
}
BENCHMARK(BM_ProcessFidelity);

}  // namespace

BENCHMARK_MAIN();
