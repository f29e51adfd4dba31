// Copyright 2026 The twomatch Authors
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

// Serial reference against the OpenMP kernels on an in-core allocation, so
// every pair and every block is visited.

#include <benchmark/benchmark.h>
#include <omp.h>

#include "twomatch/extform.hpp"
#include "twomatch/matching.hpp"
#include "twomatch/model.hpp"
#include "twomatch/separation.hpp"

namespace {

using twomatch::Allocation;
using twomatch::Instance;
using twomatch::Rational;

// Half of each matched edge's weight to each endpoint: in the core when the
// core is nonempty for bipartite-like instances, and a full scan otherwise.
Allocation split_allocation(const Instance& inst) {
  Allocation p = Allocation::zeros(inst.n());
  const auto m = twomatch::max_weight_b_matching(inst);
  for (auto e : m.edges) {
    const Rational half = inst.weight(e) / Rational(2);
    p[inst.edge(e).u] += half;
    p[inst.edge(e).v] += half;
  }
  return p;
}

Instance bench_instance(int n) {
  return twomatch::random_instance(7, n, Rational(1, 2), 10);
}

void BM_SeparatePathsSerial(benchmark::State& state) {
  const Instance inst = bench_instance(static_cast<int>(state.range(0)));
  const Allocation p = split_allocation(inst);
  for (auto _ : state) {
    benchmark::DoNotOptimize(twomatch::separate_paths_serial(inst, p));
  }
}

void BM_SeparatePathsParallel(benchmark::State& state) {
  const Instance inst = bench_instance(static_cast<int>(state.range(0)));
  const Allocation p = split_allocation(inst);
  const int jobs = std::max(2, omp_get_max_threads());
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        twomatch::separate_paths(inst, p, twomatch::SeparationOptions{jobs}));
  }
}

void BM_MembershipSerial(benchmark::State& state) {
  const Instance inst = bench_instance(static_cast<int>(state.range(0)));
  const Allocation p = split_allocation(inst);
  for (auto _ : state) {
    benchmark::DoNotOptimize(twomatch::check_membership(inst, p, 1));
  }
}

void BM_MembershipParallel(benchmark::State& state) {
  const Instance inst = bench_instance(static_cast<int>(state.range(0)));
  const Allocation p = split_allocation(inst);
  const int jobs = std::max(2, omp_get_max_threads());
  for (auto _ : state) {
    benchmark::DoNotOptimize(twomatch::check_membership(inst, p, jobs));
  }
}

BENCHMARK(BM_SeparatePathsSerial)->Arg(8)->Arg(12)->Arg(16);
BENCHMARK(BM_SeparatePathsParallel)->Arg(8)->Arg(12)->Arg(16);
BENCHMARK(BM_MembershipSerial)->Arg(5)->Arg(6);
BENCHMARK(BM_MembershipParallel)->Arg(5)->Arg(6);

}  // namespace

BENCHMARK_MAIN();
