// Copyright 2026 The ddprep Authors
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

#include "ddprep/markov.hpp"
#include "ddprep/models.hpp"
#include "ddprep/protocol.hpp"
#include "ddprep/resetfree.hpp"
#include "ddprep/spectra.hpp"
#include "ddprep/statevec.hpp"

using namespace ddprep;

static void BM_MeasureTerm(benchmark::State& st) {
  const auto m = build_heisenberg_chain(static_cast<std::size_t>(st.range(0)), true, st.range(0) / 2);
  Rng rng(1);
  StateVector s = m.initial_state;
  std::size_t k = 0;
  for (auto _ : st) {
    auto out = measure_term(s, m.terms[k], k, rng);
    benchmark::DoNotOptimize(out);
    k = (k + 1) % m.terms.size();
  }
  st.SetLabel("dim " + std::to_string(m.basis->size()));
}
BENCHMARK(BM_MeasureTerm)->Arg(12)->Arg(16)->Arg(20);

static void BM_TrajectoryRound(benchmark::State& st) {
  const auto m = build_heisenberg_chain(static_cast<std::size_t>(st.range(0)), true, st.range(0) / 2);
  ProtocolConfig cfg;
  cfg.max_rounds = 1;
  std::uint64_t seed = 0;
  for (auto _ : st) benchmark::DoNotOptimize(run_trajectory(m, m.initial_state, cfg, ++seed));
}
BENCHMARK(BM_TrajectoryRound)->Arg(12)->Arg(16);

static void BM_ProjectionRound(benchmark::State& st) {
  const auto m = build_fredkin(static_cast<std::size_t>(st.range(0)));
  Eigen::VectorXcd v = m.initial_state.amplitudes();
  for (auto _ : st) {
    apply_projection_round(m, v);
    v.normalize();
    benchmark::ClobberMemory();
  }
}
BENCHMARK(BM_ProjectionRound)->Arg(12)->Arg(16);

static void BM_LowestPair(benchmark::State& st) {
  const auto m = build_heisenberg_chain(static_cast<std::size_t>(st.range(0)), true, st.range(0) / 2);
  const auto h = assemble(m);
  SolverOptions opts;
  opts.force_iterative = true;
  for (auto _ : st) benchmark::DoNotOptimize(lowest_pair(h, opts));
}
BENCHMARK(BM_LowestPair)->Arg(12)->Arg(14)->Unit(benchmark::kMillisecond);

static void BM_MarkovSimulation(benchmark::State& st) {
  MarkovParams p;
  p.gap = 0.01;
  const auto kernel = sm_kernel(p, 1000);
  for (auto _ : st) benchmark::DoNotOptimize(simulate_markov(kernel, 1000, 1000, 7));
  st.SetItemsProcessed(st.iterations() * 1000 * 1000);
}
BENCHMARK(BM_MarkovSimulation)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
