// Copyright 2026 The tfim Authors
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

#include "tfim/dynamics.hpp"
#include "tfim/oracle.hpp"
#include "tfim/spectral.hpp"
#include "tfim/thermal.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace tfim;

void BM_SparseApply(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ModelParams p{n, 1.0, 0.4};
  const SparseOperator op(build_h0(p) + build_h_prime(p, {0.05, 0.1, 0.0}));
  CVector in = CVector::Ones(static_cast<Eigen::Index>(op.dimension())).normalized();
  CVector out(in.size());
  for (auto _ : state) {
    op.apply(std::span<const Complex>(in.data(), in.size()),
             std::span<Complex>(out.data(), out.size()));
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * in.size());
}
BENCHMARK(BM_SparseApply)->Arg(8)->Arg(10)->Arg(12);

void BM_ChebyshevEvolve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ModelParams p{n, 1.0, 0.4};
  const ChebyshevPropagator prop(build_h0(p) + build_h_prime(p, {0.05, 0.1, 0.0}));
  const CVector psi = StateVector::all_up(n).amplitudes();
  for (auto _ : state) benchmark::DoNotOptimize(prop.evolve(psi, 10.0));
}
BENCHMARK(BM_ChebyshevEvolve)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_SectorDiagonalize(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const OperatorSum h = build_h0({n, 1.0, 0.5});
  SectorOptions opts;
  opts.vectors_per_sector = 3;
  for (auto _ : state) benchmark::DoNotOptimize(sector_diagonalize(h, opts));
}
BENCHMARK(BM_SectorDiagonalize)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_BdgSolve(benchmark::State& state) {
  const ModelParams p{static_cast<int>(state.range(0)), 1.0, 0.7};
  for (auto _ : state) benchmark::DoNotOptimize(bdg_solve(p));
}
BENCHMARK(BM_BdgSolve)->Arg(12)->Arg(48);

void BM_UhlmannPoint(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ModelParams p{n, 1.0, 0.4};
  const Ensemble ens = build_ensemble(p, {EnsembleKind::canonical, 1.0, kDefaultSeed});
  const DensePropagator post(thermal_post_hamiltonian(p, 0.1, PostQuench::local));
  const std::vector<double> t{7.5};
  for (auto _ : state) benchmark::DoNotOptimize(uhlmann_echo(ens.rho, post, t));
}
BENCHMARK(BM_UhlmannPoint)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
