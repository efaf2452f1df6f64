#include <benchmark/benchmark.h>

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sketchlab/fourier.hpp"
#include "sketchlab/forest.hpp"
#include "sketchlab/pipeline.hpp"
#include "sketchlab/prune.hpp"
#include "sketchlab/profile.hpp"
#include "sketchlab/rng.hpp"
#include "sketchlab/set_query.hpp"
#include "sketchlab/signal_gen.hpp"
#include "sketchlab/tail_estimation.hpp"

namespace {

using namespace sketchlab;

GeneratedSignal bench_signal(std::size_t n, std::size_t k, double noise) {
  SignalSpec spec;
  spec.generator = "spikes";
  spec.n = n;
  spec.k = k;
  spec.magnitude = 10.0;
  spec.noise = noise;
  return generate_signal(spec, 42);
}

void BM_TailSketchBuild(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const GeneratedSignal sig = bench_signal(n, 8, 0.01);
  const ConstantProfile prof;
  for (auto _ : state) {
    auto sk = tail_sketch_build(sig.x, 8, 2.0, 0.01, prof, 7);
    benchmark::DoNotOptimize(sk.y.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(n));
}
BENCHMARK(BM_TailSketchBuild)->Arg(1 << 12)->Arg(1 << 14)->Arg(1 << 16);

void BM_ForestSketchBuild(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const GeneratedSignal sig = bench_signal(n, 4, 0.01);
  const ConstantProfile prof;
  const ForestGeometry geom = forest_geometry(n, 4, 0.25, prof);
  for (auto _ : state) {
    auto sk = forest_sketch_build(sig.x, geom, prof, 7);
    benchmark::DoNotOptimize(sk.y.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(n));
}
BENCHMARK(BM_ForestSketchBuild)->Arg(1 << 12)->Arg(1 << 14);

void BM_ForestDecode(benchmark::State& state) {
  const std::size_t n = 1 << 14;
  const GeneratedSignal sig = bench_signal(n, 4, 0.01);
  const ConstantProfile prof;
  const ForestGeometry geom = forest_geometry(n, 4, 0.25, prof);
  const ForestSketch sk = forest_sketch_build(sig.x, geom, prof, 7);
  const double V = 0.25 * tail_estimate(
      tail_sketch_build(sig.x, 4, 2.0, 0.01, prof, 11));
  for (auto _ : state) {
    auto L = forest_decode(sk, V, prof);
    benchmark::DoNotOptimize(L.data());
  }
}
BENCHMARK(BM_ForestDecode);

void BM_PruneSketchBuild(benchmark::State& state) {
  const std::size_t n = 1 << 14;
  const GeneratedSignal sig = bench_signal(n, 8, 0.01);
  const ConstantProfile prof;
  for (auto _ : state) {
    auto sk = prune_sketch_build(sig.x, 8, 0.25, prof, 7);
    benchmark::DoNotOptimize(sk.y.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(n));
}
BENCHMARK(BM_PruneSketchBuild);

void BM_SetQueryUpdate(benchmark::State& state) {
  const std::size_t n = 1 << 16;
  const ConstantProfile prof;
  SetQuerySketch sk = sq_create(n, 64, 0.25, prof, 7);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sq_update(sk, i, 1.0));
    benchmark::DoNotOptimize(sq_update(sk, i, -1.0));
    i = (i + 97) % n;
  }
  state.SetItemsProcessed(2 * static_cast<std::int64_t>(state.iterations()));
}
BENCHMARK(BM_SetQueryUpdate);

void BM_SetQueryQuery(benchmark::State& state) {
  const std::size_t n = 1 << 16;
  const std::size_t k = 64;
  const ConstantProfile prof;
  const GeneratedSignal sig = bench_signal(n, k, 0.0);
  SetQuerySketch sk = sq_create(n, k, 0.25, prof, 7);
  for (std::size_t i = 0; i < n; ++i)
    if (sig.x[i] != 0.0) sq_update(sk, i, sig.x[i]);
  for (auto _ : state) {
    auto approx = sq_query(sk, sig.support);
    benchmark::DoNotOptimize(approx.entries.data());
  }
}
BENCHMARK(BM_SetQueryQuery);

void BM_Dft(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  SignalSpec spec;
  spec.generator = "tones";
  spec.n = n;
  spec.k = 4;
  spec.noise = 0.1;
  const GeneratedSignal sig = generate_signal(spec, 42);
  for (auto _ : state) {
    auto xhat = dft(sig.xc);
    benchmark::DoNotOptimize(xhat.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(n));
}
BENCHMARK(BM_Dft)->Arg(1 << 10)->Arg(1 << 12)->Arg(1 << 14);

void BM_BuildFilter(benchmark::State& state) {
  const std::size_t n = 1 << 12;
  for (auto _ : state) {
    auto filt = build_filter(n, 64, 1e-6, 0.25);
    benchmark::DoNotOptimize(filt.g.data());
  }
}
BENCHMARK(BM_BuildFilter);

void BM_HashToBins(benchmark::State& state) {
  const std::size_t n = 1 << 12;
  SignalSpec spec;
  spec.generator = "tones";
  spec.n = n;
  spec.k = 8;
  spec.noise = 0.1;
  const GeneratedSignal sig = generate_signal(spec, 42);
  const FlatFilter filt = build_filter(n, 64, 1e-6, 0.25);
  const CounterRng rng{derive_seed(7, "bench-perm")};
  const SpectrumPermutation perm = SpectrumPermutation::sample(rng, 0, n);
  SparseSpectrum zhat;
  zhat.n = n;
  for (auto _ : state) {
    auto u = hash_to_bins(sig.xc, zhat, perm, filt);
    benchmark::DoNotOptimize(u.data());
  }
}
BENCHMARK(BM_HashToBins);

void BM_PipelineRecover(benchmark::State& state) {
  const std::size_t n = 1 << 12;
  const GeneratedSignal sig = bench_signal(n, 2, 0.01);
  PipelineConfig cfg;
  cfg.n = n;
  cfg.k = 2;
  cfg.eps = 0.5;
  cfg.seed = 7;
  for (auto _ : state) {
    auto res = recover(sig.x, cfg);
    benchmark::DoNotOptimize(res.xprime.entries.data());
  }
}
BENCHMARK(BM_PipelineRecover);

}  // namespace

BENCHMARK_MAIN();
