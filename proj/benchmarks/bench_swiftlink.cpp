#include <benchmark/benchmark.h>

#include "swiftlink/channel.hpp"
#include "swiftlink/measurement.hpp"
#include "swiftlink/numerics.hpp"
#include "swiftlink/recovery.hpp"
#include "swiftlink/ripcheck.hpp"
#include "swiftlink/rng.hpp"
#include "swiftlink/sequences.hpp"
#include "swiftlink/swiftlink.hpp"
#include "swiftlink/trajectories.hpp"

namespace {

using namespace swiftlink;

Trajectory full_type1(int n, Rng& rng) {
  const int m = 2 * n - 1;
  return compose_type1(p_trajectory(n, m, ContourDist::binomial, rng),
                       n_trajectory(n, m, ContourDist::binomial, rng));
}

void bench_dft2(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(1);
  CMat h(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) h(i, j) = rng.cgauss();
  for (auto _ : state) benchmark::DoNotOptimize(dft2(h));
}
BENCHMARK(bench_dft2)->Arg(16)->Arg(32)->Arg(64);

void bench_virtual_channel(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(2);
  CMat h(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) h(i, j) = rng.cgauss();
  const CVec mask = spectral_mask(zc(n, n == 32 ? 11 : 3));
  for (auto _ : state) benchmark::DoNotOptimize(virtual_channel(h, mask));
}
BENCHMARK(bench_virtual_channel)->Arg(16)->Arg(32);

void bench_omp_branch(benchmark::State& state) {
  const int n = 32;
  Rng rng(3);
  const Trajectory p = p_trajectory(n, 2 * n - 1, ContourDist::binomial, rng);
  const PartialDftDict dict(p.steps, n);
  const ChannelRealization ch = random_sparse_beamspace(n, 4, true, rng);
  const CVec z = zc(n, 11);
  const MeasurementSet ms =
      measure_trajectory(ch.equivalent_narrowband(), p, z, 0.0, 0.01, &rng);
  const int k_max = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(dict.solve(ms.y, k_max, 1e-6));
}
BENCHMARK(bench_omp_branch)->Arg(4)->Arg(16);

void bench_run_type1(benchmark::State& state) {
  const int n = 32;
  Rng rng(4);
  const CVec z = zc(n, 11);
  const ChannelRealization ch = random_sparse_beamspace(n, 4, true, rng);
  const Trajectory t = full_type1(n, rng);
  const MeasurementSet ms =
      measure_trajectory(ch.equivalent_narrowband(), t, z, 0.05, 0.1, &rng);
  for (auto _ : state) benchmark::DoNotOptimize(run_type1(ms.y, t, z, 16, 0.1));
}
BENCHMARK(bench_run_type1);

void bench_theorem2(benchmark::State& state) {
  const std::vector<Coord> support{{0, 0}, {16, 5}};
  CVec s(2);
  s << cd{0.7071067811865476, 0.0}, cd{0.5, 0.5};
  for (auto _ : state) {
    Rng rng(5);
    benchmark::DoNotOptimize(theorem2_check(32, 63, support, s, 1000, rng));
  }
}
BENCHMARK(bench_theorem2);

}  // namespace

BENCHMARK_MAIN();
