#include <benchmark/benchmark.h>

#include <random>

#include "spinor/branching.hpp"
#include "spinor/duflo.hpp"
#include "spinor/fourier.hpp"
#include "spinor/orbits.hpp"

using namespace spinor;

namespace {

Vec descending(int n) {
  Vec a(n);
  for (int i = 0; i < n; ++i) a(i) = n - i + 0.25;
  return a;
}

void BM_BranchPrincipal(benchmark::State& state) {
  const Group g(static_cast<int>(state.range(0)));
  Weight mu(group_M(g).rank, HalfInt(0));
  for (std::size_t i = 0; i < mu.size(); ++i) mu[i] = static_cast<std::int64_t>(mu.size() - i) + 2;
  for (auto _ : state) benchmark::DoNotOptimize(branch_principal(mu, g, {0.0, 1.0}));
}
BENCHMARK(BM_BranchPrincipal)->DenseRange(3, 11, 2);

void BM_MomentImagePoint(benchmark::State& state) {
  const Group g(static_cast<int>(state.range(0)));
  const OrbitParam o = make_orbit(g, OrbitFamily::Elliptic, descending(g.n()));
  std::mt19937_64 rng(1);
  const BPoint b = sample_b(o, rng);
  for (auto _ : state) benchmark::DoNotOptimize(moment_image_point(o, b));
}
BENCHMARK(BM_MomentImagePoint)->DenseRange(3, 21, 6);

void BM_PipelineImagePoint(benchmark::State& state) {
  const Group g(static_cast<int>(state.range(0)));
  const OrbitParam o = make_orbit(g, OrbitFamily::Elliptic, descending(g.n()));
  std::mt19937_64 rng(1);
  const BPoint b = sample_b(o, rng);
  for (auto _ : state) benchmark::DoNotOptimize(pipeline_image_point(o, b));
}
BENCHMARK(BM_PipelineImagePoint)->DenseRange(3, 21, 6);

void BM_VerifyDuflo(benchmark::State& state) {
  const Group g(static_cast<int>(state.range(0)));
  const RepLabel rep = make_ds(classify_infl_char(rho(g), g), Sign::Minus);
  for (auto _ : state) benchmark::DoNotOptimize(verify_duflo(rep, HalfInt(8)));
}
BENCHMARK(BM_VerifyDuflo)->DenseRange(3, 9, 2);

void BM_KBessel(benchmark::State& state) {
  double x = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fourier::kbessel_tilde(0.5, x));
    x = x < 20.0 ? x + 0.01 : 0.1;
  }
}
BENCHMARK(BM_KBessel);

void BM_ConvolutionIdentity(benchmark::State& state) {
  const fourier::GridSpec grid{static_cast<int>(state.range(0)), 12.0};
  for (auto _ : state) benchmark::DoNotOptimize(fourier::verify_convolution_identity({3, 1, 0.5}, grid));
}
BENCHMARK(BM_ConvolutionIdentity)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
