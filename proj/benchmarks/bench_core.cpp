#include <onsager/besov.hpp>
#include <onsager/commutator.hpp>
#include <onsager/euler.hpp>
#include <onsager/mollify.hpp>

#include <benchmark/benchmark.h>

using namespace onsager;

namespace {

// Kernel diameter in cells is the second argument.
void BM_MollifyDirect(benchmark::State& state) {
  const Grid g = make_grid(1, int(state.range(0)));
  const Field f = generate(g, spec::holder(0.4, 1));
  const double eps = double(state.range(1)) / 2 / g.n;
  for (auto _ : state) benchmark::DoNotOptimize(mollify_space(f, eps, ConvolutionPath::direct));
}
BENCHMARK(BM_MollifyDirect)->ArgsProduct({{4096, 16384}, {8, 32, 128}});

void BM_MollifySpectral(benchmark::State& state) {
  const Grid g = make_grid(1, int(state.range(0)));
  const Field f = generate(g, spec::holder(0.4, 1));
  const double eps = double(state.range(1)) / 2 / g.n;
  for (auto _ : state) benchmark::DoNotOptimize(mollify_space(f, eps, ConvolutionPath::spectral));
}
BENCHMARK(BM_MollifySpectral)->ArgsProduct({{4096, 16384}, {8, 32, 128}});

void BM_Mollify2D(benchmark::State& state) {
  const Grid g = make_grid(2, int(state.range(0)));
  const Field f = generate(g, spec::holder(0.4, 1));
  for (auto _ : state) benchmark::DoNotOptimize(mollify_space(f, 8.0 / g.n));
}
BENCHMARK(BM_Mollify2D)->Arg(128)->Arg(256);

void BM_CetSweep(benchmark::State& state) {
  const Grid g = make_grid(1, int(state.range(0)));
  const Field a = generate(g, spec::holder(0.4, 1)), b = generate(g, spec::holder(0.4, 2));
  for (auto _ : state) benchmark::DoNotOptimize(cet_sweep(a, b, dyadic_epsilons(3, 9), {1.5, 1.5}));
}
BENCHMARK(BM_CetSweep)->Arg(4096)->Arg(16384)->Unit(benchmark::kMillisecond);

void BM_HolderFit(benchmark::State& state) {
  const Field f = generate(make_grid(1, int(state.range(0))), spec::holder(0.5, 3));
  for (auto _ : state) benchmark::DoNotOptimize(holder_exponent_fit(f, 2.0));
}
BENCHMARK(BM_HolderFit)->Arg(4096)->Arg(16384)->Unit(benchmark::kMillisecond);

void BM_SolverStep(benchmark::State& state) {
  SimConfig c;
  c.grid = make_grid(1, int(state.range(0)));
  c.flux = state.range(1) == 0 ? Flux::llf : Flux::hll;
  c.rho0 = spec::sum({spec::constant(1.0), spec::fourier_mode(1, 0.5)});
  c.v0 = spec::fourier_mode(1, 0.5);
  EulerState s = initial_state(c);
  for (auto _ : state) {
    s = step(s, c);
    benchmark::DoNotOptimize(s.rho.data().data());
  }
}
BENCHMARK(BM_SolverStep)->ArgsProduct({{1024, 4096}, {0, 1}});

}  // namespace

BENCHMARK_MAIN();
