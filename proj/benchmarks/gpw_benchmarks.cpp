#include <memory>

#include <benchmark/benchmark.h>

#include "gpw/analysis.hpp"
#include "gpw/induction.hpp"
#include "gpw/representations.hpp"
#include "gpw/sampling.hpp"
#include "gpw/spectral.hpp"

namespace {

gpw::GroupoidPtr pair_groupoid(std::int64_t n) {
  return std::make_shared<const gpw::FiniteGroupoid>(gpw::build::pair(static_cast<std::size_t>(n)));
}

gpw::GroupoidPtr cyclic_group(std::int64_t n) {
  return std::make_shared<const gpw::FiniteGroupoid>(gpw::build::cyclic(static_cast<std::size_t>(n)));
}

void BM_HermitianEigenvalues(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  gpw::Sampler s(1);
  gpw::ComplexMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = s.gaussian().real();
    for (std::size_t j = i + 1; j < n; ++j) {
      a(i, j) = s.gaussian();
      a(j, i) = std::conj(a(i, j));
    }
  }
  for (auto _ : state) benchmark::DoNotOptimize(gpw::hermitian_eigenvalues(a));
}
BENCHMARK(BM_HermitianEigenvalues)->Arg(6)->Arg(16)->Arg(32)->Arg(64);

void BM_Convolve(benchmark::State& state) {
  const auto g = pair_groupoid(state.range(0));
  gpw::Sampler s(2);
  const gpw::Element f = s.gaussian_element(g);
  const gpw::Element h = s.gaussian_element(g);
  for (auto _ : state) benchmark::DoNotOptimize(f * h);
}
BENCHMARK(BM_Convolve)->Arg(4)->Arg(8)->Arg(16);

void BM_LambdaX(benchmark::State& state) {
  const auto g = pair_groupoid(state.range(0));
  gpw::Sampler s(3);
  const gpw::Element f = s.gaussian_element(g);
  for (auto _ : state) benchmark::DoNotOptimize(gpw::lambda_x(*g, 0, f));
}
BENCHMARK(BM_LambdaX)->Arg(4)->Arg(8)->Arg(16);

void BM_FullRegular(benchmark::State& state) {
  const auto g = pair_groupoid(state.range(0));
  gpw::Sampler s(4);
  const gpw::Element f = s.gaussian_element(g);
  for (auto _ : state) benchmark::DoNotOptimize(gpw::full_regular(*g, f));
}
BENCHMARK(BM_FullRegular)->Arg(4)->Arg(8);

void BM_InducedSpace(benchmark::State& state) {
  const auto g = cyclic_group(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gpw::InducedSpace(gpw::IsotropyRep::left_regular(g, 0)));
}
BENCHMARK(BM_InducedSpace)->Arg(2)->Arg(4)->Arg(8);

void BM_Induce(benchmark::State& state) {
  const auto g = cyclic_group(state.range(0));
  gpw::Sampler s(5);
  const gpw::InducedSpace space(gpw::IsotropyRep::left_regular(g, 0));
  const gpw::Element f = s.gaussian_element(g);
  for (auto _ : state) benchmark::DoNotOptimize(space.represent(f));
}
BENCHMARK(BM_Induce)->Arg(2)->Arg(4)->Arg(8);

// All units versus one unit per orbit.
void BM_InvertibleFamily(benchmark::State& state) {
  const auto g = pair_groupoid(state.range(0));
  gpw::Sampler s(6);
  const gpw::Element a = s.gaussian_element(g);
  gpw::EvalOptions opts;
  opts.orbit_reps = state.range(1) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(gpw::invertible_family(a, gpw::kDefaultInvertibilityTol, opts));
}
BENCHMARK(BM_InvertibleFamily)->Args({4, 0})->Args({4, 1})->Args({8, 0})->Args({8, 1});

void BM_InvertibleOracle(benchmark::State& state) {
  const auto g = pair_groupoid(state.range(0));
  gpw::Sampler s(7);
  const gpw::Element a = s.gaussian_element(g);
  for (auto _ : state) benchmark::DoNotOptimize(gpw::invertible_oracle(a));
}
BENCHMARK(BM_InvertibleOracle)->Arg(4)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
