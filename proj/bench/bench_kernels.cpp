// Serial reference vs OpenMP kernels. Run with OMP_NUM_THREADS set to the
// thread count of interest.

#include <benchmark/benchmark.h>

#include <complex>
#include <random>
#include <vector>

#include "gardner5/breather.hpp"
#include "gardner5/kernels.hpp"

using namespace gardner5;

namespace {

std::vector<double> random_vector(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n01;
  std::vector<double> v(n);
  for (double& x : v) x = n01(rng);
  return v;
}

struct Breather {
  kernels::BreatherCoefficients k;
  kernels::GridPhases phases;
  std::vector<double> out;

  explicit Breather(std::size_t n) : out(n) {
    const BreatherParams p = validate_params(32.003, 1.0 / 32, 0.05);
    const Grid g = make_grid(envelope_center(p, 0), 80 * 32, n);
    k = coefficients(p);
    phases = grid_phases(p, 0, g);
  }
};

template <bool Parallel>
void sample_rational(benchmark::State& state) {
  Breather b(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    if constexpr (Parallel) {
      kernels::parallel::sample_rational(b.k, b.phases, b.out);
    } else {
      kernels::serial::sample_rational(b.k, b.phases, b.out);
    }
    benchmark::DoNotOptimize(b.out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void k_mu(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto v = random_vector(n, 1), vx = random_vector(n, 2), vxx = random_vector(n, 3);
  std::vector<double> out(n);
  for (auto _ : state) {
    if constexpr (Parallel) {
      kernels::parallel::k_mu(v, vx, vxx, 0.3, out);
    } else {
      kernels::serial::k_mu(v, vx, vxx, 0.3, out);
    }
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void dot(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = random_vector(n, 4), b = random_vector(n, 5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Parallel ? kernels::parallel::dot(a, b)
                                      : kernels::serial::dot(a, b));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void sobolev_sum(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto re = random_vector(n / 2 + 1, 6), im = random_vector(n / 2 + 1, 7);
  std::vector<std::complex<double>> spec(n / 2 + 1);
  for (std::size_t k = 0; k < spec.size(); ++k) spec[k] = {re[k], im[k]};
  for (auto _ : state) {
    benchmark::DoNotOptimize(Parallel
                                 ? kernels::parallel::sobolev_weighted_sum(spec, n, 1e-3, 0.5)
                                 : kernels::serial::sobolev_weighted_sum(spec, n, 1e-3, 0.5));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

constexpr long kSmall = 1 << 14;
constexpr long kLarge = 1 << 21;

}  // namespace

BENCHMARK(sample_rational<false>)->Name("sample_rational/serial")->Range(kSmall, kLarge);
BENCHMARK(sample_rational<true>)->Name("sample_rational/omp")->Range(kSmall, kLarge)->UseRealTime();
BENCHMARK(k_mu<false>)->Name("k_mu/serial")->Range(kSmall, kLarge);
BENCHMARK(k_mu<true>)->Name("k_mu/omp")->Range(kSmall, kLarge)->UseRealTime();
BENCHMARK(dot<false>)->Name("dot/serial")->Range(kSmall, kLarge);
BENCHMARK(dot<true>)->Name("dot/omp")->Range(kSmall, kLarge)->UseRealTime();
BENCHMARK(sobolev_sum<false>)->Name("sobolev_sum/serial")->Range(kSmall, kLarge);
BENCHMARK(sobolev_sum<true>)->Name("sobolev_sum/omp")->Range(kSmall, kLarge)->UseRealTime();

BENCHMARK_MAIN();
