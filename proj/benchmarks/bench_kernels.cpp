#include <benchmark/benchmark.h>

#include <random>

#include "ergoquench/channels.hpp"
#include "ergoquench/dynamics.hpp"
#include "ergoquench/ergotropy.hpp"
#include "ergoquench/model.hpp"

using namespace ergoquench;
using linalg::Complex;
using linalg::Matrix;

namespace {

Matrix random_hermitian(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d;
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      m(i, j) = i == j ? Complex(d(rng)) : Complex(d(rng), d(rng));
      m(j, i) = std::conj(m(i, j));
    }
  return m;
}

void BM_HermitianEig(benchmark::State& state) {
  const Matrix m = random_hermitian(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(linalg::hermitian_eig(m));
}
BENCHMARK(BM_HermitianEig)->Arg(4)->Arg(16)->Arg(64);

void BM_ExpmLiouvillian(benchmark::State& state) {
  const model::ModelSpec m{static_cast<int>(state.range(0)), 1.0, 0.1};
  const Matrix h = model::build_hamiltonian(m);
  const auto l = channels::build_liouvillian(h, {0.05, 0.0, 1.0, 0.0}, m);
  const Matrix step = l.matrix() * Complex(0.5);
  for (auto _ : state) benchmark::DoNotOptimize(linalg::expm(step));
}
BENCHMARK(BM_ExpmLiouvillian)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_Propagate(benchmark::State& state) {
  const model::ModelSpec m{static_cast<int>(state.range(0)), 1.0, 0.1};
  const Matrix h = model::build_hamiltonian(m);
  const auto l = channels::build_liouvillian(h, {0.05, 0.0, 0.0, 0.0}, m);
  const auto rho0 = model::gibbs_state(h, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(dynamics::propagate(l, rho0, {800, 0.5}));
}
BENCHMARK(BM_Propagate)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_ErgotropySeries(benchmark::State& state) {
  const model::ModelSpec m{4, 1.0, 0.1};
  const Matrix h = model::build_hamiltonian(m);
  const auto l = channels::build_liouvillian(h, {0.05, 0.0, 0.0, 0.0}, m);
  const auto traj = dynamics::propagate(l, model::gibbs_state(h, 1.0), {800, 0.5});
  for (auto _ : state) benchmark::DoNotOptimize(ergotropy::ergotropy_series(traj, h));
}
BENCHMARK(BM_ErgotropySeries)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
