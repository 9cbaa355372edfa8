#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "clark/cauchy.hpp"
#include "clark/char_function.hpp"
#include "clark/circle_measure.hpp"
#include "clark/clark_operators.hpp"

namespace {

clark::CircleMeasure random_atomic(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> mass(0.2, 1.0);
  std::vector<clark::Atom> atoms(static_cast<std::size_t>(n));
  double total = 0.0;
  for (int k = 0; k < n; ++k) {
    atoms[static_cast<std::size_t>(k)].angle =
        clark::kTwoPi * (k + 0.2 * mass(rng)) / n;
    atoms[static_cast<std::size_t>(k)].mass = mass(rng);
    total += atoms[static_cast<std::size_t>(k)].mass;
  }
  for (auto& a : atoms) a.mass /= total;
  return clark::CircleMeasure::point_masses(std::move(atoms));
}

clark::CircleMeasure cosine_density(int n) {
  std::vector<double> samples(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j)
    samples[static_cast<std::size_t>(j)] =
        1.0 + 0.5 * std::cos(clark::kTwoPi * j / n);
  return clark::CircleMeasure::with_density(n, std::move(samples));
}

void BM_rational_theta0(benchmark::State& state) {
  clark::CircleMeasure mu = random_atomic(16, 7u);
  for (auto _ : state)
    benchmark::DoNotOptimize(clark::rational_theta0(mu));
}
BENCHMARK(BM_rational_theta0);

void BM_clark_measure(benchmark::State& state) {
  clark::CircleMeasure mu = random_atomic(16, 7u);
  clark::RationalInner theta = clark::rational_theta0(mu);
  for (auto _ : state)
    benchmark::DoNotOptimize(clark::clark_measure(theta, clark::Complex(0, 1)));
}
BENCHMARK(BM_clark_measure);

void BM_build_phi_star(benchmark::State& state) {
  clark::CircleMeasure mu = random_atomic(8, 11u);
  for (auto _ : state)
    benchmark::DoNotOptimize(clark::build_phi_star(mu, clark::Complex(0.3, 0.2)));
}
BENCHMARK(BM_build_phi_star);

void BM_boundary_grid(benchmark::State& state) {
  clark::CircleMeasure mu = cosine_density(4096);
  clark::MeasureFunction one = clark::MeasureFunction::ones(mu);
  clark::CauchyTransform ct(mu, one);
  for (auto _ : state)
    benchmark::DoNotOptimize(ct.boundary_grid(4096, clark::Side::inside));
}
BENCHMARK(BM_boundary_grid);

void BM_norm_sweep_point(benchmark::State& state) {
  clark::CircleMeasure mu = random_atomic(8, 3u);
  clark::CircleMeasure target = clark::weight_v_gamma(mu, 0.0, 2048);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        clark::operator_norm(clark::discretize_t_r(mu, target, 0.99)));
}
BENCHMARK(BM_norm_sweep_point);

}  // namespace

BENCHMARK_MAIN();
