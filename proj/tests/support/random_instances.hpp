#pragma once

// Deterministic random test instances. Seeds are fixed so every run sees the
// same measures; atoms are jittered off an equispaced layout, which keeps the
// minimum angular gap at 0.2 * (2 pi / n) without rejection sampling.

#include <cmath>
#include <random>
#include <utility>
#include <vector>

#include "clark/circle_measure.hpp"

namespace testsupport {

inline clark::CircleMeasure random_atomic(std::mt19937& gen, int n) {
  std::uniform_real_distribution<double> jitter(0.0, 0.8);
  std::uniform_real_distribution<double> mass(0.2, 1.0);
  std::vector<clark::Atom> atoms(static_cast<std::size_t>(n));
  double total = 0.0;
  for (int k = 0; k < n; ++k) {
    atoms[static_cast<std::size_t>(k)].angle =
        clark::kTwoPi * (k + jitter(gen)) / n;
    atoms[static_cast<std::size_t>(k)].mass = mass(gen);
    total += atoms[static_cast<std::size_t>(k)].mass;
  }
  for (auto& a : atoms) a.mass /= total;
  return clark::CircleMeasure::point_masses(std::move(atoms));
}

inline clark::Complex random_gamma(std::mt19937& gen, double max_modulus = 0.95) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double r = max_modulus * std::sqrt(unit(gen));
  double t = clark::kTwoPi * unit(gen);
  return std::polar(r, t);
}

inline clark::Complex random_alpha(std::mt19937& gen) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  return std::polar(1.0, clark::kTwoPi * unit(gen));
}

// Smooth strictly positive probability density: 1 plus a few low harmonics.
inline clark::CircleMeasure random_density(std::mt19937& gen, int grid) {
  std::uniform_real_distribution<double> coef(-0.2, 0.2);
  double a1 = coef(gen), b1 = coef(gen), a2 = coef(gen), b2 = coef(gen);
  std::vector<double> samples(static_cast<std::size_t>(grid));
  for (int j = 0; j < grid; ++j) {
    double t = clark::kTwoPi * j / grid;
    samples[static_cast<std::size_t>(j)] = 1.0 + a1 * std::cos(t) +
                                           b1 * std::sin(t) +
                                           a2 * std::cos(2 * t) +
                                           b2 * std::sin(2 * t);
  }
  return clark::CircleMeasure::with_density(grid, std::move(samples));
}

inline clark::CircleMeasure cosine_density(int grid, double amplitude = 0.5) {
  std::vector<double> samples(static_cast<std::size_t>(grid));
  for (int j = 0; j < grid; ++j)
    samples[static_cast<std::size_t>(j)] =
        1.0 + amplitude * std::cos(clark::kTwoPi * j / grid);
  return clark::CircleMeasure::with_density(grid, std::move(samples));
}

}  // namespace testsupport
