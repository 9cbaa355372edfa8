#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <optional>

#include "clark/circle_measure.hpp"

namespace clark {

// Complex samples of a function on the uniform grid {e^{i*2*pi*j/n}}.
// n must be a power of two, at least 16.
struct FunctionGrid {
  int n = 0;
  Eigen::VectorXcd values;

  static FunctionGrid zeros(int n);
  static FunctionGrid constant(int n, Complex v);
  static FunctionGrid sample(int n, const std::function<Complex(Complex)>& f);

  double angle(int j) const { return kTwoPi * j / n; }
  Complex point(int j) const;

  double norm() const;     // L2(dm): sqrt(mean |v_j|^2)
  double max_abs() const;
};

void require_grid_size(int n);  // power of two >= 16, else Error("bad_grid")

// bins[k] = (1/n) * sum_j values[j] e^{-i*2*pi*jk/n}; bin k in [n/2, n)
// represents the negative frequency k - n. Matches the measure convention:
// for band-limited g, bins[k] = ∫ g(xi) conj(xi)^k dm(xi).
Eigen::VectorXcd fourier_bins(const FunctionGrid& g);
FunctionGrid grid_from_bins(int n, const Eigen::VectorXcd& bins);

// Keep frequencies k >= 0 (analytic part) or k <= -1 (strictly co-analytic).
FunctionGrid analytic_projection(const FunctionGrid& g);
FunctionGrid coanalytic_projection(const FunctionGrid& g);

// Trigonometric resampling onto an n-point grid (exact for band-limited g).
FunctionGrid resample_grid(const FunctionGrid& g, int n);

// Relative L2 content in the discarded range; 0 for an exactly analytic
// (resp. co-analytic) grid function.
double analytic_residual(const FunctionGrid& g);     // mass at k < 0
double coanalytic_residual(const FunctionGrid& g);   // mass at k >= 0

// An element of L2(mu): values at the atoms (in atom order) plus samples on
// the density grid when mu has an absolutely continuous part.
struct MeasureFunction {
  Eigen::VectorXcd atom_values;
  std::optional<FunctionGrid> density_values;

  static MeasureFunction sample(const CircleMeasure& mu,
                                const std::function<Complex(Complex)>& f);
  static MeasureFunction ones(const CircleMeasure& mu);
};

}  // namespace clark
