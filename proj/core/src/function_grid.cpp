#include "clark/function_grid.hpp"

#include <cmath>

#include <unsupported/Eigen/FFT>

#include "clark/errors.hpp"

namespace clark {

void require_grid_size(int n) {
  if (n < 16 || (n & (n - 1)) != 0)
    fail("bad_grid", "grid size must be a power of two, at least 16 (got " +
                         std::to_string(n) + ")");
}

FunctionGrid FunctionGrid::zeros(int n) {
  require_grid_size(n);
  return FunctionGrid{n, Eigen::VectorXcd::Zero(n)};
}

FunctionGrid FunctionGrid::constant(int n, Complex v) {
  require_grid_size(n);
  return FunctionGrid{n, Eigen::VectorXcd::Constant(n, v)};
}

FunctionGrid FunctionGrid::sample(int n, const std::function<Complex(Complex)>& f) {
  FunctionGrid g = zeros(n);
  for (int j = 0; j < n; ++j) g.values[j] = f(g.point(j));
  return g;
}

Complex FunctionGrid::point(int j) const { return std::polar(1.0, angle(j)); }

double FunctionGrid::norm() const {
  return values.size() == 0 ? 0.0 : values.norm() / std::sqrt(double(n));
}

double FunctionGrid::max_abs() const {
  return values.size() == 0 ? 0.0 : values.cwiseAbs().maxCoeff();
}

Eigen::VectorXcd fourier_bins(const FunctionGrid& g) {
  require_grid_size(g.n);
  Eigen::FFT<double> fft;
  Eigen::VectorXcd out(g.n);
  Eigen::VectorXcd in = g.values;
  fft.fwd(out, in);
  return out / double(g.n);
}

FunctionGrid grid_from_bins(int n, const Eigen::VectorXcd& bins) {
  require_grid_size(n);
  if (bins.size() != n) fail("bad_grid", "bin count must equal grid size");
  Eigen::FFT<double> fft;
  Eigen::VectorXcd out(n);
  Eigen::VectorXcd in = bins * double(n);
  fft.inv(out, in);
  return FunctionGrid{n, std::move(out)};
}

namespace {

// Frequency of bin k on an n-point grid; bins at and above n/2 are negative.
inline bool bin_is_negative(int k, int n) { return k >= n / 2; }

}  // namespace

FunctionGrid analytic_projection(const FunctionGrid& g) {
  Eigen::VectorXcd bins = fourier_bins(g);
  for (int k = 0; k < g.n; ++k)
    if (bin_is_negative(k, g.n)) bins[k] = 0.0;
  return grid_from_bins(g.n, bins);
}

FunctionGrid coanalytic_projection(const FunctionGrid& g) {
  Eigen::VectorXcd bins = fourier_bins(g);
  for (int k = 0; k < g.n; ++k)
    if (!bin_is_negative(k, g.n)) bins[k] = 0.0;
  return grid_from_bins(g.n, bins);
}

FunctionGrid resample_grid(const FunctionGrid& g, int n) {
  require_grid_size(n);
  if (n == g.n) return g;
  Eigen::VectorXcd bins = fourier_bins(g);
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(n);
  const int keep = std::min(g.n, n) / 2;
  for (int k = 0; k < keep; ++k) {
    out[k] = bins[k];
    out[n - 1 - k] = bins[g.n - 1 - k];
  }
  return grid_from_bins(n, out);
}

double analytic_residual(const FunctionGrid& g) {
  Eigen::VectorXcd bins = fourier_bins(g);
  double total = bins.squaredNorm(), off = 0.0;
  if (total == 0.0) return 0.0;
  for (int k = 0; k < g.n; ++k)
    if (bin_is_negative(k, g.n)) off += std::norm(bins[k]);
  return std::sqrt(off / total);
}

double coanalytic_residual(const FunctionGrid& g) {
  Eigen::VectorXcd bins = fourier_bins(g);
  double total = bins.squaredNorm(), off = 0.0;
  if (total == 0.0) return 0.0;
  for (int k = 0; k < g.n; ++k)
    if (!bin_is_negative(k, g.n)) off += std::norm(bins[k]);
  return std::sqrt(off / total);
}

MeasureFunction MeasureFunction::sample(const CircleMeasure& mu,
                                        const std::function<Complex(Complex)>& f) {
  MeasureFunction out;
  out.atom_values.resize(static_cast<Eigen::Index>(mu.atoms.size()));
  for (std::size_t j = 0; j < mu.atoms.size(); ++j)
    out.atom_values[static_cast<Eigen::Index>(j)] = f(mu.atom_point(j));
  if (mu.density) out.density_values = FunctionGrid::sample(mu.density->n, f);
  return out;
}

MeasureFunction MeasureFunction::ones(const CircleMeasure& mu) {
  return sample(mu, [](Complex) { return Complex(1.0, 0.0); });
}

}  // namespace clark
