#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "clark/circle_measure.hpp"
#include "clark/function_grid.hpp"

namespace clark {

enum class Side { inside, outside };

// Radial approach uses radii 1 -/+ 2^-k for k = first_exponent..last_exponent
// and Richardson extrapolation of the given order toward the circle.
struct RadialLimitConfig {
  int first_exponent = 4;
  int last_exponent = 14;
  int order = 4;
  double growth_factor = 10.0;  // monotone growth beyond this flags divergence
};

struct RadialLimit {
  Complex value{};
  double error = 0.0;   // extrapolation error estimate
  bool diverged = false;
};

RadialLimit radial_limit(const std::function<Complex(Complex)>& f, Complex z,
                         Side side, const RadialLimitConfig& cfg = {});

// Weighted Cauchy integral R(f mu)(lambda) = ∫ f(xi)/(1 - conj(xi) lambda) dmu(xi).
// The density part is evaluated through its Fourier series, which stays
// spectrally accurate arbitrarily close to the circle; |lambda| must keep a
// 1e-8 guard band away from 1. Density grids must be a power of two.
class CauchyTransform {
 public:
  explicit CauchyTransform(const CircleMeasure& mu);
  CauchyTransform(const CircleMeasure& mu, const MeasureFunction& f);

  Complex mass() const { return mass_; }       // ∫ f dmu
  Complex r(Complex lambda) const;             // R(f mu)
  Complex r1(Complex lambda) const;            // R - mass
  Complex r2(Complex lambda) const;            // 2R - mass

  // Nontangential boundary value T_+ (from inside) / T_- (from outside).
  RadialLimit boundary(Complex z, Side side, const RadialLimitConfig& cfg = {}) const;

  struct BoundaryGrid {
    FunctionGrid values;
    double max_error = 0.0;
    std::vector<std::uint8_t> diverged;
    bool any_diverged = false;
  };
  // Boundary values at all n-th roots of unity (one FFT per radius).
  BoundaryGrid boundary_grid(int n, Side side, const RadialLimitConfig& cfg = {}) const;

  // Values at all n-th roots of unity scaled by rho (used by boundary_grid).
  Eigen::VectorXcd circle_values(int n, double rho) const;

 private:
  std::vector<Complex> points_;    // atom positions
  std::vector<Complex> weights_;   // atom mass * f(atom)
  Eigen::VectorXcd series_inside_;   // c_m: R = sum c_m lambda^m, |lambda|<1
  Eigen::VectorXcd series_outside_;  // d_m: R = -sum d_m lambda^-m, m>=1
  Complex mass_{};
};

Complex cauchy_r(const CircleMeasure& mu, Complex lambda);
Complex cauchy_r1(const CircleMeasure& mu, Complex lambda);
Complex cauchy_r2(const CircleMeasure& mu, Complex lambda);

// Re R2(mu)(z) for |z| < 1; harmonic extension of the density.
double poisson_extension(const CircleMeasure& mu, Complex z);

// Finite quadrature form of a measure: atoms plus the density collapsed to
// grid points with mass samples[j]/n. Zero-mass nodes are dropped.
struct PointMass {
  Complex point;
  double mass = 0.0;
};
std::vector<PointMass> discretize_measure(const CircleMeasure& m);

// Matrix of T_r f(z) = ∫ f(xi)/(1 - r conj(xi) z) dmu(xi) between the
// orthonormal bases of L2(source) and L2(target); r must avoid 1.
Eigen::MatrixXcd discretize_t_r(const CircleMeasure& source,
                                const CircleMeasure& target, double r);

// Largest singular value; exact SVD for small matrices, power iteration on
// the normal equations above dimension 256 (relative accuracy ~1e-10).
double operator_norm(const Eigen::MatrixXcd& a);

// Matrix-free variant: apply and apply_adjoint realize A and A^H.
double operator_norm(const std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)>& apply,
                     const std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)>& apply_adjoint,
                     int source_dim);

}  // namespace clark
