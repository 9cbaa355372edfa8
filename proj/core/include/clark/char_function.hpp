#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

#include "clark/cauchy.hpp"
#include "clark/circle_measure.hpp"
#include "clark/rational_inner.hpp"

namespace clark {

// theta_0(lambda) = R1/(1 + R1), |lambda| < 1 (guard band 1e-8);
// cross-checked internally against (R2 - 1)/(R2 + 1).
Complex theta0_at(const CircleMeasure& mu, Complex lambda);

// theta_gamma = -gamma + (1-|gamma|^2) R1 / (1 + (1-conj(gamma)) R1),
// cross-checked against the Moebius form (theta_0-gamma)/(1-conj(gamma)theta_0).
// Requires |gamma| <= 1; theta_gamma(0) = -gamma.
Complex theta_gamma_at(const CircleMeasure& mu, Complex gamma, Complex lambda);

// Exact Blaschke form for a purely atomic probability measure with n atoms:
// theta_0 = (N_R - D)/N_R where D = prod(1 - conj(xi_k) z) and
// N_R = sum_j m_j prod_{k != j}(1 - conj(xi_k) z). Companion-matrix roots with
// Newton polishing; innerness verified on a 256-point grid.
RationalInner rational_theta0(const CircleMeasure& mu);

// Moebius transform of an inner function: (theta - gamma)/(1 - conj(gamma) theta)
// for |gamma| < 1; for |gamma| = 1 degenerates to the constant -gamma.
RationalInner mobius_transform(const RationalInner& theta, Complex gamma);

// Taylor coefficient theta_gamma_hat(k) at the origin, via contour quadrature
// on |z| = 1/2. For density measures k must stay below n/4.
Complex theta_fourier(const CircleMeasure& mu, Complex gamma, int k);
Complex theta_fourier(const RationalInner& theta, int k);

// Boundary values of theta_0 and the defect Delta_0 = sqrt(1 - |theta_0|^2)
// on the n-point grid. Atomic measures evaluate the Blaschke form directly;
// otherwise radial limits of 1 - 1/R(mu) are extrapolated.
struct BoundaryData {
  FunctionGrid theta0;
  Eigen::VectorXd delta0;
  double max_error = 0.0;
  std::vector<std::uint8_t> diverged;
};
BoundaryData boundary_theta0(const CircleMeasure& mu, int n,
                             const RadialLimitConfig& cfg = {});

// Delta_gamma(z) = sqrt(1-|gamma|^2) Delta_0(z) / |1 - conj(gamma) theta_0(z)|
// at a boundary point (grid-free; uses rational data or a radial limit).
double delta_gamma_at(const CircleMeasure& mu, Complex gamma, Complex z,
                      const RadialLimitConfig& cfg = {});

}  // namespace clark
