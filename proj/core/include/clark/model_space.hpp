#pragma once

#include <Eigen/Dense>
#include <complex>
#include <limits>

#include "clark/function_grid.hpp"
#include "clark/rational_inner.hpp"

namespace clark {

// Model space K_theta = H2 ⊖ theta H2 for a finite Blaschke product theta,
// carried in the Takenaka-Malmquist orthonormal basis built from the zero
// list a_1..a_n. compression is P_theta M_z in that basis; with this ordering
// it is exactly lower triangular,
//   M_ii = a_i,
//   M_ij = sqrt((1-|a_i|^2)(1-|a_j|^2)) prod_{j<m<i} (-conj(a_m))  for i > j,
// which follows from z phi_j = a_j phi_j + sqrt(1-|a_j|^2) B_j. Trapezoid
// quadrature on a circle grid (size chosen from the distance of the poles to
// the circle, between 1024 and 2^18 points) supplies the c1 integrals and a
// Gram-matrix check.
struct ModelSpace {
  RationalInner theta;
  int quad_size = 0;
  Eigen::MatrixXcd compression;
  double gram_error = 0.0;      // max |Gram - I| measured on the same grid
  Eigen::VectorXcd c1_integrals;  // cached <(theta - theta(0))/z, phi_i>

  int degree() const { return theta.degree(); }
  Eigen::VectorXcd basis_at(Complex z) const;
  // Rows are grid points z_j = e^{i 2 pi j / n}, columns basis functions.
  Eigen::MatrixXcd basis_on_grid(int n) const;
};

// extra_pole_modulus: modulus of the nearest additional pole (> 1) that later
// projections will integrate against; tightens the quadrature size choice.
ModelSpace build_model(const RationalInner& theta,
                       double extra_pole_modulus = std::numeric_limits<double>::infinity());

// Defect vectors of the model operator M = compression:
//   c  spans range(I - M M^H),  c(z)  ~ 1 - conj(theta(0)) theta(z),
//   c1 spans range(I - M^H M),  c1(z) ~ (theta(z) - theta(0))/z,
// both normalized; M c1 = -theta(0) c.
struct DefectVectors {
  Eigen::VectorXcd c, c1;
};
DefectVectors defect_vectors(const ModelSpace& ms);

// Basis coefficients of f by quadrature on f's own grid; *relative_residual
// (if given) receives ||f - reconstruction|| / ||f||, meaningful when f is
// expected to lie in K_theta.
Eigen::VectorXcd project_onto_model(const ModelSpace& ms, const FunctionGrid& f,
                                    double* relative_residual = nullptr);

// Sz.-Nagy-Foias element (g1, g2) -> de Branges-Rovnyak pair
// (g_plus, g_minus) = (g1, conj(theta) g1 + Delta g2) with the norm taken
// against the Moore-Penrose inverse of W = [[1, theta],[conj(theta), 1]].
struct DeBrangesPair {
  FunctionGrid g_plus, g_minus;
  double analytic_residual = 0.0;    // negative-frequency content of g_plus
  double coanalytic_residual = 0.0;  // k >= 0 content of g_minus
  double left_norm = 0.0;            // || (g1, g2) ||
  double right_norm = 0.0;           // weighted norm of (g_plus, g_minus)
};
DeBrangesPair to_debranges(const ModelSpace& ms, const Eigen::VectorXcd& coeffs);
DeBrangesPair to_debranges_grid(const FunctionGrid& theta_boundary,
                                const FunctionGrid& g1, const FunctionGrid& g2);

// Pointwise Moore-Penrose inverse of [[1, theta],[conj(theta), 1]] via the
// self-adjoint eigendecomposition, eigenvalues below 1e-12 nulled.
Eigen::Matrix2cd w_theta_pinv(Complex theta_value);

}  // namespace clark
