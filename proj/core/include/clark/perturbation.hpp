#pragma once

#include <Eigen/Dense>
#include <complex>
#include <utility>

#include "clark/circle_measure.hpp"

namespace clark {

// Rank-one perturbation U_gamma = U + (gamma - 1) b b_1^* of the
// multiplication unitary U on L2(mu), expressed in the orthonormal basis of
// normalized atom indicators. b is the constant function 1, b_1 = U^* b.
struct Perturbation {
  Eigen::MatrixXcd matrix;       // U_gamma
  Eigen::VectorXcd b;            // coordinates sqrt(m_k)
  Eigen::VectorXcd b1;           // coordinates conj(xi_k) sqrt(m_k)
  Eigen::VectorXcd atom_points;  // xi_k
  Complex gamma{};
};

// Requires a purely atomic probability measure and |gamma| <= 1.
Perturbation build_u_gamma(const CircleMeasure& mu, Complex gamma);

// Defect operators (D, D_*) = ((I - U^H U)^{1/2}, (I - U U^H)^{1/2});
// both are rank one: D = sqrt(1-|gamma|^2) b1 b1^H, D_* = sqrt(1-|gamma|^2) b b^H.
std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd> defect_operators(const Perturbation& p);

// Spectral measure of the unitary U_gamma (| |gamma| - 1 | <= 1e-12) with
// respect to the cyclic vector b: atoms at the eigenvalue angles, masses
// |<b, phi_k>|^2. Eigenpairs come from a complex Schur decomposition; a
// multiplicity collision below 1e-10 is rejected.
CircleMeasure spectral_measure(const Perturbation& p);

// Smallest singular value of the Krylov matrix [b, Ub, ..., U^{n-1}b];
// positive margin certifies cyclicity of b.
double cyclicity_margin(const Perturbation& p);

}  // namespace clark
