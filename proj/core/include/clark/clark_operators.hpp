#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "clark/cauchy.hpp"
#include "clark/char_function.hpp"
#include "clark/circle_measure.hpp"
#include "clark/function_grid.hpp"
#include "clark/model_space.hpp"
#include "clark/perturbation.hpp"
#include "clark/rational_inner.hpp"

namespace clark {

// Family member mu_alpha of the Clark family of theta_0: atoms at the
// solutions of theta_0(z) = alpha on the circle, masses from a least-squares
// fit of R(mu_alpha)(lambda) = 1/(1 - conj(alpha) theta_0(lambda)) at interior
// sample points, cross-checkable against 1/|theta_0'(atom)|. alpha = 1
// returns the base measure itself. Result is renormalized to mass one after
// the 1e-8 sum check.
CircleMeasure clark_measure(const RationalInner& theta0, Complex alpha);

// Atom masses predicted by the derivative formula 1/|theta_0'(z_k)|.
std::vector<double> clark_masses_from_derivative(const RationalInner& theta0,
                                                 const std::vector<Complex>& atoms);

struct PhiStarResiduals {
  double unitarity = 0.0;       // ||Phi^H Phi - I||
  double intertwining = 0.0;    // ||M Phi - Phi U_gamma||
  double normalization_b = 0.0;   // ||Phi b - c||
  double normalization_b1 = 0.0;  // ||Phi b1 - c1||
};

// Clark operator Phi*_gamma : L2(mu) -> K_{theta_gamma} for a purely atomic
// probability measure and |gamma| < 1, built by projecting the normalized
// Cauchy-transform columns
//   h_j = sqrt(1-|gamma|^2) (1 - theta_0) / (1 - conj(gamma) theta_0) R(e_j mu)
// onto the Takenaka-Malmquist basis (pole cancellations done in exact
// rational arithmetic, so the columns stay smooth across the atoms).
struct ClarkOperator {
  CircleMeasure mu;
  Complex gamma{};
  RationalInner theta0;
  RationalInner theta_gamma;
  ModelSpace model;
  Perturbation u_gamma;
  DefectVectors defects;
  Eigen::MatrixXcd matrix;  // atom basis -> model basis
  PhiStarResiduals residuals;
};
ClarkOperator build_phi_star(const CircleMeasure& mu, Complex gamma);

// Universal representation, valid for any mu:
//   Phi* f(z) = A_gamma(z) f(z) + B_gamma(z) ∫ (f(xi)-f(z))/(1-conj(xi)z) dmu(xi)
// evaluated on the n-point output grid. f must be C1 (given by value and
// derivative with respect to the angle); the difference quotient at xi = z is
// replaced by -i f'(angle). Output is the two-component Sz.-Nagy-Foias element.
struct C1Function {
  std::function<Complex(double)> value;       // angle -> f(e^{i angle})
  std::function<Complex(double)> derivative;  // angle derivative, may be null
};
struct TwoComponent {
  FunctionGrid top, bottom;
};
TwoComponent phi_star_universal(const CircleMeasure& mu, Complex gamma,
                                const C1Function& f, int n,
                                const RadialLimitConfig& cfg = {});

// g_minus = -sqrt(1-|gamma|^2) (1-conj(theta_0))/(1-gamma conj(theta_0)) T_- f,
// the co-analytic de Branges-Rovnyak component of Phi* f, on the n-point grid.
FunctionGrid g_minus(const CircleMeasure& mu, Complex gamma,
                     const MeasureFunction& f, int n,
                     const RadialLimitConfig& cfg = {});

// Inverse Clark operator on the singular part: the value of f = Phi g at an
// atom is the radial limit of (1-conj(gamma)) (1-|gamma|^2)^{-1/2} g1 there.
struct PhiApplyAtomic {
  Eigen::VectorXcd values;   // f at the atoms of mu
  double max_error = 0.0;
  bool any_diverged = false;
};
PhiApplyAtomic phi_apply_atomic(const ClarkOperator& op,
                                const Eigen::VectorXcd& model_coeffs,
                                const RadialLimitConfig& cfg = {});

// Inverse on the absolutely continuous part: where the density w exceeds
// w_floor,
//   f = [ (1-conj(gamma) theta0)/(1-theta0) g1
//       + (1-gamma conj(theta0))/(1-conj(theta0)) g_minus ]
//       / (sqrt(1-|gamma|^2) w).
// Points below the floor yield 0 unless the numerator is significant there,
// which raises Error("inconsistent_element").
FunctionGrid phi_apply_density(const CircleMeasure& mu, Complex gamma,
                               const FunctionGrid& g1, const FunctionGrid& gminus,
                               double w_floor = 1e-8,
                               const RadialLimitConfig& cfg = {});

// Spectral-representation unitary V_alpha : L2(mu) -> L2(mu_alpha),
//   V_alpha f(z) = f(z) + (1-alpha) ∫ (f(xi)-f(z))/(1-conj(xi)z) dmu(xi);
// in the orthonormal atom bases the matrix is
//   (1-alpha) sqrt(m^alpha_i m_j) / (1 - conj(xi_j) z^alpha_i).
struct SpectralRepresentation {
  CircleMeasure mu_alpha;
  Eigen::MatrixXcd matrix;
  double unitarity = 0.0;       // ||V^H V - I||
  double intertwining = 0.0;    // ||M_z V - V U_alpha||
  double normalization = 0.0;   // max(||V b - b^a||, ||conj(a) V b1 - b1^a||)
};
SpectralRepresentation v_alpha_matrix(const CircleMeasure& mu, Complex alpha);

// Clark operator adapted to the alpha family member,
// Phi*_{alpha,gamma} : L2(mu_alpha) -> K_{theta_gamma}; the direct columns use
//   sqrt(1-|gamma|^2) (1 - conj(alpha) theta_0)/(1 - conj(gamma) theta_0) R(e_j mu_alpha)
// and agree with Phi*_gamma composed with V_alpha^H.
struct ClarkOperatorAlpha {
  CircleMeasure mu_alpha;
  Eigen::MatrixXcd matrix;
  Eigen::MatrixXcd u_gamma_alpha;  // U_gamma in the eigenbasis of U_alpha
  SpectralRepresentation v_alpha;
  PhiStarResiduals residuals;      // b: ||Phi_a b^a - c||, b1: ||a Phi_a b1^a - c1||
};
ClarkOperatorAlpha build_phi_star_alpha(const ClarkOperator& base, Complex alpha);

// Rigidity diagnostic: build the V formula from mu into L2(nu) for a trial
// atomic measure nu (atoms disjoint from mu). When the intertwining
// commutation holds and V has trivial kernel, |V^*| = M_{1/h} is diagonal and
// |h|^2 nu recovers mu_alpha; a deleted atom shows up as a kernel.
struct RigidityReport {
  double commutation_residual = 0.0;  // ||V V^H M_z - M_z V V^H||
  double sigma_min = 0.0;
  double sigma_max = 0.0;
  bool kernel = false;                // sigma_min < 1e-10
  std::vector<double> h;              // 1/sqrt((V V^H)_ii)
  CircleMeasure recovered;            // atoms of nu with masses h_i^2 nu_i
  double mhv_unitarity = 0.0;         // ||(M_h V)^H (M_h V) - I|| when square
  bool recovered_valid = false;
  double reference_atom_distance = 0.0;  // vs clark_measure(theta0, alpha)
  double reference_mass_error = 0.0;
};
RigidityReport rigidity_check(const CircleMeasure& mu, const CircleMeasure& nu,
                              Complex alpha);

// f -> conj(theta_0) T_- f / T_- 1 = (conj(theta_0) - 1) T_- f, the bounded
// map of L2(mu) into conj(H2); a component of Phi*_0, so its norm is at most 1.
struct ExteriorTransform {
  FunctionGrid values;
  std::vector<std::uint8_t> diverged;
  double max_error = 0.0;
};
ExteriorTransform exterior_transform(const CircleMeasure& mu,
                                     const MeasureFunction& f, int n,
                                     const RadialLimitConfig& cfg = {});
double exterior_transform_norm(const CircleMeasure& mu, int n,
                               const RadialLimitConfig& cfg = {});

// Weight |B_gamma|^2 of the target space in the kernel-family bound:
//   v_gamma = [ (1-|gamma|^2) |1-theta_0|^2 + |1-gamma|^2 Delta_0^2 ]
//             / |1 - conj(gamma) theta_0|^2  on the n-point grid.
CircleMeasure weight_v_gamma(const CircleMeasure& mu, Complex gamma, int n,
                             const RadialLimitConfig& cfg = {});

// Pointwise residuals of the boundary identity battery on an n-point grid:
// defect_vs_weight, weight_v0, plus_reciprocal, minus_reciprocal,
// boundary_jump, adjoint_bracket, inverse_consistency. Divergent or
// atom-adjacent grid points are masked out.
struct IdentityResult {
  std::string name;
  double max_error = 0.0;
  double tol = 0.0;
  bool pass = false;
};
std::vector<IdentityResult> identity_suite(const CircleMeasure& mu, Complex gamma,
                                           int n, double tol = 1e-6,
                                           const RadialLimitConfig& cfg = {});

}  // namespace clark
