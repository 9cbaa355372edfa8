#include "clark/model_space.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "clark/circle_measure.hpp"
#include "clark/errors.hpp"

namespace clark {

namespace {

constexpr int kChunk = 4096;
constexpr int kMaxQuad = 1 << 18;

int pow2_at_least(double x) {
  int n = 16;
  while (double(n) < x) {
    if (n >= kMaxQuad)
      fail("quadrature_resolution",
           "poles too close to the circle for the quadrature budget");
    n *= 2;
  }
  return n;
}

// columns phi_1..phi_n at the chunk of points z, plus theta = c B_n
void basis_chunk(const RationalInner& theta, const Eigen::VectorXcd& z,
                 Eigen::MatrixXcd& phi, Eigen::VectorXcd& theta_values) {
  const std::vector<Complex>& a = theta.zeros();
  const Eigen::Index m = z.size();
  const int n = static_cast<int>(a.size());
  phi.resize(m, n);
  Eigen::VectorXcd running = Eigen::VectorXcd::Ones(m);
  for (int i = 0; i < n; ++i) {
    double s = std::sqrt(1.0 - std::norm(a[i]));
    Eigen::ArrayXcd den = 1.0 - std::conj(a[i]) * z.array();
    phi.col(i) = s * running.array() / den;
    running.array() *= (z.array() - a[i]) / den;
  }
  theta_values = theta.constant() * running;
}

}  // namespace

Eigen::VectorXcd ModelSpace::basis_at(Complex z) const {
  const std::vector<Complex>& a = theta.zeros();
  Eigen::VectorXcd out(a.size());
  Complex running = 1.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    Complex den = 1.0 - std::conj(a[i]) * z;
    out[static_cast<Eigen::Index>(i)] =
        std::sqrt(1.0 - std::norm(a[i])) * running / den;
    running *= (z - a[i]) / den;
  }
  return out;
}

Eigen::MatrixXcd ModelSpace::basis_on_grid(int n) const {
  require_grid_size(n);
  Eigen::VectorXcd z(n);
  for (int j = 0; j < n; ++j) z[j] = std::polar(1.0, kTwoPi * j / n);
  Eigen::MatrixXcd phi;
  Eigen::VectorXcd tv;
  basis_chunk(theta, z, phi, tv);
  return phi;
}

ModelSpace build_model(const RationalInner& theta, double extra_pole_modulus) {
  const int n = theta.degree();
  if (n == 0)
    fail("bad_inner", "a constant inner function has a trivial model space");
  if (!(extra_pole_modulus > 1.0 + 2e-13))
    fail("quadrature_resolution",
         "additional poles must lie strictly outside the unit circle");

  double rho = extra_pole_modulus;
  double mz = theta.max_zero_modulus();
  if (mz > 0.0) rho = std::min(rho, 1.0 / mz);

  double requested = std::max(1024.0, 32.0 * n);
  if (std::isfinite(rho)) {
    if (!(rho > 1.0 + 2e-13))
      fail("quadrature_resolution", "a pole touches the unit circle");
    requested = std::max(requested, 40.0 / std::log(rho));
  }
  const int quad = pow2_at_least(requested);

  ModelSpace ms;
  ms.theta = theta;
  ms.quad_size = quad;

  // exact lower-triangular compression (see header)
  const std::vector<Complex>& a = theta.zeros();
  ms.compression = Eigen::MatrixXcd::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    ms.compression(j, j) = a[static_cast<std::size_t>(j)];
    Complex tail = std::sqrt(1.0 - std::norm(a[static_cast<std::size_t>(j)]));
    for (int i = j + 1; i < n; ++i) {
      ms.compression(i, j) =
          tail * std::sqrt(1.0 - std::norm(a[static_cast<std::size_t>(i)]));
      tail *= -std::conj(a[static_cast<std::size_t>(i)]);
    }
  }

  Complex theta0 = theta.value(Complex(0.0));
  Eigen::MatrixXcd gram = Eigen::MatrixXcd::Zero(n, n);
  Eigen::VectorXcd c1 = Eigen::VectorXcd::Zero(n);
  Eigen::MatrixXcd phi;
  Eigen::VectorXcd tv;
  for (int start = 0; start < quad; start += kChunk) {
    const int len = std::min(kChunk, quad - start);
    Eigen::VectorXcd z(len);
    for (int j = 0; j < len; ++j)
      z[j] = std::polar(1.0, kTwoPi * (start + j) / quad);
    basis_chunk(theta, z, phi, tv);
    gram.noalias() += phi.adjoint() * phi;
    // <(theta - theta(0))/z, phi_i>, with 1/z = conj(z) on the circle
    Eigen::VectorXcd q = (tv.array() - theta0) * z.array().conjugate();
    c1.noalias() += phi.adjoint() * q;
  }
  gram /= double(quad);
  c1 /= double(quad);
  ms.gram_error = (gram - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
  ms.c1_integrals = c1;
  return ms;
}

DefectVectors defect_vectors(const ModelSpace& ms) {
  Complex theta0 = ms.theta.value(Complex(0.0));
  double defect = 1.0 - std::norm(theta0);
  if (!(defect > 1e-14))
    fail("bad_inner", "theta(0) is unimodular, the defect vectors vanish");
  double kappa = 1.0 / std::sqrt(defect);

  const int n = ms.degree();
  DefectVectors dv;
  dv.c.resize(n);
  Eigen::VectorXcd phi0 = ms.basis_at(Complex(0.0));
  for (int i = 0; i < n; ++i) dv.c[i] = kappa * std::conj(phi0[i]);
  dv.c1 = kappa * ms.c1_integrals;
  return dv;
}

Eigen::VectorXcd project_onto_model(const ModelSpace& ms, const FunctionGrid& f,
                                    double* relative_residual) {
  Eigen::MatrixXcd phi = ms.basis_on_grid(f.n);
  Eigen::VectorXcd coeffs = phi.adjoint() * f.values / double(f.n);
  if (relative_residual) {
    double fn = f.values.norm();
    *relative_residual =
        fn > 0.0 ? (f.values - phi * coeffs).norm() / fn : 0.0;
  }
  return coeffs;
}

Eigen::Matrix2cd w_theta_pinv(Complex theta_value) {
  Eigen::Matrix2cd w;
  w << 1.0, theta_value, std::conj(theta_value), 1.0;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(w);
  Eigen::Matrix2cd out = Eigen::Matrix2cd::Zero();
  for (int k = 0; k < 2; ++k) {
    double lam = es.eigenvalues()[k];
    if (lam > 1e-12)
      out += (1.0 / lam) * es.eigenvectors().col(k) *
             es.eigenvectors().col(k).adjoint();
  }
  return out;
}

DeBrangesPair to_debranges(const ModelSpace& ms, const Eigen::VectorXcd& coeffs) {
  if (coeffs.size() != ms.degree())
    fail("inconsistent_element", "coefficient count must match the model degree");
  int n = 1024;
  while (n < 32 * ms.degree()) n *= 2;

  Eigen::VectorXcd z(n);
  for (int j = 0; j < n; ++j) z[j] = std::polar(1.0, kTwoPi * j / n);
  Eigen::MatrixXcd phi;
  Eigen::VectorXcd tv;
  basis_chunk(ms.theta, z, phi, tv);

  FunctionGrid g1 = FunctionGrid::zeros(n);
  g1.values = phi * coeffs;
  FunctionGrid g2 = FunctionGrid::zeros(n);

  FunctionGrid tb = FunctionGrid::zeros(n);
  tb.values = tv;
  DeBrangesPair out = to_debranges_grid(tb, g1, g2);
  // for inner theta the pair norm must reproduce the coefficient norm
  out.left_norm = coeffs.norm();
  return out;
}

DeBrangesPair to_debranges_grid(const FunctionGrid& theta_boundary,
                                const FunctionGrid& g1, const FunctionGrid& g2) {
  const int n = theta_boundary.n;
  if (g1.n != n || g2.n != n)
    fail("bad_grid", "the pair and theta must share one grid");

  DeBrangesPair out;
  out.g_plus = g1;
  out.g_minus = FunctionGrid::zeros(n);
  double right = 0.0;
  for (int j = 0; j < n; ++j) {
    Complex t = theta_boundary.values[j];
    double delta = std::sqrt(std::max(0.0, 1.0 - std::norm(t)));
    out.g_minus.values[j] =
        std::conj(t) * g1.values[j] + delta * g2.values[j];
    Eigen::Vector2cd pair(out.g_plus.values[j], out.g_minus.values[j]);
    right += (pair.adjoint() * w_theta_pinv(t) * pair)(0, 0).real();
  }
  out.left_norm = std::sqrt(g1.values.squaredNorm() / n +
                            g2.values.squaredNorm() / n);
  out.right_norm = std::sqrt(std::max(0.0, right / n));
  out.analytic_residual = analytic_residual(out.g_plus);
  out.coanalytic_residual = coanalytic_residual(out.g_minus);
  return out;
}

}  // namespace clark
