#include "clark/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "clark/errors.hpp"

namespace clark {

Perturbation build_u_gamma(const CircleMeasure& mu, Complex gamma) {
  if (!mu.is_atomic())
    fail("not_atomic", "U_gamma acts on L2 of a purely atomic measure");
  require_probability(mu);
  if (!(std::abs(gamma) <= 1.0 + 1e-12))
    fail("bad_gamma", "the coupling gamma must lie in the closed unit disc");

  const int n = static_cast<int>(mu.atoms.size());
  Perturbation p;
  p.gamma = gamma;
  p.b.resize(n);
  p.b1.resize(n);
  p.atom_points.resize(n);
  for (int k = 0; k < n; ++k) {
    Complex xi = mu.atom_point(static_cast<std::size_t>(k));
    double root_mass = std::sqrt(mu.atoms[static_cast<std::size_t>(k)].mass);
    p.atom_points[k] = xi;
    p.b[k] = root_mass;
    p.b1[k] = std::conj(xi) * root_mass;
  }
  p.matrix = p.atom_points.asDiagonal();
  p.matrix += (gamma - 1.0) * (p.b * p.b1.adjoint());
  return p;
}

std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd> defect_operators(const Perturbation& p) {
  double s = std::sqrt(std::max(0.0, 1.0 - std::norm(p.gamma)));
  return {s * (p.b1 * p.b1.adjoint()), s * (p.b * p.b.adjoint())};
}

CircleMeasure spectral_measure(const Perturbation& p) {
  if (std::abs(std::abs(p.gamma) - 1.0) > 1e-12)
    fail("bad_gamma", "spectral measures are taken for unitary U_gamma, |gamma| = 1");
  const Eigen::Index n = p.matrix.rows();

  Eigen::ComplexSchur<Eigen::MatrixXcd> schur(p.matrix, true);
  if (schur.info() != Eigen::Success)
    fail("internal_check", "Schur decomposition failed to converge");
  double off = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j)
      off = std::max(off, std::abs(schur.matrixT()(i, j)));
  if (off > 1e-8)
    fail("internal_check", "U_gamma is not normal: Schur form is not diagonal");

  std::vector<Atom> atoms(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) {
    Complex lam = schur.matrixT()(k, k);
    atoms[static_cast<std::size_t>(k)].angle = std::arg(lam);
    atoms[static_cast<std::size_t>(k)].mass =
        std::norm(schur.matrixU().col(k).dot(p.b));
  }

  if (n > 1) {
    std::vector<double> sorted;
    for (const Atom& a : atoms) sorted.push_back(a.angle);
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t k = 0; k < sorted.size(); ++k) {
      double next = sorted[(k + 1) % sorted.size()];
      if (circular_distance(sorted[k], next) < 1e-10)
        fail("eigenvalue_multiplicity",
             "eigenvalues of U_gamma are too close to separate");
    }
  }

  double total = 0.0;
  for (const Atom& a : atoms) total += a.mass;
  if (std::abs(total - 1.0) > 1e-10)
    fail("internal_check", "spectral masses of a cyclic vector must sum to 1");

  return CircleMeasure::point_masses(std::move(atoms));
}

double cyclicity_margin(const Perturbation& p) {
  const Eigen::Index n = p.matrix.rows();
  Eigen::MatrixXcd krylov(n, n);
  Eigen::VectorXcd v = p.b;
  for (Eigen::Index k = 0; k < n; ++k) {
    krylov.col(k) = v;
    if (k + 1 < n) v = p.matrix * v;
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(krylov);
  return svd.singularValues()[n - 1];
}

}  // namespace clark
