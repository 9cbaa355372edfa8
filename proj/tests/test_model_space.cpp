#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <random>

#include "clark/char_function.hpp"
#include "clark/circle_measure.hpp"
#include "clark/errors.hpp"
#include "clark/function_grid.hpp"
#include "clark/model_space.hpp"
#include "clark/perturbation.hpp"
#include "support/checks.hpp"
#include "support/random_instances.hpp"

using clark::CircleMeasure;
using clark::Complex;
using clark::FunctionGrid;
using clark::kTwoPi;
using clark::ModelSpace;
using clark::RationalInner;
using testsupport::cdist;
using testsupport::error_code;

namespace {

const double kPi = kTwoPi / 2;

// Inner product linear in the first slot: (x, y) = sum_i x_i conj(y_i).
Complex inner_fl(const Eigen::VectorXcd& x, const Eigen::VectorXcd& y) {
  return y.dot(x);
}

Eigen::VectorXcd grid_of(const ModelSpace& ms, const Eigen::VectorXcd& coeffs, int n) {
  return ms.basis_on_grid(n) * coeffs;
}

}  // namespace

TEST_CASE("one- and two-dimensional model spaces") {
  ModelSpace mz = clark::build_model(RationalInner({0.0}, 1.0));  // theta = z
  REQUIRE(mz.degree() == 1);
  CHECK(cdist(mz.compression(0, 0), 0.0) < 1e-14);
  CHECK(cdist(mz.basis_at(Complex(0.3, 0.1))(0), 1.0) < 1e-14);
  clark::DefectVectors dz = clark::defect_vectors(mz);
  CHECK(cdist(dz.c(0), 1.0) < 1e-12);
  CHECK(cdist(dz.c1(0), 1.0) < 1e-12);

  ModelSpace mz2 = clark::build_model(RationalInner({0.0, 0.0}, 1.0));  // z^2
  REQUIRE(mz2.degree() == 2);
  CHECK(cdist(mz2.compression(0, 0), 0.0) < 1e-14);
  CHECK(cdist(mz2.compression(1, 0), 1.0) < 1e-14);
  CHECK(cdist(mz2.compression(0, 1), 0.0) < 1e-14);
  CHECK(cdist(mz2.compression(1, 1), 0.0) < 1e-14);
  clark::DefectVectors d2 = clark::defect_vectors(mz2);
  CHECK(cdist(d2.c(0), 1.0) < 1e-12);   // c(z) = 1
  CHECK(cdist(d2.c1(1), 1.0) < 1e-12);  // c1(z) = z
  CHECK((mz2.compression * d2.c1).norm() < 1e-12);  // M c1 = -theta(0) c = 0

  ModelSpace mb = clark::build_model(RationalInner({0.5}, 1.0));
  CHECK(cdist(mb.compression(0, 0), 0.5) < 1e-12);
  CHECK(mb.gram_error < 1e-10);
}

TEST_CASE("defect vectors span the rank-one defects") {
  std::mt19937 gen(20260825u);
  for (int trial = 0; trial < 5; ++trial) {
    CircleMeasure mu = testsupport::random_atomic(gen, 2 + trial);
    Complex gamma = testsupport::random_gamma(gen, 0.9);
    RationalInner theta =
        clark::mobius_transform(clark::rational_theta0(mu), gamma);
    ModelSpace ms = clark::build_model(theta);
    const int n = ms.degree();
    CHECK(ms.gram_error < 1e-9);

    Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(n, n);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(ms.compression);
    CHECK(svd.singularValues()(0) <= 1.0 + 1e-10);

    clark::DefectVectors dv = clark::defect_vectors(ms);
    CHECK(std::abs(dv.c.norm() - 1.0) < 1e-9);
    CHECK(std::abs(dv.c1.norm() - 1.0) < 1e-9);

    // M c1 = -theta(0) c.
    CHECK((ms.compression * dv.c1 + theta.value(0.0) * dv.c).norm() < 1e-9);

    // c spans range(I - M M^H), c1 spans range(I - M^H M).
    Eigen::MatrixXcd p = eye - ms.compression * ms.compression.adjoint();
    Eigen::MatrixXcd q = eye - ms.compression.adjoint() * ms.compression;
    CHECK((p - (p * dv.c) * dv.c.adjoint()).cwiseAbs().maxCoeff() < 1e-8);
    CHECK((q - (q * dv.c1) * dv.c1.adjoint()).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("defect pairing reproduces gamma") {
  RationalInner theta = clark::mobius_transform(RationalInner({0.0}, 1.0), 0.5);
  ModelSpace ms = clark::build_model(theta);
  clark::DefectVectors dv = clark::defect_vectors(ms);
  CHECK(cdist(inner_fl(ms.compression * dv.c1, dv.c), 0.5) < 1e-10);

  std::mt19937 gen(43u);
  CircleMeasure mu = testsupport::random_atomic(gen, 3);
  Complex gamma = testsupport::random_gamma(gen, 0.9);
  ModelSpace msg = clark::build_model(
      clark::mobius_transform(clark::rational_theta0(mu), gamma));
  clark::DefectVectors dg = clark::defect_vectors(msg);
  CHECK(cdist(inner_fl(msg.compression * dg.c1, dg.c), gamma) < 1e-9);
}

TEST_CASE("compression powers agree with projected shift powers") {
  std::mt19937 gen(47u);
  CircleMeasure mu = testsupport::random_atomic(gen, 4);
  Complex gamma = testsupport::random_gamma(gen, 0.8);
  ModelSpace ms = clark::build_model(
      clark::mobius_transform(clark::rational_theta0(mu), gamma));
  const int n = ms.degree();
  const int grid = std::max(4096, ms.quad_size);
  Eigen::MatrixXcd phi = ms.basis_on_grid(grid);

  Eigen::MatrixXcd mk = Eigen::MatrixXcd::Identity(n, n);
  for (int k = 1; k <= 2 * n + 1; ++k) {
    mk = ms.compression * mk;
    for (int j = 0; j < n; ++j) {
      Eigen::VectorXcd zk_phi(grid);
      for (int g = 0; g < grid; ++g)
        zk_phi(g) = std::polar(1.0, kTwoPi * g * k / grid) * phi(g, j);
      Eigen::VectorXcd projected = phi.adjoint() * zk_phi / double(grid);
      CHECK((projected - mk.col(j)).norm() < 1e-8);
    }
  }
}

TEST_CASE("moment identities of the defect pair") {
  std::mt19937 gen(53u);
  std::vector<CircleMeasure> cases;
  cases.push_back(CircleMeasure::point_masses({{0.0, 0.5}, {kPi, 0.5}}));
  cases.push_back(CircleMeasure::point_masses(
      {{0.0, 1.0 / 3}, {kTwoPi / 3, 1.0 / 3}, {2 * kTwoPi / 3, 1.0 / 3}}));
  for (int trial = 0; trial < 3; ++trial)
    cases.push_back(testsupport::random_atomic(gen, 2 + trial));

  for (const CircleMeasure& mu : cases) {
    Complex gamma = testsupport::random_gamma(gen, 0.85);
    RationalInner theta =
        clark::mobius_transform(clark::rational_theta0(mu), gamma);
    ModelSpace ms = clark::build_model(theta);
    clark::DefectVectors dv = clark::defect_vectors(ms);

    int n = 0;
    while (std::abs(mu.fourier(n + 1)) < 1e-12) ++n;
    Eigen::VectorXcd mnc = dv.c;
    for (int k = 0; k < n; ++k) mnc = ms.compression * mnc;
    CHECK(cdist(inner_fl(dv.c1, mnc), mu.fourier(n + 1)) < 1e-9);

    // (c1, z^n c) = (1-|gamma|^2)^{-1} theta_hat(n+1) for every n >= 0.
    const int grid = std::max(4096, ms.quad_size);
    Eigen::VectorXcd c_grid = grid_of(ms, dv.c, grid);
    Eigen::VectorXcd c1_grid = grid_of(ms, dv.c1, grid);
    for (int k = 0; k <= 4; ++k) {
      Eigen::VectorXcd zkc(grid);
      for (int g = 0; g < grid; ++g)
        zkc(g) = std::polar(1.0, kTwoPi * g * k / grid) * c_grid(g);
      Complex lhs = inner_fl(c1_grid, zkc) / double(grid);
      Complex rhs = clark::theta_fourier(theta, k + 1) / (1.0 - std::norm(gamma));
      CHECK(cdist(lhs, rhs) < 1e-9);
    }
  }
}

TEST_CASE("characteristic function rebuilt from the perturbation") {
  std::mt19937 gen(59u);
  for (int trial = 0; trial < 3; ++trial) {
    CircleMeasure mu = testsupport::random_atomic(gen, 2 + trial);
    Complex gamma = testsupport::random_gamma(gen, 0.9);
    clark::Perturbation p = clark::build_u_gamma(mu, gamma);
    auto [d, dstar] = clark::defect_operators(p);
    const int n = static_cast<int>(mu.atom_count());
    Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(n, n);

    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 16; ++k) {
      Complex z = std::polar(0.8 * u(gen), kTwoPi * u(gen));
      Eigen::VectorXcd resolvent =
          (eye - z * p.matrix.adjoint()).partialPivLu().solve(d * p.b1);
      Eigen::VectorXcd x = -(p.matrix * p.b1) + z * (dstar * resolvent);
      CHECK(cdist(inner_fl(x, p.b), clark::theta_gamma_at(mu, gamma, z)) < 1e-10);
    }
  }
}

TEST_CASE("projection onto the model space") {
  RationalInner theta({0.0, 0.0}, 1.0);  // z^2
  ModelSpace ms = clark::build_model(theta);

  FunctionGrid phi1 = FunctionGrid::sample(64, [](Complex) { return 1.0; });
  double res = 0.0;
  Eigen::VectorXcd c = clark::project_onto_model(ms, phi1, &res);
  CHECK(cdist(c(0), 1.0) < 1e-12);
  CHECK(cdist(c(1), 0.0) < 1e-12);
  CHECK(res < 1e-10);

  // theta * z lies in theta H^2, orthogonal to the model space.
  FunctionGrid tz = FunctionGrid::sample(64, [](Complex z) { return z * z * z; });
  Eigen::VectorXcd zero = clark::project_onto_model(ms, tz, &res);
  CHECK(zero.norm() < 1e-12);
  CHECK(std::abs(res - 1.0) < 1e-10);

  std::mt19937 gen(61u);
  CircleMeasure mu = testsupport::random_atomic(gen, 4);
  ModelSpace msr = clark::build_model(clark::rational_theta0(mu));
  Eigen::VectorXcd coeffs(4);
  coeffs << Complex(0.4, 0.1), Complex(-0.2, 0.3), Complex(0.1, 0.0),
      Complex(0.0, -0.5);
  FunctionGrid f = FunctionGrid::zeros(msr.quad_size);
  f.values = msr.basis_on_grid(msr.quad_size) * coeffs;
  Eigen::VectorXcd back = clark::project_onto_model(msr, f, &res);
  CHECK((back - coeffs).norm() < 1e-9);
  CHECK(res < 1e-9);
}

TEST_CASE("de Branges-Rovnyak transcription") {
  ModelSpace mz = clark::build_model(RationalInner({0.0}, 1.0));
  Eigen::VectorXcd e1 = Eigen::VectorXcd::Ones(1);
  clark::DeBrangesPair pz = clark::to_debranges(mz, e1);
  CHECK(pz.coanalytic_residual < 1e-10);
  CHECK(pz.analytic_residual < 1e-10);
  for (int j = 0; j < pz.g_minus.n; ++j) {
    Complex z = pz.g_minus.point(j);
    CHECK(cdist(pz.g_minus.values(j), std::conj(z)) < 1e-10);
    CHECK(cdist(pz.g_plus.values(j), 1.0) < 1e-10);
  }
  CHECK(pz.left_norm == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(pz.right_norm == doctest::Approx(1.0).epsilon(1e-7));

  ModelSpace mz2 = clark::build_model(RationalInner({0.0, 0.0}, 1.0));
  Eigen::VectorXcd e2(2);
  e2 << 0.0, 1.0;
  clark::DeBrangesPair p2 = clark::to_debranges(mz2, e2);
  for (int j = 0; j < p2.g_minus.n; ++j) {
    Complex z = p2.g_minus.point(j);
    CHECK(cdist(p2.g_minus.values(j), std::conj(z) * std::conj(z) * z) < 1e-10);
  }

  std::mt19937 gen(67u);
  CircleMeasure mu = testsupport::random_atomic(gen, 5);
  Complex gamma = testsupport::random_gamma(gen, 0.9);
  ModelSpace msr = clark::build_model(
      clark::mobius_transform(clark::rational_theta0(mu), gamma));
  Eigen::VectorXcd g(5);
  g << Complex(0.3, 0.2), Complex(0.0, -0.4), Complex(0.5, 0.0), Complex(0.1, 0.1),
      Complex(-0.2, 0.3);
  g.normalize();
  clark::DeBrangesPair pr = clark::to_debranges(msr, g);
  CHECK(pr.analytic_residual < 1e-7);
  CHECK(pr.coanalytic_residual < 1e-7);
  CHECK(pr.left_norm == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::abs(pr.right_norm - pr.left_norm) < 1e-7);
}

TEST_CASE("pointwise Moore-Penrose weight") {
  Eigen::Matrix2cd w, pinv;
  Complex t(0.3, -0.2);
  w << 1.0, t, std::conj(t), 1.0;
  pinv = clark::w_theta_pinv(t);
  CHECK((w * pinv - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() < 1e-12);

  Complex tu = std::polar(1.0, 0.77);  // |theta| = 1: rank-one weight
  Eigen::Matrix2cd wu;
  wu << 1.0, tu, std::conj(tu), 1.0;
  Eigen::Matrix2cd pu = clark::w_theta_pinv(tu);
  CHECK((wu * pu * wu - wu).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((pu * wu * pu - pu).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(cdist(pu(0, 0), 0.25) < 1e-12);
  CHECK(cdist(pu(0, 1), 0.25 * tu) < 1e-12);
}

TEST_CASE("model construction guards") {
  CHECK(error_code([] { clark::build_model(RationalInner()); }) == "bad_inner");
  CHECK(error_code([] {
          clark::build_model(RationalInner({0.0}, 1.0), 1.0 + 1e-9);
        }) == "quadrature_resolution");
}
