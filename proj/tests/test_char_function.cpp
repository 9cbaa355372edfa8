#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "clark/char_function.hpp"
#include "clark/circle_measure.hpp"
#include "clark/errors.hpp"
#include "clark/rational_inner.hpp"
#include "support/checks.hpp"
#include "support/random_instances.hpp"

using clark::CircleMeasure;
using clark::Complex;
using clark::kTwoPi;
using clark::RationalInner;
using testsupport::cdist;
using testsupport::error_code;

namespace {

const double kPi = kTwoPi / 2;

// Truncated power-series arithmetic (ascending coefficients, length K+1).
std::vector<Complex> series_mul(const std::vector<Complex>& a,
                                const std::vector<Complex>& b, int K) {
  std::vector<Complex> out(static_cast<std::size_t>(K) + 1, Complex(0.0));
  for (int i = 0; i <= K; ++i)
    for (int j = 0; i + j <= K && j <= K; ++j)
      if (i < static_cast<int>(a.size()) && j < static_cast<int>(b.size()))
        out[static_cast<std::size_t>(i + j)] +=
            a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)];
  return out;
}

std::vector<Complex> series_inv(const std::vector<Complex>& a, int K) {
  std::vector<Complex> out(static_cast<std::size_t>(K) + 1, Complex(0.0));
  out[0] = 1.0 / a[0];
  for (int m = 1; m <= K; ++m) {
    Complex acc = 0.0;
    for (int j = 1; j <= m; ++j)
      if (j < static_cast<int>(a.size()))
        acc += a[static_cast<std::size_t>(j)] * out[static_cast<std::size_t>(m - j)];
    out[static_cast<std::size_t>(m)] = -acc / a[0];
  }
  return out;
}

// Taylor coefficients of theta_gamma at 0, straight from the moment series:
// theta_gamma = -gamma + (1-|gamma|^2) R1 / (1 + (1-conj(gamma)) R1).
std::vector<Complex> theta_series_oracle(const CircleMeasure& mu, Complex gamma,
                                         int K) {
  std::vector<Complex> r1(static_cast<std::size_t>(K) + 1, Complex(0.0));
  for (int k = 1; k <= K; ++k) r1[static_cast<std::size_t>(k)] = mu.fourier(k);
  std::vector<Complex> den = r1;
  for (auto& v : den) v *= (1.0 - std::conj(gamma));
  den[0] += 1.0;
  std::vector<Complex> num = r1;
  for (auto& v : num) v *= (1.0 - std::norm(gamma));
  std::vector<Complex> out = series_mul(num, series_inv(den, K), K);
  out[0] -= gamma;
  return out;
}

}  // namespace

TEST_CASE("theta_0 closed forms") {
  CircleMeasure leb = CircleMeasure::lebesgue(64);
  CircleMeasure delta1 = CircleMeasure::point_masses({{0.0, 1.0}});
  CircleMeasure half = CircleMeasure::point_masses({{0.0, 0.5}, {kPi, 0.5}});
  CircleMeasure skew = CircleMeasure::point_masses({{0.0, 0.75}, {kPi, 0.25}});

  std::mt19937 gen(20260825u);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 24; ++k) {
    Complex lam = std::polar(0.95 * u(gen), kTwoPi * u(gen));
    CHECK(cdist(clark::theta0_at(leb, lam), 0.0) < 1e-12);
    CHECK(cdist(clark::theta0_at(delta1, lam), lam) < 1e-12);
    CHECK(cdist(clark::theta0_at(half, lam), lam * lam) < 1e-12);
    CHECK(cdist(clark::theta0_at(skew, lam),
                lam * (lam + 0.5) / (1.0 + 0.5 * lam)) < 1e-12);
  }
}

TEST_CASE("theta_gamma values and Moebius consistency") {
  CircleMeasure delta1 = CircleMeasure::point_masses({{0.0, 1.0}});
  CHECK(cdist(clark::theta_gamma_at(delta1, 0.5, 0.5), 0.0) < 1e-14);

  std::mt19937 gen(17u);
  for (int trial = 0; trial < 5; ++trial) {
    CircleMeasure mu = testsupport::random_atomic(gen, 2 + trial);
    Complex gamma = testsupport::random_gamma(gen);
    CHECK(cdist(clark::theta_gamma_at(mu, gamma, 0.0), -gamma) < 1e-12);

    RationalInner tg = clark::mobius_transform(clark::rational_theta0(mu), gamma);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 6; ++k) {
      Complex lam = std::polar(0.9 * u(gen), kTwoPi * u(gen));
      Complex via_measure = clark::theta_gamma_at(mu, gamma, lam);
      CHECK(cdist(via_measure, tg.value(lam)) < 1e-12);
      CHECK(std::abs(via_measure) <= 1.0 + 1e-12);
      CHECK(cdist(clark::theta_gamma_at(mu, 0.0, lam),
                  clark::theta0_at(mu, lam)) < 1e-14);
    }
  }
}

TEST_CASE("rational theta_0 structure") {
  CircleMeasure delta1 = CircleMeasure::point_masses({{0.0, 1.0}});
  RationalInner t1 = clark::rational_theta0(delta1);
  REQUIRE(t1.degree() == 1);
  CHECK(std::abs(t1.zeros()[0]) < 1e-14);
  CHECK(cdist(t1.constant(), 1.0) < 1e-12);
  CHECK(cdist(t1.value(Complex(0.3, 0.1)), Complex(0.3, 0.1)) < 1e-13);

  CircleMeasure half = CircleMeasure::point_masses({{0.0, 0.5}, {kPi, 0.5}});
  RationalInner t2 = clark::rational_theta0(half);
  REQUIRE(t2.degree() == 2);
  CHECK(std::abs(t2.zeros()[0]) < 1e-12);
  CHECK(std::abs(t2.zeros()[1]) < 1e-12);
  CHECK(cdist(t2.value(0.4), 0.16) < 1e-12);

  CircleMeasure skew = CircleMeasure::point_masses({{0.0, 0.75}, {kPi, 0.25}});
  RationalInner t3 = clark::rational_theta0(skew);
  REQUIRE(t3.degree() == 2);
  double zmax = 0.0, zmin = 1.0;
  for (Complex z : t3.zeros()) {
    zmax = std::max(zmax, std::abs(z));
    zmin = std::min(zmin, std::abs(z));
  }
  CHECK(zmin < 1e-12);                       // one zero at the origin
  CHECK(std::abs(zmax - 0.5) < 1e-12);       // the other at -1/2
  CHECK(cdist(t3.value(0.3), 0.3 * 0.8 / 1.15) < 1e-12);
  CHECK(clark::innerness_defect(t3) < 1e-10);

  // Coefficient and factored forms agree on the circle.
  std::vector<Complex> num = t3.numerator();
  std::vector<Complex> den = t3.denominator();
  for (int j = 0; j < 16; ++j) {
    Complex z = std::polar(1.0, kTwoPi * j / 16);
    CHECK(cdist(clark::poly_eval(num, z) / clark::poly_eval(den, z), t3.value(z)) <
          1e-12);
  }

  CHECK(error_code([] {
          clark::rational_theta0(CircleMeasure::lebesgue(32));
        }) == "not_atomic");
}

TEST_CASE("Moebius transform of an inner function") {
  RationalInner theta({0.0}, 1.0);  // theta = z
  RationalInner shifted = clark::mobius_transform(theta, 0.5);
  REQUIRE(shifted.degree() == 1);
  CHECK(std::abs(shifted.zeros()[0] - 0.5) < 1e-13);
  Complex z(0.2, 0.6);
  CHECK(cdist(shifted.value(z), (z - 0.5) / (1.0 - 0.5 * z)) < 1e-13);
  CHECK(clark::innerness_defect(shifted) < 1e-10);

  // |gamma| = 1 collapses to the unimodular constant -gamma.
  RationalInner flat = clark::mobius_transform(theta, Complex(0.0, 1.0));
  CHECK(flat.degree() == 0);
  CHECK(cdist(flat.value(0.7), Complex(0.0, -1.0)) < 1e-13);

  std::mt19937 gen(23u);
  CircleMeasure mu = testsupport::random_atomic(gen, 4);
  RationalInner t0 = clark::rational_theta0(mu);
  Complex gamma = testsupport::random_gamma(gen);
  RationalInner tg = clark::mobius_transform(t0, gamma);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 8; ++k) {
    Complex lam = std::polar(1.2 * u(gen), kTwoPi * u(gen));
    Complex direct = (t0.value(lam) - gamma) / (1.0 - std::conj(gamma) * t0.value(lam));
    CHECK(cdist(tg.value(lam), direct) < 1e-11);
  }
}

TEST_CASE("Taylor coefficients of theta_gamma") {
  CircleMeasure delta1 = CircleMeasure::point_masses({{0.0, 1.0}});
  CHECK(cdist(clark::theta_fourier(delta1, 0.0, 1), 1.0) < 1e-12);
  CHECK(cdist(clark::theta_fourier(delta1, 0.0, 2), 0.0) < 1e-12);
  CHECK(cdist(clark::theta_fourier(delta1, 0.5, 1), 0.75) < 1e-12);
  CHECK(cdist(clark::theta_fourier(delta1, 0.5, 2), 0.375) < 1e-12);
  CHECK(cdist(clark::theta_fourier(delta1, 0.5, 0), -0.5) < 1e-12);

  CircleMeasure half = CircleMeasure::point_masses({{0.0, 0.5}, {kPi, 0.5}});
  CHECK(cdist(clark::theta_fourier(half, Complex(0.3, -0.2), 1), 0.0) < 1e-12);

  // Independent oracle: power-series division of the moment series.
  std::mt19937 gen(29u);
  for (int trial = 0; trial < 4; ++trial) {
    CircleMeasure mu = trial % 2 == 0 ? testsupport::random_atomic(gen, 3 + trial)
                                      : testsupport::random_density(gen, 256);
    Complex gamma = testsupport::random_gamma(gen, 0.8);
    std::vector<Complex> oracle = theta_series_oracle(mu, gamma, 6);
    for (int k = 0; k <= 6; ++k)
      CHECK(cdist(clark::theta_fourier(mu, gamma, k),
                  oracle[static_cast<std::size_t>(k)]) < 1e-10);
    if (mu.is_atomic()) {
      RationalInner tg =
          clark::mobius_transform(clark::rational_theta0(mu), gamma);
      for (int k = 0; k <= 6; ++k)
        CHECK(cdist(clark::theta_fourier(tg, k),
                    oracle[static_cast<std::size_t>(k)]) < 1e-10);
    }
  }

  // First nonvanishing moment: theta_gamma_hat(n+1) = (1-|gamma|^2) mu_hat(n+1)
  // at the smallest n with mu_hat(n+1) != 0.
  for (int trial = 0; trial < 3; ++trial) {
    CircleMeasure mu = testsupport::random_atomic(gen, 2 + trial);
    Complex gamma = testsupport::random_gamma(gen, 0.9);
    int n = 0;
    while (std::abs(mu.fourier(n + 1)) < 1e-12) ++n;
    CHECK(cdist(clark::theta_fourier(mu, gamma, n + 1),
                (1.0 - std::norm(gamma)) * mu.fourier(n + 1)) < 1e-10);
  }

  CHECK(error_code([] {
          clark::theta_fourier(CircleMeasure::lebesgue(32), 0.0, 20);
        }) == "bad_frequency");
}

TEST_CASE("boundary values of theta_0 and the defect") {
  CircleMeasure skew = CircleMeasure::point_masses({{0.0, 0.75}, {kPi, 0.25}});
  clark::BoundaryData bd = clark::boundary_theta0(skew, 64);
  for (int j = 0; j < 64; ++j) {
    CHECK(std::abs(std::abs(bd.theta0.values(j)) - 1.0) < 1e-12);
    CHECK(bd.delta0(j) < 1e-6);
  }

  CircleMeasure cosw = testsupport::cosine_density(256, 0.5);
  clark::BoundaryData bw = clark::boundary_theta0(cosw, 256);
  for (int j = 0; j < 256; ++j) {
    double w = 1.0 + 0.5 * std::cos(kTwoPi * j / 256);
    Complex t = bw.theta0.values(j);
    CHECK(std::abs(t) <= 1.0 + 1e-12);
    // Delta_0^2 = |1 - theta_0|^2 w on the circle.
    CHECK(std::abs(bw.delta0(j) * bw.delta0(j) - std::norm(1.0 - t) * w) < 1e-12);
  }

  // Mixed measure: the radial path must flag the atom and keep |theta_0| <= 1.
  CircleMeasure mixed = CircleMeasure::point_masses({{0.0, 0.5}});
  mixed.density = clark::Density{64, std::vector<double>(64, 0.5)};
  clark::canonicalize(mixed);
  clark::BoundaryData bm = clark::boundary_theta0(mixed, 64);
  CHECK(bm.diverged[0]);
  for (int j = 2; j < 62; ++j) {
    CHECK(std::abs(bm.theta0.values(j)) <= 1.0 + 1e-8);
    CHECK(bm.delta0(j) >= 0.0);
  }
}

TEST_CASE("pointwise Delta_gamma") {
  CircleMeasure skew = CircleMeasure::point_masses({{0.0, 0.75}, {kPi, 0.25}});
  CHECK(clark::delta_gamma_at(skew, 0.3, std::polar(1.0, 0.9)) < 1e-7);

  CircleMeasure leb = CircleMeasure::lebesgue(32);
  CHECK(clark::delta_gamma_at(leb, 0.0, std::polar(1.0, 1.1)) ==
        doctest::Approx(1.0).epsilon(1e-9));
  CHECK(clark::delta_gamma_at(leb, 0.5, std::polar(1.0, 2.2)) ==
        doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-9));

  CHECK(error_code([&] { clark::delta_gamma_at(leb, 0.0, Complex(0.5, 0.0)); }) ==
        "bad_radius");
}

TEST_CASE("guards for the characteristic function") {
  CircleMeasure leb = CircleMeasure::lebesgue(32);
  CHECK(error_code([&] { clark::theta0_at(leb, Complex(1.0, 0.0)); }) ==
        "boundary_guard");
  CHECK(error_code([&] {
          clark::theta_gamma_at(leb, Complex(1.5, 0.0), Complex(0.0, 0.0));
        }) == "bad_gamma");
  CHECK(error_code([] { RationalInner bad({Complex(1.5, 0.0)}, 1.0); }) ==
        "bad_inner");
  CHECK(error_code([] { RationalInner bad({Complex(0.5, 0.0)}, 2.0); }) ==
        "bad_inner");
}
