#include "clark/rational_inner.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "clark/circle_measure.hpp"
#include "clark/errors.hpp"

namespace clark {

std::vector<Complex> poly_from_roots(const std::vector<Complex>& roots) {
  std::vector<Complex> p{1.0};
  for (Complex r : roots) {
    // multiply by (z - r)
    p.push_back(0.0);
    for (std::size_t k = p.size() - 1; k >= 1; --k)
      p[k] = p[k - 1] - r * p[k];
    p[0] = -r * p[0];
  }
  return p;
}

std::vector<Complex> poly_mul(const std::vector<Complex>& a,
                              const std::vector<Complex>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<Complex> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

std::vector<Complex> poly_add(const std::vector<Complex>& a,
                              const std::vector<Complex>& b) {
  std::vector<Complex> out(std::max(a.size(), b.size()), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

std::vector<Complex> poly_scale(const std::vector<Complex>& a, Complex s) {
  std::vector<Complex> out = a;
  for (Complex& c : out) c *= s;
  return out;
}

std::vector<Complex> poly_derivative(const std::vector<Complex>& a) {
  if (a.size() <= 1) return {Complex(0.0)};
  std::vector<Complex> out(a.size() - 1);
  for (std::size_t k = 1; k < a.size(); ++k) out[k - 1] = double(k) * a[k];
  return out;
}

Complex poly_eval(const std::vector<Complex>& a, Complex z) {
  Complex acc = 0.0;
  for (std::size_t k = a.size(); k-- > 0;) acc = acc * z + a[k];
  return acc;
}

std::vector<Complex> poly_roots(const std::vector<Complex>& coeffs) {
  // trim negligible leading coefficients relative to the largest one
  double scale = 0.0;
  for (Complex c : coeffs) scale = std::max(scale, std::abs(c));
  if (scale == 0.0) fail("root_finding", "cannot take roots of the zero polynomial");
  std::size_t deg = coeffs.size() - 1;
  while (deg > 0 && std::abs(coeffs[deg]) <= 1e-13 * scale) --deg;
  if (deg == 0) return {};

  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(deg, deg);
  Complex lead = coeffs[deg];
  for (std::size_t k = 0; k < deg; ++k) {
    companion(k, deg - 1) = -coeffs[k] / lead;
    if (k + 1 < deg) companion(k + 1, k) = 1.0;
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  if (solver.info() != Eigen::Success)
    fail("root_finding", "companion matrix eigensolver failed to converge");
  std::vector<Complex> roots(solver.eigenvalues().data(),
                             solver.eigenvalues().data() + deg);
  std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return roots;
}

RationalInner::RationalInner(std::vector<Complex> zeros, Complex constant)
    : zeros_(std::move(zeros)), constant_(constant) {
  if (std::abs(std::abs(constant_) - 1.0) > 1e-8)
    fail("bad_inner", "the unimodular constant must have modulus 1");
  constant_ /= std::abs(constant_);
  for (Complex z : zeros_) {
    if (!(std::abs(z) < 1.0 - 1e-13))
      fail("bad_inner", "Blaschke zeros must lie strictly inside the unit disc");
  }
  std::sort(zeros_.begin(), zeros_.end(), [](Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
}

double RationalInner::max_zero_modulus() const {
  double m = 0.0;
  for (Complex z : zeros_) m = std::max(m, std::abs(z));
  return m;
}

Complex RationalInner::value(Complex z) const {
  Complex acc = constant_;
  for (Complex a : zeros_) acc *= (z - a) / (1.0 - std::conj(a) * z);
  return acc;
}

std::pair<Complex, Complex> RationalInner::value_and_derivative(Complex z) const {
  // logarithmic derivative: theta'/theta = sum 1/(z-a) + conj(a)/(1-conj(a)z),
  // assembled factor by factor so zeros of theta stay harmless.
  Complex val = constant_;
  Complex der = 0.0;
  for (Complex a : zeros_) {
    Complex den = 1.0 - std::conj(a) * z;
    Complex fac = (z - a) / den;
    Complex fac_der = (1.0 - std::norm(a)) / (den * den);
    der = der * fac + val * fac_der;
    val *= fac;
  }
  return {val, der};
}

std::vector<Complex> RationalInner::numerator() const {
  return poly_scale(poly_from_roots(zeros_), constant_);
}

std::vector<Complex> RationalInner::denominator() const {
  std::vector<Complex> p{1.0};
  for (Complex a : zeros_) {
    std::vector<Complex> lin{1.0, -std::conj(a)};
    p = poly_mul(p, lin);
  }
  return p;
}

double innerness_defect(const RationalInner& theta) {
  double worst = 0.0;
  const int n = 256;
  for (int j = 0; j < n; ++j) {
    Complex z = std::polar(1.0, kTwoPi * j / n);
    worst = std::max(worst, std::abs(std::abs(theta.value(z)) - 1.0));
  }
  return worst;
}

}  // namespace clark
