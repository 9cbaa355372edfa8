#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "clark/circle_measure.hpp"

namespace clark {

// Dense polynomial helpers; coefficients are ascending, p(z) = sum c_k z^k.
std::vector<Complex> poly_from_roots(const std::vector<Complex>& roots);
std::vector<Complex> poly_mul(const std::vector<Complex>& a, const std::vector<Complex>& b);
std::vector<Complex> poly_add(const std::vector<Complex>& a, const std::vector<Complex>& b);
std::vector<Complex> poly_scale(const std::vector<Complex>& a, Complex s);
std::vector<Complex> poly_derivative(const std::vector<Complex>& a);
Complex poly_eval(const std::vector<Complex>& a, Complex z);

// Roots via the companion matrix; leading coefficients below 1e-13 of the
// largest magnitude are trimmed. Degree up to a few hundred.
std::vector<Complex> poly_roots(const std::vector<Complex>& coeffs);

// Finite Blaschke product  theta(z) = u * prod (z - a_k)/(1 - conj(a_k) z)
// with |a_k| < 1 and |u| = 1. Default-constructed: constant 1.
class RationalInner {
 public:
  RationalInner() = default;
  RationalInner(std::vector<Complex> zeros, Complex constant);

  int degree() const { return static_cast<int>(zeros_.size()); }
  const std::vector<Complex>& zeros() const { return zeros_; }
  Complex constant() const { return constant_; }
  double max_zero_modulus() const;

  // Stable product evaluation; valid on the closed disk and beyond
  // (poles only at the reflected points 1/conj(a_k)).
  Complex value(Complex z) const;
  std::pair<Complex, Complex> value_and_derivative(Complex z) const;

  std::vector<Complex> numerator() const;    // u * prod (z - a_k)
  std::vector<Complex> denominator() const;  // prod (1 - conj(a_k) z)

 private:
  std::vector<Complex> zeros_;
  Complex constant_{1.0, 0.0};
};

// max_j | |theta(w_j)| - 1 | over a 256-point circle grid.
double innerness_defect(const RationalInner& theta);

}  // namespace clark
