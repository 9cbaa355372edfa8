#pragma once

// Shared rational building blocks for purely atomic probability measures.
// With atoms xi_k of mass m_k:
//   d(z)  = prod_k (1 - conj(xi_k) z)
//   nr(z) = sum_j m_j prod_{k != j} (1 - conj(xi_k) z)
// so that the Cauchy transform R mu = nr / d inside the disc.

#include <vector>

#include "clark/circle_measure.hpp"
#include "clark/errors.hpp"
#include "clark/rational_inner.hpp"

namespace clark::detail {

// loo[j] = prod_{k != j} f[k] and full = prod_k f[k], assembled from prefix and
// suffix products so vanishing factors never require division.
struct LeaveOneOut {
  std::vector<Complex> loo;
  Complex full{1.0};
};

inline LeaveOneOut leave_one_out(const std::vector<Complex>& f) {
  const std::size_t n = f.size();
  LeaveOneOut out;
  out.loo.assign(n, Complex(1.0));
  std::vector<Complex> suffix(n + 1, Complex(1.0));
  for (std::size_t k = n; k-- > 0;) suffix[k] = suffix[k + 1] * f[k];
  Complex prefix = 1.0;
  for (std::size_t j = 0; j < n; ++j) {
    out.loo[j] = prefix * suffix[j + 1];
    prefix *= f[j];
  }
  out.full = prefix;
  return out;
}

struct AtomicForms {
  std::vector<Complex> points;
  std::vector<double> masses;

  explicit AtomicForms(const CircleMeasure& mu) {
    if (!mu.is_atomic())
      fail("not_atomic", "this construction requires a purely atomic measure");
    if (mu.atoms.empty())
      fail("bad_measure", "an atomic measure needs at least one atom");
    for (std::size_t j = 0; j < mu.atoms.size(); ++j) {
      points.push_back(mu.atom_point(j));
      masses.push_back(mu.atoms[j].mass);
    }
  }

  int n() const { return static_cast<int>(points.size()); }

  std::vector<Complex> factors(Complex z) const {
    std::vector<Complex> f(points.size());
    for (std::size_t k = 0; k < points.size(); ++k)
      f[k] = 1.0 - std::conj(points[k]) * z;
    return f;
  }

  Complex d(Complex z) const { return leave_one_out(factors(z)).full; }

  Complex nr(Complex z) const {
    LeaveOneOut l = leave_one_out(factors(z));
    Complex acc = 0.0;
    for (std::size_t j = 0; j < points.size(); ++j) acc += masses[j] * l.loo[j];
    return acc;
  }

  // ascending coefficients of d
  std::vector<Complex> d_coeffs() const {
    std::vector<Complex> p{1.0};
    for (Complex xi : points) p = poly_mul(p, {1.0, -std::conj(xi)});
    return p;
  }

  // ascending coefficients of nr
  std::vector<Complex> nr_coeffs() const {
    std::vector<Complex> acc{0.0};
    for (std::size_t j = 0; j < points.size(); ++j) {
      std::vector<Complex> p{masses[j]};
      for (std::size_t k = 0; k < points.size(); ++k)
        if (k != j) p = poly_mul(p, {1.0, -std::conj(points[k])});
      acc = poly_add(acc, p);
    }
    return acc;
  }
};

}  // namespace clark::detail
