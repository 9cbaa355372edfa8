#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace clark {

using Complex = std::complex<double>;

inline constexpr double kTwoPi = 6.2831853071795864769;

// Fourier convention used throughout the toolkit:
//
//     mu_hat(k) = ∫ conj(xi)^k dmu(xi),
//
// so that the weighted Cauchy series reads R1(mu)(z) = sum_{k>=1} mu_hat(k) z^k.

struct Atom {
  double angle = 0.0;  // radians in [0, 2*pi)
  double mass = 0.0;   // strictly positive
};

// Absolutely continuous part, sampled on the uniform angular grid:
// samples[j] is the density w(e^{i*2*pi*j/n}) with respect to normalized
// Lebesgue measure dm (so the a.c. mass is the sample mean).
struct Density {
  int n = 0;
  std::vector<double> samples;
};

// Finite positive Borel measure on the unit circle: finitely many atoms plus
// an optional sampled density. Atoms are kept sorted by angle.
struct CircleMeasure {
  std::vector<Atom> atoms;
  std::optional<Density> density;

  static CircleMeasure point_masses(std::vector<Atom> atoms);
  static CircleMeasure lebesgue(int n);
  static CircleMeasure with_density(int n, std::vector<double> samples);

  bool is_atomic() const { return !density.has_value(); }
  std::size_t atom_count() const { return atoms.size(); }
  Complex atom_point(std::size_t j) const;

  double total_mass() const;
  void normalize();  // rescale to total mass one

  // mu_hat(k) = ∫ conj(xi)^k dmu; the density contributes its trapezoid sum,
  // exact for band-limited densities with |k| < n/2.
  Complex fourier(long long k) const;
};

// Folds angles into [0, 2*pi), sorts atoms, and checks the measure contract:
// positive masses, pairwise distinct atom angles (circular distance > 1e-12),
// density sample count and nonnegativity. Throws Error on violation.
void canonicalize(CircleMeasure& m);

// Throws unless total mass is 1 within tol.
void require_probability(const CircleMeasure& m, double tol = 1e-10);

// Distance between angles along the circle, in [0, pi].
double circular_distance(double a, double b);

// Smallest circular distance between atoms of a and atoms of b
// (+infinity when either side has no atoms).
double atom_separation(const CircleMeasure& a, const CircleMeasure& b);

bool atoms_disjoint(const CircleMeasure& a, const CircleMeasure& b, double tol);

// JSON schema: {"atoms":[{"angle":float,"mass":float},...],
//               "density":{"n":int,"samples":[float,...]} | null}
CircleMeasure measure_from_json(const std::string& text);
std::string measure_to_json(const CircleMeasure& m, int indent = -1);

}  // namespace clark
