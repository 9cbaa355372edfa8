#include "clark/char_function.hpp"

#include <algorithm>
#include <cmath>

#include "atomic_forms.hpp"
#include "clark/errors.hpp"

namespace clark {

namespace {

constexpr double kBoundaryGuard = 1e-8;

void require_gamma(Complex gamma) {
  if (!(std::abs(gamma) <= 1.0 + 1e-12))
    fail("bad_gamma", "the coupling gamma must lie in the closed unit disc");
}

Complex stable_theta0(const detail::AtomicForms& forms, Complex z) {
  detail::LeaveOneOut l = detail::leave_one_out(forms.factors(z));
  Complex nr = 0.0;
  for (std::size_t j = 0; j < forms.masses.size(); ++j)
    nr += forms.masses[j] * l.loo[j];
  return (nr - l.full) / nr;
}

}  // namespace

Complex theta0_at(const CircleMeasure& mu, Complex lambda) {
  require_probability(mu);
  if (std::abs(lambda) >= 1.0 - kBoundaryGuard)
    fail("boundary_guard",
         "theta_0 is evaluated inside the disc, |lambda| <= 1 - 1e-8");
  if (mu.is_atomic()) return stable_theta0(detail::AtomicForms(mu), lambda);
  CauchyTransform ct(mu);
  Complex r = ct.r(lambda);
  Complex a = (r - 1.0) / r;
  Complex r2 = 2.0 * r - ct.mass();
  Complex b = (r2 - 1.0) / (r2 + 1.0);
  if (std::abs(a - b) > 1e-9 * std::max(1.0, std::abs(a)))
    fail("internal_check", "theta_0 evaluations via R and R2 disagree");
  return a;
}

Complex theta_gamma_at(const CircleMeasure& mu, Complex gamma, Complex lambda) {
  require_gamma(gamma);
  Complex t0 = theta0_at(mu, lambda);
  return (t0 - gamma) / (1.0 - std::conj(gamma) * t0);
}

RationalInner rational_theta0(const CircleMeasure& mu) {
  require_probability(mu);
  detail::AtomicForms forms(mu);
  const int n = forms.n();

  std::vector<Complex> num = poly_add(forms.nr_coeffs(),
                                      poly_scale(forms.d_coeffs(), -1.0));
  std::vector<Complex> roots = poly_roots(num);
  if (static_cast<int>(roots.size()) != n)
    fail("root_finding", "theta_0 numerator must have exactly n roots");

  // Newton polish against the stable factored evaluation of N_R - D.
  std::vector<Complex> dnum = poly_derivative(num);
  for (Complex& z : roots) {
    for (int it = 0; it < 3; ++it) {
      detail::LeaveOneOut l = detail::leave_one_out(forms.factors(z));
      Complex val = -l.full;
      for (std::size_t j = 0; j < forms.masses.size(); ++j)
        val += forms.masses[j] * l.loo[j];
      Complex der = poly_eval(dnum, z);
      if (std::abs(der) < 1e-14) break;
      Complex step = val / der;
      if (!(std::abs(step) < 0.5)) break;
      z -= step;
    }
    if (!(std::abs(z) < 1.0 - 1e-13))
      fail("root_finding", "a zero of theta_0 landed outside the open disc");
  }

  // N_R - D = c prod(z - a_k) with c read off the leading coefficient.
  Complex c = (n % 2 == 0) ? Complex(-1.0) : Complex(1.0);
  for (Complex xi : forms.points) c *= std::conj(xi);

  RationalInner theta(roots, c);
  if (innerness_defect(theta) > 1e-7)
    fail("internal_check", "constructed theta_0 is not unimodular on the circle");
  return theta;
}

RationalInner mobius_transform(const RationalInner& theta, Complex gamma) {
  require_gamma(gamma);
  if (std::abs(gamma) < 1e-15) return theta;
  if (std::abs(gamma) > 1.0 - 1e-12)
    return RationalInner({}, -gamma / std::abs(gamma));

  const std::vector<Complex>& zeros = theta.zeros();
  const int n = theta.degree();
  if (n == 0) {
    // constant theta: the transform stays constant
    Complex w = (theta.constant() - gamma) /
                (1.0 - std::conj(gamma) * theta.constant());
    if (std::abs(std::abs(w) - 1.0) > 1e-10)
      fail("bad_inner", "Moebius transform of a non-unimodular constant");
    return RationalInner({}, w);
  }

  std::vector<Complex> num = poly_add(theta.numerator(),
                                      poly_scale(theta.denominator(), -gamma));
  std::vector<Complex> roots = poly_roots(num);
  if (static_cast<int>(roots.size()) != n)
    fail("root_finding", "Moebius numerator must keep the Blaschke degree");

  for (Complex& z : roots) {
    for (int it = 0; it < 3; ++it) {
      // f = c prod(z - a_k) - gamma prod(1 - conj(a_k) z), factored evaluation
      Complex p1 = theta.constant(), d1 = 0.0;
      Complex p2 = 1.0, d2 = 0.0;
      for (Complex a : zeros) {
        d1 = d1 * (z - a) + p1;
        p1 *= (z - a);
        d2 = d2 * (1.0 - std::conj(a) * z) + p2 * (-std::conj(a));
        p2 *= (1.0 - std::conj(a) * z);
      }
      Complex val = p1 - gamma * p2;
      Complex der = d1 - gamma * d2;
      if (std::abs(der) < 1e-14) break;
      Complex step = val / der;
      if (!(std::abs(step) < 0.5)) break;
      z -= step;
    }
    if (!(std::abs(z) < 1.0 - 1e-13))
      fail("root_finding", "a perturbed zero landed outside the open disc");
  }

  Complex t0 = theta.value(Complex(0.0));
  Complex c = theta.constant() * (1.0 - gamma * std::conj(t0)) /
              (1.0 - std::conj(gamma) * t0);

  RationalInner out(roots, c);
  if (innerness_defect(out) > 1e-7)
    fail("internal_check", "Moebius transform lost innerness on the circle");
  return out;
}

Complex theta_fourier(const RationalInner& theta, int k) {
  if (k < 0) return 0.0;
  int n = 256;
  while (n < 4 * (k + 1)) n *= 2;
  const double r = 0.5;
  Complex acc = 0.0;
  for (int j = 0; j < n; ++j) {
    Complex z = std::polar(r, kTwoPi * j / n);
    acc += theta.value(z) * std::polar(1.0, -kTwoPi * j * k / n);
  }
  return acc / (double(n) * std::pow(r, k));
}

Complex theta_fourier(const CircleMeasure& mu, Complex gamma, int k) {
  require_gamma(gamma);
  require_probability(mu);
  if (k < 0) return 0.0;
  if (mu.is_atomic())
    return theta_fourier(mobius_transform(rational_theta0(mu), gamma), k);

  const int n = mu.density ? mu.density->n : 512;
  require_grid_size(n);
  if (k >= n / 4)
    fail("bad_frequency",
         "theta coefficients need k < n/4 on an n-point density grid");
  const double r = 0.5;
  CauchyTransform ct(mu);
  Eigen::VectorXcd rv = ct.circle_values(n, r);
  FunctionGrid tg = FunctionGrid::zeros(n);
  for (int j = 0; j < n; ++j) {
    Complex r1 = rv[j] - 1.0;
    tg.values[j] = (-gamma + (1.0 - std::norm(gamma)) * r1 /
                                 (1.0 + (1.0 - std::conj(gamma)) * r1));
  }
  Eigen::VectorXcd bins = fourier_bins(tg);
  return bins[k] / std::pow(r, k);
}

BoundaryData boundary_theta0(const CircleMeasure& mu, int n,
                             const RadialLimitConfig& cfg) {
  require_probability(mu);
  require_grid_size(n);
  BoundaryData out;
  out.theta0 = FunctionGrid::zeros(n);
  out.delta0 = Eigen::VectorXd::Zero(n);
  out.diverged.assign(static_cast<std::size_t>(n), 0);

  if (mu.is_atomic()) {
    RationalInner theta = rational_theta0(mu);
    for (int j = 0; j < n; ++j) {
      Complex t = theta.value(std::polar(1.0, kTwoPi * j / n));
      out.theta0.values[j] = t;
      out.delta0[j] = std::sqrt(std::max(0.0, 1.0 - std::norm(t)));
    }
    return out;
  }

  if (mu.atoms.empty() && mu.density) {
    // purely absolutely continuous: R has the exact boundary value
    // sum_{k>=0} w_hat(k) e^{ikt}, no radial limits needed
    FunctionGrid w{mu.density->n, Eigen::VectorXcd(mu.density->n)};
    for (int j = 0; j < mu.density->n; ++j) w.values[j] = mu.density->samples[j];
    FunctionGrid r_bd = analytic_projection(resample_grid(w, n));
    for (int j = 0; j < n; ++j) {
      Complex t = (r_bd.values[j] - 1.0) / r_bd.values[j];
      out.theta0.values[j] = t;
      out.delta0[j] = std::sqrt(std::max(0.0, 1.0 - std::norm(t)));
    }
    return out;
  }

  CauchyTransform ct(mu);
  CauchyTransform::BoundaryGrid bg = ct.boundary_grid(n, Side::inside, cfg);
  for (int j = 0; j < n; ++j) {
    Complex r = bg.values.values[j];
    Complex t = (r - 1.0) / r;
    out.theta0.values[j] = t;
    out.delta0[j] = std::sqrt(std::max(0.0, 1.0 - std::norm(t)));
    out.diverged[static_cast<std::size_t>(j)] = bg.diverged[static_cast<std::size_t>(j)];
  }
  out.max_error = 4.0 * bg.max_error;  // |d theta_0 / dR| = 1/|R|^2 <= 4
  return out;
}

double delta_gamma_at(const CircleMeasure& mu, Complex gamma, Complex z,
                      const RadialLimitConfig& cfg) {
  require_gamma(gamma);
  require_probability(mu);
  double mod = std::abs(z);
  if (std::abs(mod - 1.0) > 1e-9)
    fail("bad_radius", "Delta_gamma is a boundary weight, |z| must be 1");
  z /= mod;

  Complex t0;
  if (mu.is_atomic()) {
    t0 = rational_theta0(mu).value(z);
  } else {
    CauchyTransform ct(mu);
    RadialLimit lim = ct.boundary(z, Side::inside, cfg);
    if (lim.diverged) return 0.0;  // atom-like point: |theta_0| -> 1
    t0 = (lim.value - 1.0) / lim.value;
  }
  double d0 = std::sqrt(std::max(0.0, 1.0 - std::norm(t0)));
  return std::sqrt(1.0 - std::norm(gamma)) * d0 /
         std::abs(1.0 - std::conj(gamma) * t0);
}

}  // namespace clark
