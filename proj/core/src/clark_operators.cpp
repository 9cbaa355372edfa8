#include "clark/clark_operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include <Eigen/QR>
#include <Eigen/SVD>

#include "atomic_forms.hpp"
#include "clark/errors.hpp"

namespace clark {

namespace {

constexpr int kChunk = 4096;

Complex unit_alpha(Complex alpha) {
  double m = std::abs(alpha);
  if (std::abs(m - 1.0) > 1e-12)
    fail("bad_alpha", "the family parameter alpha must be unimodular");
  return alpha / m;
}

void require_gamma_open(Complex gamma) {
  if (!(std::abs(gamma) <= 1.0 - 1e-8))
    fail("bad_gamma", "this construction needs |gamma| <= 1 - 1e-8");
}

// Takenaka-Malmquist columns phi_1..phi_n at a chunk of points.
void tm_chunk(const RationalInner& theta, const Eigen::VectorXcd& z,
              Eigen::MatrixXcd& phi) {
  const std::vector<Complex>& a = theta.zeros();
  phi.resize(z.size(), static_cast<Eigen::Index>(a.size()));
  Eigen::VectorXcd running = Eigen::VectorXcd::Ones(z.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    Eigen::ArrayXcd den = 1.0 - std::conj(a[i]) * z.array();
    phi.col(static_cast<Eigen::Index>(i)).array() =
        std::sqrt(1.0 - std::norm(a[i])) * running.array() / den;
    running.array() *= (z.array() - a[i]) / den;
  }
}

// Columns scale * sqrt(weights[j]) * prod_{k != j}(1 - conj(points[k]) z) / G(z)
// with G(z) = prod_m (1 - conj(gzeros[m]) z); prefix/suffix products keep the
// leave-one-out factors division-free across the circle points.
void column_chunk(const std::vector<Complex>& points,
                  const std::vector<double>& weights, double scale,
                  const std::vector<Complex>& gzeros,
                  const Eigen::VectorXcd& z, Eigen::MatrixXcd& h) {
  const std::size_t n = points.size();
  const Eigen::Index m = z.size();
  h.resize(m, static_cast<Eigen::Index>(n));
  Eigen::MatrixXcd pre(m, static_cast<Eigen::Index>(n + 1));
  Eigen::MatrixXcd suf(m, static_cast<Eigen::Index>(n + 1));
  pre.col(0).setOnes();
  for (std::size_t k = 0; k < n; ++k)
    pre.col(static_cast<Eigen::Index>(k + 1)).array() =
        pre.col(static_cast<Eigen::Index>(k)).array() *
        (1.0 - std::conj(points[k]) * z.array());
  suf.col(static_cast<Eigen::Index>(n)).setOnes();
  for (std::size_t k = n; k-- > 0;)
    suf.col(static_cast<Eigen::Index>(k)).array() =
        suf.col(static_cast<Eigen::Index>(k + 1)).array() *
        (1.0 - std::conj(points[k]) * z.array());
  Eigen::ArrayXcd g = Eigen::ArrayXcd::Ones(m);
  for (Complex b : gzeros) g *= (1.0 - std::conj(b) * z.array());
  for (std::size_t j = 0; j < n; ++j)
    h.col(static_cast<Eigen::Index>(j)).array() =
        (scale * std::sqrt(weights[j])) * pre.col(static_cast<Eigen::Index>(j)).array() *
        suf.col(static_cast<Eigen::Index>(j + 1)).array() / g;
}

Eigen::VectorXcd chunk_points(int quad, int start, int len) {
  Eigen::VectorXcd z(len);
  for (int j = 0; j < len; ++j)
    z[j] = std::polar(1.0, kTwoPi * (start + j) / quad);
  return z;
}

// Phi columns accumulated into the model basis by trapezoid quadrature.
Eigen::MatrixXcd project_columns(const RationalInner& theta_gamma, int quad,
                                 const std::vector<Complex>& points,
                                 const std::vector<double>& weights,
                                 double scale) {
  const int n = static_cast<int>(points.size());
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(theta_gamma.degree(), n);
  Eigen::MatrixXcd phi, h;
  for (int start = 0; start < quad; start += kChunk) {
    const int len = std::min(kChunk, quad - start);
    Eigen::VectorXcd z = chunk_points(quad, start, len);
    tm_chunk(theta_gamma, z, phi);
    column_chunk(points, weights, scale, theta_gamma.zeros(), z, h);
    acc.noalias() += phi.adjoint() * h;
  }
  return acc / double(quad);
}

// density of mu resampled onto the n-point grid (zeros when purely atomic)
Eigen::VectorXd density_on_grid(const CircleMeasure& mu, int n) {
  if (!mu.density) return Eigen::VectorXd::Zero(n);
  FunctionGrid w{mu.density->n, Eigen::VectorXcd(mu.density->n)};
  for (int j = 0; j < mu.density->n; ++j) w.values[j] = mu.density->samples[j];
  return resample_grid(w, n).values.real();
}

struct TGrid {
  FunctionGrid values;
  std::vector<std::uint8_t> diverged;
  double max_error = 0.0;
};

// T_+ f (side = inside) or T_- f (side = outside) on the n-point grid.
// A purely absolutely continuous measure uses the exact Fourier projections
// of f*w; otherwise radial limits of the Cauchy transform are extrapolated.
TGrid t_grid(const CircleMeasure& mu, const MeasureFunction& f, int n,
             Side side, const RadialLimitConfig& cfg) {
  require_grid_size(n);
  if (mu.atoms.empty() && mu.density) {
    if (!f.density_values || f.density_values->n != mu.density->n)
      fail("inconsistent_element",
           "the measure function must be sampled on the density grid");
    FunctionGrid g = *f.density_values;
    for (int j = 0; j < g.n; ++j) g.values[j] *= mu.density->samples[j];
    g = resample_grid(g, n);
    TGrid out;
    if (side == Side::inside) {
      out.values = analytic_projection(g);
    } else {
      out.values = coanalytic_projection(g);
      out.values.values = -out.values.values;
    }
    out.diverged.assign(static_cast<std::size_t>(n), 0);
    return out;
  }
  CauchyTransform ct(mu, f);
  CauchyTransform::BoundaryGrid bg = ct.boundary_grid(n, side, cfg);
  return TGrid{std::move(bg.values), std::move(bg.diverged), bg.max_error};
}

// grid points within `steps` spacings of an atom
std::vector<std::uint8_t> atom_mask(const CircleMeasure& mu, int n, int steps) {
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(n), 0);
  const double width = steps * kTwoPi / n;
  for (const Atom& a : mu.atoms) {
    int center = static_cast<int>(std::llround(a.angle / (kTwoPi / n)));
    for (int d = -steps; d <= steps; ++d) {
      int j = ((center + d) % n + n) % n;
      if (circular_distance(kTwoPi * j / n, a.angle) <= width)
        mask[static_cast<std::size_t>(j)] = 1;
    }
  }
  return mask;
}

void merge_mask(std::vector<std::uint8_t>& into,
                const std::vector<std::uint8_t>& from) {
  for (std::size_t j = 0; j < into.size() && j < from.size(); ++j)
    if (from[j]) into[j] = 1;
}

}  // namespace

CircleMeasure clark_measure(const RationalInner& theta0, Complex alpha) {
  alpha = unit_alpha(alpha);
  const int n = theta0.degree();
  if (n == 0)
    fail("bad_inner", "a constant inner function carries no Clark family");

  std::vector<Complex> num =
      poly_add(theta0.numerator(), poly_scale(theta0.denominator(), -alpha));
  std::vector<Complex> roots = poly_roots(num);
  if (static_cast<int>(roots.size()) != n)
    fail("root_finding", "the level set theta_0 = alpha must have n points");

  for (Complex& z : roots) {
    for (int it = 0; it < 3; ++it) {
      auto [v, d] = theta0.value_and_derivative(z);
      if (std::abs(d) < 1e-14) break;
      Complex step = (v - alpha) / d;
      if (!(std::abs(step) < 0.5)) break;
      z -= step;
    }
    if (std::abs(std::abs(z) - 1.0) > 1e-8)
      fail("root_finding", "a Clark atom strayed from the unit circle");
    z /= std::abs(z);
  }

  const int samples = std::max(32, 4 * n);
  for (double radius : {0.75, 0.5, 0.85, 0.6}) {
    Eigen::MatrixXd a(2 * samples, n);
    Eigen::VectorXd rhs(2 * samples);
    for (int i = 0; i < samples; ++i) {
      Complex lam = std::polar(radius, kTwoPi * i / samples);
      Complex target = 1.0 / (1.0 - std::conj(alpha) * theta0.value(lam));
      rhs[i] = target.real();
      rhs[samples + i] = target.imag();
      for (int k = 0; k < n; ++k) {
        Complex kern = 1.0 / (1.0 - std::conj(roots[static_cast<std::size_t>(k)]) * lam);
        a(i, k) = kern.real();
        a(samples + i, k) = kern.imag();
      }
    }
    Eigen::VectorXd masses = a.colPivHouseholderQr().solve(rhs);
    if ((a * masses - rhs).norm() > 1e-9 * rhs.norm()) continue;
    bool positive = true;
    double total = 0.0;
    for (int k = 0; k < n; ++k) {
      if (!(masses[k] > 0.0)) positive = false;
      total += masses[k];
    }
    if (!positive || std::abs(total - 1.0) > 1e-8) continue;

    std::vector<Atom> atoms(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
      atoms[static_cast<std::size_t>(k)].angle =
          std::arg(roots[static_cast<std::size_t>(k)]);
      atoms[static_cast<std::size_t>(k)].mass = masses[k] / total;
    }
    return CircleMeasure::point_masses(std::move(atoms));
  }
  fail("mass_conditioning",
       "no sampling radius produced a positive unit-mass solution");
}

std::vector<double> clark_masses_from_derivative(const RationalInner& theta0,
                                                 const std::vector<Complex>& atoms) {
  std::vector<double> out;
  for (Complex z : atoms) {
    auto [v, d] = theta0.value_and_derivative(z);
    (void)v;
    if (!(std::abs(d) > 1e-14))
      fail("root_finding", "theta_0 has a critical point at a Clark atom");
    out.push_back(1.0 / std::abs(d));
  }
  return out;
}

ClarkOperator build_phi_star(const CircleMeasure& mu, Complex gamma) {
  require_gamma_open(gamma);
  require_probability(mu);
  detail::AtomicForms forms(mu);

  ClarkOperator op;
  op.mu = mu;
  op.gamma = gamma;
  op.theta0 = rational_theta0(mu);
  op.theta_gamma = mobius_transform(op.theta0, gamma);
  op.model = build_model(op.theta_gamma);
  op.u_gamma = build_u_gamma(mu, gamma);
  op.defects = defect_vectors(op.model);

  double s = std::sqrt(1.0 - std::norm(gamma));
  op.matrix = project_columns(op.theta_gamma, op.model.quad_size, forms.points,
                              forms.masses, s);

  const int n = forms.n();
  op.residuals.unitarity = operator_norm(
      op.matrix.adjoint() * op.matrix - Eigen::MatrixXcd::Identity(n, n));
  op.residuals.intertwining = operator_norm(op.model.compression * op.matrix -
                                            op.matrix * op.u_gamma.matrix);
  op.residuals.normalization_b = (op.matrix * op.u_gamma.b - op.defects.c).norm();
  op.residuals.normalization_b1 =
      (op.matrix * op.u_gamma.b1 - op.defects.c1).norm();
  return op;
}

TwoComponent phi_star_universal(const CircleMeasure& mu, Complex gamma,
                                const C1Function& f, int n,
                                const RadialLimitConfig& cfg) {
  require_gamma_open(gamma);
  require_probability(mu);
  require_grid_size(n);
  if (!f.value) fail("inconsistent_element", "f needs a value callback");

  BoundaryData bd = boundary_theta0(mu, n, cfg);
  const double s = std::sqrt(1.0 - std::norm(gamma));

  Eigen::VectorXcd f_grid(n);
  for (int j = 0; j < n; ++j) f_grid[j] = f.value(kTwoPi * j / n);
  Eigen::VectorXcd f_deriv = Eigen::VectorXcd::Zero(n);
  std::vector<std::uint8_t> have_deriv(static_cast<std::size_t>(n), 0);
  auto deriv_at = [&](int j) -> Complex {
    if (!have_deriv[static_cast<std::size_t>(j)]) {
      if (!f.derivative)
        fail("missing_derivative",
             "the difference quotient at a coinciding node needs f'");
      f_deriv[j] = f.derivative(kTwoPi * j / n);
      have_deriv[static_cast<std::size_t>(j)] = 1;
    }
    return f_deriv[j];
  };

  std::vector<Complex> atom_pts;
  std::vector<double> atom_mass;
  std::vector<Complex> atom_f;
  for (std::size_t k = 0; k < mu.atoms.size(); ++k) {
    atom_pts.push_back(mu.atom_point(k));
    atom_mass.push_back(mu.atoms[k].mass);
    atom_f.push_back(f.value(mu.atoms[k].angle));
  }
  int nd = 0;
  std::vector<Complex> dens_pts;
  std::vector<Complex> dens_f;
  if (mu.density) {
    nd = mu.density->n;
    for (int q = 0; q < nd; ++q) {
      dens_pts.push_back(std::polar(1.0, kTwoPi * q / nd));
      dens_f.push_back(f.value(kTwoPi * q / nd));
    }
  }

  TwoComponent out;
  out.top = FunctionGrid::zeros(n);
  out.bottom = FunctionGrid::zeros(n);
  for (int j = 0; j < n; ++j) {
    Complex z = std::polar(1.0, kTwoPi * j / n);
    Complex dq = 0.0;
    for (std::size_t k = 0; k < atom_pts.size(); ++k) {
      Complex den = 1.0 - std::conj(atom_pts[k]) * z;
      if (std::abs(den) < 1e-9)
        dq += atom_mass[k] * (Complex(0, -1) * deriv_at(j));
      else
        dq += atom_mass[k] * (atom_f[k] - f_grid[j]) / den;
    }
    if (nd > 0) {
      Complex acc = 0.0;
      for (int q = 0; q < nd; ++q) {
        Complex den = 1.0 - std::conj(dens_pts[static_cast<std::size_t>(q)]) * z;
        double w = mu.density->samples[static_cast<std::size_t>(q)];
        if (std::abs(den) < 1e-9)
          acc += w * (Complex(0, -1) * deriv_at(j));
        else
          acc += w * (dens_f[static_cast<std::size_t>(q)] - f_grid[j]) / den;
      }
      dq += acc / double(nd);
    }

    Complex t0 = bd.theta0.values[j];
    double d0 = bd.delta0[j];
    Complex den = 1.0 - std::conj(gamma) * t0;
    double aden = std::abs(den);
    Complex a_top = s / den;
    Complex a_bottom = std::conj(gamma) * d0 / aden;
    Complex b_top = s * (1.0 - t0) / den;
    Complex b_bottom = (std::conj(gamma) - 1.0) * d0 / aden;

    out.top.values[j] = a_top * f_grid[j] + b_top * dq;
    out.bottom.values[j] = a_bottom * f_grid[j] + b_bottom * dq;
  }
  return out;
}

FunctionGrid g_minus(const CircleMeasure& mu, Complex gamma,
                     const MeasureFunction& f, int n,
                     const RadialLimitConfig& cfg) {
  require_gamma_open(gamma);
  require_probability(mu);
  BoundaryData bd = boundary_theta0(mu, n, cfg);
  TGrid tm = t_grid(mu, f, n, Side::outside, cfg);
  const double s = std::sqrt(1.0 - std::norm(gamma));
  FunctionGrid out = FunctionGrid::zeros(n);
  for (int j = 0; j < n; ++j) {
    Complex tbar = std::conj(bd.theta0.values[j]);
    out.values[j] = -s * (1.0 - tbar) / (1.0 - gamma * tbar) * tm.values.values[j];
  }
  return out;
}

PhiApplyAtomic phi_apply_atomic(const ClarkOperator& op,
                                const Eigen::VectorXcd& model_coeffs,
                                const RadialLimitConfig& cfg) {
  if (model_coeffs.size() != op.model.degree())
    fail("inconsistent_element", "coefficient count must match the model degree");
  const double s = std::sqrt(1.0 - std::norm(op.gamma));
  const Complex factor = (1.0 - std::conj(op.gamma)) / s;

  PhiApplyAtomic out;
  out.values.resize(static_cast<Eigen::Index>(op.mu.atoms.size()));
  auto g1 = [&](Complex lam) -> Complex {
    return op.model.basis_at(lam).cwiseProduct(model_coeffs).sum();
  };
  for (std::size_t k = 0; k < op.mu.atoms.size(); ++k) {
    RadialLimit lim = radial_limit(g1, op.mu.atom_point(k), Side::inside, cfg);
    out.values[static_cast<Eigen::Index>(k)] = factor * lim.value;
    out.max_error = std::max(out.max_error, lim.error * std::abs(factor));
    if (lim.diverged) out.any_diverged = true;
  }
  return out;
}

FunctionGrid phi_apply_density(const CircleMeasure& mu, Complex gamma,
                               const FunctionGrid& g1, const FunctionGrid& gminus,
                               double w_floor, const RadialLimitConfig& cfg) {
  require_gamma_open(gamma);
  require_probability(mu);
  if (g1.n != gminus.n) fail("bad_grid", "the pair must share one grid");
  const int n = g1.n;
  BoundaryData bd = boundary_theta0(mu, n, cfg);
  Eigen::VectorXd w = density_on_grid(mu, n);
  const double s = std::sqrt(1.0 - std::norm(gamma));

  Eigen::VectorXcd numer(n);
  for (int j = 0; j < n; ++j) {
    Complex t0 = bd.theta0.values[j];
    Complex tbar = std::conj(t0);
    numer[j] = (1.0 - std::conj(gamma) * t0) * (1.0 - tbar) * g1.values[j] +
               (1.0 - gamma * tbar) * (1.0 - t0) * gminus.values[j];
  }
  double numer_scale = numer.cwiseAbs().maxCoeff();

  FunctionGrid out = FunctionGrid::zeros(n);
  for (int j = 0; j < n; ++j) {
    Complex t0 = bd.theta0.values[j];
    double gap = std::norm(1.0 - t0);
    if (w[j] > w_floor && gap > 1e-12) {
      out.values[j] = numer[j] / (s * w[j] * gap);
    } else {
      if (std::abs(numer[j]) > 1e-6 * (1.0 + numer_scale))
        fail("inconsistent_element",
             "the pair carries mass where the density vanishes");
      out.values[j] = 0.0;
    }
  }
  return out;
}

SpectralRepresentation v_alpha_matrix(const CircleMeasure& mu, Complex alpha) {
  alpha = unit_alpha(alpha);
  require_probability(mu);
  detail::AtomicForms src(mu);
  const int n = src.n();

  SpectralRepresentation rep;
  if (std::abs(alpha - 1.0) <= 1e-12) {
    rep.mu_alpha = mu;
    rep.matrix = Eigen::MatrixXcd::Identity(n, n);
    return rep;
  }

  RationalInner theta0 = rational_theta0(mu);
  rep.mu_alpha = clark_measure(theta0, alpha);
  detail::AtomicForms dst(rep.mu_alpha);

  rep.matrix.resize(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      rep.matrix(i, j) = (1.0 - alpha) *
                         std::sqrt(dst.masses[static_cast<std::size_t>(i)] *
                                   src.masses[static_cast<std::size_t>(j)]) /
                         (1.0 - std::conj(src.points[static_cast<std::size_t>(j)]) *
                                    dst.points[static_cast<std::size_t>(i)]);

  Eigen::VectorXcd b(n), b1(n), ba(n), b1a(n), za(n);
  for (int k = 0; k < n; ++k) {
    b[k] = std::sqrt(src.masses[static_cast<std::size_t>(k)]);
    b1[k] = std::conj(src.points[static_cast<std::size_t>(k)]) * b[k];
    ba[k] = std::sqrt(dst.masses[static_cast<std::size_t>(k)]);
    b1a[k] = std::conj(dst.points[static_cast<std::size_t>(k)]) * ba[k];
    za[k] = dst.points[static_cast<std::size_t>(k)];
  }

  rep.unitarity = operator_norm(rep.matrix.adjoint() * rep.matrix -
                                Eigen::MatrixXcd::Identity(n, n));
  Eigen::MatrixXcd u_alpha = build_u_gamma(mu, alpha).matrix;
  rep.intertwining =
      operator_norm(za.asDiagonal() * rep.matrix - rep.matrix * u_alpha);
  // V b = b^alpha and conj(alpha) V b1 = b1^alpha (b1 = U^* b maps through
  // U_alpha^* b = conj(alpha) b1).
  rep.normalization = std::max((rep.matrix * b - ba).norm(),
                               (std::conj(alpha) * (rep.matrix * b1) - b1a).norm());
  return rep;
}

ClarkOperatorAlpha build_phi_star_alpha(const ClarkOperator& base, Complex alpha) {
  alpha = unit_alpha(alpha);
  ClarkOperatorAlpha out;
  out.v_alpha = v_alpha_matrix(base.mu, alpha);
  out.mu_alpha = out.v_alpha.mu_alpha;
  detail::AtomicForms forms(out.mu_alpha);
  const int n = forms.n();

  double s = std::sqrt(1.0 - std::norm(base.gamma));
  out.matrix = project_columns(base.theta_gamma, base.model.quad_size,
                               forms.points, forms.masses, s);

  Eigen::VectorXcd ba(n), b1a(n), za(n);
  for (int k = 0; k < n; ++k) {
    za[k] = forms.points[static_cast<std::size_t>(k)];
    ba[k] = std::sqrt(forms.masses[static_cast<std::size_t>(k)]);
    b1a[k] = std::conj(za[k]) * ba[k];
  }
  // U_gamma = U_alpha + (gamma - alpha) b b1^*, and V carries b to b^alpha
  // and b1 to alpha b1^alpha, so the transported rank-one factor picks up
  // conj(alpha) from the adjoint.
  out.u_gamma_alpha = za.asDiagonal();
  out.u_gamma_alpha +=
      std::conj(alpha) * (base.gamma - alpha) * (ba * b1a.adjoint());

  out.residuals.unitarity = operator_norm(
      out.matrix.adjoint() * out.matrix - Eigen::MatrixXcd::Identity(n, n));
  out.residuals.intertwining = operator_norm(
      base.model.compression * out.matrix - out.matrix * out.u_gamma_alpha);
  out.residuals.normalization_b = (out.matrix * ba - base.defects.c).norm();
  // Phi_alpha b1^alpha = Phi^* (V^H b1^alpha) = conj(alpha) c1.
  out.residuals.normalization_b1 =
      (alpha * (out.matrix * b1a) - base.defects.c1).norm();
  return out;
}

RigidityReport rigidity_check(const CircleMeasure& mu, const CircleMeasure& nu,
                              Complex alpha) {
  alpha = unit_alpha(alpha);
  require_probability(mu);
  detail::AtomicForms src(mu);
  detail::AtomicForms trial(nu);
  if (!atoms_disjoint(mu, nu, 1e-8))
    fail("atom_collision", "trial atoms must stay away from the atoms of mu");

  const int rows = trial.n();
  const int cols = src.n();
  Eigen::MatrixXcd v(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      v(i, j) = (1.0 - alpha) *
                std::sqrt(trial.masses[static_cast<std::size_t>(i)] *
                          src.masses[static_cast<std::size_t>(j)]) /
                (1.0 - std::conj(src.points[static_cast<std::size_t>(j)]) *
                           trial.points[static_cast<std::size_t>(i)]);

  RigidityReport rep;
  Eigen::MatrixXcd c = v * v.adjoint();
  Eigen::VectorXcd y(rows);
  for (int i = 0; i < rows; ++i) y[i] = trial.points[static_cast<std::size_t>(i)];
  rep.commutation_residual =
      operator_norm(c * y.asDiagonal() - y.asDiagonal() * c);

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(v);
  rep.sigma_max = svd.singularValues()[0];
  rep.sigma_min = svd.singularValues()[std::min(rows, cols) - 1];
  if (rows < cols) rep.sigma_min = 0.0;  // rank < domain dimension
  rep.kernel = rep.sigma_min < 1e-10;

  std::vector<Atom> atoms(static_cast<std::size_t>(rows));
  rep.h.resize(static_cast<std::size_t>(rows));
  for (int i = 0; i < rows; ++i) {
    double diag = c(i, i).real();
    double h = diag > 0.0 ? 1.0 / std::sqrt(diag) : 0.0;
    rep.h[static_cast<std::size_t>(i)] = h;
    atoms[static_cast<std::size_t>(i)].angle = nu.atoms[static_cast<std::size_t>(i)].angle;
    atoms[static_cast<std::size_t>(i)].mass =
        h * h * nu.atoms[static_cast<std::size_t>(i)].mass;
  }
  rep.recovered = CircleMeasure::point_masses(std::move(atoms));

  if (rows == cols) {
    Eigen::VectorXcd hvec(rows);
    for (int i = 0; i < rows; ++i) hvec[i] = rep.h[static_cast<std::size_t>(i)];
    Eigen::MatrixXcd mhv = hvec.asDiagonal() * v;
    rep.mhv_unitarity = operator_norm(mhv.adjoint() * mhv -
                                      Eigen::MatrixXcd::Identity(cols, cols));
  }
  rep.recovered_valid = (rows == cols) && !rep.kernel &&
                        rep.commutation_residual <= 1e-8 &&
                        rep.mhv_unitarity <= 1e-6;

  CircleMeasure ref = clark_measure(rational_theta0(mu), alpha);
  if (ref.atoms.size() == rep.recovered.atoms.size()) {
    double dist = 0.0, mass_err = 0.0;
    for (const Atom& r : ref.atoms) {
      double best = std::numeric_limits<double>::infinity();
      double best_mass = 0.0;
      for (const Atom& got : rep.recovered.atoms) {
        double d = circular_distance(r.angle, got.angle);
        if (d < best) {
          best = d;
          best_mass = got.mass;
        }
      }
      dist = std::max(dist, best);
      mass_err = std::max(mass_err, std::abs(best_mass - r.mass));
    }
    rep.reference_atom_distance = dist;
    rep.reference_mass_error = mass_err;
  } else {
    rep.reference_atom_distance = std::numeric_limits<double>::infinity();
    rep.reference_mass_error = std::numeric_limits<double>::infinity();
  }
  return rep;
}

ExteriorTransform exterior_transform(const CircleMeasure& mu,
                                     const MeasureFunction& f, int n,
                                     const RadialLimitConfig& cfg) {
  require_probability(mu);
  BoundaryData bd = boundary_theta0(mu, n, cfg);
  TGrid tm = t_grid(mu, f, n, Side::outside, cfg);

  ExteriorTransform out;
  out.values = FunctionGrid::zeros(n);
  out.diverged = bd.diverged;
  merge_mask(out.diverged, tm.diverged);
  for (int j = 0; j < n; ++j)
    out.values.values[j] =
        (std::conj(bd.theta0.values[j]) - 1.0) * tm.values.values[j];
  out.max_error =
      2.0 * tm.max_error + bd.max_error * tm.values.max_abs();
  return out;
}

double exterior_transform_norm(const CircleMeasure& mu, int n,
                               const RadialLimitConfig& cfg) {
  require_probability(mu);
  require_grid_size(n);
  BoundaryData bd = boundary_theta0(mu, n, cfg);

  Eigen::VectorXcd q(n), z(n);
  for (int j = 0; j < n; ++j) {
    q[j] = std::conj(bd.theta0.values[j]) - 1.0;
    z[j] = std::polar(1.0, kTwoPi * j / n);
  }

  const int na = static_cast<int>(mu.atoms.size());
  Eigen::MatrixXcd atom_cols(n, na);
  for (int k = 0; k < na; ++k) {
    Complex xi = mu.atom_point(static_cast<std::size_t>(k));
    double rm = std::sqrt(mu.atoms[static_cast<std::size_t>(k)].mass);
    for (int i = 0; i < n; ++i) {
      Complex den = 1.0 - std::conj(xi) * z[i];
      if (std::abs(den) < 1e-12) {
        // removable point: (conj(theta0)-1) R(e_k mu) tends to
        // conj(theta0'(xi)) (-conj(xi)) sqrt(m_k) along the radius
        Complex dtheta = (bd.theta0.values[(i + 1) % n] -
                          bd.theta0.values[(i - 1 + n) % n]) /
                         (z[(i + 1) % n] - z[(i - 1 + n) % n]);
        atom_cols(i, k) = std::conj(dtheta) * (-std::conj(xi)) * rm;
      } else {
        atom_cols(i, k) = q[i] * rm / den;
      }
    }
  }

  if (!mu.density) return operator_norm(atom_cols / std::sqrt(double(n)));

  Eigen::VectorXd w = density_on_grid(mu, n).cwiseMax(0.0);
  Eigen::VectorXd sw = w.cwiseSqrt();
  auto minus_coproj = [n](const Eigen::VectorXcd& vals) -> Eigen::VectorXcd {
    FunctionGrid g{n, vals};
    FunctionGrid p = coanalytic_projection(g);
    return -p.values;
  };

  const int dim = na + n;
  auto apply = [&](const Eigen::VectorXcd& x) -> Eigen::VectorXcd {
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(n);
    if (na > 0) out += atom_cols * x.head(na) / std::sqrt(double(n));
    Eigen::VectorXcd g = sw.array() * x.tail(n).array();
    out.array() += q.array() * minus_coproj(g).array();
    return out;
  };
  auto adjoint = [&](const Eigen::VectorXcd& y) -> Eigen::VectorXcd {
    Eigen::VectorXcd out(dim);
    if (na > 0)
      out.head(na) = atom_cols.adjoint() * y / std::sqrt(double(n));
    Eigen::VectorXcd u = q.conjugate().array() * y.array();
    out.tail(n).array() = sw.array() * minus_coproj(u).array();
    return out;
  };
  return operator_norm(apply, adjoint, dim);
}

CircleMeasure weight_v_gamma(const CircleMeasure& mu, Complex gamma, int n,
                             const RadialLimitConfig& cfg) {
  require_gamma_open(gamma);
  BoundaryData bd = boundary_theta0(mu, n, cfg);
  std::vector<double> samples(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    Complex t0 = bd.theta0.values[j];
    double d0 = bd.delta0[j];
    double numer = (1.0 - std::norm(gamma)) * std::norm(1.0 - t0) +
                   std::norm(1.0 - gamma) * d0 * d0;
    samples[static_cast<std::size_t>(j)] =
        std::max(0.0, numer / std::norm(1.0 - std::conj(gamma) * t0));
  }
  return CircleMeasure::with_density(n, std::move(samples));
}

std::vector<IdentityResult> identity_suite(const CircleMeasure& mu, Complex gamma,
                                           int n, double tol,
                                           const RadialLimitConfig& cfg) {
  require_gamma_open(gamma);
  require_probability(mu);
  require_grid_size(n);

  auto test_fn = [](Complex zz) {
    return zz + 0.5 * std::conj(zz) * std::conj(zz) + 0.3;
  };
  MeasureFunction f = MeasureFunction::sample(mu, test_fn);
  MeasureFunction one = MeasureFunction::ones(mu);

  BoundaryData bd = boundary_theta0(mu, n, cfg);
  Eigen::VectorXd w = density_on_grid(mu, n);
  TGrid tpf = t_grid(mu, f, n, Side::inside, cfg);
  TGrid tmf = t_grid(mu, f, n, Side::outside, cfg);
  TGrid tp1 = t_grid(mu, one, n, Side::inside, cfg);
  TGrid tm1 = t_grid(mu, one, n, Side::outside, cfg);

  std::vector<std::uint8_t> mask = atom_mask(mu, n, 8);
  merge_mask(mask, bd.diverged);
  merge_mask(mask, tpf.diverged);
  merge_mask(mask, tmf.diverged);
  merge_mask(mask, tp1.diverged);
  merge_mask(mask, tm1.diverged);

  const double s = std::sqrt(1.0 - std::norm(gamma));
  std::vector<IdentityResult> results;
  Eigen::VectorXd err = Eigen::VectorXd::Zero(7);
  for (int j = 0; j < n; ++j) {
    if (mask[static_cast<std::size_t>(j)]) continue;
    Complex zz = std::polar(1.0, kTwoPi * j / n);
    Complex fz = test_fn(zz);
    Complex t0 = bd.theta0.values[j];
    Complex tbar = std::conj(t0);
    double d0 = bd.delta0[j];

    err[0] = std::max(err[0], std::abs(d0 * d0 - std::norm(1.0 - t0) * w[j]));
    err[1] = std::max(err[1], std::abs(std::norm(1.0 - t0) + d0 * d0 -
                                       2.0 * (1.0 - t0).real()));
    err[2] = std::max(err[2],
                      std::abs((1.0 - t0) * tp1.values.values[j] - 1.0));
    err[3] = std::max(err[3], std::abs(tm1.values.values[j] * (1.0 - tbar) + tbar));
    err[4] = std::max(err[4], std::abs(tpf.values.values[j] -
                                       tmf.values.values[j] - w[j] * fz));

    Complex tg = (t0 - gamma) / (1.0 - std::conj(gamma) * t0);
    Complex lhs6 = (std::conj(tg) + std::conj(gamma)) * (1.0 - gamma * tbar);
    Complex rhs6 =
        tm1.values.values[j] * (1.0 - std::norm(gamma)) * (tbar - 1.0);
    err[5] = std::max(err[5], std::abs(lhs6 - rhs6));

    Complex g1 = s * (1.0 - t0) / (1.0 - std::conj(gamma) * t0) *
                 tpf.values.values[j];
    Complex gm = -s * (1.0 - tbar) / (1.0 - gamma * tbar) * tmf.values.values[j];
    Complex lhs7 = (1.0 - std::conj(gamma) * t0) * (1.0 - tbar) * g1 +
                   (1.0 - gamma * tbar) * (1.0 - t0) * gm;
    Complex rhs7 = s * w[j] * fz * std::norm(1.0 - t0);
    err[6] = std::max(err[6], std::abs(lhs7 - rhs7));
  }

  const char* names[7] = {"defect_vs_weight", "weight_v0",    "plus_reciprocal",
                          "minus_reciprocal", "boundary_jump", "adjoint_bracket",
                          "inverse_consistency"};
  for (int k = 0; k < 7; ++k)
    results.push_back(IdentityResult{names[k], err[k], tol, err[k] <= tol});
  return results;
}

}  // namespace clark
