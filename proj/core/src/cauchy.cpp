#include "clark/cauchy.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

#include "clark/errors.hpp"

namespace clark {

namespace {

constexpr double kBoundaryGuard = 1e-8;

struct Richardson {
  Complex value{};
  double error = 0.0;
  bool diverged = false;
};

// vals[k] = F(eps_k) with eps halving each step; extrapolate to eps -> 0.
// Monotone growth past growth_factor flags divergence instead.
Richardson richardson_extrapolate(const std::vector<Complex>& vals, int order,
                                  double growth_factor) {
  Richardson out;
  const std::size_t m = vals.size();
  if (m == 1) {
    out.value = vals[0];
    out.error = std::abs(vals[0]);
    return out;
  }

  bool monotone = true;
  for (std::size_t k = 0; k + 1 < m; ++k)
    if (std::abs(vals[k + 1]) < std::abs(vals[k]) * (1.0 - 1e-9) - 1e-300)
      monotone = false;
  if (monotone && std::abs(vals.back()) > growth_factor * std::abs(vals.front()) + 1e-280) {
    out.diverged = true;
    out.value = vals.back();
    out.error = std::abs(vals.back() - vals[m - 2]);
    return out;
  }

  int ord = std::min<int>(order, static_cast<int>(m) - 1);
  std::vector<Complex> col = vals;   // current column of the Neville table
  Complex prev_last = col.back();
  for (int j = 1; j <= ord; ++j) {
    prev_last = col.back();
    double w = std::pow(2.0, j) - 1.0;
    for (std::size_t k = m - 1; k >= static_cast<std::size_t>(j); --k)
      col[k] = col[k] + (col[k] - col[k - 1]) / w;
    // entries below index j are stale; the loop above never reads them again
  }
  out.value = col.back();
  out.error = std::abs(col.back() - prev_last);
  return out;
}

std::vector<double> radii_offsets(const RadialLimitConfig& cfg) {
  if (cfg.first_exponent < 1 || cfg.last_exponent < cfg.first_exponent)
    fail("bad_radius", "radial limit exponents must satisfy 1 <= first <= last");
  std::vector<double> eps;
  for (int k = cfg.first_exponent; k <= cfg.last_exponent; ++k)
    eps.push_back(std::ldexp(1.0, -k));
  return eps;
}

}  // namespace

RadialLimit radial_limit(const std::function<Complex(Complex)>& f, Complex z,
                         Side side, const RadialLimitConfig& cfg) {
  double mod = std::abs(z);
  if (std::abs(mod - 1.0) > 1e-9)
    fail("bad_radius", "radial limits are taken at points on the unit circle");
  z /= mod;
  std::vector<Complex> vals;
  for (double eps : radii_offsets(cfg)) {
    double rho = side == Side::inside ? 1.0 - eps : 1.0 + eps;
    vals.push_back(f(rho * z));
  }
  Richardson r = richardson_extrapolate(vals, cfg.order, cfg.growth_factor);
  return RadialLimit{r.value, r.error, r.diverged};
}

CauchyTransform::CauchyTransform(const CircleMeasure& mu)
    : CauchyTransform(mu, MeasureFunction::ones(mu)) {}

CauchyTransform::CauchyTransform(const CircleMeasure& mu, const MeasureFunction& f) {
  if (f.atom_values.size() != static_cast<Eigen::Index>(mu.atoms.size()))
    fail("bad_measure", "measure function atom values must match the atom count");
  mass_ = 0.0;
  for (std::size_t j = 0; j < mu.atoms.size(); ++j) {
    points_.push_back(mu.atom_point(j));
    Complex w = mu.atoms[j].mass * f.atom_values[static_cast<Eigen::Index>(j)];
    weights_.push_back(w);
    mass_ += w;
  }
  if (mu.density) {
    if (!f.density_values || f.density_values->n != mu.density->n)
      fail("bad_grid", "measure function must carry samples on the density grid");
    require_grid_size(mu.density->n);
    const int n = mu.density->n;
    FunctionGrid g = *f.density_values;
    for (int j = 0; j < n; ++j) g.values[j] *= mu.density->samples[j];
    Eigen::VectorXcd bins = fourier_bins(g);
    // R(g dm)(lambda) = sum_{k>=0} g_hat(k) lambda^k inside,
    //                 = -sum_{k>=1} g_hat(-k) lambda^{-k} outside.
    series_inside_ = bins.head(n / 2);
    series_outside_.resize(n / 2);
    for (int k = 1; k <= n / 2; ++k) series_outside_[k - 1] = bins[n - k];
    mass_ += bins[0];
  }
}

Complex CauchyTransform::r(Complex lambda) const {
  double mod = std::abs(lambda);
  if (std::abs(mod - 1.0) < kBoundaryGuard)
    fail("boundary_guard",
         "Cauchy transform evaluation requires | |lambda| - 1 | >= 1e-8");
  Complex acc = 0.0;
  for (std::size_t k = 0; k < points_.size(); ++k)
    acc += weights_[k] / (1.0 - std::conj(points_[k]) * lambda);
  if (mod < 1.0) {
    if (series_inside_.size() > 0) {
      Complex horner = 0.0;
      for (Eigen::Index k = series_inside_.size() - 1; k >= 0; --k)
        horner = horner * lambda + series_inside_[k];
      acc += horner;
    }
  } else if (series_outside_.size() > 0) {
    Complex inv = 1.0 / lambda;
    Complex horner = 0.0;
    for (Eigen::Index k = series_outside_.size() - 1; k >= 0; --k)
      horner = horner * inv + series_outside_[k];
    acc -= horner * inv;
  }
  return acc;
}

Complex CauchyTransform::r1(Complex lambda) const { return r(lambda) - mass_; }

Complex CauchyTransform::r2(Complex lambda) const { return 2.0 * r(lambda) - mass_; }

RadialLimit CauchyTransform::boundary(Complex z, Side side,
                                      const RadialLimitConfig& cfg) const {
  return radial_limit([this](Complex lambda) { return r(lambda); }, z, side, cfg);
}

Eigen::VectorXcd CauchyTransform::circle_values(int n, double rho) const {
  require_grid_size(n);
  if (std::abs(rho - 1.0) < kBoundaryGuard)
    fail("boundary_guard", "circle radius too close to 1");
  Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(n);
  if (rho < 1.0) {
    if (series_inside_.size() > 0) {
      Eigen::VectorXcd bins = Eigen::VectorXcd::Zero(n);
      double p = 1.0;
      for (Eigen::Index k = 0; k < series_inside_.size(); ++k, p *= rho)
        bins[k] = series_inside_[k] * p;
      acc = grid_from_bins(n, bins).values;
    }
  } else if (series_outside_.size() > 0) {
    Eigen::VectorXcd bins = Eigen::VectorXcd::Zero(n);
    double p = 1.0 / rho;
    for (Eigen::Index k = 0; k < series_outside_.size(); ++k, p /= rho)
      bins[n - 1 - k] = -series_outside_[k] * p;
    // bins[n-1-k] holds frequency -(k+1)
    acc = grid_from_bins(n, bins).values;
  }
  if (!points_.empty()) {
    for (int j = 0; j < n; ++j) {
      Complex lambda = rho * std::polar(1.0, kTwoPi * j / n);
      Complex s = 0.0;
      for (std::size_t k = 0; k < points_.size(); ++k)
        s += weights_[k] / (1.0 - std::conj(points_[k]) * lambda);
      acc[j] += s;
    }
  }
  return acc;
}

CauchyTransform::BoundaryGrid CauchyTransform::boundary_grid(
    int n, Side side, const RadialLimitConfig& cfg) const {
  require_grid_size(n);
  std::vector<double> eps = radii_offsets(cfg);
  std::vector<Eigen::VectorXcd> layers;
  layers.reserve(eps.size());
  for (double e : eps)
    layers.push_back(circle_values(n, side == Side::inside ? 1.0 - e : 1.0 + e));

  BoundaryGrid out;
  out.values = FunctionGrid::zeros(n);
  out.diverged.assign(static_cast<std::size_t>(n), 0);
  std::vector<Complex> vals(eps.size());
  for (int j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < eps.size(); ++k) vals[k] = layers[k][j];
    Richardson r = richardson_extrapolate(vals, cfg.order, cfg.growth_factor);
    out.values.values[j] = r.value;
    if (r.diverged) {
      out.diverged[static_cast<std::size_t>(j)] = 1;
      out.any_diverged = true;
    } else {
      out.max_error = std::max(out.max_error, r.error);
    }
  }
  return out;
}

Complex cauchy_r(const CircleMeasure& mu, Complex lambda) {
  return CauchyTransform(mu).r(lambda);
}

Complex cauchy_r1(const CircleMeasure& mu, Complex lambda) {
  return CauchyTransform(mu).r1(lambda);
}

Complex cauchy_r2(const CircleMeasure& mu, Complex lambda) {
  return CauchyTransform(mu).r2(lambda);
}

double poisson_extension(const CircleMeasure& mu, Complex z) {
  if (std::abs(z) >= 1.0 - kBoundaryGuard)
    fail("boundary_guard", "Poisson extension requires |z| < 1 - 1e-8");
  return cauchy_r2(mu, z).real();
}

std::vector<PointMass> discretize_measure(const CircleMeasure& m) {
  std::vector<PointMass> pts;
  for (std::size_t j = 0; j < m.atoms.size(); ++j)
    pts.push_back(PointMass{m.atom_point(j), m.atoms[j].mass});
  if (m.density) {
    const int n = m.density->n;
    for (int j = 0; j < n; ++j) {
      double w = m.density->samples[j] / n;
      if (w > 0.0) pts.push_back(PointMass{std::polar(1.0, kTwoPi * j / n), w});
    }
  }
  return pts;
}

Eigen::MatrixXcd discretize_t_r(const CircleMeasure& source,
                                const CircleMeasure& target, double r) {
  if (!(r > 0.0) || std::abs(r - 1.0) < 1e-12)
    fail("bad_radius", "kernel radius must be positive and distinct from 1");
  std::vector<PointMass> s = discretize_measure(source);
  std::vector<PointMass> t = discretize_measure(target);
  Eigen::MatrixXcd a(t.size(), s.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    double ti = std::sqrt(t[i].mass);
    for (std::size_t j = 0; j < s.size(); ++j) {
      Complex k = 1.0 / (1.0 - r * std::conj(s[j].point) * t[i].point);
      a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          k * ti * std::sqrt(s[j].mass);
    }
  }
  return a;
}

double operator_norm(const Eigen::MatrixXcd& a) {
  if (a.size() == 0) return 0.0;
  if (std::min(a.rows(), a.cols()) <= 256) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
    return svd.singularValues()[0];
  }
  auto apply = [&a](const Eigen::VectorXcd& x) -> Eigen::VectorXcd { return a * x; };
  auto apply_adjoint = [&a](const Eigen::VectorXcd& x) -> Eigen::VectorXcd {
    return a.adjoint() * x;
  };
  return operator_norm(apply, apply_adjoint, static_cast<int>(a.cols()));
}

double operator_norm(
    const std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)>& apply,
    const std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)>& apply_adjoint,
    int source_dim) {
  if (source_dim <= 0) return 0.0;
  Eigen::VectorXcd v(source_dim);
  for (int j = 0; j < source_dim; ++j)
    v[j] = std::polar(1.0 + 0.25 * std::cos(0.37 * j), 0.61803398875 * j);
  v /= v.norm();
  double sigma = 0.0;
  for (int it = 0; it < 600; ++it) {
    Eigen::VectorXcd u = apply(v);
    double nu = u.norm();
    if (nu < 1e-300) return 0.0;
    Eigen::VectorXcd w = apply_adjoint(u / nu);
    double next = w.norm();
    if (next < 1e-300) return nu;
    v = w / next;
    double estimate = std::sqrt(nu * next);
    if (it > 4 && std::abs(estimate - sigma) <= 1e-11 * std::max(1.0, estimate)) {
      sigma = estimate;
      break;
    }
    sigma = estimate;
  }
  return sigma;
}

}  // namespace clark
