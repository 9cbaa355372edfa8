#include "clark/circle_measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "clark/errors.hpp"

namespace clark {

namespace {

double fold_angle(double a) {
  if (!std::isfinite(a)) fail("bad_measure", "atom angle must be finite");
  a = std::fmod(a, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  if (a >= kTwoPi) a = 0.0;  // guards fmod rounding at the seam
  return a;
}

}  // namespace

CircleMeasure CircleMeasure::point_masses(std::vector<Atom> atoms) {
  CircleMeasure m;
  m.atoms = std::move(atoms);
  canonicalize(m);
  return m;
}

CircleMeasure CircleMeasure::lebesgue(int n) {
  return with_density(n, std::vector<double>(static_cast<std::size_t>(n), 1.0));
}

CircleMeasure CircleMeasure::with_density(int n, std::vector<double> samples) {
  CircleMeasure m;
  m.density = Density{n, std::move(samples)};
  canonicalize(m);
  return m;
}

Complex CircleMeasure::atom_point(std::size_t j) const {
  return std::polar(1.0, atoms[j].angle);
}

double CircleMeasure::total_mass() const {
  double mass = 0.0;
  for (const Atom& a : atoms) mass += a.mass;
  if (density) {
    double acc = 0.0;
    for (double s : density->samples) acc += s;
    mass += acc / density->n;
  }
  return mass;
}

void CircleMeasure::normalize() {
  double mass = total_mass();
  if (!(mass > 1e-300)) fail("bad_measure", "cannot normalize a zero measure");
  for (Atom& a : atoms) a.mass /= mass;
  if (density)
    for (double& s : density->samples) s /= mass;
}

Complex CircleMeasure::fourier(long long k) const {
  Complex acc = 0.0;
  for (const Atom& a : atoms) acc += a.mass * std::polar(1.0, -double(k) * a.angle);
  if (density) {
    const int n = density->n;
    Complex sum = 0.0;
    for (int j = 0; j < n; ++j)
      sum += density->samples[j] * std::polar(1.0, -double(k) * (kTwoPi * j / n));
    acc += sum / double(n);
  }
  return acc;
}

void canonicalize(CircleMeasure& m) {
  for (Atom& a : m.atoms) {
    a.angle = fold_angle(a.angle);
    if (!std::isfinite(a.mass) || a.mass <= 0.0)
      fail("bad_measure", "atom masses must be positive and finite");
  }
  std::sort(m.atoms.begin(), m.atoms.end(),
            [](const Atom& a, const Atom& b) { return a.angle < b.angle; });
  for (std::size_t j = 0; j + 1 < m.atoms.size(); ++j) {
    if (circular_distance(m.atoms[j].angle, m.atoms[j + 1].angle) <= 1e-12)
      fail("atom_collision", "atom angles must be pairwise distinct");
  }
  if (m.atoms.size() > 1 &&
      circular_distance(m.atoms.front().angle, m.atoms.back().angle) <= 1e-12)
    fail("atom_collision", "atom angles must be pairwise distinct");
  if (m.density) {
    if (m.density->n < 1) fail("bad_measure", "density grid size must be positive");
    if (m.density->samples.size() != static_cast<std::size_t>(m.density->n))
      fail("bad_measure", "density sample count must equal n");
    for (double s : m.density->samples)
      if (!std::isfinite(s) || s < 0.0)
        fail("bad_measure", "density samples must be nonnegative and finite");
  }
}

void require_probability(const CircleMeasure& m, double tol) {
  double mass = m.total_mass();
  if (std::abs(mass - 1.0) > tol)
    fail("bad_measure", "measure must be a probability measure (total mass " +
                            std::to_string(mass) + ")");
}

double circular_distance(double a, double b) {
  double d = std::fmod(std::abs(a - b), kTwoPi);
  return std::min(d, kTwoPi - d);
}

double atom_separation(const CircleMeasure& a, const CircleMeasure& b) {
  double best = std::numeric_limits<double>::infinity();
  for (const Atom& x : a.atoms)
    for (const Atom& y : b.atoms)
      best = std::min(best, circular_distance(x.angle, y.angle));
  return best;
}

bool atoms_disjoint(const CircleMeasure& a, const CircleMeasure& b, double tol) {
  return atom_separation(a, b) > tol;
}

CircleMeasure measure_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail("bad_json", std::string("measure JSON parse failure: ") + e.what());
  }
  if (!j.is_object()) fail("bad_json", "measure JSON must be an object");

  CircleMeasure m;
  try {
    if (j.contains("atoms") && !j["atoms"].is_null()) {
      if (!j["atoms"].is_array()) fail("bad_json", "\"atoms\" must be an array");
      for (const auto& entry : j["atoms"]) {
        Atom a;
        a.angle = entry.at("angle").get<double>();
        a.mass = entry.at("mass").get<double>();
        m.atoms.push_back(a);
      }
    }
    if (j.contains("density") && !j["density"].is_null()) {
      Density d;
      d.n = j["density"].at("n").get<int>();
      d.samples = j["density"].at("samples").get<std::vector<double>>();
      m.density = std::move(d);
    }
  } catch (const nlohmann::json::exception& e) {
    fail("bad_json", std::string("measure JSON schema violation: ") + e.what());
  }
  canonicalize(m);
  return m;
}

std::string measure_to_json(const CircleMeasure& m, int indent) {
  nlohmann::json atoms = nlohmann::json::array();
  for (const Atom& a : m.atoms) atoms.push_back({{"angle", a.angle}, {"mass", a.mass}});
  nlohmann::json j{{"atoms", std::move(atoms)}, {"density", nullptr}};
  if (m.density)
    j["density"] = {{"n", m.density->n}, {"samples", m.density->samples}};
  return j.dump(indent);
}

}  // namespace clark
