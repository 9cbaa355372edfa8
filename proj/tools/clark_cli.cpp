// Command-line front end: measures in, JSON/CSV out. Exit codes: 0 success,
// 1 validation or input error (JSON error object on stdout), 2 a --verify
// residual exceeded its tolerance.

#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "clark/cauchy.hpp"
#include "clark/char_function.hpp"
#include "clark/circle_measure.hpp"
#include "clark/clark_operators.hpp"
#include "clark/complex_format.hpp"
#include "clark/errors.hpp"
#include "clark/perturbation.hpp"

namespace {

using clark::Complex;
using nlohmann::json;

clark::CircleMeasure load_measure(const std::string& path) {
  std::ifstream in(path);
  if (!in) clark::fail("bad_json", "cannot read measure file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return clark::measure_from_json(buf.str());
}

Complex parse_gamma(const std::string& text) {
  Complex g = clark::parse_complex(text);
  if (!(std::abs(g) < 1.0))
    clark::fail("bad_gamma", "gamma must satisfy |gamma| < 1");
  return g;
}

Complex parse_alpha(const std::string& text) {
  Complex a = clark::parse_complex(text);
  double m = std::abs(a);
  if (std::abs(m - 1.0) > 1e-10)
    clark::fail("bad_alpha", "alpha must be unimodular within 1e-10");
  if (std::abs(m - 1.0) > 1e-12)
    std::cerr << "warning: renormalizing alpha onto the unit circle\n";
  return a / m;
}

std::string csv_number(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

json finite_or_string(double v) {
  if (std::isinf(v)) return json("infinity");
  return json(v);
}

struct ThetaArgs {
  std::string measure, gamma = "0", at;
  bool rational = false;
};
struct MeasureAlphasArgs {
  std::string measure;
  int alphas = 8;
};
struct OperatorArgs {
  std::string measure, gamma = "0";
  bool verify = false;
  double tol = 1e-8;
};
struct ValphaArgs {
  std::string measure, alpha = "1";
  bool verify = false;
  double tol = 1e-9;
};
struct RigidityArgs {
  std::string measure, nu, alpha = "-1";
};
struct NormSweepArgs {
  std::string measure, gamma = "0";
  int grid = 4096;
  std::vector<double> radii = {0.5, 0.7, 0.9, 0.99, 1.01, 1.1, 1.5, 2.0};
};
struct IdentityArgs {
  std::string measure, gamma = "0";
  int grid = 4096;
  double tol = 1e-6;
  bool verify = false;
};

int run_theta(const ThetaArgs& a) {
  clark::CircleMeasure mu = load_measure(a.measure);
  Complex gamma = parse_gamma(a.gamma);
  if (a.rational) {
    clark::RationalInner theta = clark::rational_theta0(mu);
    if (gamma != Complex(0.0)) theta = clark::mobius_transform(theta, gamma);
    json out;
    out["zeros"] = json::array();
    for (Complex z : theta.zeros()) out["zeros"].push_back(clark::format_complex(z));
    out["constant"] = clark::format_complex(theta.constant());
    out["num"] = json::array();
    for (Complex c : theta.numerator()) out["num"].push_back(clark::format_complex(c));
    out["den"] = json::array();
    for (Complex c : theta.denominator()) out["den"].push_back(clark::format_complex(c));
    std::cout << out.dump(2) << "\n";
    return 0;
  }
  if (a.at.empty())
    clark::fail("bad_args", "theta needs either --at or --rational");
  Complex z = clark::parse_complex(a.at);
  Complex v;
  if (mu.is_atomic()) {
    clark::RationalInner theta = clark::rational_theta0(mu);
    if (gamma != Complex(0.0)) theta = clark::mobius_transform(theta, gamma);
    v = theta.value(z);
  } else {
    v = clark::theta_gamma_at(mu, gamma, z);
  }
  std::cout << clark::format_complex(v) << "\n";
  return 0;
}

int run_clark_measures(const MeasureAlphasArgs& a) {
  clark::CircleMeasure mu = load_measure(a.measure);
  clark::RationalInner theta = clark::rational_theta0(mu);
  json out = json::array();
  for (int j = 0; j < a.alphas; ++j) {
    Complex alpha = std::polar(1.0, clark::kTwoPi * j / a.alphas);
    clark::CircleMeasure ma = clark::clark_measure(theta, alpha);
    out.push_back(json::parse(clark::measure_to_json(ma)));
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_clark_operator(const OperatorArgs& a) {
  clark::CircleMeasure mu = load_measure(a.measure);
  Complex gamma = parse_gamma(a.gamma);
  clark::ClarkOperator op = clark::build_phi_star(mu, gamma);
  double normalization = std::max(op.residuals.normalization_b,
                                  op.residuals.normalization_b1);
  json out = {{"unitarity_residual", op.residuals.unitarity},
              {"intertwining_residual", op.residuals.intertwining},
              {"normalization_residual", normalization}};
  std::cout << out.dump(2) << "\n";
  double worst = std::max({op.residuals.unitarity, op.residuals.intertwining,
                           normalization});
  if (a.verify && worst > a.tol) return 2;
  return 0;
}

int run_spectral_flow(const MeasureAlphasArgs& a) {
  clark::CircleMeasure mu = load_measure(a.measure);
  const int n = static_cast<int>(mu.atom_count());
  std::ostringstream head;
  head << "alpha_angle";
  for (int i = 1; i <= n; ++i) head << ",eig_angle_" << i;
  for (int i = 1; i <= n; ++i) head << ",mass_" << i;
  std::cout << head.str() << "\n";
  for (int j = 0; j < a.alphas; ++j) {
    double angle = clark::kTwoPi * j / a.alphas;
    clark::Perturbation p = clark::build_u_gamma(mu, std::polar(1.0, angle));
    clark::CircleMeasure sm = clark::spectral_measure(p);
    std::ostringstream row;
    row << csv_number(angle);
    for (const clark::Atom& atom : sm.atoms) row << "," << csv_number(atom.angle);
    for (const clark::Atom& atom : sm.atoms) row << "," << csv_number(atom.mass);
    std::cout << row.str() << "\n";
  }
  return 0;
}

int run_valpha(const ValphaArgs& a) {
  clark::CircleMeasure mu = load_measure(a.measure);
  Complex alpha = parse_alpha(a.alpha);
  clark::SpectralRepresentation rep = clark::v_alpha_matrix(mu, alpha);
  json out = {{"unitarity_residual", rep.unitarity},
              {"intertwining_residual", rep.intertwining},
              {"normalization_residual", rep.normalization}};
  std::cout << out.dump(2) << "\n";
  double worst = std::max({rep.unitarity, rep.intertwining, rep.normalization});
  if (a.verify && worst > a.tol) return 2;
  return 0;
}

int run_rigidity(const RigidityArgs& a) {
  clark::CircleMeasure mu = load_measure(a.measure);
  clark::CircleMeasure nu = load_measure(a.nu);
  Complex alpha = parse_alpha(a.alpha);
  clark::RigidityReport rep = clark::rigidity_check(mu, nu, alpha);
  json out = {{"commutation_residual", rep.commutation_residual},
              {"sigma_min", rep.sigma_min},
              {"sigma_max", rep.sigma_max},
              {"kernel", rep.kernel},
              {"mhv_unitarity", rep.mhv_unitarity},
              {"recovered_valid", rep.recovered_valid},
              {"reference_atom_distance", finite_or_string(rep.reference_atom_distance)},
              {"reference_mass_error", finite_or_string(rep.reference_mass_error)},
              {"h", rep.h},
              {"recovered", json::parse(clark::measure_to_json(rep.recovered))}};
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_norm_sweep(const NormSweepArgs& a) {
  clark::CircleMeasure mu = load_measure(a.measure);
  Complex gamma = parse_gamma(a.gamma);
  clark::CircleMeasure target = clark::weight_v_gamma(mu, gamma, a.grid);
  std::cout << "r,norm,source_id,target_id\n";
  for (double r : a.radii) {
    double norm = clark::operator_norm(clark::discretize_t_r(mu, target, r));
    std::cout << csv_number(r) << "," << csv_number(norm)
              << ",mu,v_gamma\n";
  }
  return 0;
}

int run_identity_suite(const IdentityArgs& a) {
  clark::CircleMeasure mu = load_measure(a.measure);
  Complex gamma = parse_gamma(a.gamma);
  std::vector<clark::IdentityResult> results =
      clark::identity_suite(mu, gamma, a.grid, a.tol);
  json out = json::array();
  bool all_pass = true;
  for (const clark::IdentityResult& r : results) {
    out.push_back({{"name", r.name},
                   {"max_error", r.max_error},
                   {"tol", r.tol},
                   {"pass", r.pass}});
    if (!r.pass) all_pass = false;
  }
  std::cout << out.dump(2) << "\n";
  if (a.verify && !all_pass) return 2;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Clark theory toolkit: rank-one perturbations on the circle"};
  app.require_subcommand(1);

  ThetaArgs theta_args;
  CLI::App* theta = app.add_subcommand("theta", "evaluate theta_gamma or emit its rational form");
  theta->add_option("--measure", theta_args.measure, "measure JSON file")->required();
  theta->add_option("--gamma", theta_args.gamma, "perturbation parameter a+bi");
  theta->add_option("--at", theta_args.at, "evaluation point a+bi");
  theta->add_flag("--rational", theta_args.rational, "emit zeros/constant/num/den JSON");

  MeasureAlphasArgs cm_args;
  CLI::App* cm = app.add_subcommand("clark-measures", "Clark family mu_alpha at roots of unity");
  cm->add_option("--measure", cm_args.measure, "measure JSON file")->required();
  cm->add_option("--alphas", cm_args.alphas, "number of equally spaced alpha")
      ->check(CLI::PositiveNumber);

  OperatorArgs op_args;
  CLI::App* op = app.add_subcommand("clark-operator", "build Phi*_gamma and report residuals");
  op->add_option("--measure", op_args.measure, "measure JSON file")->required();
  op->add_option("--gamma", op_args.gamma, "perturbation parameter a+bi");
  op->add_flag("--verify", op_args.verify, "exit 2 when a residual exceeds --tol");
  op->add_option("--tol", op_args.tol, "verification tolerance");

  MeasureAlphasArgs flow_args;
  flow_args.alphas = 64;
  CLI::App* flow = app.add_subcommand("spectral-flow", "eigenvalue flow of U_alpha over the circle (CSV)");
  flow->add_option("--measure", flow_args.measure, "measure JSON file")->required();
  flow->add_option("--alphas", flow_args.alphas, "number of alpha samples")
      ->check(CLI::PositiveNumber);

  ValphaArgs va_args;
  CLI::App* va = app.add_subcommand("valpha", "spectral-representation unitary V_alpha residuals");
  va->add_option("--measure", va_args.measure, "measure JSON file")->required();
  va->add_option("--alpha", va_args.alpha, "unimodular parameter a+bi")->required();
  va->add_flag("--verify", va_args.verify, "exit 2 when a residual exceeds --tol");
  va->add_option("--tol", va_args.tol, "verification tolerance");

  RigidityArgs rig_args;
  CLI::App* rig = app.add_subcommand("rigidity", "rigidity diagnostic for a trial measure nu");
  rig->add_option("--measure", rig_args.measure, "measure JSON file")->required();
  rig->add_option("--nu", rig_args.nu, "trial measure JSON file")->required();
  rig->add_option("--alpha", rig_args.alpha, "unimodular parameter a+bi")->required();

  NormSweepArgs ns_args;
  CLI::App* ns = app.add_subcommand("norm-sweep", "kernel family norms against the v_gamma weight (CSV)");
  ns->add_option("--measure", ns_args.measure, "measure JSON file")->required();
  ns->add_option("--gamma", ns_args.gamma, "perturbation parameter a+bi");
  ns->add_option("--grid", ns_args.grid, "target weight grid size");
  ns->add_option("--radii", ns_args.radii, "kernel radii to sweep")->expected(-1);

  IdentityArgs id_args;
  CLI::App* id = app.add_subcommand("identity-suite", "boundary identity battery on a grid");
  id->add_option("--measure", id_args.measure, "measure JSON file")->required();
  id->add_option("--gamma", id_args.gamma, "perturbation parameter a+bi");
  id->add_option("--grid", id_args.grid, "output grid size");
  id->add_option("--tol", id_args.tol, "per-identity tolerance");
  id->add_flag("--verify", id_args.verify, "exit 2 when any identity fails");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    json err = {{"error", {{"code", "bad_args"}, {"message", e.what()}}}};
    std::cout << err.dump() << "\n";
    return 1;
  }

  try {
    if (app.got_subcommand(theta)) return run_theta(theta_args);
    if (app.got_subcommand(cm)) return run_clark_measures(cm_args);
    if (app.got_subcommand(op)) return run_clark_operator(op_args);
    if (app.got_subcommand(flow)) return run_spectral_flow(flow_args);
    if (app.got_subcommand(va)) return run_valpha(va_args);
    if (app.got_subcommand(rig)) return run_rigidity(rig_args);
    if (app.got_subcommand(ns)) return run_norm_sweep(ns_args);
    if (app.got_subcommand(id)) return run_identity_suite(id_args);
  } catch (const clark::Error& e) {
    json err = {{"error", {{"code", e.code()}, {"message", e.what()}}}};
    std::cout << err.dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    json err = {{"error", {{"code", "internal_check"}, {"message", e.what()}}}};
    std::cout << err.dump() << "\n";
    return 1;
  }
  return 0;
}
