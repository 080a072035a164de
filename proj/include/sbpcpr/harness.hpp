#ifndef SBPCPR_HARNESS_HPP
#define SBPCPR_HARNESS_HPP

#include <cstdio>
#include <fstream>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "sbpcpr/advection.hpp"
#include "sbpcpr/burgers.hpp"
#include "sbpcpr/fluxes.hpp"
#include "sbpcpr/mesh.hpp"
#include "sbpcpr/multiplication.hpp"
#include "sbpcpr/operators.hpp"
#include "sbpcpr/time_integration.hpp"

namespace sbpcpr {

enum class Equation { Burgers, Advection };

/// A complete experiment description: equation, discretisation, flux,
/// correction/Jacobian choices, grid, time integration and output naming.
struct ExperimentConfig {
  Equation equation = Equation::Burgers;
  BasisKind basis = BasisKind::GaussLegendre;
  int p = 7;
  int elements = 20;
  FluxKind flux = FluxKind::LocalLaxFriedrichs;
  CorrectionMode corrections = CorrectionMode::Both;
  DivCorrectionVariant div_variant = DivCorrectionVariant::MAdjoint;
  GridKind grid = GridKind::Uniform;
  MappingKind mapping = MappingKind::Linear;
  JacobianStrategy jacobian = JacobianStrategy::NodalDiagonal;
  double domain_min = 0.0;
  double domain_max = 2.0;
  double t_final = 3.0;
  long steps = 10000;
  long sample_every = 10;
  double blowup_threshold = 1e3;
  std::string out_prefix;
};

/// Burgers experiment: sin(pi x) + 0.01 on [0, 2], 20 uniform elements of
/// degree 7, local Lax-Friedrichs flux, both corrections, 10000 RK4 steps
/// to t = 3.
inline ExperimentConfig burgers_fig1_preset(BasisKind basis) {
  ExperimentConfig config;
  config.equation = Equation::Burgers;
  config.basis = basis;
  config.p = 7;
  config.elements = 20;
  config.flux = FluxKind::LocalLaxFriedrichs;
  config.corrections = CorrectionMode::Both;
  config.grid = GridKind::Uniform;
  config.mapping = MappingKind::Linear;
  config.domain_min = 0.0;
  config.domain_max = 2.0;
  config.t_final = 3.0;
  config.steps = 10000;
  return config;
}

/// Advection experiment: exp(-20 x^2) on [-1, 1], 5 elements of degree 9,
/// central flux, quadratic mapping on the geometrically increasing grid,
/// 10000 RK4 steps to t = 4. The five cases select basis and Jacobian
/// strategy:
///   a  cheb2-roots, via-gauss   (stable)
///   b  cheb2-roots, nodal       (blows up)
///   c  lobatto,     via-gauss   (blows up)
///   d  lobatto,     nodal       (stable)
///   e  gauss,       nodal       (stable)
inline ExperimentConfig advection_fig2_preset(char which) {
  ExperimentConfig config;
  config.equation = Equation::Advection;
  config.p = 9;
  config.elements = 5;
  config.flux = FluxKind::Central;
  config.grid = GridKind::GeometricIncreasing;
  config.mapping = MappingKind::Quadratic;
  config.domain_min = -1.0;
  config.domain_max = 1.0;
  config.t_final = 4.0;
  config.steps = 10000;
  switch (which) {
    case 'a': config.basis = BasisKind::Chebyshev2Roots; config.jacobian = JacobianStrategy::ViaGaussTransform; break;
    case 'b': config.basis = BasisKind::Chebyshev2Roots; config.jacobian = JacobianStrategy::NodalDiagonal; break;
    case 'c': config.basis = BasisKind::LobattoLegendre; config.jacobian = JacobianStrategy::ViaGaussTransform; break;
    case 'd': config.basis = BasisKind::LobattoLegendre; config.jacobian = JacobianStrategy::NodalDiagonal; break;
    case 'e': config.basis = BasisKind::GaussLegendre;   config.jacobian = JacobianStrategy::NodalDiagonal; break;
    default:
      throw std::invalid_argument("advection_fig2_preset: case must be one of a..e");
  }
  return config;
}

/// Interpolates a function into the coefficient representation of every
/// element. Nodal bases interpolate at the mapped basis nodes; the modal
/// basis interpolates at mapped Gauss-Legendre nodes and transforms the
/// point values into Legendre coefficients.
inline Matrix interpolate_initial_condition(const OperatorSet& ops, const Mesh1D& mesh,
                                            const std::function<double(double)>& f) {
  const int K = mesh.num_elements();
  Matrix coeffs(ops.n, K);
  if (ops.kind == BasisKind::ModalLegendre) {
    const QuadratureRule rule = gauss_quadrature(ops.n);
    const Matrix vg = vandermonde(rule.nodes, ops.p);
    const Eigen::PartialPivLU<Matrix> lu(vg);
    for (int k = 0; k < K; ++k) {
      Vector values(ops.n);
      for (int i = 0; i < ops.n; ++i) values[i] = f(mesh.map(k, rule.nodes[i]).x);
      coeffs.col(k) = lu.solve(values);
    }
  } else {
    for (int k = 0; k < K; ++k)
      for (int i = 0; i < ops.n; ++i) coeffs.col(k)[i] = f(mesh.map(k, (*ops.nodes)[i]).x);
  }
  return coeffs;
}

namespace detail {

inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace detail

/// Writes `t,momentum,energy` rows, LF line endings, '.' decimal separator,
/// 17 significant digits.
inline void write_diagnostics_csv(const std::string& path, const DiagnosticsSeries& series) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "t,momentum,energy\n";
  for (const DiagnosticsSample& s : series.samples)
    out << detail::format_double(s.t) << ',' << detail::format_double(s.momentum) << ','
        << detail::format_double(s.energy) << '\n';
}

namespace detail {

// Sample positions and values of one snapshot. Nodal bases report the node
// values; the modal basis reports values at p+1 Gauss points plus a
// 10-point-per-element uniform overlay for smooth plotting.
inline void append_solution_rows(std::ofstream& out, const OperatorSet& ops, const Mesh1D& mesh,
                                 const Matrix& coeffs, double t) {
  const int K = mesh.num_elements();
  if (ops.kind != BasisKind::ModalLegendre) {
    for (int k = 0; k < K; ++k)
      for (int i = 0; i < ops.n; ++i)
        out << format_double(t) << ',' << format_double(mesh.map(k, (*ops.nodes)[i]).x) << ','
            << format_double(coeffs(i, k)) << ",node\n";
    return;
  }
  const QuadratureRule rule = gauss_quadrature(ops.n);
  for (int k = 0; k < K; ++k)
    for (int i = 0; i < ops.n; ++i) {
      double value = 0.0;
      for (int j = 0; j < ops.n; ++j) value += coeffs(j, k) * legendre_eval(j, rule.nodes[i]);
      out << format_double(t) << ',' << format_double(mesh.map(k, rule.nodes[i]).x) << ','
          << format_double(value) << ",node\n";
    }
  constexpr int overlay_points = 10;
  for (int k = 0; k < K; ++k)
    for (int i = 0; i < overlay_points; ++i) {
      const double xi = -1.0 + 2.0 * i / (overlay_points - 1.0);
      double value = 0.0;
      for (int j = 0; j < ops.n; ++j) value += coeffs(j, k) * legendre_eval(j, xi);
      out << format_double(t) << ',' << format_double(mesh.map(k, xi).x) << ','
          << format_double(value) << ",overlay\n";
    }
}

}  // namespace detail

/// Writes the initial and final snapshots as `t,x,u,kind` rows
/// (kind in {node, overlay}).
inline void write_solution_csv(const std::string& path, const OperatorSet& ops,
                               const Mesh1D& mesh, const Matrix& initial, const Matrix& final_,
                               double t_final) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "t,x,u,kind\n";
  detail::append_solution_rows(out, ops, mesh, initial, 0.0);
  detail::append_solution_rows(out, ops, mesh, final_, t_final);
}

struct BurgersRunResult {
  std::shared_ptr<const OperatorSet> ops;
  Mesh1D mesh;
  Matrix initial;
  Matrix final_state;
  DiagnosticsSeries diagnostics;
  bool blew_up = false;
  double t_end = 0.0;
};

/// Runs a Burgers experiment; writes `<prefix>_diag.csv` and
/// `<prefix>_solution.csv` when the config names an output prefix.
inline BurgersRunResult run_burgers(const ExperimentConfig& config) {
  if (config.equation != Equation::Burgers)
    throw std::invalid_argument("run_burgers: config is not a Burgers experiment");
  BurgersRunResult result;
  result.ops = std::make_shared<const OperatorSet>(build_operator_set(config.basis, config.p));
  result.mesh = make_grid(config.grid, config.domain_min, config.domain_max, config.elements,
                          config.mapping);
  const double pi = std::acos(-1.0);
  result.initial = interpolate_initial_condition(
      *result.ops, result.mesh, [pi](double x) { return std::sin(pi * x) + 0.01; });

  BurgersSemidiscretization semi(result.ops, result.mesh, config.flux, config.corrections,
                                 config.div_variant);
  IntegrationConfig time{config.t_final, config.steps, config.sample_every,
                         config.blowup_threshold};
  IntegrationResult integ = integrate(
      [&semi](const Matrix& u) { return semi.rhs(u); }, result.initial, time,
      [&semi](const Matrix& u) { return semi.diagnostics(u); });
  result.final_state = integ.state;
  result.diagnostics = std::move(integ.diagnostics);
  result.blew_up = integ.blew_up;
  result.t_end = integ.t_end;

  if (!config.out_prefix.empty()) {
    write_diagnostics_csv(config.out_prefix + "_diag.csv", result.diagnostics);
    write_solution_csv(config.out_prefix + "_solution.csv", *result.ops, result.mesh,
                       result.initial, result.final_state, result.t_end);
  }
  return result;
}

struct AdvectionRunResult {
  std::shared_ptr<const OperatorSet> ops;
  Mesh1D mesh;
  Matrix initial;
  Matrix final_state;
  DiagnosticsSeries diagnostics;
  bool blew_up = false;
  double t_end = 0.0;
  double linf_vs_initial = 0.0;  // meaningful only when the run finished
};

/// Runs an advection experiment; same outputs as run_burgers. The solution
/// is transported over full periods, so the final state of a stable run is
/// compared coefficient-wise against the initial condition.
inline AdvectionRunResult run_advection(const ExperimentConfig& config) {
  if (config.equation != Equation::Advection)
    throw std::invalid_argument("run_advection: config is not an advection experiment");
  AdvectionRunResult result;
  result.ops = std::make_shared<const OperatorSet>(build_operator_set(config.basis, config.p));
  result.mesh = make_grid(config.grid, config.domain_min, config.domain_max, config.elements,
                          config.mapping);
  result.initial = interpolate_initial_condition(
      *result.ops, result.mesh, [](double x) { return std::exp(-20.0 * x * x); });

  AdvectionSemidiscretization semi(result.ops, result.mesh, config.jacobian);
  IntegrationConfig time{config.t_final, config.steps, config.sample_every,
                         config.blowup_threshold};
  IntegrationResult integ = integrate(
      [&semi](const Matrix& u) { return semi.rhs(u); }, result.initial, time,
      [&semi](const Matrix& u) { return semi.diagnostics(u); });
  result.final_state = integ.state;
  result.diagnostics = std::move(integ.diagnostics);
  result.blew_up = integ.blew_up;
  result.t_end = integ.t_end;
  if (!result.blew_up)
    result.linf_vs_initial = (result.final_state - result.initial).cwiseAbs().maxCoeff();

  if (!config.out_prefix.empty()) {
    write_diagnostics_csv(config.out_prefix + "_diag.csv", result.diagnostics);
    write_solution_csv(config.out_prefix + "_solution.csv", *result.ops, result.mesh,
                       result.initial, result.final_state, result.t_end);
  }
  return result;
}

/// Summary of the operator-set health checks backing the `ops-check`
/// command.
struct OpsCheckReport {
  double sbp_residual = 0.0;
  double min_mass_eigenvalue = 0.0;
  double max_mass_eigenvalue = 0.0;
  double mass_asymmetry = 0.0;
  double derivative_exactness_error = 0.0;   // max over monomials x^k, k <= p
  double restriction_exactness_error = 0.0;
  double quadrature_defect = 0.0;            // |1^T M 1 - 2|
  double vandermonde_condition = 1.0;
  bool ok = false;
};

inline OpsCheckReport check_operator_set(const OperatorSet& ops) {
  OpsCheckReport report;
  report.sbp_residual = sbp_residual(ops);
  Eigen::SelfAdjointEigenSolver<Matrix> eigen(ops.M);
  report.min_mass_eigenvalue = eigen.eigenvalues().minCoeff();
  report.max_mass_eigenvalue = eigen.eigenvalues().maxCoeff();
  report.mass_asymmetry = (ops.M - ops.M.transpose()).cwiseAbs().maxCoeff();
  for (int k = 0; k <= ops.p; ++k) {
    const Vector xk = monomial_coefficients(ops, k);
    const Vector dxk = k == 0 ? Vector(Vector::Zero(ops.n))
                              : Vector(double(k) * monomial_coefficients(ops, k - 1));
    report.derivative_exactness_error =
        std::max(report.derivative_exactness_error, (ops.D * xk - dxk).cwiseAbs().maxCoeff());
    Vector2 expected;
    expected << (k % 2 == 0 ? 1.0 : -1.0), 1.0;
    report.restriction_exactness_error = std::max(
        report.restriction_exactness_error, (ops.R * xk - expected).cwiseAbs().maxCoeff());
  }
  const Vector one = ops.constant_one();
  report.quadrature_defect = std::abs(one.dot(ops.M * one) - 2.0);
  report.vandermonde_condition = ops.vandermonde_condition;

  const double tol = sbp_tolerance(ops.p);
  report.ok = report.sbp_residual <= tol && report.min_mass_eigenvalue > 0.0 &&
              report.mass_asymmetry <= 1e-14 * ops.M.cwiseAbs().maxCoeff() &&
              report.derivative_exactness_error <= 1e-10 &&
              report.restriction_exactness_error <= 1e-10 &&
              report.quadrature_defect <= 1e-12;
  return report;
}

// Token parsing shared by the command line and the tests.

inline BasisKind parse_basis(const std::string& token) {
  if (token == "gauss") return BasisKind::GaussLegendre;
  if (token == "lobatto") return BasisKind::LobattoLegendre;
  if (token == "cheb1-roots") return BasisKind::Chebyshev1Roots;
  if (token == "cheb1-extrema") return BasisKind::Chebyshev1Extrema;
  if (token == "cheb2-roots") return BasisKind::Chebyshev2Roots;
  if (token == "modal") return BasisKind::ModalLegendre;
  throw std::invalid_argument("unknown basis '" + token + "'");
}

inline FluxKind parse_flux(const std::string& token) {
  if (token == "econ") return FluxKind::Econ;
  if (token == "llf") return FluxKind::LocalLaxFriedrichs;
  if (token == "osher") return FluxKind::Osher;
  if (token == "central") return FluxKind::Central;
  throw std::invalid_argument("unknown flux '" + token + "'");
}

inline CorrectionMode parse_corrections(const std::string& token) {
  if (token == "both") return CorrectionMode::Both;
  if (token == "div") return CorrectionMode::DivOnly;
  if (token == "res") return CorrectionMode::ResOnly;
  if (token == "none") return CorrectionMode::None;
  throw std::invalid_argument("unknown correction mode '" + token + "'");
}

inline GridKind parse_grid(const std::string& token) {
  if (token == "uniform") return GridKind::Uniform;
  if (token == "alternating") return GridKind::Alternating;
  if (token == "geometric") return GridKind::GeometricIncreasing;
  throw std::invalid_argument("unknown grid '" + token + "'");
}

inline MappingKind parse_mapping(const std::string& token) {
  if (token == "linear") return MappingKind::Linear;
  if (token == "quadratic") return MappingKind::Quadratic;
  throw std::invalid_argument("unknown mapping '" + token + "'");
}

inline JacobianStrategy parse_jacobian(const std::string& token) {
  if (token == "nodal") return JacobianStrategy::NodalDiagonal;
  if (token == "via-gauss") return JacobianStrategy::ViaGaussTransform;
  throw std::invalid_argument("unknown jacobian strategy '" + token + "'");
}

}  // namespace sbpcpr

#endif  // SBPCPR_HARNESS_HPP
