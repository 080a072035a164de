// Command-line front end: operator inspection plus the Burgers and linear
// advection experiments with CSV output.
//
// Exit codes: 0 success, 2 invalid configuration, 3 operator invariant
// failure, 4 blow-up of a time integration.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "sbpcpr/sbpcpr.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalidConfig = 2;
constexpr int kExitInvariantFailure = 3;
constexpr int kExitBlowup = 4;

void print_matrix(const char* name, const sbpcpr::Matrix& m) {
  std::printf("%s =\n", name);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) std::printf("  %.17g", m(i, j));
    std::printf("\n");
  }
}

int run_ops_check(const std::string& basis_token, int p, const std::string& dump_path) {
  const sbpcpr::BasisKind kind = sbpcpr::parse_basis(basis_token);
  const sbpcpr::OperatorSet ops = sbpcpr::build_operator_set(kind, p);
  const sbpcpr::OpsCheckReport report = sbpcpr::check_operator_set(ops);

  std::printf("basis %s, degree %d (n = %d)\n", sbpcpr::basis_name(kind), p, ops.n);
  std::printf("  SBP residual            %.3e (tolerance %.3e)\n", report.sbp_residual,
              sbpcpr::sbp_tolerance(p));
  std::printf("  mass eigenvalues        [%.6e, %.6e]\n", report.min_mass_eigenvalue,
              report.max_mass_eigenvalue);
  std::printf("  mass asymmetry          %.3e\n", report.mass_asymmetry);
  std::printf("  derivative exactness    %.3e (monomials up to degree %d)\n",
              report.derivative_exactness_error, p);
  std::printf("  restriction exactness   %.3e\n", report.restriction_exactness_error);
  std::printf("  quadrature defect       %.3e\n", report.quadrature_defect);
  if (ops.kind != sbpcpr::BasisKind::ModalLegendre) {
    std::printf("  Vandermonde condition   %.3e%s\n", report.vandermonde_condition,
                report.vandermonde_condition > 1e12 ? "  (warning: ill conditioned)" : "");
  }
  if (ops.nodes) {
    sbpcpr::Matrix row(1, ops.n);
    row.row(0) = ops.nodes->transpose();
    print_matrix("nodes", row);
  }
  print_matrix("M", ops.M);
  print_matrix("D", ops.D);
  print_matrix("R", ops.R);
  print_matrix("V", ops.V);

  if (!dump_path.empty()) {
    std::ofstream out(dump_path, std::ios::binary);
    if (!out) {
      std::fprintf(stderr, "error: cannot write %s\n", dump_path.c_str());
      return kExitInvalidConfig;
    }
    sbpcpr::dump_operators(out, ops);
    std::printf("wrote matrix dump to %s\n", dump_path.c_str());
  }

  std::printf(report.ok ? "all operator invariants satisfied\n"
                        : "OPERATOR INVARIANT FAILURE\n");
  return report.ok ? kExitOk : kExitInvariantFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"1-D SBP CPR solver kit: Burgers' equation with extended "
               "skew-symmetric corrections and curvilinear linear advection"};
  app.require_subcommand(1);

  // ops-check ------------------------------------------------------------
  auto* ops_cmd = app.add_subcommand("ops-check", "build one operator set and verify it");
  std::string ops_basis = "lobatto";
  int ops_p = 2;
  std::string dump_path;
  ops_cmd->add_option("--basis", ops_basis, "basis kind")->required();
  ops_cmd->add_option("--p", ops_p, "polynomial degree")->required();
  ops_cmd->add_option("--dump", dump_path, "write a plain-text matrix dump to this file");

  // burgers ----------------------------------------------------------------
  auto* burgers_cmd = app.add_subcommand("burgers", "run a Burgers experiment");
  std::string b_basis = "gauss", b_flux = "llf", b_corrections = "both", b_out, b_fig1;
  int b_p = 7, b_elements = 20;
  double b_tfinal = 3.0;
  long b_steps = 10000, b_sample = 10;
  burgers_cmd->add_option("--basis", b_basis, "basis kind");
  burgers_cmd->add_option("--p", b_p, "polynomial degree");
  burgers_cmd->add_option("--elements", b_elements, "element count");
  burgers_cmd->add_option("--flux", b_flux, "econ|llf|osher");
  burgers_cmd->add_option("--corrections", b_corrections, "both|div|res|none");
  burgers_cmd->add_option("--t-final", b_tfinal, "final time");
  burgers_cmd->add_option("--steps", b_steps, "number of RK4 steps");
  burgers_cmd->add_option("--sample-every", b_sample, "diagnostic sampling cadence");
  burgers_cmd->add_option("--out", b_out, "output file prefix");
  burgers_cmd->add_option("--paper-fig1", b_fig1, "preset: basis token");

  // advection --------------------------------------------------------------
  auto* adv_cmd = app.add_subcommand("advection", "run a linear advection experiment");
  std::string a_basis = "gauss", a_grid = "uniform", a_mapping = "linear",
              a_jacobian = "nodal", a_out, a_fig2;
  int a_p = 9, a_elements = 5;
  double a_tfinal = 4.0;
  long a_steps = 10000, a_sample = 10;
  adv_cmd->add_option("--basis", a_basis, "basis kind");
  adv_cmd->add_option("--p", a_p, "polynomial degree");
  adv_cmd->add_option("--elements", a_elements, "element count");
  adv_cmd->add_option("--grid", a_grid, "uniform|alternating|geometric");
  adv_cmd->add_option("--mapping", a_mapping, "linear|quadratic");
  adv_cmd->add_option("--jacobian", a_jacobian, "nodal|via-gauss");
  adv_cmd->add_option("--t-final", a_tfinal, "final time");
  adv_cmd->add_option("--steps", a_steps, "number of RK4 steps");
  adv_cmd->add_option("--sample-every", a_sample, "diagnostic sampling cadence");
  adv_cmd->add_option("--out", a_out, "output file prefix");
  adv_cmd->add_option("--paper-fig2", a_fig2, "preset: one of a|b|c|d|e");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? kExitOk : kExitInvalidConfig;
  }

  try {
    if (ops_cmd->parsed()) {
      return run_ops_check(ops_basis, ops_p, dump_path);
    }

    if (burgers_cmd->parsed()) {
      sbpcpr::ExperimentConfig config;
      if (!b_fig1.empty()) {
        config = sbpcpr::burgers_fig1_preset(sbpcpr::parse_basis(b_fig1));
      } else {
        config = sbpcpr::burgers_fig1_preset(sbpcpr::parse_basis(b_basis));
      }
      if (burgers_cmd->count("--basis")) config.basis = sbpcpr::parse_basis(b_basis);
      if (burgers_cmd->count("--p")) config.p = b_p;
      if (burgers_cmd->count("--elements")) config.elements = b_elements;
      if (burgers_cmd->count("--flux")) config.flux = sbpcpr::parse_flux(b_flux);
      if (burgers_cmd->count("--corrections"))
        config.corrections = sbpcpr::parse_corrections(b_corrections);
      if (burgers_cmd->count("--t-final")) config.t_final = b_tfinal;
      if (burgers_cmd->count("--steps")) config.steps = b_steps;
      if (burgers_cmd->count("--sample-every")) config.sample_every = b_sample;
      config.out_prefix = b_out;
      if (config.flux == sbpcpr::FluxKind::Central) {
        std::fprintf(stderr, "error: the central flux applies to advection only\n");
        return kExitInvalidConfig;
      }

      const sbpcpr::BurgersRunResult result = sbpcpr::run_burgers(config);
      const auto& samples = result.diagnostics.samples;
      if (result.blew_up) {
        std::printf("BLOWUP t=%.17g\n", *result.diagnostics.blowup_time);
        return kExitBlowup;
      }
      std::printf("finished t=%.17g momentum=%.17g energy=%.17g\n", result.t_end,
                  samples.back().momentum, samples.back().energy);
      return kExitOk;
    }

    if (adv_cmd->parsed()) {
      sbpcpr::ExperimentConfig config;
      if (!a_fig2.empty()) {
        if (a_fig2.size() != 1) throw std::invalid_argument("preset case must be a single letter");
        config = sbpcpr::advection_fig2_preset(a_fig2[0]);
      } else {
        config = sbpcpr::advection_fig2_preset('e');
        config.grid = sbpcpr::GridKind::Uniform;
      }
      if (adv_cmd->count("--basis")) config.basis = sbpcpr::parse_basis(a_basis);
      if (adv_cmd->count("--p")) config.p = a_p;
      if (adv_cmd->count("--elements")) config.elements = a_elements;
      if (adv_cmd->count("--grid")) config.grid = sbpcpr::parse_grid(a_grid);
      if (adv_cmd->count("--mapping")) config.mapping = sbpcpr::parse_mapping(a_mapping);
      if (adv_cmd->count("--jacobian")) config.jacobian = sbpcpr::parse_jacobian(a_jacobian);
      if (adv_cmd->count("--t-final")) config.t_final = a_tfinal;
      if (adv_cmd->count("--steps")) config.steps = a_steps;
      if (adv_cmd->count("--sample-every")) config.sample_every = a_sample;
      config.out_prefix = a_out;
      if (config.jacobian == sbpcpr::JacobianStrategy::NodalDiagonal &&
          config.basis == sbpcpr::BasisKind::ModalLegendre) {
        std::fprintf(stderr, "error: the nodal Jacobian needs a nodal basis\n");
        return kExitInvalidConfig;
      }

      const sbpcpr::AdvectionRunResult result = sbpcpr::run_advection(config);
      if (result.blew_up) {
        std::printf("BLOWUP t=%.17g\n", *result.diagnostics.blowup_time);
        return kExitBlowup;
      }
      std::printf("STABLE\n");
      std::printf("finished t=%.17g max|u(T) - u0|=%.17g\n", result.t_end,
                  result.linf_vs_initial);
      return kExitOk;
    }
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInvalidConfig;
  } catch (const sbpcpr::ConstructionError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInvariantFailure;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInvalidConfig;
  }
  return kExitOk;
}
