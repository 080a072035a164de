// Acceptance suite: one pass/fail line per criterion, exit code equal to the
// number of failed criteria. Tolerances are pinned here, next to each check.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <limits>
#include <memory>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "sbpcpr/sbpcpr.hpp"

using namespace sbpcpr;

namespace {

int failures = 0;

void report(int index, const char* title, bool pass, const std::string& details,
            double seconds) {
  std::printf("%s  criterion-%d: %s (%s) [%.2f s]\n", pass ? "PASS" : "FAIL", index, title,
              details.c_str(), seconds);
  std::fflush(stdout);
  if (!pass) ++failures;
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

std::string fmt(const char* format, ...) {
  char buffer[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buffer, sizeof(buffer), format, args);
  va_end(args);
  return buffer;
}

const BasisKind kAllKinds[] = {
    BasisKind::GaussLegendre,     BasisKind::LobattoLegendre,
    BasisKind::Chebyshev1Roots,   BasisKind::Chebyshev1Extrema,
    BasisKind::Chebyshev2Roots,   BasisKind::ModalLegendre,
};

Matrix matrix3(std::initializer_list<double> entries) {
  Matrix m(3, 3);
  int idx = 0;
  for (double v : entries) {
    m(idx / 3, idx % 3) = v;
    ++idx;
  }
  return m;
}

Matrix matrix2x3(std::initializer_list<double> entries) {
  Matrix m(2, 3);
  int idx = 0;
  for (double v : entries) {
    m(idx / 3, idx % 3) = v;
    ++idx;
  }
  return m;
}

// ---------------------------------------------------------------------------
// criterion 1: the p = 2 operator matrices reproduce their closed forms
// entrywise within 1e-13 (the corrected forms where the sources carry typos:
// the Chebyshev-extrema D(2,2) = 3/2 and the dense mass transform
// M = V^{-T} Mhat V^{-1}).
void criterion_1() {
  Timer timer;
  const double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0), s15 = std::sqrt(15.0);
  double worst = 0.0;
  auto track = [&worst](const Matrix& got, const Matrix& expected) {
    worst = std::max(worst, (got - expected).cwiseAbs().maxCoeff());
  };

  {
    const OperatorSet ops = build_operator_set(BasisKind::Chebyshev1Roots, 2);
    track(ops.V, matrix3({1, -s3 / 2, 5.0 / 8, 1, 0, -0.5, 1, s3 / 2, 5.0 / 8}));
    track(ops.M, matrix3({2.0 / 5, 4.0 / 45, -2.0 / 45, 4.0 / 45, 14.0 / 15, 4.0 / 45,
                          -2.0 / 45, 4.0 / 45, 2.0 / 5}));
    track(ops.R, matrix2x3({(2 + s3) / 3, -1.0 / 3, (2 - s3) / 3, (2 - s3) / 3, -1.0 / 3,
                            (2 + s3) / 3}));
    track(ops.D, matrix3({-s3, 4 * s3 / 3, -s3 / 3, -s3 / 3, 0, s3 / 3, s3 / 3, -4 * s3 / 3,
                          s3}));
  }
  {
    const OperatorSet ops = build_operator_set(BasisKind::Chebyshev1Extrema, 2);
    track(ops.V, matrix3({1, -1, 1, 1, 0, -0.5, 1, 1, 1}));
    track(ops.M, matrix3({4.0 / 15, 2.0 / 15, -1.0 / 15, 2.0 / 15, 16.0 / 15, 2.0 / 15,
                          -1.0 / 15, 2.0 / 15, 4.0 / 15}));
    track(ops.R, matrix2x3({1, 0, 0, 0, 0, 1}));
    track(ops.D, matrix3({-1.5, 2, -0.5, -0.5, 0, 0.5, 0.5, -2, 1.5}));
  }
  {
    const OperatorSet ops = build_operator_set(BasisKind::Chebyshev2Roots, 2);
    track(ops.V, matrix3({1, -s2 / 2, 0.25, 1, 0, -0.5, 1, s2 / 2, 0.25}));
    track(ops.M, matrix3({11.0 / 15, -2.0 / 15, 1.0 / 15, -2.0 / 15, 14.0 / 15, -2.0 / 15,
                          1.0 / 15, -2.0 / 15, 11.0 / 15}));
    track(ops.R, matrix2x3({(2 + s2) / 2, -1, (2 - s2) / 2, (2 - s2) / 2, -1, (2 + s2) / 2}));
    track(ops.D, matrix3({-1.5 * s2, 2 * s2, -0.5 * s2, -0.5 * s2, 0, 0.5 * s2, 0.5 * s2,
                          -2 * s2, 1.5 * s2}));
  }
  {
    const OperatorSet ops = build_operator_set(BasisKind::GaussLegendre, 2);
    track(ops.M, matrix3({5.0 / 9, 0, 0, 0, 8.0 / 9, 0, 0, 0, 5.0 / 9}));
    track(ops.R, matrix2x3({(5 + s15) / 6, -2.0 / 3, (5 - s15) / 6, (5 - s15) / 6, -2.0 / 3,
                            (5 + s15) / 6}));
    track(ops.D, matrix3({-s15 / 2, 2 * s15 / 3, -s15 / 6, -s15 / 6, 0, s15 / 6, s15 / 6,
                          -2 * s15 / 3, s15 / 2}));
  }
  {
    const OperatorSet ops = build_operator_set(BasisKind::LobattoLegendre, 2);
    track(ops.M, matrix3({1.0 / 3, 0, 0, 0, 4.0 / 3, 0, 0, 0, 1.0 / 3}));
    track(ops.R, matrix2x3({1, 0, 0, 0, 0, 1}));
    track(ops.D, matrix3({-1.5, 2, -0.5, -0.5, 0, 0.5, 0.5, -2, 1.5}));
  }
  {
    const OperatorSet ops = build_operator_set(BasisKind::ModalLegendre, 2);
    track(ops.M, matrix3({2, 0, 0, 0, 2.0 / 3, 0, 0, 0, 2.0 / 5}));
    track(ops.D, matrix3({0, 1, 0, 0, 0, 3, 0, 0, 0}));
    track(ops.R, matrix2x3({1, -1, 1, 1, 1, 1}));
  }

  const bool pass = worst <= 1e-13;
  report(1, "closed-form p=2 operator regression", pass,
         fmt("max entry error %.2e, tolerance 1e-13", worst), timer.seconds());
}

// ---------------------------------------------------------------------------
// criterion 2: SBP residual <= 1e-11 (p+1)^2 and positive definite mass for
// all six kinds, p = 1..9.
void criterion_2() {
  Timer timer;
  double worst_ratio = 0.0;
  double worst_eigenvalue = 1.0;
  for (BasisKind kind : kAllKinds) {
    for (int p = 1; p <= 9; ++p) {
      const OperatorSet ops = build_operator_set(kind, p);
      worst_ratio = std::max(worst_ratio, sbp_residual(ops) / sbp_tolerance(p));
      Eigen::SelfAdjointEigenSolver<Matrix> eigen(ops.M);
      worst_eigenvalue = std::min(worst_eigenvalue, eigen.eigenvalues().minCoeff());
    }
  }
  const bool pass = worst_ratio <= 1.0 && worst_eigenvalue > 0.0;
  report(2, "SBP sweep over six kinds, p=1..9", pass,
         fmt("worst residual/tolerance %.2e, min mass eigenvalue %.2e", worst_ratio,
             worst_eigenvalue),
         timer.seconds());
}

// ---------------------------------------------------------------------------
// criterion 3: entropy condition on 1e5 random pairs in [-10, 10]^2,
// tolerance 1e-12 max(1, |u|^3): equality for Econ, non-positivity for LLF
// and Osher.
void criterion_3() {
  Timer timer;
  std::mt19937 gen(20170328);
  std::uniform_real_distribution<double> dist(-10.0, 10.0);
  int violations = 0;
  double worst = 0.0;
  for (int trial = 0; trial < 100000; ++trial) {
    const double um = dist(gen);
    const double up = dist(gen);
    const double bound = std::max(std::abs(um), std::abs(up));
    const double tol = 1e-12 * std::max(1.0, bound * bound * bound);
    const double econ = std::abs(entropy_condition(FluxKind::Econ, um, up));
    const double llf = entropy_condition(FluxKind::LocalLaxFriedrichs, um, up);
    const double osher = entropy_condition(FluxKind::Osher, um, up);
    if (econ > tol || llf > tol || osher > tol) ++violations;
    worst = std::max({worst, econ, llf, osher});
  }
  report(3, "flux entropy property on 1e5 random pairs", violations == 0,
         fmt("%d violations, worst signed value %.2e", violations, worst), timer.seconds());
}

// ---------------------------------------------------------------------------
// criterion 4: semidiscrete conservation and stability rates for all six
// kinds, p = 7, 20 periodic elements, random smooth states, both corrections:
// momentum rate within 1e-10; energy rate <= 1e-10 for LLF/Osher, |rate| <=
// 1e-10 for Econ.
Matrix smooth_state(const OperatorSet& ops, const Mesh1D& mesh, std::mt19937& gen) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  const double pi = std::acos(-1.0);
  const double a = dist(gen), b = 0.5 * dist(gen), c = 0.3 * dist(gen);
  const double phi = pi * dist(gen), psi = pi * dist(gen);
  return interpolate_initial_condition(ops, mesh, [=](double x) {
    return a * std::sin(pi * x + phi) + b * std::cos(2 * pi * x + psi) + c;
  });
}

void criterion_4() {
  Timer timer;
  std::mt19937 gen(4242);
  const Mesh1D mesh = make_grid(GridKind::Uniform, 0.0, 2.0, 20);
  double worst_momentum = 0.0, worst_energy = 0.0;
  for (BasisKind kind : kAllKinds) {
    auto ops = std::make_shared<const OperatorSet>(build_operator_set(kind, 7));
    const Vector m_one = ops->M * ops->constant_one();
    for (int trial = 0; trial < 3; ++trial) {
      const Matrix state = smooth_state(*ops, mesh, gen);
      for (FluxKind flux : {FluxKind::Econ, FluxKind::LocalLaxFriedrichs, FluxKind::Osher}) {
        BurgersSemidiscretization semi(ops, mesh, flux, CorrectionMode::Both);
        const Matrix dudt = semi.rhs(state);
        double momentum_rate = 0.0, energy_rate = 0.0;
        for (int k = 0; k < 20; ++k) {
          momentum_rate += 0.5 * mesh.width(k) * m_one.dot(dudt.col(k));
          energy_rate += mesh.width(k) * state.col(k).dot(ops->M * dudt.col(k));
        }
        worst_momentum = std::max(worst_momentum, std::abs(momentum_rate));
        worst_energy = std::max(worst_energy,
                                flux == FluxKind::Econ ? std::abs(energy_rate) : energy_rate);
      }
    }
  }
  const bool pass = worst_momentum <= 1e-10 && worst_energy <= 1e-10;
  report(4, "semidiscrete conservation/stability rates", pass,
         fmt("worst |momentum rate| %.2e, worst energy rate %.2e, tolerance 1e-10",
             worst_momentum, worst_energy),
         timer.seconds());
}

// ---------------------------------------------------------------------------
// criterion 5: the full Burgers experiment with the LLF flux for each basis:
// momentum drift <= 1e-8 throughout, energy non-increasing within 1e-8 per
// sample, energy(3) < 0.9 energy(0).
void criterion_5() {
  Timer timer;
  bool pass = true;
  std::string details;
  for (BasisKind kind : kAllKinds) {
    const ExperimentConfig config = burgers_fig1_preset(kind);
    const BurgersRunResult result = run_burgers(config);
    const auto& samples = result.diagnostics.samples;
    double drift = 0.0, worst_increase = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
      drift = std::max(drift, std::abs(samples[i].momentum - samples[0].momentum));
      if (i > 0)
        worst_increase = std::max(worst_increase, samples[i].energy - samples[i - 1].energy);
    }
    const double decay = samples.back().energy / samples.front().energy;
    const bool ok = !result.blew_up && drift <= 1e-8 && worst_increase <= 1e-8 && decay < 0.9;
    if (!ok) pass = false;
    details += fmt("%s%s drift %.1e rise %.1e decay %.2f", details.empty() ? "" : "; ",
                   basis_name(kind), drift, worst_increase, decay);
  }
  report(5, "Burgers experiment across the six bases", pass, details, timer.seconds());
}

// ---------------------------------------------------------------------------
// criterion 6: necessity of the corrections.
//  - dense norm: dropping both corrections or computing c_div without the
//    M-adjoint must show a momentum-rate violation > 1e-4 on at least one
//    random state. The violation appears in the non-adjoint variant; with
//    both corrections dropped, momentum provably telescopes for any state
//    (the measured rate is reported alongside).
//  - modal basis, the criterion-4 rate test per correction mode: Both,
//    ResOnly and None must conserve within 1e-10 and DivOnly must not.
//    Semidiscretely the DivOnly and ResOnly momentum defects are exact
//    negatives of each other (1^T M c_div = B-difference of c_res via the
//    SBP property), so the asserted asymmetry cannot materialise; the test
//    keeps the assertion and reports the measured rates, with
//    the evolved full-experiment drifts added for context.
void criterion_6() {
  Timer timer;
  std::mt19937 gen(66);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  const Mesh1D mesh = make_grid(GridKind::Uniform, 0.0, 2.0, 8);
  auto cheb = std::make_shared<const OperatorSet>(
      build_operator_set(BasisKind::Chebyshev2Roots, 7));
  const Vector m_one = cheb->M * cheb->constant_one();

  auto dense_momentum_rate = [&](CorrectionMode mode, DivCorrectionVariant variant) {
    double worst = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
      Matrix state(cheb->n, 8);
      for (int k = 0; k < 8; ++k)
        for (int i = 0; i < cheb->n; ++i) state(i, k) = dist(gen);
      BurgersSemidiscretization semi(cheb, mesh, FluxKind::Econ, mode, variant);
      const Matrix dudt = semi.rhs(state);
      double rate = 0.0;
      for (int k = 0; k < 8; ++k) rate += 0.5 * mesh.width(k) * m_one.dot(dudt.col(k));
      worst = std::max(worst, std::abs(rate));
    }
    return worst;
  };

  const double none_rate =
      dense_momentum_rate(CorrectionMode::None, DivCorrectionVariant::MAdjoint);
  const double plain_rate =
      dense_momentum_rate(CorrectionMode::Both, DivCorrectionVariant::Plain);
  const bool dense_witness = none_rate > 1e-4 || plain_rate > 1e-4;

  // Modal criterion-4 rates on random smooth states, one value per mode.
  std::mt19937 gen_modal(4242);
  const Mesh1D mesh20 = make_grid(GridKind::Uniform, 0.0, 2.0, 20);
  auto modal = std::make_shared<const OperatorSet>(
      build_operator_set(BasisKind::ModalLegendre, 7));
  const Vector modal_m_one = modal->M * modal->constant_one();
  auto modal_rate = [&](CorrectionMode mode) {
    double worst = 0.0;
    std::mt19937 local(4242);
    for (int trial = 0; trial < 3; ++trial) {
      const Matrix state = smooth_state(*modal, mesh20, local);
      BurgersSemidiscretization semi(modal, mesh20, FluxKind::Econ, mode);
      const Matrix dudt = semi.rhs(state);
      double rate = 0.0;
      for (int k = 0; k < 20; ++k)
        rate += 0.5 * mesh20.width(k) * modal_m_one.dot(dudt.col(k));
      worst = std::max(worst, std::abs(rate));
    }
    return worst;
  };
  const double rate_both = modal_rate(CorrectionMode::Both);
  const double rate_res = modal_rate(CorrectionMode::ResOnly);
  const double rate_none = modal_rate(CorrectionMode::None);
  const double rate_div = modal_rate(CorrectionMode::DivOnly);
  const bool modal_ok =
      rate_both <= 1e-10 && rate_res <= 1e-10 && rate_none <= 1e-10 && rate_div > 1e-10;

  // Context: momentum drift over the evolved full experiment per mode.
  std::string drifts;
  for (CorrectionMode mode : {CorrectionMode::Both, CorrectionMode::ResOnly,
                              CorrectionMode::None, CorrectionMode::DivOnly}) {
    ExperimentConfig config = burgers_fig1_preset(BasisKind::ModalLegendre);
    config.corrections = mode;
    const BurgersRunResult result = run_burgers(config);
    double drift = std::numeric_limits<double>::infinity();
    if (!result.blew_up) {
      drift = 0.0;
      const auto& samples = result.diagnostics.samples;
      for (const DiagnosticsSample& s : samples)
        drift = std::max(drift, std::abs(s.momentum - samples[0].momentum));
    }
    drifts += fmt(" %s %.1e", correction_name(mode), drift);
  }

  report(6, "correction necessity", dense_witness && modal_ok,
         fmt("dense: none-rate %.1e, non-adjoint rate %.1e (witness > 1e-4); modal rates: "
             "both %.1e res %.1e none %.1e div %.1e (div asserted > 1e-10); evolved drifts:%s",
             none_rate, plain_rate, rate_both, rate_res, rate_none, rate_div, drifts.c_str()),
         timer.seconds());
}

// ---------------------------------------------------------------------------
// criterion 7: the advection stability matrix with the quadratic mapping on
// all three grids (stable runs return to the initial data within 1e-2 in the
// max norm; the two unstable pairings blow up before t = 4), and all five
// pairings stable with the linear mapping.
void criterion_7() {
  Timer timer;
  bool pass = true;
  std::string details;
  const GridKind grids[] = {GridKind::Uniform, GridKind::Alternating,
                            GridKind::GeometricIncreasing};

  for (GridKind grid : grids) {
    for (char which : {'a', 'b', 'c', 'd', 'e'}) {
      ExperimentConfig config = advection_fig2_preset(which);
      config.grid = grid;
      const AdvectionRunResult result = run_advection(config);
      const bool expect_blowup = which == 'b' || which == 'c';
      bool ok;
      if (expect_blowup) {
        ok = result.blew_up && *result.diagnostics.blowup_time < 4.0;
      } else {
        ok = !result.blew_up && result.linf_vs_initial <= 1e-2;
      }
      if (!ok) {
        pass = false;
        details += fmt("%squadratic/%s/%c %s", details.empty() ? "" : "; ", grid_name(grid),
                       which, result.blew_up ? "blew up" : "stable");
      }
    }
  }

  double worst_linear = 0.0;
  for (GridKind grid : grids) {
    for (char which : {'a', 'b', 'c', 'd', 'e'}) {
      ExperimentConfig config = advection_fig2_preset(which);
      config.grid = grid;
      config.mapping = MappingKind::Linear;
      const AdvectionRunResult result = run_advection(config);
      if (result.blew_up) {
        pass = false;
        details += fmt("%slinear/%s/%c blew up", details.empty() ? "" : "; ",
                       grid_name(grid), which);
      } else {
        worst_linear = std::max(worst_linear, result.linf_vs_initial);
      }
    }
  }
  if (details.empty())
    details = fmt("all 30 runs as expected, worst linear-mapping error %.1e", worst_linear);
  report(7, "advection stability matrix", pass, details, timer.seconds());
}

// ---------------------------------------------------------------------------
// criterion 8: structure of M J for the quadratic mapping: the three stable
// pairings give symmetric positive definite products for p = 2..9, and the
// two reference counterexamples break symmetry by more than 1e-3 relative.
void criterion_8() {
  Timer timer;
  const double xmin = 0.2, xmax = 0.9;
  double worst_asym = 0.0;
  double min_eigenvalue = 1.0;
  auto mass_jacobian = [&](BasisKind kind, int p, JacobianStrategy strategy) {
    const OperatorSet ops = build_operator_set(kind, p);
    return Matrix(ops.M *
                  build_jacobian(ops, strategy, MappingKind::Quadratic, xmin, xmax));
  };

  for (int p = 2; p <= 9; ++p) {
    for (auto [kind, strategy] : std::vector<std::pair<BasisKind, JacobianStrategy>>{
             {BasisKind::GaussLegendre, JacobianStrategy::NodalDiagonal},
             {BasisKind::LobattoLegendre, JacobianStrategy::NodalDiagonal},
             {BasisKind::ModalLegendre, JacobianStrategy::ViaGaussTransform},
             {BasisKind::Chebyshev1Roots, JacobianStrategy::ViaGaussTransform},
             {BasisKind::Chebyshev1Extrema, JacobianStrategy::ViaGaussTransform},
             {BasisKind::Chebyshev2Roots, JacobianStrategy::ViaGaussTransform}}) {
      const Matrix mj = mass_jacobian(kind, p, strategy);
      worst_asym = std::max(worst_asym, (mj - mj.transpose()).cwiseAbs().maxCoeff() /
                                            mj.cwiseAbs().maxCoeff());
      Eigen::SelfAdjointEigenSolver<Matrix> eigen(0.5 * (mj + mj.transpose()));
      min_eigenvalue = std::min(min_eigenvalue, eigen.eigenvalues().minCoeff());
    }
  }

  const Matrix witness_cheb =
      mass_jacobian(BasisKind::Chebyshev2Roots, 9, JacobianStrategy::NodalDiagonal);
  const double asym_cheb = (witness_cheb - witness_cheb.transpose()).cwiseAbs().maxCoeff() /
                           witness_cheb.cwiseAbs().maxCoeff();
  const Matrix witness_lob =
      mass_jacobian(BasisKind::LobattoLegendre, 9, JacobianStrategy::ViaGaussTransform);
  const double asym_lob = (witness_lob - witness_lob.transpose()).cwiseAbs().maxCoeff() /
                          witness_lob.cwiseAbs().maxCoeff();

  const bool pass = worst_asym <= 1e-11 && min_eigenvalue > 0.0 && asym_cheb > 1e-3 &&
                    asym_lob > 1e-3;
  report(8, "mass-Jacobian symmetry classification", pass,
         fmt("stable cases: asym %.1e, min eig %.1e; witnesses %.1e / %.1e > 1e-3",
             worst_asym, min_eigenvalue, asym_cheb, asym_lob),
         timer.seconds());
}

// ---------------------------------------------------------------------------
// criterion 9: observed RK4 convergence order on u' = -u lies in [3.8, 4.2].
void criterion_9() {
  Timer timer;
  auto solve = [](long steps) {
    const double dt = 1.0 / static_cast<double>(steps);
    double u = 1.0;
    for (long i = 0; i < steps; ++i) u = rk4_step([](double v) { return -v; }, u, dt);
    return std::abs(u - std::exp(-1.0));
  };
  const double ratio = solve(64) / solve(128);
  const double order = std::log2(ratio);
  const bool pass = order >= 3.8 && order <= 4.2;
  report(9, "RK4 observed convergence order", pass,
         fmt("error ratio %.3f, order %.3f", ratio, order), timer.seconds());
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  if (failures == 0) {
    std::printf("all acceptance criteria passed\n");
  } else {
    std::printf("%d acceptance criteria FAILED\n", failures);
  }
  return failures;
}
