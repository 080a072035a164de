#ifndef SBPCPR_BURGERS_HPP
#define SBPCPR_BURGERS_HPP

#include <memory>
#include <utility>

#include "sbpcpr/fluxes.hpp"
#include "sbpcpr/mesh.hpp"
#include "sbpcpr/multiplication.hpp"
#include "sbpcpr/operators.hpp"

namespace sbpcpr {

/// Which of the two correction terms are active in the Burgers scheme.
enum class CorrectionMode { Both, DivOnly, ResOnly, None };

/// How the first term of the divergence correction multiplies: with the
/// M-adjoint of the multiplication operator, or with the plain operator
/// (the original diagonal-norm form, wrong for dense norms).
enum class DivCorrectionVariant { MAdjoint, Plain };

inline const char* correction_name(CorrectionMode mode) {
  switch (mode) {
    case CorrectionMode::Both:    return "both";
    case CorrectionMode::DivOnly: return "div";
    case CorrectionMode::ResOnly: return "res";
    case CorrectionMode::None:    return "none";
  }
  return "unknown";
}

/// Per-element coefficients of the numerical solution on a mesh. All
/// elements share the same operator set; column k of coeffs holds element k.
struct SolutionField {
  Mesh1D mesh;
  std::shared_ptr<const OperatorSet> ops;
  Matrix coeffs;  // n x K

  int num_elements() const { return static_cast<int>(coeffs.cols()); }
};

/// Divergence correction
///   c_div = 1/3 (M^{-1} U^T M D u - 1/2 D U u),
/// with U the multiplication operator of u. Compensates the discrete failure
/// of the product rule; vanishes for constants.
inline Vector correction_div(const OperatorSet& ops, const Vector& u,
                             DivCorrectionVariant variant = DivCorrectionVariant::MAdjoint) {
  const Matrix U = mult_operator(ops, u);
  const Vector du = ops.D * u;
  // The M-adjoint collapses to U itself for diagonal norms.
  const Vector first =
      (variant == DivCorrectionVariant::Plain || ops.diagonal_norm())
          ? Vector(U * du)
          : ops.apply_inverse_mass(Vector(U.transpose() * (ops.M * du)));
  return (first - 0.5 * (ops.D * (U * u))) / 3.0;
}

/// Restriction correction
///   c_res = 1/6 ((R u)^2 - R U u)
/// (componentwise square of the boundary trace). Zero whenever restriction
/// is exact point evaluation of the product, e.g. for bases including the
/// boundary nodes.
inline Vector2 correction_res(const OperatorSet& ops, const Vector& u) {
  const Matrix U = mult_operator(ops, u);
  const Vector2 trace = ops.R * u;
  const Vector2 product_trace = ops.R * (U * u);
  return (trace.cwiseProduct(trace) - product_trace) / 6.0;
}

/// Semidiscretisation of inviscid Burgers' equation in the extended
/// skew-symmetric form with periodic element coupling:
///
///   du/dt = -(2/dx_k) [ D (1/2 U u) + c_div
///                       + M^{-1} R^T B (f^num - R (1/2 U u) - c_res) ].
///
/// The 2/dx_k factor is the Jacobian of the affine reference map, so the
/// diagnostics below measure physical momentum and energy. Elements read
/// only their own coefficients plus the neighbour traces; reductions run in
/// ascending element order.
class BurgersSemidiscretization {
 public:
  BurgersSemidiscretization(std::shared_ptr<const OperatorSet> ops, Mesh1D mesh,
                            FluxKind flux, CorrectionMode mode,
                            DivCorrectionVariant variant = DivCorrectionVariant::MAdjoint)
      : ops_(std::move(ops)), mesh_(std::move(mesh)), flux_(flux), mode_(mode),
        variant_(variant) {
    if (flux_ == FluxKind::Central)
      throw std::invalid_argument("BurgersSemidiscretization: Central is not a Burgers flux");
    if (mesh_.num_elements() < 1)
      throw std::invalid_argument("BurgersSemidiscretization: empty mesh");
  }

  const OperatorSet& ops() const { return *ops_; }
  const Mesh1D& mesh() const { return mesh_; }

  Matrix rhs(const Matrix& coeffs) const {
    const int K = static_cast<int>(coeffs.cols());
    const int n = ops_->n;
    const bool use_div = mode_ == CorrectionMode::Both || mode_ == CorrectionMode::DivOnly;
    const bool use_res = mode_ == CorrectionMode::Both || mode_ == CorrectionMode::ResOnly;

    // Boundary traces of every element, then one numerical flux per
    // interface. Interface i sits left of element i; periodic wrap.
    Matrix traces(2, K);
    for (int k = 0; k < K; ++k) traces.col(k) = ops_->R * coeffs.col(k);
    Vector fnum(K + 1);
    for (int i = 0; i < K; ++i) {
      const double u_minus = traces(1, (i + K - 1) % K);
      const double u_plus = traces(0, i);
      fnum[i] = burgers_flux(flux_, u_minus, u_plus);
    }
    fnum[K] = fnum[0];

    Matrix out(n, K);
    for (int k = 0; k < K; ++k) {
      const Vector u = coeffs.col(k);
      const Matrix U = mult_operator(*ops_, u);
      const Vector half_u2 = 0.5 * (U * u);
      const Vector d_half_u2 = ops_->D * half_u2;
      const Vector2 half_u2_trace = ops_->R * half_u2;

      Vector volume = d_half_u2;
      if (use_div) {
        const Vector du = ops_->D * u;
        const Vector first =
            (variant_ == DivCorrectionVariant::Plain || ops_->diagonal_norm())
                ? Vector(U * du)
                : ops_->apply_inverse_mass(Vector(U.transpose() * (ops_->M * du)));
        volume += (first - d_half_u2) / 3.0;
      }

      Vector2 boundary_mismatch;
      boundary_mismatch << fnum[k], fnum[k + 1];
      boundary_mismatch -= half_u2_trace;
      if (use_res) {
        const Vector2 trace = traces.col(k);
        boundary_mismatch -=
            Vector2((trace.cwiseProduct(trace) - 2.0 * half_u2_trace) / 6.0);
      }
      const Vector penalty =
          ops_->apply_inverse_mass(Vector(ops_->R.transpose() * (ops_->B * boundary_mismatch)));

      out.col(k) = -(2.0 / mesh_.width(k)) * (volume + penalty);
    }
    return out;
  }

  /// Physical momentum sum_k (dx_k/2) 1^T M u_k.
  double momentum(const Matrix& coeffs) const {
    const Vector one = ops_->constant_one();
    const Vector m_one = ops_->M * one;
    double total = 0.0;
    for (int k = 0; k < coeffs.cols(); ++k)
      total += 0.5 * mesh_.width(k) * m_one.dot(coeffs.col(k));
    return total;
  }

  /// Physical energy sum_k (dx_k/2) u_k^T M u_k.
  double energy(const Matrix& coeffs) const {
    double total = 0.0;
    for (int k = 0; k < coeffs.cols(); ++k)
      total += 0.5 * mesh_.width(k) * coeffs.col(k).dot(ops_->M * coeffs.col(k));
    return total;
  }

  std::pair<double, double> diagnostics(const Matrix& coeffs) const {
    return {momentum(coeffs), energy(coeffs)};
  }

 private:
  std::shared_ptr<const OperatorSet> ops_;
  Mesh1D mesh_;
  FluxKind flux_;
  CorrectionMode mode_;
  DivCorrectionVariant variant_;
};

/// One-shot evaluation of the Burgers right-hand side for a field.
inline Matrix burgers_rhs(const SolutionField& field, FluxKind flux, CorrectionMode mode,
                          DivCorrectionVariant variant = DivCorrectionVariant::MAdjoint) {
  return BurgersSemidiscretization(field.ops, field.mesh, flux, mode, variant)
      .rhs(field.coeffs);
}

inline double momentum(const SolutionField& field) {
  const Vector m_one = field.ops->M * field.ops->constant_one();
  double total = 0.0;
  for (int k = 0; k < field.num_elements(); ++k)
    total += 0.5 * field.mesh.width(k) * m_one.dot(field.coeffs.col(k));
  return total;
}

inline double energy(const SolutionField& field) {
  double total = 0.0;
  for (int k = 0; k < field.num_elements(); ++k)
    total += 0.5 * field.mesh.width(k) *
             field.coeffs.col(k).dot(field.ops->M * field.coeffs.col(k));
  return total;
}

}  // namespace sbpcpr

#endif  // SBPCPR_BURGERS_HPP
