#ifndef SBPCPR_ADVECTION_HPP
#define SBPCPR_ADVECTION_HPP

#include <memory>
#include <utility>
#include <vector>

#include "sbpcpr/burgers.hpp"
#include "sbpcpr/fluxes.hpp"
#include "sbpcpr/mesh.hpp"
#include "sbpcpr/operators.hpp"

namespace sbpcpr {

/// How the discrete Jacobian operator of the coordinate mapping is built.
/// NodalDiagonal collocates dx/dxi at the basis nodes (nodal bases only);
/// ViaGaussTransform collocates at Gauss-Legendre nodes and transforms the
/// diagonal operator into the target basis.
enum class JacobianStrategy { NodalDiagonal, ViaGaussTransform };

inline const char* jacobian_name(JacobianStrategy s) {
  return s == JacobianStrategy::NodalDiagonal ? "nodal" : "via-gauss";
}

/// Multiplication operator for the mapping derivative dx/dxi of one element.
///
/// ViaGaussTransform evaluates dx/dxi at p+1 Gauss-Legendre nodes, forms the
/// diagonal operator there, pulls it to modal coordinates with the Gauss
/// Vandermonde matrix (Jhat = Vg^{-1} Jtilde Vg) and pushes it into the
/// target basis (J = V Jhat V^{-1}).
inline Matrix build_jacobian(const OperatorSet& ops, JacobianStrategy strategy,
                             MappingKind mapping, double xmin, double xmax) {
  if (strategy == JacobianStrategy::NodalDiagonal) {
    if (!ops.is_nodal_basis())
      throw std::invalid_argument("build_jacobian: NodalDiagonal needs a nodal basis");
    Vector diag(ops.n);
    for (int i = 0; i < ops.n; ++i)
      diag[i] = map_element(mapping, xmin, xmax, (*ops.nodes)[i]).dxdxi;
    return Matrix(diag.asDiagonal());
  }
  const QuadratureRule rule = gauss_quadrature(ops.n);
  Vector diag(ops.n);
  for (int i = 0; i < ops.n; ++i)
    diag[i] = map_element(mapping, xmin, xmax, rule.nodes[i]).dxdxi;
  const Matrix vg = vandermonde(rule.nodes, ops.p);
  const Matrix jhat = Eigen::PartialPivLU<Matrix>(vg).solve(diag.asDiagonal() * vg);
  if (ops.kind == BasisKind::ModalLegendre) return jhat;
  const Matrix vinv = Eigen::PartialPivLU<Matrix>(ops.V).solve(Matrix::Identity(ops.n, ops.n));
  return ops.V * jhat * vinv;
}

/// Linear advection du/dt + du/dx = 0 on a curvilinear 1-D grid, central
/// flux, periodic coupling. On the reference element,
///
///   J du/dt + D u + M^{-1} R^T B (f^num - R u) = 0,
///
/// and the per-element J is inverted through a factorisation computed once
/// at setup. Whether M J is symmetric positive definite decides stability.
class AdvectionSemidiscretization {
 public:
  AdvectionSemidiscretization(std::shared_ptr<const OperatorSet> ops, Mesh1D mesh,
                              JacobianStrategy strategy)
      : ops_(std::move(ops)), mesh_(std::move(mesh)) {
    const int K = mesh_.num_elements();
    std::vector<Matrix> jacobians(K);
    for (int k = 0; k < K; ++k)
      jacobians[k] = build_jacobian(*ops_, strategy, mesh_.mapping, mesh_.xmin(k), mesh_.xmax(k));
    adopt_jacobians(std::move(jacobians));
  }

  /// Uses explicitly supplied per-element Jacobian operators.
  AdvectionSemidiscretization(std::shared_ptr<const OperatorSet> ops, Mesh1D mesh,
                              std::vector<Matrix> jacobians)
      : ops_(std::move(ops)), mesh_(std::move(mesh)) {
    if (static_cast<int>(jacobians.size()) != mesh_.num_elements())
      throw std::invalid_argument("AdvectionSemidiscretization: one Jacobian per element");
    adopt_jacobians(std::move(jacobians));
  }

  const OperatorSet& ops() const { return *ops_; }
  const Mesh1D& mesh() const { return mesh_; }
  const Matrix& jacobian(int k) const { return jacobians_[k]; }

  Matrix rhs(const Matrix& coeffs) const {
    const int K = static_cast<int>(coeffs.cols());
    const int n = ops_->n;
    Matrix traces(2, K);
    for (int k = 0; k < K; ++k) traces.col(k) = ops_->R * coeffs.col(k);
    Vector fnum(K + 1);
    for (int i = 0; i < K; ++i)
      fnum[i] = central_flux(traces(1, (i + K - 1) % K), traces(0, i));
    fnum[K] = fnum[0];

    Matrix out(n, K);
    for (int k = 0; k < K; ++k) {
      Vector2 mismatch;
      mismatch << fnum[k], fnum[k + 1];
      mismatch -= Vector2(traces.col(k));
      const Vector penalty =
          ops_->apply_inverse_mass(Vector(ops_->R.transpose() * (ops_->B * mismatch)));
      out.col(k) = -lu_[k].solve(Vector(ops_->D * coeffs.col(k) + penalty));
    }
    return out;
  }

  /// Physical momentum sum_k 1^T M J_k u_k (the Jacobian carries the volume
  /// weight of each element).
  double momentum(const Matrix& coeffs) const {
    const Vector one = ops_->constant_one();
    double total = 0.0;
    for (int k = 0; k < coeffs.cols(); ++k)
      total += one.dot(ops_->M * (jacobians_[k] * coeffs.col(k)));
    return total;
  }

  /// Physical energy sum_k u_k^T M J_k u_k.
  double energy(const Matrix& coeffs) const {
    double total = 0.0;
    for (int k = 0; k < coeffs.cols(); ++k)
      total += coeffs.col(k).dot(ops_->M * (jacobians_[k] * coeffs.col(k)));
    return total;
  }

  std::pair<double, double> diagnostics(const Matrix& coeffs) const {
    return {momentum(coeffs), energy(coeffs)};
  }

 private:
  void adopt_jacobians(std::vector<Matrix>&& jacobians) {
    jacobians_ = std::move(jacobians);
    lu_.reserve(jacobians_.size());
    for (const Matrix& j : jacobians_) {
      lu_.emplace_back(j);
      if (detail::nearly_singular(lu_.back()))
        throw ConstructionError("AdvectionSemidiscretization: singular element Jacobian");
    }
  }

  std::shared_ptr<const OperatorSet> ops_;
  Mesh1D mesh_;
  std::vector<Matrix> jacobians_;
  std::vector<Eigen::PartialPivLU<Matrix>> lu_;
};

/// One-shot evaluation of the advection right-hand side with explicit
/// per-element Jacobian operators.
inline Matrix advection_rhs(const SolutionField& field, std::vector<Matrix> jacobians) {
  return AdvectionSemidiscretization(field.ops, field.mesh, std::move(jacobians))
      .rhs(field.coeffs);
}

}  // namespace sbpcpr

#endif  // SBPCPR_ADVECTION_HPP
