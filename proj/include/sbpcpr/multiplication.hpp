#ifndef SBPCPR_MULTIPLICATION_HPP
#define SBPCPR_MULTIPLICATION_HPP

#include "sbpcpr/operators.hpp"

namespace sbpcpr {

/// Discrete multiplication operator for the field u.
///
/// Nodal bases multiply pointwise, so the operator is diag(u). The modal
/// basis multiplies exactly and then projects orthogonally back onto degree
/// <= p; column j holds the Legendre coefficients of proj(u * P_j), computed
/// with a Gauss rule exact for the degree <= 3p integrands.
inline Matrix mult_operator(const OperatorSet& ops, const Vector& u) {
  if (u.size() != ops.n)
    throw std::invalid_argument("mult_operator: coefficient size mismatch");
  if (ops.kind != BasisKind::ModalLegendre) {
    return Matrix(u.asDiagonal());
  }
  std::shared_ptr<const detail::ModalProductTable> built;
  if (!ops.modal_table)
    built = std::make_shared<const detail::ModalProductTable>(
        detail::ModalProductTable::build(ops.p));
  const detail::ModalProductTable& table = ops.modal_table ? *ops.modal_table : *built;
  // u at the quadrature points, then U[k][j] = (2k+1)/2 sum_q w_q u_q P_k P_j.
  const Vector u_q = table.legendre_values.transpose() * u;
  const Vector wu = table.quad.weights.cwiseProduct(u_q);
  Matrix result = table.legendre_values * wu.asDiagonal() *
                  table.legendre_values.transpose();
  result = table.inverse_mass.asDiagonal() * result;
  return result;
}

/// Adjoint M^{-1} U^T M of a multiplication operator with respect to the
/// scalar product induced by M, computed by solving M X = U^T M column-wise.
/// For a diagonal norm the operator is its own adjoint and is returned
/// unchanged.
inline Matrix m_adjoint(const OperatorSet& ops, const Matrix& U) {
  if (ops.diagonal_norm() && U.isDiagonal(0.0)) return U;
  return ops.M_llt.solve(U.transpose() * ops.M);
}

}  // namespace sbpcpr

#endif  // SBPCPR_MULTIPLICATION_HPP
