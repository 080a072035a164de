#ifndef SBPCPR_OPERATORS_HPP
#define SBPCPR_OPERATORS_HPP

#include <cmath>
#include <cstdio>
#include <memory>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace sbpcpr {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Matrix2 = Eigen::Matrix2d;
using Vector2 = Eigen::Vector2d;

/// Polynomial bases available for the local expansion on [-1, 1].
///
/// GaussLegendre and LobattoLegendre are nodal bases with a diagonal norm
/// matrix. The three Chebyshev kinds are nodal with a dense norm matrix.
/// ModalLegendre carries Legendre coefficients instead of point values.
enum class BasisKind {
  GaussLegendre,
  LobattoLegendre,
  Chebyshev1Roots,
  Chebyshev1Extrema,
  Chebyshev2Roots,
  ModalLegendre,
};

inline bool is_nodal(BasisKind kind) { return kind != BasisKind::ModalLegendre; }

inline bool has_diagonal_norm(BasisKind kind) {
  return kind == BasisKind::GaussLegendre || kind == BasisKind::LobattoLegendre;
}

inline const char* basis_name(BasisKind kind) {
  switch (kind) {
    case BasisKind::GaussLegendre:     return "gauss";
    case BasisKind::LobattoLegendre:   return "lobatto";
    case BasisKind::Chebyshev1Roots:   return "cheb1-roots";
    case BasisKind::Chebyshev1Extrema: return "cheb1-extrema";
    case BasisKind::Chebyshev2Roots:   return "cheb2-roots";
    case BasisKind::ModalLegendre:     return "modal";
  }
  return "unknown";
}

/// Thrown when an operator set cannot be constructed (Newton failure,
/// singular Vandermonde, summation-by-parts residual above tolerance, ...).
class ConstructionError : public std::runtime_error {
 public:
  explicit ConstructionError(const std::string& what) : std::runtime_error(what) {}
};

/// Degrees above this make the dense-norm Vandermonde transforms too
/// ill-conditioned for the residual tolerance below to be attainable in
/// double precision.
inline constexpr int kMaxDegree = 20;

/// Tolerance for the summation-by-parts residual; grows with the degree to
/// absorb the conditioning of the basis transforms.
inline double sbp_tolerance(int p) {
  return 1e-11 * static_cast<double>(p + 1) * static_cast<double>(p + 1);
}

/// Legendre polynomial P_j(x), normalised so that P_j(1) = 1, evaluated via
/// the three-term recurrence (j+1) P_{j+1} = (2j+1) x P_j - j P_{j-1}.
/// Valid for any j >= 0.
inline double legendre_eval(int j, double x) {
  if (j < 0) throw std::invalid_argument("legendre_eval: negative degree");
  if (j == 0) return 1.0;
  double pm = 1.0;   // P_0
  double pc = x;     // P_1
  for (int k = 1; k < j; ++k) {
    const double pn = ((2 * k + 1) * x * pc - k * pm) / (k + 1);
    pm = pc;
    pc = pn;
  }
  return pc;
}

/// First derivative P_j'(x) for x in the open interval (-1, 1), using
/// P_j'(x) = j (x P_j(x) - P_{j-1}(x)) / (x^2 - 1).
inline double legendre_derivative(int j, double x) {
  if (j == 0) return 0.0;
  double pm = 1.0;
  double pc = x;
  for (int k = 1; k < j; ++k) {
    const double pn = ((2 * k + 1) * x * pc - k * pm) / (k + 1);
    pm = pc;
    pc = pn;
  }
  if (j == 1) return 1.0;
  const double den = x * x - 1.0;
  if (std::abs(den) < 1e-10) {
    // Endpoint values: P_j'(+-1) = (+-1)^(j-1) j (j+1) / 2.
    const double sign = (x > 0.0 || j % 2 == 1) ? 1.0 : -1.0;
    return sign * 0.5 * j * (j + 1);
  }
  return j * (x * pc - pm) / den;
}

namespace detail {

inline constexpr int kNewtonMaxIterations = 100;
inline constexpr double kNewtonTolerance = 1e-15;

// Newton iteration for a root of P_n, refined until the update falls below
// kNewtonTolerance, then polished once more.
inline double newton_legendre_root(int n, double guess) {
  double x = guess;
  for (int it = 0; it < kNewtonMaxIterations; ++it) {
    const double step = legendre_eval(n, x) / legendre_derivative(n, x);
    x -= step;
    if (std::abs(step) <= kNewtonTolerance) {
      x -= legendre_eval(n, x) / legendre_derivative(n, x);
      return x;
    }
  }
  throw ConstructionError("Newton iteration for Legendre root did not converge");
}

// Newton iteration for a root of P_p' on (-1, 1).
// Uses P_p''(x) = (2 x P_p'(x) - p (p+1) P_p(x)) / (1 - x^2).
inline double newton_legendre_derivative_root(int p, double guess) {
  double x = guess;
  for (int it = 0; it < kNewtonMaxIterations; ++it) {
    const double d1 = legendre_derivative(p, x);
    const double d2 = (2.0 * x * d1 - p * (p + 1) * legendre_eval(p, x)) / (1.0 - x * x);
    const double step = d1 / d2;
    x -= step;
    if (std::abs(step) <= kNewtonTolerance) return x;
  }
  throw ConstructionError("Newton iteration for Lobatto node did not converge");
}

// Relative-pivot singularity test for a computed LU factorisation.
inline bool nearly_singular(const Eigen::PartialPivLU<Matrix>& lu) {
  const Vector pivots = lu.matrixLU().diagonal().cwiseAbs();
  return !(pivots.minCoeff() > 1e-14 * std::max(pivots.maxCoeff(), 1e-300));
}

// Enforce the antisymmetry x_i = -x_{n-1-i} that all node families share.
inline void symmetrise(Vector& nodes) {
  const Eigen::Index n = nodes.size();
  for (Eigen::Index i = 0; i < n / 2; ++i) {
    const double v = 0.5 * (nodes[i] - nodes[n - 1 - i]);
    nodes[i] = v;
    nodes[n - 1 - i] = -v;
  }
  if (n % 2 == 1) nodes[n / 2] = 0.0;
}

}  // namespace detail

/// Interpolation nodes of a nodal basis, in ascending order.
///
/// Chebyshev families use the closed forms
///   first kind, roots:    cos((2i+1) pi / (2p+2)),
///   first kind, extrema:  cos(i pi / p),
///   second kind, roots:   cos((i+1) pi / (p+2)),
/// while Gauss-Legendre nodes are the roots of P_{p+1} and Lobatto-Legendre
/// nodes are {-1, 1} together with the roots of P_p', both found by Newton
/// iteration started from Chebyshev guesses.
inline Vector compute_nodes(BasisKind kind, int p) {
  if (kind == BasisKind::ModalLegendre)
    throw std::invalid_argument("compute_nodes: modal basis has no nodes");
  if (p < 1) throw std::invalid_argument("compute_nodes: degree must be >= 1");
  const int n = p + 1;
  Vector nodes(n);
  const double pi = std::acos(-1.0);
  switch (kind) {
    case BasisKind::Chebyshev1Roots:
      for (int i = 0; i < n; ++i) nodes[n - 1 - i] = std::cos((2 * i + 1) * pi / (2 * p + 2));
      break;
    case BasisKind::Chebyshev1Extrema:
      for (int i = 0; i < n; ++i) nodes[n - 1 - i] = std::cos(i * pi / p);
      break;
    case BasisKind::Chebyshev2Roots:
      for (int i = 0; i < n; ++i) nodes[n - 1 - i] = std::cos((i + 1) * pi / (p + 2));
      break;
    case BasisKind::GaussLegendre:
      for (int i = 0; i < n; ++i) {
        const double guess = std::cos((4.0 * i + 3.0) * pi / (4.0 * n + 2.0));
        nodes[n - 1 - i] = detail::newton_legendre_root(n, guess);
      }
      break;
    case BasisKind::LobattoLegendre:
      nodes[0] = -1.0;
      nodes[n - 1] = 1.0;
      for (int i = 1; i < p; ++i)
        nodes[n - 1 - i] = detail::newton_legendre_derivative_root(p, std::cos(i * pi / p));
      break;
    default:
      throw std::invalid_argument("compute_nodes: unsupported basis");
  }
  detail::symmetrise(nodes);
  return nodes;
}

struct QuadratureRule {
  Vector nodes;
  Vector weights;
};

/// n-point Gauss-Legendre rule on [-1, 1], exact for degree <= 2n-1.
/// Weights w_i = 2 / ((1 - x_i^2) P_n'(x_i)^2).
inline QuadratureRule gauss_quadrature(int n) {
  if (n < 1) throw std::invalid_argument("gauss_quadrature: need n >= 1");
  QuadratureRule rule;
  if (n == 1) {
    rule.nodes = Vector::Zero(1);
    rule.weights = Vector::Constant(1, 2.0);
    return rule;
  }
  rule.nodes.resize(n);
  const double pi = std::acos(-1.0);
  for (int i = 0; i < n; ++i) {
    const double guess = std::cos((4.0 * i + 3.0) * pi / (4.0 * n + 2.0));
    rule.nodes[n - 1 - i] = detail::newton_legendre_root(n, guess);
  }
  detail::symmetrise(rule.nodes);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    const double x = rule.nodes[i];
    const double dp = legendre_derivative(n, x);
    rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

/// Vandermonde matrix V[i][j] = P_j(nodes[i]) of the modal-to-nodal
/// transform u = V u_hat.
inline Matrix vandermonde(const Vector& nodes, int p) {
  if (nodes.size() != p + 1)
    throw std::invalid_argument("vandermonde: node count must equal p + 1");
  Matrix v(p + 1, p + 1);
  for (int i = 0; i <= p; ++i)
    for (int j = 0; j <= p; ++j) v(i, j) = legendre_eval(j, nodes[i]);
  return v;
}

/// Mass matrix of the Legendre basis: diag(2 / (2i + 1)).
inline Matrix modal_mass_matrix(int p) {
  Matrix m = Matrix::Zero(p + 1, p + 1);
  for (int i = 0; i <= p; ++i) m(i, i) = 2.0 / (2 * i + 1);
  return m;
}

/// Derivative matrix of the Legendre basis: strictly upper triangular with
/// entry 2i+1 at (i, j) whenever j > i and i + j is odd (hence nilpotent).
inline Matrix modal_derivative_matrix(int p) {
  Matrix d = Matrix::Zero(p + 1, p + 1);
  for (int i = 0; i <= p; ++i)
    for (int j = i + 1; j <= p; ++j)
      if ((i + j) % 2 == 1) d(i, j) = 2 * i + 1;
  return d;
}

/// Boundary restriction of the Legendre basis: row 0 evaluates at -1
/// (entries (-1)^j), row 1 evaluates at +1 (entries 1).
inline Matrix modal_restriction_matrix(int p) {
  Matrix r(2, p + 1);
  for (int j = 0; j <= p; ++j) {
    r(0, j) = (j % 2 == 0) ? 1.0 : -1.0;
    r(1, j) = 1.0;
  }
  return r;
}

namespace detail {

// Cached data for the orthogonal-projection multiplication of the modal
// basis: a Gauss rule exact for triple products of degree <= 3p, the
// Legendre values P_k(x_q), and the inverse modal mass diag((2k+1)/2).
struct ModalProductTable {
  QuadratureRule quad;
  Matrix legendre_values;  // (p+1) x n_q
  Vector inverse_mass;     // (2k+1)/2

  static ModalProductTable build(int p) {
    ModalProductTable table;
    const int n_q = (3 * p + 1 + 1) / 2 + 1;  // ceil((3p+1)/2) + 1
    table.quad = gauss_quadrature(n_q);
    table.legendre_values.resize(p + 1, n_q);
    for (int k = 0; k <= p; ++k)
      for (int q = 0; q < n_q; ++q)
        table.legendre_values(k, q) = legendre_eval(k, table.quad.nodes[q]);
    table.inverse_mass.resize(p + 1);
    for (int k = 0; k <= p; ++k) table.inverse_mass[k] = 0.5 * (2 * k + 1);
    return table;
  }
};

}  // namespace detail

/// A discrete summation-by-parts operator set on the reference element
/// [-1, 1]: mass/norm matrix M, derivative D, boundary restriction R,
/// boundary bilinear form B = diag(-1, 1), and the Vandermonde transform V
/// (identity for the modal basis). Immutable after construction and safe to
/// share between threads.
struct OperatorSet {
  BasisKind kind = BasisKind::GaussLegendre;
  int p = 0;
  int n = 0;
  std::optional<Vector> nodes;  // absent for ModalLegendre
  Matrix M;
  Matrix D;
  Matrix R;  // 2 x n, row 0 = value at -1
  Matrix2 B;
  Matrix V;
  double vandermonde_condition = 1.0;

  // Cached factorisation of M and, for the modal basis, the projection table.
  Eigen::LLT<Matrix> M_llt;
  std::shared_ptr<const detail::ModalProductTable> modal_table;

  bool is_nodal_basis() const { return is_nodal(kind); }
  bool diagonal_norm() const { return has_diagonal_norm(kind); }

  /// Coefficient representation of the constant function 1.
  Vector constant_one() const {
    if (kind == BasisKind::ModalLegendre) {
      Vector e = Vector::Zero(n);
      e[0] = 1.0;
      return e;
    }
    return Vector::Ones(n);
  }

  /// Solves M x = b using the cached Cholesky factorisation.
  Vector apply_inverse_mass(const Vector& b) const { return M_llt.solve(b); }
  Matrix apply_inverse_mass(const Matrix& b) const { return M_llt.solve(b); }
};

/// Max-norm of M D + D^T M - R^T B R, the defect of the summation-by-parts
/// property.
inline double sbp_residual(const OperatorSet& ops) {
  const Matrix defect = ops.M * ops.D + ops.D.transpose() * ops.M -
                        ops.R.transpose() * ops.B * ops.R;
  return defect.cwiseAbs().maxCoeff();
}

/// Coefficient representation of the monomial x^k (k <= p).
///
/// Nodal bases store point values; the modal basis obtains the Legendre
/// coefficients by k successive exact multiplications with x using
/// x P_j = ((j+1) P_{j+1} + j P_{j-1}) / (2j+1).
inline Vector monomial_coefficients(const OperatorSet& ops, int k) {
  if (k < 0 || k > ops.p)
    throw std::invalid_argument("monomial_coefficients: need 0 <= k <= p");
  if (ops.kind != BasisKind::ModalLegendre) {
    return ops.nodes->array().pow(k).matrix();
  }
  Vector c = Vector::Zero(ops.n);
  c[0] = 1.0;
  for (int m = 0; m < k; ++m) {
    Vector next = Vector::Zero(ops.n);
    for (int j = 0; j < ops.n; ++j) {
      if (c[j] == 0.0) continue;
      if (j + 1 < ops.n) next[j + 1] += c[j] * (j + 1.0) / (2 * j + 1.0);
      if (j > 0) next[j - 1] += c[j] * j / (2 * j + 1.0);
    }
    c = next;
  }
  return c;
}

/// Builds the full operator set for a basis kind and degree p in [1, 20].
///
/// The modal basis uses the closed-form matrices directly. Nodal bases are
/// obtained by transforming the modal matrices with the Vandermonde matrix:
///   D = V Dhat V^{-1},   R = Rhat V^{-1},   M = V^{-T} Mhat V^{-1},
/// except that the diagonal-norm kinds take M = diag(quadrature weights)
/// (for Gauss-Legendre both forms coincide; Lobatto-Legendre uses the lumped
/// weights).
inline OperatorSet build_operator_set(BasisKind kind, int p) {
  if (p < 1 || p > kMaxDegree)
    throw ConstructionError("build_operator_set: degree must be in [1, " +
                            std::to_string(kMaxDegree) + "], got " + std::to_string(p));
  OperatorSet ops;
  ops.kind = kind;
  ops.p = p;
  ops.n = p + 1;
  ops.B = Matrix2::Zero();
  ops.B(0, 0) = -1.0;
  ops.B(1, 1) = 1.0;

  const Matrix mhat = modal_mass_matrix(p);
  const Matrix dhat = modal_derivative_matrix(p);
  const Matrix rhat = modal_restriction_matrix(p);

  if (kind == BasisKind::ModalLegendre) {
    ops.M = mhat;
    ops.D = dhat;
    ops.R = rhat;
    ops.V = Matrix::Identity(ops.n, ops.n);
    ops.modal_table = std::make_shared<const detail::ModalProductTable>(
        detail::ModalProductTable::build(p));
  } else {
    ops.nodes = compute_nodes(kind, p);
    ops.V = vandermonde(*ops.nodes, p);
    Eigen::PartialPivLU<Matrix> lu(ops.V);
    if (detail::nearly_singular(lu))
      throw ConstructionError("build_operator_set: singular Vandermonde matrix");
    const Matrix vinv = lu.solve(Matrix::Identity(ops.n, ops.n));
    ops.vandermonde_condition =
        ops.V.cwiseAbs().colwise().sum().maxCoeff() * vinv.cwiseAbs().colwise().sum().maxCoeff();
    ops.D = ops.V * dhat * vinv;
    ops.R = rhat * vinv;
    if (has_diagonal_norm(kind)) {
      Vector weights(ops.n);
      if (kind == BasisKind::GaussLegendre) {
        for (int i = 0; i < ops.n; ++i) {
          const double x = (*ops.nodes)[i];
          const double dp = legendre_derivative(ops.n, x);
          weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
      } else {
        for (int i = 0; i < ops.n; ++i) {
          const double lp = legendre_eval(p, (*ops.nodes)[i]);
          weights[i] = 2.0 / (p * (p + 1.0) * lp * lp);
        }
      }
      ops.M = weights.asDiagonal();
    } else {
      ops.M = vinv.transpose() * mhat * vinv;
    }
  }

  ops.M_llt.compute(ops.M);
  if (ops.M_llt.info() != Eigen::Success)
    throw ConstructionError("build_operator_set: mass matrix is not positive definite");

  const double residual = sbp_residual(ops);
  if (residual > sbp_tolerance(p))
    throw ConstructionError("build_operator_set: SBP residual " + std::to_string(residual) +
                            " exceeds tolerance " + std::to_string(sbp_tolerance(p)));
  return ops;
}

namespace detail {

inline void dump_matrix(std::ostream& out, const char* name, const Matrix& m) {
  out << "# " << name << ' ' << m.rows() << 'x' << m.cols() << '\n';
  char buf[64];
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", m(i, j));
      out << buf << (j + 1 < m.cols() ? " " : "");
    }
    out << '\n';
  }
}

}  // namespace detail

/// Plain-text dump of the operator matrices, one block per matrix headed by
/// `# <name> <rows>x<cols>`, row-major entries with 17 significant digits.
inline void dump_operators(std::ostream& out, const OperatorSet& ops) {
  if (ops.nodes) {
    Matrix row(1, ops.n);
    row.row(0) = ops.nodes->transpose();
    detail::dump_matrix(out, "nodes", row);
  }
  detail::dump_matrix(out, "M", ops.M);
  detail::dump_matrix(out, "D", ops.D);
  detail::dump_matrix(out, "R", ops.R);
  detail::dump_matrix(out, "B", ops.B);
  detail::dump_matrix(out, "V", ops.V);
}

}  // namespace sbpcpr

#endif  // SBPCPR_OPERATORS_HPP
