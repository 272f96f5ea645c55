#pragma once

#include <optional>
#include <vector>

#include "cpfact/rational.hpp"

namespace cpfact {

/// <A, B> = Trace(AB) = sum_{ij} A_ij B_ij for symmetric A, B.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar sym_inner(const Eigen::MatrixBase<DerivedA>& a,
                                    const Eigen::MatrixBase<DerivedB>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("sym_inner: dimension mismatch");
  return a.cwiseProduct(b).sum();
}

/// B[v] = v^T B v.
inline Rational quad_form(const MatrixXq& b, const VectorXz& v) {
  if (b.rows() != v.size())
    throw std::invalid_argument("quad_form: dimension mismatch");
  const VectorXq vq = v.cast<Rational>();
  return vq.dot(b * vq);
}

inline Rational quad_form(const MatrixXq& b, const VectorXq& v) {
  if (b.rows() != v.size())
    throw std::invalid_argument("quad_form: dimension mismatch");
  return v.dot(b * v);
}

/// vv^T as a rational matrix.
inline MatrixXq rank1(const VectorXz& v) {
  return (v * v.transpose()).cast<Rational>();
}

/// Tridiagonal form with 2 on the diagonal and -1 next to it; the Gram
/// matrix of the root lattice A_n. n = 1 gives [2].
inline MatrixXq gram_an(Index n) {
  if (n < 1) throw std::invalid_argument("gram_an: n must be >= 1");
  MatrixXq q = MatrixXq::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    q(i, i) = 2;
    if (i + 1 < n) {
      q(i, i + 1) = -1;
      q(i + 1, i) = -1;
    }
  }
  return q;
}

/// Dimension of the space of symmetric n x n matrices.
constexpr Index sym_dim(Index n) { return n * (n + 1) / 2; }

/// Row-major upper-triangle flattening, the coordinate convention used for
/// every rank/solve over symmetric matrices: (0,0),(0,1),...,(0,n-1),(1,1),...
inline VectorXq flatten_upper(const MatrixXq& m) {
  const Index n = m.rows();
  VectorXq out(sym_dim(n));
  Index k = 0;
  for (Index i = 0; i < n; ++i)
    for (Index j = i; j < n; ++j) out[k++] = m(i, j);
  return out;
}

inline MatrixXq unflatten_upper(const VectorXq& x, Index n) {
  MatrixXq m(n, n);
  Index k = 0;
  for (Index i = 0; i < n; ++i)
    for (Index j = i; j < n; ++j) {
      m(i, j) = x[k];
      m(j, i) = x[k];
      ++k;
    }
  return m;
}

struct HnfResult {
  MatrixXz u;  // unimodular, det +1 or -1
  MatrixXz w;  // upper triangular, positive diagonal, u * v = w
};

/// Row-style Hermite normal form of a full-rank square integer matrix:
/// U V = W with U unimodular and W upper triangular, W_ii > 0 and
/// 0 <= W_ij < W_jj above the diagonal. Throws for singular input.
HnfResult hnf(const MatrixXz& v);

/// Exact Gaussian elimination: any solution of A x = b, or nullopt when the
/// system is inconsistent. With independent columns the solution is unique.
std::optional<VectorXq> solve_linear(const MatrixXq& a, const VectorXq& b);

/// Rank over Q.
Index rank_of(MatrixXq m);

/// Exact determinant (fraction-free not needed at these sizes).
Rational determinant(MatrixXq m);

/// True iff the matrices, flattened to the upper-triangle coordinates, are
/// linearly independent. The empty family is independent.
bool linearly_independent(const std::vector<MatrixXq>& mats);

/// Coefficients of target in the span of independent generators, or nullopt
/// when the target lies outside the span. Nonnegativity is the caller's check.
std::optional<VectorXq> solve_cone_coefficients(const std::vector<MatrixXq>& generators,
                                                const MatrixXq& target);

}  // namespace cpfact
