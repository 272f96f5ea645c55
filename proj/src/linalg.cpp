#include "cpfact/linalg.hpp"

namespace cpfact {

namespace {

// Extended gcd: g = gcd(a,b) with g = s*a + t*b, g >= 0.
void xgcd(const Int& a, const Int& b, Int& g, Int& s, Int& t) {
  Int old_r = a, r = b;
  Int old_s = 1, s_ = 0;
  Int old_t = 0, t_ = 1;
  while (r != 0) {
    Int q = old_r / r;  // truncated division is fine for the invariants
    Int tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s_;
    old_s = s_;
    s_ = tmp;
    tmp = old_t - q * t_;
    old_t = t_;
    t_ = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  g = old_r;
  s = old_s;
  t = old_t;
}

Int floor_div(const Int& a, const Int& b) {
  Int q, r;
  boost::multiprecision::divide_qr(a, b, q, r);
  if (r != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

HnfResult hnf(const MatrixXz& v) {
  const Index n = v.rows();
  if (n != v.cols()) throw std::invalid_argument("hnf: matrix must be square");
  MatrixXz w = v;
  MatrixXz u = MatrixXz::Identity(n, n);

  for (Index j = 0; j < n; ++j) {
    // Make w(j,j) the gcd of column j over rows j..n-1, zeroing the rest.
    for (Index i = j + 1; i < n; ++i) {
      if (w(i, j) == 0) continue;
      if (w(j, j) == 0) {
        w.row(j).swap(w.row(i));
        u.row(j).swap(u.row(i));
        w.row(i) = -w.row(i);
        u.row(i) = -u.row(i);
        continue;
      }
      Int g, s, t;
      xgcd(w(j, j), w(i, j), g, s, t);
      const Int aj = w(j, j) / g;
      const Int nai = -(w(i, j) / g);
      // [[s, t], [nai, aj]] has determinant 1.
      VectorXz wj = s * w.row(j).transpose() + t * w.row(i).transpose();
      VectorXz wi = nai * w.row(j).transpose() + aj * w.row(i).transpose();
      w.row(j) = wj.transpose();
      w.row(i) = wi.transpose();
      VectorXz uj = s * u.row(j).transpose() + t * u.row(i).transpose();
      VectorXz ui = nai * u.row(j).transpose() + aj * u.row(i).transpose();
      u.row(j) = uj.transpose();
      u.row(i) = ui.transpose();
    }
    if (w(j, j) == 0) throw std::invalid_argument("hnf: singular matrix");
    if (w(j, j) < 0) {
      w.row(j) = -w.row(j);
      u.row(j) = -u.row(j);
    }
    // Reduce the entries above the diagonal into [0, w_jj).
    for (Index i = 0; i < j; ++i) {
      const Int q = floor_div(w(i, j), w(j, j));
      if (q != 0) {
        w.row(i) -= q * w.row(j);
        u.row(i) -= q * u.row(j);
      }
    }
  }
  return {std::move(u), std::move(w)};
}

std::optional<VectorXq> solve_linear(const MatrixXq& a, const VectorXq& b) {
  const Index m = a.rows(), n = a.cols();
  if (b.size() != m) throw std::invalid_argument("solve_linear: dimension mismatch");
  MatrixXq t(m, n + 1);
  t.leftCols(n) = a;
  t.col(n) = b;

  std::vector<Index> pivot_col;
  Index row = 0;
  for (Index col = 0; col < n && row < m; ++col) {
    Index p = -1;
    for (Index i = row; i < m; ++i)
      if (t(i, col) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    t.row(row).swap(t.row(p));
    t.row(row) /= t(row, col);
    for (Index i = 0; i < m; ++i)
      if (i != row && t(i, col) != 0) t.row(i) -= t(i, col) * t.row(row);
    pivot_col.push_back(col);
    ++row;
  }
  for (Index i = row; i < m; ++i)
    if (t(i, n) != 0) return std::nullopt;  // inconsistent

  VectorXq x = VectorXq::Zero(n);
  for (Index r = 0; r < row; ++r) x[pivot_col[r]] = t(r, n);
  return x;
}

Index rank_of(MatrixXq m) {
  const Index rows = m.rows(), cols = m.cols();
  Index rank = 0;
  for (Index col = 0; col < cols && rank < rows; ++col) {
    Index p = -1;
    for (Index i = rank; i < rows; ++i)
      if (m(i, col) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    m.row(rank).swap(m.row(p));
    m.row(rank) /= m(rank, col);
    for (Index i = rank + 1; i < rows; ++i)
      if (m(i, col) != 0) m.row(i) -= m(i, col) * m.row(rank);
    ++rank;
  }
  return rank;
}

Rational determinant(MatrixXq m) {
  const Index n = m.rows();
  if (n != m.cols()) throw std::invalid_argument("determinant: matrix must be square");
  Rational det = 1;
  for (Index col = 0; col < n; ++col) {
    Index p = -1;
    for (Index i = col; i < n; ++i)
      if (m(i, col) != 0) {
        p = i;
        break;
      }
    if (p < 0) return Rational(0);
    if (p != col) {
      m.row(col).swap(m.row(p));
      det = -det;
    }
    det *= m(col, col);
    for (Index i = col + 1; i < n; ++i)
      if (m(i, col) != 0) {
        // Materialize the factor: a lazy big-number expression would keep
        // referencing m(i, col) while the row update zeroes it.
        const Rational f = m(i, col) / m(col, col);
        m.row(i) -= f * m.row(col);
      }
  }
  return det;
}

bool linearly_independent(const std::vector<MatrixXq>& mats) {
  if (mats.empty()) return true;
  const Index n = mats.front().rows();
  MatrixXq stacked(static_cast<Index>(mats.size()), sym_dim(n));
  for (std::size_t k = 0; k < mats.size(); ++k)
    stacked.row(static_cast<Index>(k)) = flatten_upper(mats[k]).transpose();
  return rank_of(stacked) == static_cast<Index>(mats.size());
}

std::optional<VectorXq> solve_cone_coefficients(const std::vector<MatrixXq>& generators,
                                                const MatrixXq& target) {
  if (generators.empty())
    return target.isZero(Rational(0)) ? std::optional<VectorXq>(VectorXq(0)) : std::nullopt;
  const Index n = target.rows();
  MatrixXq a(sym_dim(n), static_cast<Index>(generators.size()));
  for (std::size_t k = 0; k < generators.size(); ++k)
    a.col(static_cast<Index>(k)) = flatten_upper(generators[k]);
  return solve_linear(a, flatten_upper(target));
}

}  // namespace cpfact
