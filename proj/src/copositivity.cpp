#include "cpfact/copositivity.hpp"

#include <cstdint>
#include <unordered_map>

#include "cpfact/lp.hpp"

namespace cpfact {

namespace {

MatrixXq principal_submatrix(const MatrixXq& b, std::uint64_t mask) {
  const Index n = b.rows();
  std::vector<Index> idx;
  for (Index i = 0; i < n; ++i)
    if (mask >> i & 1) idx.push_back(i);
  MatrixXq sub(static_cast<Index>(idx.size()), static_cast<Index>(idx.size()));
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < idx.size(); ++j)
      sub(static_cast<Index>(i), static_cast<Index>(j)) = b(idx[i], idx[j]);
  return sub;
}

bool nonnegative_entries(const MatrixXq& b) {
  for (Index i = 0; i < b.rows(); ++i)
    for (Index j = i; j < b.cols(); ++j)
      if (b(i, j) < 0) return false;
  return true;
}

// Gaddum recursion over index subsets, memoized; strict toggles every
// comparison at once.
bool copositive_rec(const MatrixXq& b, std::uint64_t mask, bool strict,
                    std::unordered_map<std::uint64_t, bool>& memo) {
  const auto it = memo.find(mask);
  if (it != memo.end()) return it->second;

  bool result = true;
  const int count = __builtin_popcountll(mask);
  if (count == 1) {
    const Index i = static_cast<Index>(__builtin_ctzll(mask));
    result = strict ? b(i, i) > 0 : b(i, i) >= 0;
  } else {
    // Cheapest subproblems first: all principal submatrices, then the game.
    for (Index i = 0; i < b.rows() && result; ++i)
      if (mask >> i & 1) result = copositive_rec(b, mask & ~(1ull << i), strict, memo);
    if (result) {
      const MatrixXq sub = principal_submatrix(b, mask);
      if (nonnegative_entries(sub)) {
        // Nonnegative payoff matrix: the game value is automatically >= 0,
        // and > 0 whenever the diagonal is positive, which the 1x1 base
        // cases already guaranteed here.
        result = true;
      } else {
        const Rational v = game_value(sub);
        result = strict ? v > 0 : v >= 0;
      }
    }
  }
  memo.emplace(mask, result);
  return result;
}

bool copositive_impl(const MatrixXq& b, bool strict) {
  if (!is_symmetric(b)) throw std::invalid_argument("copositivity: matrix must be symmetric");
  const Index n = b.rows();
  if (n > 63) throw std::invalid_argument("copositivity: dimension too large");
  for (Index i = 0; i < n; ++i) {
    if (strict ? b(i, i) <= 0 : b(i, i) < 0) return false;
    for (Index j = i + 1; j < n; ++j) {
      // B[e_i + e_j] and B[e_i + 2 e_j]: cheap certificates of failure.
      if (b(i, i) + 2 * b(i, j) + b(j, j) < 0) return false;
      if (b(i, i) + 4 * b(i, j) + 4 * b(j, j) < 0) return false;
      if (4 * b(i, i) + 4 * b(i, j) + b(j, j) < 0) return false;
    }
  }
  std::unordered_map<std::uint64_t, bool> memo;
  const std::uint64_t full = (n == 63) ? ~0ull : ((1ull << n) - 1);
  return copositive_rec(b, full, strict, memo);
}

}  // namespace

Rational game_value(const MatrixXq& b) {
  if (!is_symmetric(b)) throw std::invalid_argument("game_value: matrix must be symmetric");
  const Index n = b.rows();
  // Variables: y_0..y_{n-1} >= 0, lambda free.
  LinearProgram lp(n + 1);
  lp.set_free(n);
  lp.direction = Direction::Maximize;
  lp.objective[n] = 1;
  VectorXq simplex_row = VectorXq::Ones(n + 1);
  simplex_row[n] = 0;
  lp.add_row(simplex_row, RowSense::Equal, Rational(1));
  for (Index i = 0; i < n; ++i) {
    VectorXq row(n + 1);
    for (Index j = 0; j < n; ++j) row[j] = b(i, j);
    row[n] = -1;
    lp.add_row(std::move(row), RowSense::GreaterEqual, Rational(0));
  }
  const LpOutcome out = solve(lp);
  if (out.tag != LpOutcome::Tag::Optimal)
    throw std::logic_error("game_value: LP must have an optimum");
  return out.objective_value;
}

bool is_copositive(const MatrixXq& b) { return copositive_impl(b, false); }

bool is_strictly_copositive(const MatrixXq& b) { return copositive_impl(b, true); }

}  // namespace cpfact
