#pragma once

#include "cpfact/rational.hpp"

namespace cpfact {

/// Exact value of the two-player zero-sum game with payoff matrix B, i.e.
/// max_{x in simplex} min_{y in simplex} x^T B y, computed by the LP
/// max{lambda : y in simplex, By >= lambda e}.
Rational game_value(const MatrixXq& b);

/// B[x] >= 0 for all x >= 0. Recursive characterization: every principal
/// (n-1)x(n-1) submatrix copositive and the game value nonnegative.
bool is_copositive(const MatrixXq& b);

/// Membership in the interior of the copositive cone (strict inequalities
/// throughout the same recursion).
bool is_strictly_copositive(const MatrixXq& b);

}  // namespace cpfact
