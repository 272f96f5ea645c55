#pragma once

#include <optional>
#include <vector>

#include "cpfact/rational.hpp"

namespace cpfact {

enum class RowSense { LessEqual, Equal, GreaterEqual };
enum class Direction { Minimize, Maximize };
enum class PivotMethod { Bland, Lexicographic };

/// A linear program over exact rationals. Variables default to x >= 0;
/// bounds can be widened (set_free) or tightened per variable.
struct LinearProgram {
  explicit LinearProgram(Index num_vars)
      : objective(VectorXq::Zero(num_vars)),
        lower(static_cast<std::size_t>(num_vars), Rational(0)),
        upper(static_cast<std::size_t>(num_vars), std::nullopt) {}

  Index num_vars() const { return objective.size(); }

  void add_row(VectorXq coeffs, RowSense sense, Rational rhs_value) {
    if (coeffs.size() != num_vars())
      throw std::invalid_argument("add_row: coefficient count mismatch");
    rows.push_back(std::move(coeffs));
    senses.push_back(sense);
    rhs.push_back(std::move(rhs_value));
  }

  void set_free(Index j) {
    lower[static_cast<std::size_t>(j)].reset();
    upper[static_cast<std::size_t>(j)].reset();
  }

  VectorXq objective;
  Direction direction = Direction::Minimize;
  std::vector<VectorXq> rows;
  std::vector<RowSense> senses;
  std::vector<Rational> rhs;
  std::vector<std::optional<Rational>> lower;  // nullopt = -inf
  std::vector<std::optional<Rational>> upper;  // nullopt = +inf
};

/// Result of an exact solve. Farkas vectors are indexed by the user rows
/// followed by the internally generated bound rows (one per finite nonzero
/// lower bound, then one per finite upper bound, in variable order); the
/// usual sign conditions hold exactly: y_i <= 0 on <=-rows, y_i >= 0 on
/// >=-rows, y^T b > 0, and y^T A <= 0 against the variable cones.
struct LpOutcome {
  enum class Tag { Optimal, Infeasible, Unbounded };
  Tag tag = Tag::Optimal;
  VectorXq solution;              // Optimal
  Rational objective_value = 0;   // Optimal, in the user's direction
  std::vector<Index> basis;       // Optimal: variables carrying a basic column
  VectorXq farkas;                // Infeasible
  VectorXq ray;                   // Unbounded: improving recession direction
};

LpOutcome solve(const LinearProgram& lp, PivotMethod method = PivotMethod::Bland);

/// Phase-I only: a basic feasible point (objective ignored) or a Farkas
/// certificate of infeasibility.
LpOutcome feasible_point(const LinearProgram& lp, PivotMethod method = PivotMethod::Bland);

/// Exact validation of a Farkas certificate against the program. Used by
/// tests and as a debug check; never consults floating point.
bool check_farkas(const LinearProgram& lp, const VectorXq& farkas);

}  // namespace cpfact
