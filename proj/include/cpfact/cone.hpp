#pragma once

#include <vector>

#include "cpfact/copositive_min.hpp"
#include "cpfact/linalg.hpp"
#include "cpfact/rational.hpp"

namespace cpfact {

class NotPerfectError : public std::domain_error {
 public:
  explicit NotPerfectError(const std::string& what) : std::domain_error(what) {}
};

class RayLimitError : public std::domain_error {
 public:
  explicit RayLimitError(const std::string& what) : std::domain_error(what) {}
};

/// A conic combination of rank-1 matrices v v^T with nonnegative rational
/// weights and nonnegative integral vectors.
struct Factorization {
  std::vector<std::pair<Rational, VectorXz>> terms;

  MatrixXq matrix(Index n) const {
    MatrixXq sum = MatrixXq::Zero(n, n);
    for (const auto& [alpha, v] : terms) sum += alpha * rank1(v);
    return sum;
  }
};

/// A vertex of the polyhedron {B : B[v] >= 1 for all nonzero v >= 0}: a
/// matrix with copositive minimum exactly 1 whose minimum vectors pin it
/// down uniquely. Carries the cone data the pivoting walk needs: the
/// minimum vectors (generators of the normal cone) and the extreme rays of
/// the dual of that cone, scaled to primitive integral matrices. On highly
/// degenerate vertices the ray count can explode; past the configured cap
/// the list is left empty and flagged incomplete (never truncated), and
/// callers fall back to the cross-section LP for single separating rays.
struct PerfectVertex {
  MatrixXq matrix;                  // minC = 1
  std::vector<VectorXz> min_vectors;
  std::vector<MatrixXq> dual_rays;  // integral entries, content 1
  bool rays_complete = true;
  Partition partition;              // reusable seed for nearby matrices

  Index dim() const { return matrix.rows(); }
};

struct VertexOptions {
  std::size_t max_dual_rays = 20000;
};

/// Builds the vertex for a strictly copositive perfect matrix: computes
/// minC/MinC, rescales so minC = 1, verifies that the rank-1 minimum
/// matrices span the symmetric space, and runs double description for the
/// dual rays. Throws NotStrictlyCopositiveError / NotPerfectError.
PerfectVertex make_vertex(const MatrixXq& p, const VertexOptions& options = {});

/// The cached complete irredundant list of extreme rays of
/// {Q : <Q, v v^T> >= 0 for all v in MinC(P)}. Throws RayLimitError when the
/// vertex was built past the ray cap.
const std::vector<MatrixXq>& dual_extreme_rays(const PerfectVertex& vertex);

/// Membership of A in the normal cone of the vertex. Exactly one side is
/// populated: nonnegative coefficients over the minimum vectors, or
/// separating evidence. With complete cached rays the evidence is the index
/// list of every dual ray R with <A, R> < 0; otherwise it is one extreme ray
/// from the cross-section LP, stored in fallback_ray.
struct MembershipResult {
  std::optional<Factorization> factorization;
  std::vector<std::size_t> violated_rays;
  std::optional<MatrixXq> fallback_ray;

  bool is_member() const { return factorization.has_value(); }
};

MembershipResult membership(const MatrixXq& a, const PerfectVertex& vertex);

/// Minimizes <A, Q> over the compact cross-section
/// {Q : <Q, v v^T> >= 0 for all minimum vectors, <Q, N0> <= 1} with
/// N0 = sum of the rank-1 minimum matrices, then walks to a vertex of the
/// optimal face. A negative optimum sits on an extreme ray of the dual
/// cone, returned as a primitive integral matrix; nullopt means A lies in
/// the normal cone.
std::optional<MatrixXq> separating_extreme_ray(const MatrixXq& a, const PerfectVertex& vertex);

/// Rewrites a factorization so the surviving rank-1 terms are linearly
/// independent (hence at most n(n+1)/2 of them) with positive weights. The
/// represented matrix is preserved exactly.
Factorization caratheodory_reduce(const Factorization& f, Index n);

}  // namespace cpfact
