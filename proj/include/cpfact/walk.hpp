#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "cpfact/cone.hpp"
#include "cpfact/rational.hpp"

namespace cpfact {

enum class PivotRule { NormalizedGreedy, Random, FirstIndex };

struct WalkConfig {
  PivotRule pivot_rule = PivotRule::NormalizedGreedy;
  std::uint64_t rng_seed = 0;
  std::size_t max_iterations = 10000;
  bool emit_trace = false;
};

/// One record per loop pass when tracing is on.
struct TraceEvent {
  std::size_t iteration = 0;  // 1-based loop pass
  MatrixXq vertex;            // vertex matrix in the minC = 1 frame
  Rational objective;         // <A, P> at this vertex
  std::ptrdiff_t pivot_index = -1;  // chosen dual ray, -1 on the final pass
  std::vector<VectorXz> min_vectors;
};

/// Outcome of the walk. A Factorization certifies membership in the
/// completely positive cone, a Witness (copositive W with <W,A> < 0)
/// certifies non-membership, and IterationLimit makes no claim.
struct Certificate {
  enum class Kind { Factorization, Witness, IterationLimit };
  Kind kind = Kind::IterationLimit;
  Factorization factorization;  // Kind::Factorization
  MatrixXq witness;             // Kind::Witness
  MatrixXq last_vertex;
  std::size_t iterations = 0;  // pivot steps taken
  std::vector<TraceEvent> trace;
};

/// The standard starting vertex: gram_an(n) rescaled to copositive minimum 1,
/// with n(n+1)/2 minimum vectors of consecutive ones.
PerfectVertex initial_vertex(Index n);

/// Chooses among the dual rays R with <A, R> < 0 according to the rule.
/// NormalizedGreedy minimizes <A,R>/|R|, compared square-root-free via
/// <A,R>^2/<R,R> (every candidate has <A,R> < 0, so the larger squared
/// ratio is the more negative normalized value); ties break lexicographically
/// on the ray entries. Random draws rng() modulo the candidate count.
/// Throws std::invalid_argument when no ray separates.
MatrixXq select_pivot(const MatrixXq& a, const PerfectVertex& vertex, const WalkConfig& cfg);

/// The neighbor vertex along the edge from `vertex` in direction of the dual
/// extreme ray r: N = P + lambda r with minC(N) = 1 and a fresh minimum
/// vector. The bisection/doubling bracket is capped at 256 rounds; a cap hit
/// means r was copositive (unbounded edge) against the precondition.
PerfectVertex contiguous_vertex(const PerfectVertex& vertex, const MatrixXq& r);

/// Runs the pivoting walk on a symmetric rational matrix and returns a
/// certificate. Every returned Factorization and Witness is re-verified
/// exactly before it is handed out.
Certificate factorize(const MatrixXq& a, const WalkConfig& cfg = {});

/// Sum matches exactly, all weights nonnegative, all vectors nonnegative.
bool verify_factorization(const MatrixXq& a, const Factorization& f);

/// W copositive and <W, A> < 0, both exact.
bool verify_witness(const MatrixXq& a, const MatrixXq& w);

}  // namespace cpfact
