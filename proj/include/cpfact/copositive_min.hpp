#pragma once

#include <vector>

#include "cpfact/linalg.hpp"
#include "cpfact/rational.hpp"

namespace cpfact {

/// Raised when a matrix handed to the partition/enumeration layer turns out
/// not to lie in the interior of the copositive cone.
class NotStrictlyCopositiveError : public std::domain_error {
 public:
  explicit NotStrictlyCopositiveError(const std::string& what) : std::domain_error(what) {}
};

/// Raised when partition refinement exceeds its cap. For matrices in the
/// interior of the copositive cone refinement terminates, so hitting the cap
/// points at a violated precondition.
class RefinementLimitError : public std::domain_error {
 public:
  explicit RefinementLimitError(const std::string& what) : std::domain_error(what) {}
};

/// A simplicial cone spanned by n independent primitive integral generators
/// (the columns of `generators`), together with data cached for lattice
/// enumeration: the Hermite normal form W of the generator matrix and the
/// pairwise products gram(i,j) = v_i^T B v_j for the matrix B the partition
/// was built for. Acceptance requires gram > 0 entrywise.
struct SimplicialCone {
  MatrixXz generators;
  MatrixXz hnf_w;
  MatrixXq gram;
};

/// A simplicial partition of the standard simplex, stored as the induced
/// cones. The union of the cones is the nonnegative orthant.
struct Partition {
  std::vector<SimplicialCone> cones;
};

struct PartitionOptions {
  std::size_t max_refinements = 1u << 20;
};

/// Refines (starting from {e_1,...,e_n}) until every cone satisfies the
/// strict pairwise condition v_i^T B v_j > 0. Splits the edge with the
/// smallest product, ties broken lexicographically. Fails with a diagnosis
/// when B is not strictly copositive.
Partition build_partition(const MatrixXq& b, const PartitionOptions& options = {});

/// Same refinement loop, but seeded with the cones of an existing partition
/// (typically one built for a nearby matrix). Gram data is recomputed for b.
Partition refine_partition(const MatrixXq& b, const Partition& seed,
                           const PartitionOptions& options = {});

/// All v in Z^n_{>=0} \ {0} with B[v] <= m (or < m when strict), exactly.
/// Results are deduplicated across cone boundaries and sorted.
std::vector<VectorXz> enumerate_below(const MatrixXq& b, const Partition& partition,
                                      const Rational& m, bool strict, int threads = 1);
std::vector<VectorXz> enumerate_below(const MatrixXq& b, const Rational& m, bool strict,
                                      int threads = 1);

struct CopositiveMinimum {
  Rational value;
  std::vector<VectorXz> vectors;  // sorted lexicographically
};

/// minC(B) and MinC(B) for strictly copositive B, by per-cone backtracking
/// with the bound shrinking to the best value found.
CopositiveMinimum copositive_minimum(const MatrixXq& b, const Partition& partition,
                                     int threads = 1);
CopositiveMinimum copositive_minimum(const MatrixXq& b, int threads = 1);

/// Process-wide default for the `threads` arguments above; the CLI sets it.
void set_default_enumeration_threads(int threads);
int default_enumeration_threads();

}  // namespace cpfact
