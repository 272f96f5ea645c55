#include "cpfact/copositive_min.hpp"

#include <atomic>
#include <deque>
#include <map>
#include <mutex>
#include <set>
#include <thread>

namespace cpfact {

namespace {

std::atomic<int> g_default_threads{1};

MatrixXq gram_of(const MatrixXq& b, const MatrixXz& gens) {
  const MatrixXq g = gens.cast<Rational>();
  return g.transpose() * b * g;
}

// Smallest pairwise product and its index pair (i < j); diagonal violations
// mean B itself fails strict copositivity on a generator.
struct Violation {
  bool found = false;
  Index i = 0, j = 0;
  Rational value;
};

Violation worst_pair(const MatrixXq& gram) {
  Violation v;
  for (Index i = 0; i < gram.rows(); ++i)
    for (Index j = i + 1; j < gram.cols(); ++j)
      if (gram(i, j) <= 0 && (!v.found || gram(i, j) < v.value)) {
        v = {true, i, j, gram(i, j)};
      }
  return v;
}

Partition refine_impl(const MatrixXq& b, std::deque<MatrixXz> pending,
                      const PartitionOptions& options) {
  Partition out;
  std::size_t refinements = 0;
  while (!pending.empty()) {
    MatrixXz gens = std::move(pending.front());
    pending.pop_front();
    const MatrixXq gram = gram_of(b, gens);
    for (Index i = 0; i < gram.rows(); ++i)
      if (gram(i, i) <= 0)
        throw NotStrictlyCopositiveError(
            "matrix is not strictly copositive: B[v] <= 0 for a nonnegative vector");
    const Violation v = worst_pair(gram);
    if (!v.found) {
      out.cones.push_back({std::move(gens), MatrixXz(), gram});
      continue;
    }
    if (++refinements > options.max_refinements)
      throw RefinementLimitError(
          "partition refinement cap exceeded; the matrix is likely on the boundary "
          "of the copositive cone");
    const VectorXz mid = primitive(gens.col(v.i) + gens.col(v.j));
    MatrixXz left = gens, right = std::move(gens);
    left.col(v.i) = mid;
    right.col(v.j) = mid;
    pending.push_back(std::move(left));
    pending.push_back(std::move(right));
  }
  for (auto& cone : out.cones) cone.hnf_w = hnf(cone.generators).w;
  return out;
}

// Backtracking enumeration inside one cone: levels walk the rows of the
// Hermite normal form from bottom to top, so integrality pins each
// coefficient to an arithmetic progression, and the nonnegative gram makes
// the partial value monotone in every coefficient. The sink receives each
// hit and returns the bound to continue with, which lets a minimum search
// tighten the bound mid-enumeration.
template <typename Sink>
void enumerate_cone(const SimplicialCone& cone, Rational bound, bool strict, Sink&& sink) {
  const Index n = cone.generators.rows();
  const MatrixXz& w = cone.hnf_w;
  const MatrixXq& g = cone.gram;

  std::vector<Rational> alpha(static_cast<std::size_t>(n), Rational(0));
  std::vector<Rational> value(static_cast<std::size_t>(n) + 1);  // value[j]: levels >= j
  value[static_cast<std::size_t>(n)] = 0;

  const auto exceeds = [&](const Rational& val) {
    return strict ? val >= bound : val > bound;
  };

  // Recursive lambdas would obscure the hot loop; explicit stack instead.
  struct Frame {
    Index level;
    Int m;        // current integer driving alpha[level]
    Rational c;   // sum_{k>level} alpha_k W(level,k)
    Rational s;   // sum_{k>level} alpha_k G(level,k)
  };
  std::vector<Frame> stack;
  stack.reserve(static_cast<std::size_t>(n));

  const auto open_frame = [&](Index level) {
    Rational c = 0, s = 0;
    for (Index k = level + 1; k < n; ++k) {
      if (w(level, k) != 0) c += alpha[static_cast<std::size_t>(k)] * w(level, k);
      s += alpha[static_cast<std::size_t>(k)] * g(level, k);
    }
    stack.push_back({level, ceil_int(c), std::move(c), std::move(s)});
  };

  open_frame(n - 1);
  while (!stack.empty()) {
    Frame& f = stack.back();
    const Index j = f.level;
    const Rational a = (Rational(f.m) - f.c) / Rational(w(j, j));
    const Rational val =
        value[static_cast<std::size_t>(j) + 1] + a * a * g(j, j) + 2 * a * f.s;
    if (exceeds(val)) {
      // Monotone in m: nothing larger fits either.
      stack.pop_back();
      continue;
    }
    alpha[static_cast<std::size_t>(j)] = a;
    value[static_cast<std::size_t>(j)] = val;
    ++f.m;
    if (j == 0) {
      bool all_zero = true;
      for (const auto& x : alpha) all_zero = all_zero && x == 0;
      if (!all_zero) bound = sink(alpha, value[0]);
    } else {
      open_frame(j - 1);
    }
  }
}

VectorXz combination(const SimplicialCone& cone, const std::vector<Rational>& alpha) {
  const Index n = cone.generators.rows();
  VectorXz v(n);
  for (Index i = 0; i < n; ++i) {
    Rational x = 0;
    for (Index k = 0; k < n; ++k) x += alpha[static_cast<std::size_t>(k)] * cone.generators(i, k);
    if (!is_integer(x)) throw std::logic_error("enumerate_cone produced a non-integral point");
    v[i] = numerator(x);
  }
  return v;
}

std::vector<Int> key_of(const VectorXz& v) {
  return std::vector<Int>(v.data(), v.data() + v.size());
}

int resolve_threads(int threads) {
  if (threads <= 0) threads = g_default_threads.load();
  return std::max(threads, 1);
}

// Runs fn(cone) over all cones on the requested number of threads.
template <typename Fn>
void for_each_cone(const Partition& partition, int threads, Fn&& fn) {
  threads = std::min<std::size_t>(resolve_threads(threads), partition.cones.size());
  if (threads <= 1) {
    for (const auto& cone : partition.cones) fn(cone);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= partition.cones.size()) return;
        fn(partition.cones[i]);
      }
    });
  for (auto& th : pool) th.join();
}

}  // namespace

Partition build_partition(const MatrixXq& b, const PartitionOptions& options) {
  if (!is_symmetric(b)) throw std::invalid_argument("build_partition: matrix must be symmetric");
  std::deque<MatrixXz> pending;
  pending.push_back(MatrixXz::Identity(b.rows(), b.rows()));
  return refine_impl(b, std::move(pending), options);
}

Partition refine_partition(const MatrixXq& b, const Partition& seed,
                           const PartitionOptions& options) {
  if (seed.cones.empty()) return build_partition(b, options);
  std::deque<MatrixXz> pending;
  for (const auto& cone : seed.cones) pending.push_back(cone.generators);
  return refine_impl(b, std::move(pending), options);
}

std::vector<VectorXz> enumerate_below(const MatrixXq& b, const Partition& partition,
                                      const Rational& m, bool strict, int threads) {
  if (m <= 0) throw std::invalid_argument("enumerate_below: bound must be positive");
  (void)b;
  std::mutex mu;
  std::set<std::vector<Int>> seen;
  for_each_cone(partition, threads, [&](const SimplicialCone& cone) {
    enumerate_cone(cone, m, strict, [&](const std::vector<Rational>& alpha, const Rational&) {
      const VectorXz v = combination(cone, alpha);
      std::lock_guard<std::mutex> lock(mu);
      seen.insert(key_of(v));
      return m;
    });
  });
  std::vector<VectorXz> out;
  out.reserve(seen.size());
  for (const auto& key : seen) {
    VectorXz v(static_cast<Index>(key.size()));
    for (std::size_t i = 0; i < key.size(); ++i) v[static_cast<Index>(i)] = key[i];
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<VectorXz> enumerate_below(const MatrixXq& b, const Rational& m, bool strict,
                                      int threads) {
  return enumerate_below(b, build_partition(b), m, strict, threads);
}

CopositiveMinimum copositive_minimum(const MatrixXq& b, const Partition& partition,
                                     int threads) {
  // Any nonzero lattice vector bounds the minimum; the cheapest is e_i.
  Rational best = b(0, 0);
  for (Index i = 1; i < b.rows(); ++i) best = std::min(best, b(i, i));

  std::mutex mu;
  std::set<std::vector<Int>> argmin;
  for_each_cone(partition, threads, [&](const SimplicialCone& cone) {
    Rational local_bound;
    {
      std::lock_guard<std::mutex> lock(mu);
      local_bound = best;
    }
    // The shared bound only shrinks, so a stale copy stays valid; every hit
    // refreshes it under the lock.
    enumerate_cone(cone, local_bound, false,
                   [&](const std::vector<Rational>& alpha, const Rational& val) {
                     std::lock_guard<std::mutex> lock(mu);
                     if (val < best) {
                       best = val;
                       argmin.clear();
                     }
                     if (val == best) argmin.insert(key_of(combination(cone, alpha)));
                     return best;
                   });
  });

  CopositiveMinimum out;
  out.value = best;
  for (const auto& key : argmin) {
    VectorXz v(static_cast<Index>(key.size()));
    for (std::size_t i = 0; i < key.size(); ++i) v[static_cast<Index>(i)] = key[i];
    out.vectors.push_back(std::move(v));
  }
  return out;
}

CopositiveMinimum copositive_minimum(const MatrixXq& b, int threads) {
  return copositive_minimum(b, build_partition(b), threads);
}

void set_default_enumeration_threads(int threads) {
  g_default_threads.store(std::max(threads, 1));
}

int default_enumeration_threads() { return g_default_threads.load(); }

}  // namespace cpfact
