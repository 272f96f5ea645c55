#include "cpfact/walk.hpp"

#include <algorithm>

#include "cpfact/copositivity.hpp"

namespace cpfact {

namespace {

constexpr std::size_t kBracketRounds = 256;

bool lex_less_matrix(const MatrixXq& a, const MatrixXq& b) {
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != b(i, j)) return a(i, j) < b(i, j);
  return false;
}

std::size_t choose_candidate(const MatrixXq& a, const PerfectVertex& vertex,
                             const std::vector<std::size_t>& candidates,
                             const WalkConfig& cfg, std::mt19937_64& rng) {
  if (candidates.empty()) throw std::invalid_argument("select_pivot: no separating ray");
  switch (cfg.pivot_rule) {
    case PivotRule::FirstIndex:
      return candidates.front();
    case PivotRule::Random:
      return candidates[static_cast<std::size_t>(rng() % candidates.size())];
    case PivotRule::NormalizedGreedy:
      break;
  }
  std::size_t best = candidates.front();
  Rational best_ip2 = 0, best_norm2 = 1;
  bool first = true;
  for (const std::size_t k : candidates) {
    const MatrixXq& r = vertex.dual_rays[k];
    const Rational ip = sym_inner(a, r);
    const Rational ip2 = ip * ip;
    const Rational norm2 = sym_inner(r, r);
    if (first) {
      best = k;
      best_ip2 = ip2;
      best_norm2 = norm2;
      first = false;
      continue;
    }
    const Rational lhs = ip2 * best_norm2;
    const Rational rhs = best_ip2 * norm2;
    if (lhs > rhs ||
        (lhs == rhs && lex_less_matrix(vertex.dual_rays[k], vertex.dual_rays[best]))) {
      best = k;
      best_ip2 = ip2;
      best_norm2 = norm2;
    }
  }
  return best;
}

}  // namespace

PerfectVertex initial_vertex(Index n) { return make_vertex(gram_an(n)); }

MatrixXq select_pivot(const MatrixXq& a, const PerfectVertex& vertex, const WalkConfig& cfg) {
  const MembershipResult mem = membership(a, vertex);
  if (mem.is_member())
    throw std::invalid_argument("select_pivot: matrix lies in the cone of the vertex");
  std::mt19937_64 rng(cfg.rng_seed);
  return vertex.dual_rays[choose_candidate(a, vertex, mem.violated_rays, cfg, rng)];
}

PerfectVertex contiguous_vertex(const PerfectVertex& vertex, const MatrixXq& r) {
  const MatrixXq& p = vertex.matrix;
  if (r.rows() != p.rows() || !is_symmetric(r))
    throw std::invalid_argument("contiguous_vertex: ray has wrong shape");
  for (const auto& v : vertex.min_vectors)
    if (quad_form(r, v) < 0)
      throw std::invalid_argument("contiguous_vertex: ray is not in the dual cone");

  // Bracket the edge length: keep P + lR on the edge (minC still 1) and push
  // P + uR beyond it (minC < 1), bisecting whenever P + uR leaves the
  // interior of the copositive cone.
  Rational l = 0, u = 1;
  Partition seed = vertex.partition;
  std::optional<Partition> outside_partition;
  MatrixXq outside;
  for (std::size_t round = 0;; ++round) {
    if (round >= kBracketRounds)
      throw std::domain_error(
          "contiguous_vertex: bracket cap exceeded; the ray appears to be copositive");
    const MatrixXq m = p + u * r;
    if (!is_strictly_copositive(m)) {
      u = (l + u) / 2;
      continue;
    }
    Partition part = refine_partition(m, seed);
    const CopositiveMinimum cm = copositive_minimum(m, part);
    seed = part;
    if (cm.value >= 1) {
      l = u;
      u = 2 * u;
      continue;
    }
    outside = m;
    outside_partition = std::move(part);
    break;
  }

  const std::vector<VectorXz> dropping =
      enumerate_below(outside, *outside_partition, Rational(1), /*strict=*/true);
  Rational lambda;
  bool have_lambda = false;
  for (const auto& v : dropping) {
    const Rational rv = quad_form(r, v);
    const Rational candidate = (Rational(1) - quad_form(p, v)) / rv;
    if (!have_lambda || candidate < lambda) {
      lambda = candidate;
      have_lambda = true;
    }
  }
  if (!have_lambda || lambda <= 0)
    throw std::logic_error("contiguous_vertex: empty separating set");

  return make_vertex(p + lambda * r);
}

Certificate factorize(const MatrixXq& a, const WalkConfig& cfg) {
  if (a.rows() != a.cols()) throw std::invalid_argument("factorize: matrix must be square");
  if (!is_symmetric(a)) throw std::invalid_argument("factorize: matrix must be symmetric");
  const Index n = a.rows();
  if (n < 1) throw std::invalid_argument("factorize: empty matrix");

  std::mt19937_64 rng(cfg.rng_seed);
  PerfectVertex vertex = initial_vertex(n);

  Certificate cert;
  std::optional<Rational> previous_objective;
  for (std::size_t pass = 1; pass <= cfg.max_iterations; ++pass) {
    const Rational objective = sym_inner(vertex.matrix, a);
    if (previous_objective && objective >= *previous_objective)
      throw std::logic_error("factorize: objective failed to decrease");
    previous_objective = objective;

    const MembershipResult mem = membership(a, vertex);
    if (mem.is_member()) {
      Factorization f = caratheodory_reduce(*mem.factorization, n);
      if (!verify_factorization(a, f))
        throw std::logic_error("factorize: factorization failed verification");
      if (cfg.emit_trace)
        cert.trace.push_back({pass, vertex.matrix, objective, -1, vertex.min_vectors});
      cert.kind = Certificate::Kind::Factorization;
      cert.factorization = std::move(f);
      cert.last_vertex = vertex.matrix;
      return cert;
    }

    // A separating ray that is itself copositive settles the question; scan
    // the candidates for one before walking.
    std::ptrdiff_t witness_ray = -1;
    for (const std::size_t k : mem.violated_rays)
      if (is_copositive(vertex.dual_rays[k])) {
        witness_ray = static_cast<std::ptrdiff_t>(k);
        break;
      }
    if (witness_ray >= 0) {
      const MatrixXq& w = vertex.dual_rays[static_cast<std::size_t>(witness_ray)];
      if (!verify_witness(a, w)) throw std::logic_error("factorize: invalid ray witness");
      if (cfg.emit_trace)
        cert.trace.push_back({pass, vertex.matrix, objective, -1, vertex.min_vectors});
      cert.kind = Certificate::Kind::Witness;
      cert.witness = w;
      cert.last_vertex = vertex.matrix;
      return cert;
    }
    if (objective < 0) {
      if (!verify_witness(a, vertex.matrix))
        throw std::logic_error("factorize: invalid vertex witness");
      if (cfg.emit_trace)
        cert.trace.push_back({pass, vertex.matrix, objective, -1, vertex.min_vectors});
      cert.kind = Certificate::Kind::Witness;
      cert.witness = vertex.matrix;
      cert.last_vertex = vertex.matrix;
      return cert;
    }

    const std::size_t chosen = choose_candidate(a, vertex, mem.violated_rays, cfg, rng);
    if (cfg.emit_trace)
      cert.trace.push_back({pass, vertex.matrix, objective,
                            static_cast<std::ptrdiff_t>(chosen), vertex.min_vectors});
    vertex = contiguous_vertex(vertex, vertex.dual_rays[chosen]);
    ++cert.iterations;
  }

  cert.kind = Certificate::Kind::IterationLimit;
  cert.last_vertex = vertex.matrix;
  if (cfg.emit_trace) {
    const Rational objective = sym_inner(vertex.matrix, a);
    cert.trace.push_back(
        {cfg.max_iterations + 1, vertex.matrix, objective, -1, vertex.min_vectors});
  }
  return cert;
}

bool verify_factorization(const MatrixXq& a, const Factorization& f) {
  if (a.rows() != a.cols() || !is_symmetric(a)) return false;
  const Index n = a.rows();
  MatrixXq sum = MatrixXq::Zero(n, n);
  for (const auto& [alpha, v] : f.terms) {
    if (alpha < 0 || v.size() != n) return false;
    for (Index i = 0; i < n; ++i)
      if (v[i] < 0) return false;
    sum += alpha * rank1(v);
  }
  return sum == a;
}

bool verify_witness(const MatrixXq& a, const MatrixXq& w) {
  if (w.rows() != a.rows() || w.cols() != a.cols()) return false;
  if (!is_symmetric(w) || !is_symmetric(a)) return false;
  return is_copositive(w) && sym_inner(w, a) < 0;
}

}  // namespace cpfact
