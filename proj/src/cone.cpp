#include "cpfact/cone.hpp"

#include <algorithm>
#include <map>

#include "cpfact/copositivity.hpp"
#include "cpfact/lp.hpp"

namespace cpfact {

namespace {

// Inequality row for <Q, v v^T> >= 0 in upper-triangle coordinates: the
// off-diagonal products carry the factor 2 from the symmetric inner product.
VectorXz inequality_row(const VectorXz& v) {
  const Index n = v.size();
  VectorXz row(sym_dim(n));
  Index k = 0;
  for (Index i = 0; i < n; ++i)
    for (Index j = i; j < n; ++j) row[k++] = (i == j) ? Int(v[i] * v[i]) : Int(2 * v[i] * v[j]);
  return row;
}

MatrixXq inverse(const MatrixXq& m) {
  const Index n = m.rows();
  MatrixXq t(n, 2 * n);
  t.leftCols(n) = m;
  t.rightCols(n) = MatrixXq::Identity(n, n);
  for (Index col = 0; col < n; ++col) {
    Index p = -1;
    for (Index i = col; i < n; ++i)
      if (t(i, col) != 0) {
        p = i;
        break;
      }
    if (p < 0) throw std::invalid_argument("inverse: singular matrix");
    t.row(col).swap(t.row(p));
    t.row(col) /= t(col, col);
    for (Index i = 0; i < n; ++i)
      if (i != col && t(i, col) != 0) t.row(i) -= t(i, col) * t.row(col);
  }
  return t.rightCols(n);
}

bool lex_less(const VectorXz& a, const VectorXz& b) {
  for (Index i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

struct DdRay {
  VectorXz coords;            // primitive integral
  std::vector<bool> zeros;    // per processed inequality: tight?
};

// Double description on {x : rows * x >= 0} for a pointed full-rank system.
std::vector<VectorXz> extreme_rays(const std::vector<VectorXz>& rows, Index dim,
                                   std::size_t max_rays) {
  // Initial simplicial cone from the first maximal independent subset.
  std::vector<std::size_t> start;
  MatrixXq picked(0, dim);
  for (std::size_t k = 0; k < rows.size() && picked.rows() < dim; ++k) {
    MatrixXq trial(picked.rows() + 1, dim);
    trial.topRows(picked.rows()) = picked;
    trial.row(picked.rows()) = rows[k].cast<Rational>().transpose();
    if (rank_of(trial) == trial.rows()) {
      picked = std::move(trial);
      start.push_back(k);
    }
  }
  if (picked.rows() < dim)
    throw NotPerfectError("dual cone is not pointed: inequality rows do not span");

  const MatrixXq inv = inverse(picked);
  std::vector<DdRay> rays;
  std::vector<std::size_t> processed = start;
  for (Index j = 0; j < dim; ++j) {
    DdRay r;
    r.coords = primitive_integral(MatrixXq(inv.col(j)));
    r.zeros.assign(start.size(), true);
    r.zeros[static_cast<std::size_t>(j)] = false;
    rays.push_back(std::move(r));
  }

  const auto dot = [](const VectorXz& a, const VectorXz& b) {
    Int s = 0;
    for (Index i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
  };

  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (std::find(start.begin(), start.end(), k) != start.end()) continue;
    const VectorXz& a = rows[k];
    std::vector<Int> s(rays.size());
    bool any_negative = false;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      s[r] = dot(a, rays[r].coords);
      any_negative = any_negative || s[r] < 0;
    }
    if (!any_negative) {
      for (std::size_t r = 0; r < rays.size(); ++r) rays[r].zeros.push_back(s[r] == 0);
      processed.push_back(k);
      continue;
    }

    const auto adjacent = [&](std::size_t p, std::size_t q) {
      std::vector<bool> common(processed.size());
      for (std::size_t t = 0; t < processed.size(); ++t)
        common[t] = rays[p].zeros[t] && rays[q].zeros[t];
      for (std::size_t r = 0; r < rays.size(); ++r) {
        if (r == p || r == q) continue;
        bool contains = true;
        for (std::size_t t = 0; t < processed.size() && contains; ++t)
          contains = !common[t] || rays[r].zeros[t];
        if (contains) return false;
      }
      return true;
    };

    std::vector<DdRay> next;
    for (std::size_t r = 0; r < rays.size(); ++r)
      if (s[r] >= 0) {
        DdRay keep = rays[r];
        keep.zeros.push_back(s[r] == 0);
        next.push_back(std::move(keep));
      }
    for (std::size_t p = 0; p < rays.size(); ++p) {
      if (s[p] <= 0) continue;
      for (std::size_t q = 0; q < rays.size(); ++q) {
        if (s[q] >= 0 || !adjacent(p, q)) continue;
        DdRay combo;
        VectorXz c = s[p] * rays[q].coords - s[q] * rays[p].coords;
        combo.coords = primitive(std::move(c));
        combo.zeros.reserve(processed.size() + 1);
        for (std::size_t t = 0; t < processed.size(); ++t)
          combo.zeros.push_back(dot(rows[processed[t]], combo.coords) == 0);
        combo.zeros.push_back(true);
        next.push_back(std::move(combo));
        if (next.size() > max_rays)
          throw RayLimitError("dual ray count limit exceeded during double description");
      }
    }
    rays = std::move(next);
    processed.push_back(k);
  }

  std::vector<VectorXz> out;
  out.reserve(rays.size());
  for (auto& r : rays) out.push_back(std::move(r.coords));
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

// Any nonzero kernel vector of m, or nullopt when m has full column rank.
std::optional<VectorXq> kernel_vector(const MatrixXq& m) {
  const Index rows = m.rows(), cols = m.cols();
  MatrixXq t = m;
  std::vector<Index> pivot_of_col(static_cast<std::size_t>(cols), -1);
  Index rank = 0;
  for (Index col = 0; col < cols && rank < rows; ++col) {
    Index p = -1;
    for (Index i = rank; i < rows; ++i)
      if (t(i, col) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    t.row(rank).swap(t.row(p));
    t.row(rank) /= t(rank, col);
    for (Index i = 0; i < rows; ++i)
      if (i != rank && t(i, col) != 0) t.row(i) -= t(i, col) * t.row(rank);
    pivot_of_col[static_cast<std::size_t>(col)] = rank;
    ++rank;
  }
  Index free_col = -1;
  for (Index col = 0; col < cols && free_col < 0; ++col)
    if (pivot_of_col[static_cast<std::size_t>(col)] < 0) free_col = col;
  if (free_col < 0) return std::nullopt;
  VectorXq w = VectorXq::Zero(cols);
  w[free_col] = 1;
  for (Index col = 0; col < cols; ++col) {
    const Index r = pivot_of_col[static_cast<std::size_t>(col)];
    if (r >= 0) w[col] = -t(r, free_col);
  }
  return w;
}

std::vector<VectorXz> sorted_by_norm(std::vector<VectorXz> vs) {
  std::sort(vs.begin(), vs.end(), [](const VectorXz& a, const VectorXz& b) {
    Int na = 0, nb = 0;
    for (Index i = 0; i < a.size(); ++i) na += a[i] * a[i];
    for (Index i = 0; i < b.size(); ++i) nb += b[i] * b[i];
    if (na != nb) return na < nb;
    return lex_less(a, b);
  });
  return vs;
}

std::vector<Int> key_of(const VectorXz& v) {
  return std::vector<Int>(v.data(), v.data() + v.size());
}

}  // namespace

PerfectVertex make_vertex(const MatrixXq& p, const VertexOptions& options) {
  if (!is_symmetric(p)) throw std::invalid_argument("make_vertex: matrix must be symmetric");
  if (!is_strictly_copositive(p))
    throw NotStrictlyCopositiveError("make_vertex: matrix is not strictly copositive");

  const Partition raw = build_partition(p);
  CopositiveMinimum cm = copositive_minimum(p, raw);

  PerfectVertex vertex;
  vertex.matrix = p / cm.value;  // minC becomes 1; MinC is unchanged
  vertex.min_vectors = sorted_by_norm(std::move(cm.vectors));
  vertex.partition = refine_partition(vertex.matrix, raw);

  std::vector<MatrixXq> rank1s;
  rank1s.reserve(vertex.min_vectors.size());
  for (const auto& v : vertex.min_vectors) rank1s.push_back(rank1(v));
  const Index n = p.rows();
  MatrixXq stacked(static_cast<Index>(rank1s.size()), sym_dim(n));
  for (std::size_t i = 0; i < rank1s.size(); ++i)
    stacked.row(static_cast<Index>(i)) = flatten_upper(rank1s[i]).transpose();
  if (rank_of(stacked) != sym_dim(n))
    throw NotPerfectError(
        "matrix is not perfect: its minimum vectors do not span the symmetric space");

  std::vector<VectorXz> ineq;
  ineq.reserve(vertex.min_vectors.size());
  for (const auto& v : vertex.min_vectors) ineq.push_back(inequality_row(v));
  try {
    const auto rays = extreme_rays(ineq, sym_dim(n), options.max_dual_rays);
    vertex.dual_rays.reserve(rays.size());
    for (const auto& r : rays)
      vertex.dual_rays.push_back(unflatten_upper(r.cast<Rational>(), n));
  } catch (const RayLimitError&) {
    vertex.dual_rays.clear();
    vertex.rays_complete = false;
  }
  return vertex;
}

const std::vector<MatrixXq>& dual_extreme_rays(const PerfectVertex& vertex) {
  if (!vertex.rays_complete)
    throw RayLimitError("dual ray list exceeded the cap for this vertex");
  return vertex.dual_rays;
}

std::optional<MatrixXq> separating_extreme_ray(const MatrixXq& a, const PerfectVertex& vertex) {
  if (a.rows() != vertex.dim() || a.cols() != vertex.dim())
    throw std::invalid_argument("separating_extreme_ray: dimension mismatch");
  const Index n = vertex.dim();
  const Index d = sym_dim(n);
  const auto& vs = vertex.min_vectors;

  std::vector<VectorXq> cone_rows;
  cone_rows.reserve(vs.size());
  VectorXq section_row = VectorXq::Zero(d);
  for (const auto& v : vs) {
    cone_rows.push_back(inequality_row(v).cast<Rational>());
    section_row += cone_rows.back();
  }

  LinearProgram lp(d);
  for (Index j = 0; j < d; ++j) lp.set_free(j);
  VectorXq objective(d);
  {
    Index k = 0;
    for (Index i = 0; i < n; ++i)
      for (Index j = i; j < n; ++j)
        objective[k++] = (i == j) ? a(i, j) : Rational(2 * a(i, j));
  }
  lp.objective = objective;
  for (const auto& row : cone_rows) lp.add_row(row, RowSense::GreaterEqual, Rational(0));
  lp.add_row(section_row, RowSense::LessEqual, Rational(1));

  const LpOutcome out = solve(lp);
  if (out.tag != LpOutcome::Tag::Optimal)
    throw std::logic_error("separating_extreme_ray: cross-section LP must have an optimum");
  if (out.objective_value >= 0) return std::nullopt;

  // Walk inside the optimal face until enough constraints are tight to pin
  // a vertex of the section; a nonzero vertex spans an extreme ray.
  VectorXq x = out.solution;
  for (;;) {
    std::vector<Index> tight;
    for (std::size_t k = 0; k < cone_rows.size(); ++k)
      if (cone_rows[k].dot(x) == 0) tight.push_back(static_cast<Index>(k));
    const bool section_tight = section_row.dot(x) == 1;
    MatrixXq t(static_cast<Index>(tight.size()) + (section_tight ? 1 : 0), d);
    for (std::size_t k = 0; k < tight.size(); ++k)
      t.row(static_cast<Index>(k)) = cone_rows[static_cast<std::size_t>(tight[k])].transpose();
    if (section_tight) t.row(t.rows() - 1) = section_row.transpose();
    const auto w = kernel_vector(t);
    if (!w) break;
    if (objective.dot(*w) != 0)
      throw std::logic_error("separating_extreme_ray: direction leaves the optimal face");
    // Ratio test in the +w direction; the section is compact, so some
    // constraint must stop us in +w or -w.
    std::optional<Rational> step;
    VectorXq dir = *w;
    for (int attempt = 0; attempt < 2; ++attempt) {
      step.reset();
      for (const auto& row : cone_rows) {
        const Rational rw = row.dot(dir);
        if (rw < 0) {
          const Rational limit = row.dot(x) / -rw;
          if (!step || limit < *step) step = limit;
        }
      }
      const Rational sw = section_row.dot(dir);
      if (sw > 0) {
        const Rational limit = (Rational(1) - section_row.dot(x)) / sw;
        if (!step || limit < *step) step = limit;
      }
      if (step) break;
      dir = -dir;
    }
    if (!step) throw std::logic_error("separating_extreme_ray: unbounded optimal face");
    x += *step * dir;
  }
  if (x.isZero(Rational(0)))
    throw std::logic_error("separating_extreme_ray: purification reached the apex");
  const MatrixXq ray = unflatten_upper(x, n);
  return primitive_integral(ray).cast<Rational>().eval();
}

MembershipResult membership(const MatrixXq& a, const PerfectVertex& vertex) {
  if (a.rows() != vertex.dim() || a.cols() != vertex.dim())
    throw std::invalid_argument("membership: dimension mismatch");
  const Index n = vertex.dim();
  const auto& vs = vertex.min_vectors;

  LinearProgram lp(static_cast<Index>(vs.size()));
  for (Index i = 0; i < n; ++i)
    for (Index j = i; j < n; ++j) {
      VectorXq row(static_cast<Index>(vs.size()));
      for (std::size_t k = 0; k < vs.size(); ++k)
        row[static_cast<Index>(k)] = Rational(Int(vs[k][i] * vs[k][j]));
      lp.add_row(std::move(row), RowSense::Equal, a(i, j));
    }

  MembershipResult result;
  const LpOutcome out = feasible_point(lp);
  if (out.tag == LpOutcome::Tag::Optimal) {
    Factorization f;
    for (std::size_t k = 0; k < vs.size(); ++k) {
      const Rational& alpha = out.solution[static_cast<Index>(k)];
      if (alpha != 0) f.terms.emplace_back(alpha, vs[k]);
    }
    std::sort(f.terms.begin(), f.terms.end(),
              [](const auto& x, const auto& y) { return lex_less(x.second, y.second); });
    result.factorization = std::move(f);
    return result;
  }

  for (std::size_t k = 0; k < vertex.dual_rays.size(); ++k)
    if (sym_inner(a, vertex.dual_rays[k]) < 0) result.violated_rays.push_back(k);
  if (result.violated_rays.empty())
    throw std::logic_error("membership: LP infeasible but no dual ray separates");
  return result;
}

Factorization caratheodory_reduce(const Factorization& f, Index n) {
  std::map<std::vector<Int>, std::pair<Rational, VectorXz>> merged;
  for (const auto& [alpha, v] : f.terms) {
    if (alpha < 0) throw std::invalid_argument("caratheodory_reduce: negative coefficient");
    if (alpha == 0) continue;
    auto [it, inserted] = merged.emplace(key_of(v), std::make_pair(alpha, v));
    if (!inserted) it->second.first += alpha;
  }
  Factorization compact;
  for (auto& [key, term] : merged) compact.terms.push_back(std::move(term));

  std::vector<MatrixXq> rank1s;
  rank1s.reserve(compact.terms.size());
  for (const auto& [alpha, v] : compact.terms) rank1s.push_back(rank1(v));
  if (linearly_independent(rank1s)) return compact;

  const MatrixXq target = compact.matrix(n);
  LinearProgram lp(static_cast<Index>(compact.terms.size()));
  for (Index i = 0; i < n; ++i)
    for (Index j = i; j < n; ++j) {
      VectorXq row(static_cast<Index>(compact.terms.size()));
      for (std::size_t k = 0; k < compact.terms.size(); ++k) {
        const VectorXz& v = compact.terms[k].second;
        row[static_cast<Index>(k)] = Rational(Int(v[i] * v[j]));
      }
      lp.add_row(std::move(row), RowSense::Equal, target(i, j));
    }
  const LpOutcome out = feasible_point(lp);
  if (out.tag != LpOutcome::Tag::Optimal)
    throw std::logic_error("caratheodory_reduce: reduction system must be feasible");

  Factorization reduced;
  for (std::size_t k = 0; k < compact.terms.size(); ++k) {
    const Rational& alpha = out.solution[static_cast<Index>(k)];
    if (alpha != 0) reduced.terms.emplace_back(alpha, compact.terms[k].second);
  }
  return reduced;
}

}  // namespace cpfact
