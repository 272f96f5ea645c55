#include "oracles.hpp"

#include <algorithm>
#include <set>

namespace cpfact::testing {

BoxMinimum brute_force_minimum(const MatrixXq& b, long long k) {
  const Index n = b.rows();
  VectorXz v = VectorXz::Zero(n);
  BoxMinimum best;
  bool have = false;
  for (;;) {
    // odometer over {0..k}^n
    Index pos = 0;
    while (pos < n && v[pos] == k) v[pos++] = 0;
    if (pos == n) break;
    v[pos] += 1;
    const Rational val = quad_form(b, v);
    if (!have || val < best.value) {
      best.value = val;
      best.vectors.clear();
      have = true;
    }
    if (val == best.value) best.vectors.push_back(v);
  }
  std::sort(best.vectors.begin(), best.vectors.end(),
            [](const VectorXz& x, const VectorXz& y) {
              for (Index i = 0; i < x.size(); ++i)
                if (x[i] != y[i]) return x[i] < y[i];
              return false;
            });
  return best;
}

long long certified_box_bound(const MatrixXq& b) {
  const Index n = b.rows();
  Rational delta_min;
  Rational diag_min;
  for (Index i = 0; i < n; ++i) {
    Rational off = 0;
    for (Index j = 0; j < n; ++j)
      if (j != i) off += abs(b(i, j));
    const Rational delta = b(i, i) - off;
    if (delta <= 0) throw std::invalid_argument("certified_box_bound: not diagonally dominant");
    if (i == 0 || delta < delta_min) delta_min = delta;
    if (i == 0 || b(i, i) < diag_min) diag_min = b(i, i);
  }
  // B[v] >= delta_min * sum v_i^2, so any coordinate above K exceeds the
  // upper bound min_i B_ii on the minimum.
  long long k = 1;
  while (Rational(k) * Rational(k) * delta_min <= diag_min) ++k;
  return k;
}

Rational simplex_minimum_small(const MatrixXq& b) {
  const Index n = b.rows();
  if (n < 1 || n > 3) throw std::invalid_argument("simplex_minimum_small: n must be 1..3");
  std::optional<Rational> best;
  const auto offer = [&](const Rational& v) {
    if (!best || v < *best) best = v;
  };
  for (Index i = 0; i < n; ++i) offer(b(i, i));
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) {
      // f(t) = (1-t)^2 b_ii + 2 t (1-t) b_ij + t^2 b_jj on [0,1]
      const Rational a = b(i, i) - 2 * b(i, j) + b(j, j);
      const Rational lin = 2 * (b(i, j) - b(i, i));
      if (a != 0) {
        const Rational t = -lin / (2 * a);
        if (t > 0 && t < 1)
          offer(a * t * t + lin * t + b(i, i));
      }
    }
  if (n == 3) {
    // Interior stationary point: B y = mu e, e^T y = 1.
    MatrixXq sys(4, 4);
    sys.topLeftCorner(3, 3) = b;
    for (Index i = 0; i < 3; ++i) {
      sys(i, 3) = -1;
      sys(3, i) = 1;
    }
    sys(3, 3) = 0;
    VectorXq rhs = VectorXq::Zero(4);
    rhs[3] = 1;
    if (const auto sol = solve_linear(sys, rhs)) {
      const VectorXq& y = *sol;
      if (y[0] >= 0 && y[1] >= 0 && y[2] >= 0) offer(y[3]);
    }
  }
  return *best;
}

Rational random_rational(std::mt19937_64& rng, long long lo, long long hi, long long max_den) {
  std::uniform_int_distribution<long long> den_dist(1, max_den);
  const long long q = den_dist(rng);
  std::uniform_int_distribution<long long> num_dist(lo * q, hi * q);
  return make_rational(Int(num_dist(rng)), Int(q));
}

MatrixXq random_symmetric(std::mt19937_64& rng, Index n, long long lo, long long hi,
                          long long max_den) {
  MatrixXq m(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = i; j < n; ++j) {
      m(i, j) = random_rational(rng, lo, hi, max_den);
      m(j, i) = m(i, j);
    }
  return m;
}

MatrixXq random_diag_dominant(std::mt19937_64& rng, Index n) {
  MatrixXq m(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) {
      m(i, j) = random_rational(rng, -3, 3, 3);
      m(j, i) = m(i, j);
    }
  for (Index i = 0; i < n; ++i) {
    Rational off = 0;
    for (Index j = 0; j < n; ++j)
      if (j != i) off += abs(m(i, j));
    m(i, i) = off + random_rational(rng, 1, 3, 3);
  }
  return m;
}

CpInstance random_cp_instance(std::mt19937_64& rng, Index n, int max_terms) {
  std::uniform_int_distribution<int> term_dist(1, max_terms);
  std::uniform_int_distribution<int> coord_dist(0, 4);
  const int terms = term_dist(rng);
  CpInstance out;
  out.matrix = MatrixXq::Zero(n, n);
  for (int t = 0; t < terms; ++t) {
    VectorXz v(n);
    bool nonzero = false;
    for (Index i = 0; i < n; ++i) {
      v[i] = coord_dist(rng);
      nonzero = nonzero || v[i] != 0;
    }
    if (!nonzero) continue;
    const Rational alpha = random_rational(rng, 0, 3, 4);
    if (alpha == 0) continue;
    out.matrix += alpha * rank1(v);
    out.terms.emplace_back(alpha, std::move(v));
  }
  return out;
}

MatrixXq random_integral_cp2(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> term_dist(1, 4);
  std::uniform_int_distribution<int> coord_dist(0, 5);
  MatrixXq a = MatrixXq::Zero(2, 2);
  const int terms = term_dist(rng);
  for (int t = 0; t < terms; ++t) {
    VectorXz v(2);
    v[0] = coord_dist(rng);
    v[1] = coord_dist(rng);
    if (v[0] == 0 && v[1] == 0) continue;
    a += rank1(v);
  }
  return a;
}

bool check_2x2_closed_form(const MatrixXq& p_doubled, const std::vector<VectorXz>& minc_p,
                           const MatrixXq& n_doubled, const std::vector<VectorXz>& minc_n) {
  if (minc_p.size() != 3 || minc_n.size() != 3) return false;
  const auto key = [](const VectorXz& v) { return std::make_pair(Int(v[0]), Int(v[1])); };
  std::set<std::pair<Int, Int>> old_set, new_set;
  for (const auto& v : minc_p) old_set.insert(key(v));
  for (const auto& v : minc_n) new_set.insert(key(v));

  std::vector<VectorXz> kept;
  std::vector<VectorXz> fresh;
  for (const auto& v : minc_n)
    (old_set.count(key(v)) ? kept : fresh).push_back(v);
  if (kept.size() != 2 || fresh.size() != 1) return false;

  const Int a = kept[0][0], bcoord = kept[0][1];
  const Int c = kept[1][0], d = kept[1][1];
  if (fresh[0][0] != a + c || fresh[0][1] != bcoord + d) return false;

  MatrixXq update(2, 2);
  update(0, 0) = Rational(Int(bcoord * d));
  update(1, 1) = Rational(Int(a * c));
  update(0, 1) = -Rational(Int(a * d + bcoord * c)) / 2;
  update(1, 0) = update(0, 1);
  return n_doubled == p_doubled + 4 * update;
}

}  // namespace cpfact::testing
