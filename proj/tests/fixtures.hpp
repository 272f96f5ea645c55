#pragma once

#include <initializer_list>
#include <vector>

#include "cpfact/rational.hpp"

namespace cpfact::testing {

inline MatrixXq qmat(std::initializer_list<std::initializer_list<const char*>> rows) {
  const Index n = static_cast<Index>(rows.size());
  MatrixXq m(n, static_cast<Index>(rows.begin()->size()));
  Index i = 0;
  for (const auto& row : rows) {
    Index j = 0;
    for (const char* tok : row) m(i, j++) = parse_rational(tok);
    ++i;
  }
  return m;
}

inline MatrixXq imat(std::initializer_list<std::initializer_list<long long>> rows) {
  const Index n = static_cast<Index>(rows.size());
  MatrixXq m(n, static_cast<Index>(rows.begin()->size()));
  Index i = 0;
  for (const auto& row : rows) {
    Index j = 0;
    for (const long long v : row) m(i, j++) = Rational(v);
    ++i;
  }
  return m;
}

inline VectorXz zvec(std::initializer_list<long long> entries) {
  VectorXz v(static_cast<Index>(entries.size()));
  Index i = 0;
  for (const long long e : entries) v[i++] = Int(e);
  return v;
}

/// 6x6 interior matrix with the six consecutive-ones-and-twos factors.
inline MatrixXq interior_6x6() {
  return imat({{6, 7, 8, 9, 10, 11},
               {7, 9, 10, 11, 12, 13},
               {8, 10, 12, 13, 14, 15},
               {9, 11, 13, 15, 16, 17},
               {10, 12, 14, 16, 18, 19},
               {11, 13, 15, 17, 19, 21}});
}

/// 5x5 circulant on the boundary of the completely positive cone.
inline MatrixXq circulant_5x5() {
  return imat({{8, 5, 1, 1, 5},
               {5, 8, 5, 1, 1},
               {1, 5, 8, 5, 1},
               {1, 1, 5, 8, 5},
               {5, 1, 1, 5, 8}});
}

/// Positive semidefinite but not completely positive.
inline MatrixXq nie_5x5() {
  return imat({{1, 1, 0, 0, 1},
               {1, 2, 1, 0, 0},
               {0, 1, 2, 1, 0},
               {0, 0, 1, 2, 1},
               {1, 0, 0, 1, 6}});
}

/// The published copositive witness for nie_5x5, inner product -2/5.
inline MatrixXq nie_witness() {
  return qmat({{"363/5", "-2126/35", "2879/70", "608/21", "-4519/210"},
               {"-2126/35", "1787/35", "-347/10", "1025/42", "253/14"},
               {"2879/70", "-347/10", "829/35", "-1748/105", "371/30"},
               {"608/21", "1025/42", "-1748/105", "1237/105", "-601/70"},
               {"-4519/210", "253/14", "371/30", "-601/70", "671/105"}});
}

/// [[n I_m, J],[J, m I_n]], completely positive with cp-rank n*m.
inline MatrixXq jarre(Index n, Index m) {
  const Index size = n + m;
  MatrixXq a = MatrixXq::Zero(size, size);
  for (Index i = 0; i < m; ++i) a(i, i) = Rational(n);
  for (Index i = 0; i < n; ++i) a(m + i, m + i) = Rational(m);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < n; ++j) {
      a(i, m + j) = 1;
      a(m + j, i) = 1;
    }
  return a;
}

/// New minimum vectors created along the walk for rank1((99,70)), in order.
inline std::vector<VectorXz> farey_sequence() {
  return {zvec({2, 1}),   zvec({3, 2}),   zvec({4, 3}),  zvec({7, 5}),  zvec({10, 7}),
          zvec({17, 12}), zvec({24, 17}), zvec({41, 29}), zvec({58, 41}), zvec({99, 70})};
}

/// Tenth vertex of that walk in the doubled (integral) frame.
inline MatrixXq farey_tenth_vertex_doubled() {
  return imat({{4756, -6726}, {-6726, 9512}});
}

}  // namespace cpfact::testing
