#pragma once

#include <Eigen/Dense>
#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cpfact {

/// Exact scalar types. Rational values are kept in lowest terms with a
/// positive denominator (GMP canonical form); division by zero throws
/// std::overflow_error.
using Int = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using MatrixXq = MatrixX<Rational>;
using VectorXq = VectorX<Rational>;
using MatrixXz = MatrixX<Int>;
using VectorXz = VectorX<Int>;

using Eigen::Index;

/// Builds p/q with sign normalization. Throws std::overflow_error for q = 0.
inline Rational make_rational(const Int& p, const Int& q) {
  return Rational(p) / Rational(q);
}

inline bool is_integer(const Rational& x) { return denominator(x) == 1; }

/// Largest integer <= x.
inline Int floor_int(const Rational& x) {
  Int q, r;
  boost::multiprecision::divide_qr(numerator(x), denominator(x), q, r);
  if (r != 0 && x < 0) --q;
  return q;
}

/// Smallest integer >= x.
inline Int ceil_int(const Rational& x) { return -floor_int(-x); }

/// Parses "p", "p/q" or "-p/q". Rejects zero denominators and any
/// malformed token; never produces a non-canonical value.
inline Rational parse_rational(std::string_view token) {
  const auto bad = [&] {
    return std::invalid_argument("invalid rational literal: '" + std::string(token) + "'");
  };
  if (token.empty()) throw bad();
  const std::size_t slash = token.find('/');
  const auto parse_int = [&](std::string_view s) -> Int {
    if (s.empty() || s == "-" || s == "+") throw bad();
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    for (std::size_t i = start; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') throw bad();
    return Int(std::string(s));
  };
  if (slash == std::string_view::npos) return Rational(parse_int(token));
  const Int p = parse_int(token.substr(0, slash));
  const Int q = parse_int(token.substr(slash + 1));
  if (q == 0) throw bad();
  return make_rational(p, q);
}

/// Canonical text form: "p" when integral, "p/q" otherwise.
inline std::string format_rational(const Rational& x) {
  if (is_integer(x)) return numerator(x).str();
  return numerator(x).str() + "/" + denominator(x).str();
}

/// gcd of all entries (nonnegative); 0 for the zero vector.
inline Int content(const VectorXz& v) {
  Int g = 0;
  for (Index i = 0; i < v.size(); ++i) g = boost::multiprecision::gcd(g, v[i]);
  return g;
}

/// Divides out the content, leaving a primitive vector. Zero stays zero.
inline VectorXz primitive(VectorXz v) {
  const Int g = content(v);
  if (g > 1)
    for (Index i = 0; i < v.size(); ++i) v[i] /= g;
  return v;
}

/// Scales a rational matrix to a primitive integral one pointing the same way.
/// The input must be nonzero.
inline MatrixXz primitive_integral(const MatrixXq& m) {
  Int l = 1;
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) l = boost::multiprecision::lcm(l, denominator(m(i, j)));
  Int g = 0;
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      g = boost::multiprecision::gcd(g, Int(numerator(m(i, j)) * (l / denominator(m(i, j)))));
  if (g == 0) throw std::invalid_argument("primitive_integral: zero matrix");
  MatrixXz out(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      out(i, j) = numerator(m(i, j)) * (l / denominator(m(i, j))) / g;
  return out;
}

inline bool is_symmetric(const MatrixXq& m) {
  if (m.rows() != m.cols()) return false;
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = i + 1; j < m.cols(); ++j)
      if (m(i, j) != m(j, i)) return false;
  return true;
}

}  // namespace cpfact
