#include "cpfact/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace cpfact {

namespace {

using ordered_json = nlohmann::ordered_json;

std::vector<std::string> tokenize(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> tokens;
  std::string tok;
  while (in >> tok) tokens.push_back(tok);
  return tokens;
}

ordered_json json_int(const Int& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() &&
      v <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(v);
  return v.str();
}

Int int_from_json(const ordered_json& j) {
  if (j.is_number_integer()) return Int(j.get<std::int64_t>());
  if (j.is_string()) return Int(j.get<std::string>());
  throw ParseError("certificate: expected an integer");
}

Rational rational_from_json(const ordered_json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw ParseError("certificate: expected a rational string");
}

ordered_json matrix_to_json(const MatrixXq& m) {
  ordered_json rows = ordered_json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(format_rational(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

MatrixXq matrix_from_json(const ordered_json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("certificate: malformed matrix");
  const Index n = static_cast<Index>(j.size());
  MatrixXq m(n, n);
  for (Index i = 0; i < n; ++i) {
    const auto& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != n)
      throw ParseError("certificate: malformed matrix row");
    for (Index k = 0; k < n; ++k)
      m(i, k) = rational_from_json(row[static_cast<std::size_t>(k)]);
  }
  return m;
}

}  // namespace

MatrixXq parse_matrix(const std::string& text) {
  const auto tokens = tokenize(text);
  if (tokens.empty()) throw ParseError("matrix file: no data");

  Index n = 0;
  std::size_t first = 0;
  const auto square = [](std::size_t count) -> Index {
    const auto r = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(count))));
    return (r >= 1 && static_cast<std::size_t>(r) * static_cast<std::size_t>(r) == count) ? r
                                                                                          : -1;
  };
  if (const Index bare = square(tokens.size()); bare > 0) {
    n = bare;
  } else if (const Index prefixed = square(tokens.size() - 1); prefixed > 0) {
    Rational dim;
    try {
      dim = parse_rational(tokens[0]);
    } catch (const std::invalid_argument&) {
      throw ParseError("matrix file: bad dimension token '" + tokens[0] + "'");
    }
    if (!is_integer(dim) || Rational(prefixed) != dim)
      throw ParseError("matrix file: dimension does not match entry count");
    n = prefixed;
    first = 1;
  } else {
    throw ParseError("matrix file: entry count is not a square");
  }

  MatrixXq m(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      const std::string& tok = tokens[first + static_cast<std::size_t>(i * n + j)];
      try {
        m(i, j) = parse_rational(tok);
      } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("matrix file: ") + e.what());
      }
    }
  if (!is_symmetric(m)) throw ParseError("matrix file: matrix is not symmetric");
  return m;
}

MatrixXq read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_matrix(buf.str());
}

std::string format_matrix(const MatrixXq& m) {
  std::ostringstream out;
  out << m.rows() << "\n";
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j) out << ' ';
      out << format_rational(m(i, j));
    }
    out << "\n";
  }
  return out.str();
}

void write_matrix_file(const std::string& path, const MatrixXq& m) {
  write_text_file(path, format_matrix(m));
}

std::string certificate_to_json(const Certificate& cert, Index n,
                                const CertificateMetadata& meta) {
  ordered_json j;
  switch (cert.kind) {
    case Certificate::Kind::Factorization: {
      j["kind"] = "factorization";
      j["n"] = static_cast<std::int64_t>(n);
      ordered_json terms = ordered_json::array();
      for (const auto& [alpha, v] : cert.factorization.terms) {
        ordered_json term;
        term["coefficient"] = format_rational(alpha);
        ordered_json vec = ordered_json::array();
        for (Index i = 0; i < v.size(); ++i) vec.push_back(json_int(v[i]));
        term["vector"] = std::move(vec);
        terms.push_back(std::move(term));
      }
      j["terms"] = std::move(terms);
      break;
    }
    case Certificate::Kind::Witness:
      j["kind"] = "witness";
      j["n"] = static_cast<std::int64_t>(n);
      j["witness"] = matrix_to_json(cert.witness);
      break;
    case Certificate::Kind::IterationLimit:
      j["kind"] = "iteration-limit";
      j["n"] = static_cast<std::int64_t>(n);
      j["last_vertex"] = matrix_to_json(cert.last_vertex);
      break;
  }
  ordered_json m;
  m["iterations"] = static_cast<std::int64_t>(meta.iterations);
  m["pivot_rule"] = meta.pivot_rule;
  m["seed"] = meta.seed;
  m["wall_time_ms"] = meta.wall_time_ms;
  j["metadata"] = std::move(m);
  return j.dump(2) + "\n";
}

ParsedCertificate certificate_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("certificate: ") + e.what());
  }
  ParsedCertificate out;
  try {
    const std::string kind = j.at("kind").get<std::string>();
    out.n = static_cast<Index>(j.at("n").get<std::int64_t>());
    if (kind == "factorization") {
      out.kind = Certificate::Kind::Factorization;
      for (const auto& term : j.at("terms")) {
        const Rational alpha = rational_from_json(term.at("coefficient"));
        const auto& vec = term.at("vector");
        VectorXz v(static_cast<Index>(vec.size()));
        for (Index i = 0; i < v.size(); ++i)
          v[i] = int_from_json(vec[static_cast<std::size_t>(i)]);
        out.factorization.terms.emplace_back(alpha, std::move(v));
      }
    } else if (kind == "witness") {
      out.kind = Certificate::Kind::Witness;
      out.witness = matrix_from_json(j.at("witness"));
    } else if (kind == "iteration-limit") {
      out.kind = Certificate::Kind::IterationLimit;
    } else {
      throw ParseError("certificate: unknown kind '" + kind + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("certificate: ") + e.what());
  }
  return out;
}

ParsedCertificate read_certificate_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return certificate_from_json(buf.str());
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << text;
}

std::uint64_t vertex_hash(const MatrixXq& m) {
  const std::string s = format_matrix(m);
  std::uint64_t h = 1469598103934665603ull;
  for (const char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h;
}

std::string trace_to_jsonl(const std::vector<TraceEvent>& trace, bool doubled_frame) {
  std::ostringstream out;
  for (const auto& event : trace) {
    const MatrixXq vertex = doubled_frame ? MatrixXq(2 * event.vertex) : event.vertex;
    ordered_json j;
    j["iteration"] = static_cast<std::int64_t>(event.iteration);
    std::ostringstream hash;
    hash << std::hex << vertex_hash(vertex);
    j["vertex_hash"] = hash.str();
    j["objective"] = format_rational(event.objective);
    j["pivot_index"] = static_cast<std::int64_t>(event.pivot_index);
    out << j.dump() << "\n";
  }
  return out.str();
}

}  // namespace cpfact
