#pragma once

#include <cstdint>
#include <string>

#include "cpfact/walk.hpp"

namespace cpfact {

class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Accepts two whitespace-separated layouts: a leading dimension token
/// followed by n*n entries, or bare n*n entries (the token count tells the
/// two apart unambiguously). Entries are integers or "p/q" rationals.
/// Symmetry is checked exactly.
MatrixXq parse_matrix(const std::string& text);
MatrixXq read_matrix_file(const std::string& path);

/// Canonical serialization: dimension line, then one line per row with
/// single-space separated lowest-terms entries. parse -> format is the
/// identity on canonical files.
std::string format_matrix(const MatrixXq& m);
void write_matrix_file(const std::string& path, const MatrixXq& m);

struct CertificateMetadata {
  std::size_t iterations = 0;
  std::string pivot_rule;
  std::uint64_t seed = 0;
  std::int64_t wall_time_ms = 0;
};

/// Self-contained JSON certificate: verification needs only this plus the
/// input matrix. Factorization terms are sorted by vector; rationals are
/// serialized as strings, vector entries as integers (strings only when they
/// exceed 64 bits).
std::string certificate_to_json(const Certificate& cert, Index n,
                                const CertificateMetadata& meta);

struct ParsedCertificate {
  Certificate::Kind kind = Certificate::Kind::IterationLimit;
  Factorization factorization;
  MatrixXq witness;
  Index n = 0;
};

ParsedCertificate certificate_from_json(const std::string& text);
ParsedCertificate read_certificate_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// FNV-1a over the canonical matrix serialization.
std::uint64_t vertex_hash(const MatrixXq& m);

/// One JSON record per line per iteration: vertex hash, exact objective,
/// pivot index. `doubled_frame` reports vertices scaled by 2, matching the
/// integral-matrix convention for walks started at the unscaled tridiagonal
/// form.
std::string trace_to_jsonl(const std::vector<TraceEvent>& trace, bool doubled_frame);

}  // namespace cpfact
