#include <doctest.h>

#include "cpfact/io.hpp"
#include "fixtures.hpp"

using namespace cpfact;
using namespace cpfact::testing;

TEST_SUITE_BEGIN("io");

TEST_CASE("parse accepts both layouts") {
  const MatrixXq with_dim = parse_matrix("2\n2 -1\n-1 2\n");
  const MatrixXq bare = parse_matrix("2 -1 -1 2");
  CHECK(with_dim == gram_an(2));
  CHECK(bare == gram_an(2));
  CHECK(parse_matrix("1/2") == qmat({{"1/2"}}));
}

TEST_CASE("parse rejects malformed input") {
  CHECK_THROWS_AS(parse_matrix(""), ParseError);
  CHECK_THROWS_AS(parse_matrix("1 2 3"), ParseError);          // not a square count
  CHECK_THROWS_AS(parse_matrix("3\n1 2 3 4"), ParseError);     // dimension mismatch
  CHECK_THROWS_AS(parse_matrix("2\n1 1/0 1/0 1"), ParseError); // zero denominator
  CHECK_THROWS_AS(parse_matrix("2\n1 2 3 4"), ParseError);     // not symmetric
  CHECK_THROWS_AS(parse_matrix("x\n1"), ParseError);
}

TEST_CASE("canonical round trip is byte-identical") {
  const std::string canonical = "2\n1 -1/2\n-1/2 1\n";
  CHECK(format_matrix(parse_matrix(canonical)) == canonical);
  const std::string nie = format_matrix(nie_witness());
  CHECK(format_matrix(parse_matrix(nie)) == nie);
}

TEST_CASE("certificate JSON round trip") {
  SUBCASE("factorization") {
    Certificate cert;
    cert.kind = Certificate::Kind::Factorization;
    cert.factorization.terms.emplace_back(make_rational(3, 2), zvec({1, 2}));
    cert.factorization.terms.emplace_back(Rational(1), zvec({0, 1}));
    const std::string text = certificate_to_json(cert, 2, {});
    const ParsedCertificate back = certificate_from_json(text);
    REQUIRE(back.kind == Certificate::Kind::Factorization);
    CHECK(back.n == 2);
    REQUIRE(back.factorization.terms.size() == 2);
    CHECK(back.factorization.terms[0].first == make_rational(3, 2));
    CHECK(back.factorization.terms[0].second == zvec({1, 2}));
  }
  SUBCASE("witness") {
    Certificate cert;
    cert.kind = Certificate::Kind::Witness;
    cert.witness = qmat({{"0", "1"}, {"1", "0"}});
    const ParsedCertificate back = certificate_from_json(certificate_to_json(cert, 2, {}));
    REQUIRE(back.kind == Certificate::Kind::Witness);
    CHECK(back.witness == cert.witness);
  }
  SUBCASE("huge vector entries survive") {
    Certificate cert;
    cert.kind = Certificate::Kind::Factorization;
    VectorXz v(1);
    v[0] = Int("123456789012345678901234567890");
    cert.factorization.terms.emplace_back(Rational(1), v);
    const ParsedCertificate back = certificate_from_json(certificate_to_json(cert, 1, {}));
    CHECK(back.factorization.terms[0].second[0] == Int("123456789012345678901234567890"));
  }
  SUBCASE("garbage is rejected") {
    CHECK_THROWS_AS(certificate_from_json("not json"), ParseError);
    CHECK_THROWS_AS(certificate_from_json("{\"kind\":\"nonsense\",\"n\":1}"), ParseError);
  }
}

TEST_CASE("trace lines carry hash, objective, pivot") {
  TraceEvent ev;
  ev.iteration = 1;
  ev.vertex = qmat({{"1", "-1/2"}, {"-1/2", "1"}});
  ev.objective = make_rational(5, 3);
  ev.pivot_index = 2;
  const std::string unit = trace_to_jsonl({ev}, false);
  CHECK(unit.find("\"objective\":\"5/3\"") != std::string::npos);
  CHECK(unit.find("\"pivot_index\":2") != std::string::npos);
  const std::string doubled = trace_to_jsonl({ev}, true);
  CHECK(unit != doubled);  // frame changes the vertex hash
}

TEST_SUITE_END();
