// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "cpfact/copositivity.hpp"
#include "cpfact/copositive_min.hpp"
#include "cpfact/walk.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace cpfact;
using namespace cpfact::testing;

namespace {

struct Gate {
  int failures = 0;

  void run(const std::string& name, const std::function<std::string()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;
    try {
      detail = body();
    } catch (const std::exception& e) {
      ok = false;
      detail = std::string("exception: ") + e.what();
    }
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
    std::cout << (ok ? "PASS" : "FAIL") << "  " << name << "  [" << ms << " ms]"
              << (detail.empty() ? "" : "  " + detail) << "\n";
    failures += ok ? 0 : 1;
  }
};

struct CheckFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool cond, const std::string& what) {
  if (!cond) throw CheckFailed(what);
}

std::set<std::vector<Int>> as_set(const std::vector<VectorXz>& vs) {
  std::set<std::vector<Int>> out;
  for (const auto& v : vs) out.insert(std::vector<Int>(v.data(), v.data() + v.size()));
  return out;
}

std::set<std::vector<Int>> consecutive_ones(Index n) {
  std::set<std::vector<Int>> out;
  for (Index j = 0; j < n; ++j)
    for (Index k = j; k < n; ++k) {
      std::vector<Int> v(static_cast<std::size_t>(n), Int(0));
      for (Index i = j; i <= k; ++i) v[static_cast<std::size_t>(i)] = 1;
      out.insert(std::move(v));
    }
  return out;
}

std::string criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  for (Index n = 2; n <= 6; ++n) {
    const CopositiveMinimum cm = copositive_minimum(gram_an(n));
    require(cm.value == 2, "minC(gram_an) must be exactly 2");
    require(cm.vectors.size() == static_cast<std::size_t>(n * (n + 1) / 2),
            "MinC size must be n(n+1)/2");
    require(as_set(cm.vectors) == consecutive_ones(n), "MinC must be the consecutive-ones set");
    std::vector<MatrixXq> rank1s;
    for (const auto& v : cm.vectors) rank1s.push_back(rank1(v));
    require(linearly_independent(rank1s), "rank-1 minimum matrices must span");
  }
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
  require(secs < 10, "expected under 10 s total");
  return "n=2..6 exact";
}

std::string criterion2() {
  WalkConfig cfg;
  cfg.max_iterations = 100;
  const MatrixXq a = interior_6x6();
  const Certificate cert = factorize(a, cfg);
  require(cert.kind == Certificate::Kind::Factorization, "expected a factorization");
  require(verify_factorization(a, cert.factorization), "factorization must verify exactly");
  std::ostringstream detail;
  detail << "iterations=" << cert.iterations << " terms=" << cert.factorization.terms.size();
  return detail.str();
}

std::string criterion3() {
  WalkConfig cfg;
  cfg.max_iterations = 100;
  const MatrixXq a = circulant_5x5();
  const Certificate cert = factorize(a, cfg);
  require(cert.kind == Certificate::Kind::Factorization, "expected a factorization");
  require(verify_factorization(a, cert.factorization), "factorization must verify exactly");
  std::ostringstream detail;
  detail << "iterations=" << cert.iterations << " terms=" << cert.factorization.terms.size();
  return detail.str();
}

std::string criterion4() {
  const MatrixXq a = nie_5x5();
  require(verify_witness(a, nie_witness()), "published witness must verify");
  require(sym_inner(a, nie_witness()) == make_rational(-2, 5), "published inner product -2/5");

  WalkConfig cfg;
  cfg.max_iterations = 200;
  const Certificate cert = factorize(a, cfg);
  require(cert.kind == Certificate::Kind::Witness, "expected a witness");
  require(is_copositive(cert.witness), "witness must be copositive");
  require(sym_inner(cert.witness, a) < 0, "witness inner product must be negative");
  std::ostringstream detail;
  detail << "iterations=" << cert.iterations;
  return detail.str();
}

std::string criterion5() {
  const auto t0 = std::chrono::steady_clock::now();
  WalkConfig cfg;

  // (a) first pivots from the initial vertex
  {
    const PerfectVertex v = initial_vertex(2);
    const MatrixXq r1 = select_pivot(rank1(zvec({1, 2})), v, cfg);
    require(MatrixXq(2 * contiguous_vertex(v, r1).matrix) == imat({{6, -3}, {-3, 2}}),
            "pivot for rank1((1,2))");
    const MatrixXq r2 = select_pivot(rank1(zvec({2, 1})), v, cfg);
    require(MatrixXq(2 * contiguous_vertex(v, r2).matrix) == imat({{2, -3}, {-3, 6}}),
            "pivot for rank1((2,1))");
  }

  // (b) the full walk for rank1((99,70))
  cfg.emit_trace = true;
  const MatrixXq a = rank1(zvec({99, 70}));
  const Certificate cert = factorize(a, cfg);
  require(cert.kind == Certificate::Kind::Factorization, "walk must factor rank1((99,70))");
  require(cert.iterations == 10, "ten pivots expected");
  const auto expected = farey_sequence();
  require(cert.trace.size() == 11, "trace must hold eleven vertices");
  for (std::size_t step = 0; step + 1 < cert.trace.size(); ++step) {
    const auto& before = cert.trace[step].min_vectors;
    const auto& after = cert.trace[step + 1].min_vectors;
    std::vector<VectorXz> fresh;
    for (const auto& v : after) {
      bool seen = false;
      for (const auto& old : before) seen = seen || v == old;
      if (!seen) fresh.push_back(v);
    }
    require(fresh.size() == 1, "each step must create exactly one vector");
    require(fresh[0] == expected[step], "new vector must follow the known sequence");
  }
  require(MatrixXq(2 * cert.trace[10].vertex) == farey_tenth_vertex_doubled(),
          "tenth vertex in the doubled frame");

  // (c) closed-form update on every step
  for (std::size_t i = 0; i + 1 < cert.trace.size(); ++i)
    require(check_2x2_closed_form(MatrixXq(2 * cert.trace[i].vertex),
                                  cert.trace[i].min_vectors,
                                  MatrixXq(2 * cert.trace[i + 1].vertex),
                                  cert.trace[i + 1].min_vectors),
            "closed-form update must hold");

  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
  require(ms < 1000, "expected under 1 s");
  return "sequence, tenth vertex, and closed form exact";
}

std::string criterion6() {
  std::ostringstream detail;
  for (Index n = 1; n <= 3; ++n)
    for (Index m = 1; m <= 3; ++m) {
      WalkConfig cfg;
      cfg.max_iterations = 25;
      const MatrixXq a = jarre(n, m);
      const Certificate cert = factorize(a, cfg);
      require(cert.kind == Certificate::Kind::Factorization, "Jarre matrix must factor");
      require(verify_factorization(a, cert.factorization), "exact reconstruction");
      require(cert.factorization.terms.size() >= static_cast<std::size_t>(n * m),
              "cp-rank lower bound n*m");
      detail << n << "x" << m << ":" << cert.iterations << " ";
    }
  return "iterations " + detail.str();
}

std::string criterion7() {
  std::mt19937_64 rng(20260810);
  for (int iter = 0; iter < 100; ++iter) {
    const MatrixXq a = random_integral_cp2(rng);
    const Certificate cert = factorize(a);
    require(cert.kind == Certificate::Kind::Factorization, "integral CP matrix must factor");
    require(verify_factorization(a, cert.factorization), "exact reconstruction");
    for (const auto& [alpha, v] : cert.factorization.terms) {
      require(alpha >= 0, "coefficients nonnegative");
      require(is_integer(alpha), "coefficients must be integers");
    }
  }
  return "100 matrices, all integral coefficients";
}

std::string criterion8() {
  std::mt19937_64 rng(424242);

  for (int iter = 0; iter < 100; ++iter) {
    const Index n = 2 + static_cast<Index>(iter % 2);
    const MatrixXq b = random_diag_dominant(rng, n);
    const CopositiveMinimum cm = copositive_minimum(b);
    const BoxMinimum ref = brute_force_minimum(b, certified_box_bound(b));
    require(cm.value == ref.value, "copositive_minimum value vs brute force");
    require(as_set(cm.vectors) == as_set(ref.vectors), "MinC set vs brute force");
  }

  for (int iter = 0; iter < 100; ++iter) {
    const MatrixXq b = random_symmetric(rng, 3, -3, 3, 3);
    require(is_copositive(b) == oracle_copositive(b), "is_copositive vs simplex oracle");
  }

  for (int iter = 0; iter < 200; ++iter) {
    const Index n = 2 + static_cast<Index>(iter % 3);
    const CpInstance inst = random_cp_instance(rng, n, 2 * static_cast<int>(n));
    const Certificate cert = factorize(inst.matrix);
    require(cert.kind == Certificate::Kind::Factorization, "round trip must factor");
    require(verify_factorization(inst.matrix, cert.factorization), "round trip must verify");
  }
  return "100+100+200 cases exact";
}

std::string criterion9() {
  std::mt19937_64 rng(555);
  std::vector<MatrixXq> cases = {
      imat({{1, -1}, {-1, 1}}),
      imat({{100, -1}, {-1, -10}}),  // second separating ray exists
      imat({{-10, -1}, {-1, -10}}),  // negative diagonal as well
      imat({{0, -1}, {-1, 0}}),
  };
  for (int iter = 0; iter < 30; ++iter) {
    MatrixXq a(2, 2);
    a(0, 0) = random_rational(rng, -6, 6, 4);
    a(1, 1) = random_rational(rng, -6, 6, 4);
    a(0, 1) = random_rational(rng, -6, -1, 4);
    a(1, 0) = a(0, 1);
    cases.push_back(a);
  }
  for (const auto& a : cases) {
    const Certificate cert = factorize(a);
    require(cert.kind == Certificate::Kind::Witness, "expected a witness");
    require(cert.iterations == 0, "witness must arrive in the first pass");
    require(cert.witness == imat({{0, 1}, {1, 0}}), "witness must be the swap matrix");
  }
  return std::to_string(cases.size()) + " matrices";
}

}  // namespace

int main() {
  Gate gate;
  gate.run("criterion 1: gram_an perfectness (n=2..6)", criterion1);
  gate.run("criterion 2: interior 6x6 factorization", criterion2);
  gate.run("criterion 3: boundary 5x5 circulant factorization", criterion3);
  gate.run("criterion 4: 5x5 witness + published witness check", criterion4);
  gate.run("criterion 5: 2x2 continued-fraction suite", criterion5);
  gate.run("criterion 6: block family with cp-rank n*m", criterion6);
  gate.run("criterion 7: integral 2x2 coefficients", criterion7);
  gate.run("criterion 8: oracle property suites", criterion8);
  gate.run("criterion 9: negative off-diagonal witness", criterion9);
  if (gate.failures) {
    std::cout << gate.failures << " criterion(s) FAILED\n";
    return 1;
  }
  std::cout << "all criteria passed\n";
  return 0;
}
