#include <chrono>
#include <iostream>

#include <CLI11.hpp>

#include "cpfact/copositivity.hpp"
#include "cpfact/io.hpp"
#include "cpfact/walk.hpp"

namespace {

constexpr int kExitFactorization = 0;
constexpr int kExitWitness = 10;
constexpr int kExitIterationLimit = 20;
constexpr int kExitBadInput = 2;
constexpr int kExitInternal = 3;

struct FactorizeArgs {
  std::string input;
  std::string output;
  std::string trace_path;
  std::string pivot_rule = "greedy";
  std::string frame = "unit";
  std::uint64_t seed = 0;
  std::size_t max_iter = 10000;
  int threads = 1;
};

cpfact::PivotRule parse_rule(const std::string& name) {
  if (name == "greedy") return cpfact::PivotRule::NormalizedGreedy;
  if (name == "random") return cpfact::PivotRule::Random;
  return cpfact::PivotRule::FirstIndex;
}

int run_factorize(const FactorizeArgs& args) {
  const cpfact::MatrixXq a = cpfact::read_matrix_file(args.input);

  cpfact::set_default_enumeration_threads(args.threads);
  cpfact::WalkConfig cfg;
  cfg.pivot_rule = parse_rule(args.pivot_rule);
  cfg.rng_seed = args.seed;
  cfg.max_iterations = args.max_iter;
  cfg.emit_trace = !args.trace_path.empty();

  const auto t0 = std::chrono::steady_clock::now();
  const cpfact::Certificate cert = cpfact::factorize(a, cfg);
  const auto t1 = std::chrono::steady_clock::now();

  cpfact::CertificateMetadata meta;
  meta.iterations = cert.iterations;
  meta.pivot_rule = args.pivot_rule;
  meta.seed = args.seed;
  meta.wall_time_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();

  const std::string out_path =
      args.output.empty() ? args.input + ".cert.json" : args.output;
  cpfact::write_text_file(out_path, cpfact::certificate_to_json(cert, a.rows(), meta));
  if (cfg.emit_trace)
    cpfact::write_text_file(args.trace_path,
                            cpfact::trace_to_jsonl(cert.trace, args.frame == "doubled"));

  switch (cert.kind) {
    case cpfact::Certificate::Kind::Factorization:
      std::cout << "factorization with " << cert.factorization.terms.size() << " terms after "
                << cert.iterations << " iterations -> " << out_path << "\n";
      return kExitFactorization;
    case cpfact::Certificate::Kind::Witness:
      std::cout << "copositive witness found after " << cert.iterations << " iterations -> "
                << out_path << "\n";
      return kExitWitness;
    case cpfact::Certificate::Kind::IterationLimit:
      std::cout << "iteration limit (" << args.max_iter << ") reached, no certificate -> "
                << out_path << "\n";
      return kExitIterationLimit;
  }
  return kExitInternal;
}

int run_verify(const std::string& input, const std::string& cert_path) {
  const cpfact::MatrixXq a = cpfact::read_matrix_file(input);
  const cpfact::ParsedCertificate cert = cpfact::read_certificate_file(cert_path);
  if (cert.n != a.rows()) throw cpfact::ParseError("certificate dimension mismatch");
  switch (cert.kind) {
    case cpfact::Certificate::Kind::Factorization:
      if (cpfact::verify_factorization(a, cert.factorization)) {
        std::cout << "valid factorization certificate\n";
        return 0;
      }
      std::cout << "INVALID factorization certificate\n";
      return 1;
    case cpfact::Certificate::Kind::Witness:
      if (cpfact::verify_witness(a, cert.witness)) {
        std::cout << "valid witness certificate\n";
        return 0;
      }
      std::cout << "INVALID witness certificate\n";
      return 1;
    case cpfact::Certificate::Kind::IterationLimit:
      std::cout << "iteration-limit certificate makes no claim\n";
      return 1;
  }
  return kExitInternal;
}

int run_check_copositive(const std::string& input, bool strict) {
  const cpfact::MatrixXq a = cpfact::read_matrix_file(input);
  const bool ok = strict ? cpfact::is_strictly_copositive(a) : cpfact::is_copositive(a);
  std::cout << (ok ? "copositive" : "not copositive") << (strict ? " (strict)" : "") << "\n";
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact rational cp-factorization and copositivity toolkit"};
  app.require_subcommand(1);

  FactorizeArgs fargs;
  auto* fact = app.add_subcommand(
      "factorize", "factor a symmetric rational matrix or find a copositive witness");
  fact->add_option("input", fargs.input, "matrix file")->required();
  fact->add_option("-o,--output", fargs.output, "certificate path (default: <input>.cert.json)");
  fact->add_option("--pivot-rule", fargs.pivot_rule, "greedy|random|first")
      ->check(CLI::IsMember({"greedy", "random", "first"}));
  fact->add_option("--seed", fargs.seed, "random pivot seed");
  fact->add_option("--max-iter", fargs.max_iter, "iteration cap (default 10000)");
  fact->add_option("--trace", fargs.trace_path, "write a JSONL trace of the walk");
  fact->add_option("--frame", fargs.frame, "unit|doubled vertex frame for trace output")
      ->check(CLI::IsMember({"unit", "doubled"}));
  fact->add_option("--threads", fargs.threads, "threads for lattice enumeration");

  std::string verify_input, verify_cert;
  auto* verify = app.add_subcommand("verify", "check a certificate against a matrix");
  verify->add_option("input", verify_input, "matrix file")->required();
  verify->add_option("certificate", verify_cert, "certificate file")->required();

  std::string check_input;
  bool strict = false;
  auto* check = app.add_subcommand("check-copositive", "decide copositivity");
  check->add_option("input", check_input, "matrix file")->required();
  check->add_flag("--strict", strict, "test the interior of the copositive cone");

  CLI11_PARSE(app, argc, argv);

  try {
    if (fact->parsed()) return run_factorize(fargs);
    if (verify->parsed()) return run_verify(verify_input, verify_cert);
    if (check->parsed()) return run_check_copositive(check_input, strict);
  } catch (const cpfact::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
