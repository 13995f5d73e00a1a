// Command line front end: exact K1 computations, elementary-factorization
// certificates, relator-product witnesses and the finite coequalizer check.
//
// Exit codes: 0 success, 1 negative verification/decision, 2 malformed
// input, 3 unsupported ring/level. Structured output (JSON, plain values)
// goes to stdout; human summaries go to stderr.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "k1colim/coeq.hpp"
#include "k1colim/json_io.hpp"
#include "selftest.hpp"

namespace {

using namespace k1colim;
using nlohmann::json;
using nlohmann::ordered_json;

constexpr std::uint64_t kDefaultSeed = 42;
constexpr int kDefaultLength = 20;

RingDescriptor parse_ring(const std::string& s) {
  if (s == "z" || s == "Z") return RingDescriptor::integers();
  if (s.rfind("zmod:", 0) == 0) {
    try {
      mpz_class m(s.substr(5));
      if (m >= 2) return RingDescriptor::modular(std::move(m));
    } catch (const std::invalid_argument&) {
    }
    throw malformed_error("bad modulus in ring flag '" + s + "'");
  }
  throw malformed_error("bad ring flag '" + s + "' (expected z or zmod:<m>)");
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw malformed_error("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw malformed_error("bad JSON in '" + path + "': " + e.what());
  }
}

void emit(const ordered_json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream out(out_path);
    if (!out) throw malformed_error("cannot write '" + out_path + "'");
    out << j.dump(2) << "\n";
  }
}

InvertibleMatrix load_invertible_or_exit1(const std::string& path) {
  SquareMatrix m = matrix_from_json(load_json(path));
  auto inv = try_invert(m);
  if (!inv) {
    std::cerr << "matrix in '" << path << "' is not invertible over "
              << m.ring().to_string() << "\n";
    std::exit(1);
  }
  return *inv;
}

int cmd_k1(const std::string& ring_flag, const std::string& matrix_path) {
  InvertibleMatrix X = load_invertible_or_exit1(matrix_path);
  if (!ring_flag.empty() && parse_ring(ring_flag) != X.ring())
    throw malformed_error("--ring disagrees with the matrix file's ring");
  K1Class c = class_of_matrix(X);
  std::cerr << "K1(" << c.ring().to_string() << ") class of a level-" << X.n()
            << " matrix\n";
  std::cout << c.unit().to_string() << "\n";
  return 0;
}

int cmd_factor(const std::string& matrix_path, const std::string& out_path) {
  InvertibleMatrix X = load_invertible_or_exit1(matrix_path);
  auto f = sl_factor(X);
  if (!f) {
    std::cerr << "determinant " << X.det().to_string()
              << " is not 1: no elementary factorization\n";
    std::cout << "No\n";
    return 1;
  }
  std::cerr << "factored into " << f->factors().size() << " elementary matrices\n";
  emit(factorization_to_json(*f), out_path);
  return 0;
}

int emit_witness(const Witness& w, const std::string& out_path) {
  bool ok = verify_witness(w);
  std::cerr << "witness at level " << w.target.n() << " with " << w.terms.size()
            << " terms; verified: " << (ok ? "true" : "false") << "\n";
  emit(witness_to_json(w), out_path);
  return ok ? 0 : 1;
}

int cmd_verify(const std::string& witness_path) {
  Witness w = witness_from_json(load_json(witness_path));
  WitnessDiagnosis d = diagnose_witness(w);
  if (d.ok) {
    std::cerr << "witness verified: " << w.terms.size() << " terms, target level "
              << w.target.n() << "\n";
    return 0;
  }
  std::cerr << "witness verification FAILED";
  if (d.suspect_term)
    std::cerr << "; flipping term " << *d.suspect_term << " repairs the product";
  std::cerr << "\n";
  return 1;
}

int cmd_coeq(const std::string& ring_flag, int level, std::uint64_t budget) {
  CoeqOptions opts;
  if (budget > 0) opts.element_budget = budget;
  CoeqResult r = truncated_coequalizer(parse_ring(ring_flag), level, opts);
  std::cerr << "|GL(" << level << ")| = " << r.group_order << ", relators "
            << r.relator_count << ", normal closure " << r.closure_order << "\n";
  std::cout << r.quotient_order << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact K1 computations over Z and Z/m with checkable certificates"};
  app.require_subcommand(1);

  std::string ring_flag, matrix_path, out_path, witness_path, x_path, y_path;
  std::uint64_t seed = kDefaultSeed;
  std::uint64_t budget = 0;
  int level = 4, n = 3, j = 1, p = 1, q = 2, length = kDefaultLength;
  std::string r_value = "1";

  CLI::App* k1cmd = app.add_subcommand("k1", "K1 class of an invertible matrix");
  k1cmd->add_option("--ring", ring_flag, "ring flag: z or zmod:<m> (cross-check)");
  k1cmd->add_option("--matrix", matrix_path, "matrix JSON file")->required();

  CLI::App* factor = app.add_subcommand("factor", "elementary factorization or No");
  factor->add_option("--matrix", matrix_path, "matrix JSON file")->required();
  factor->add_option("--out", out_path, "output file (default stdout)");

  CLI::App* witness = app.add_subcommand("witness", "generate relator-product witnesses");
  witness->require_subcommand(1);
  CLI::App* wc = witness->add_subcommand("commutation", "witness for [L(X), L(Y)]");
  wc->add_option("--ring", ring_flag, "ring flag: z or zmod:<m>");
  wc->add_option("--n", n, "level of X and Y (>= 3)");
  wc->add_option("--seed", seed, "seed for random X, Y");
  wc->add_option("--length", length, "elementary factors per random matrix");
  wc->add_option("--x", x_path, "matrix JSON for X (overrides random)");
  wc->add_option("--y", y_path, "matrix JSON for Y (overrides random)");
  wc->add_option("--out", out_path, "output file (default stdout)");
  CLI::App* we = witness->add_subcommand("elementary", "witness for L(e_{pq}(r))");
  we->add_option("--ring", ring_flag, "ring flag")->required();
  we->add_option("--n", n, "level (>= 3)");
  we->add_option("--p", p, "row (1-based)");
  we->add_option("--q", q, "column (1-based)");
  we->add_option("--r", r_value, "entry value (decimal)");
  we->add_option("--out", out_path, "output file (default stdout)");
  CLI::App* wj = witness->add_subcommand("embedding",
                                         "witness identifying i_j with i_last");
  wj->add_option("--ring", ring_flag, "ring flag");
  wj->add_option("--n", n, "level of X (>= 3)");
  wj->add_option("--j", j, "embedding position (1-based)")->required();
  wj->add_option("--seed", seed, "seed for random X");
  wj->add_option("--length", length, "elementary factors for random X");
  wj->add_option("--x", x_path, "matrix JSON for X (overrides random)");
  wj->add_option("--out", out_path, "output file (default stdout)");

  CLI::App* verify = app.add_subcommand("verify", "check a witness file");
  verify->add_option("--witness", witness_path, "witness JSON file")->required();

  CLI::App* coeq = app.add_subcommand("coeq", "truncated coequalizer order");
  coeq->add_option("--ring", ring_flag, "ring flag: zmod:<m>")->required();
  coeq->add_option("--level", level, "truncation level (>= 4)")->required();
  coeq->add_option("--budget", budget, "enumeration budget override");

  CLI::App* selftest = app.add_subcommand("selftest", "randomized invariant suite");
  selftest->add_option("--seed", seed, "suite seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*k1cmd) return cmd_k1(ring_flag, matrix_path);
    if (*factor) return cmd_factor(matrix_path, out_path);
    if (*wc) {
      InvertibleMatrix X = x_path.empty()
                               ? random_invertible(parse_ring(ring_flag), n, seed, length)
                               : load_invertible_or_exit1(x_path);
      InvertibleMatrix Y = y_path.empty()
                               ? random_invertible(X.ring(), n, seed + 1, length)
                               : load_invertible_or_exit1(y_path);
      return emit_witness(commutation_witness(X, Y), out_path);
    }
    if (*we) {
      RingDescriptor ring = parse_ring(ring_flag);
      mpz_class r;
      try {
        r = mpz_class(r_value);
      } catch (const std::invalid_argument&) {
        throw malformed_error("bad --r value '" + r_value + "'");
      }
      return emit_witness(elementary_witness(ElementaryMatrix(ring, n, p, q, r)),
                          out_path);
    }
    if (*wj) {
      InvertibleMatrix X = x_path.empty()
                               ? random_invertible(parse_ring(ring_flag), n, seed, length)
                               : load_invertible_or_exit1(x_path);
      return emit_witness(general_embedding_witness(X, j), out_path);
    }
    if (*verify) return cmd_verify(witness_path);
    if (*coeq) return cmd_coeq(ring_flag, level, budget);
    if (*selftest) return run_selftest(seed, std::cout, std::cerr);
  } catch (const malformed_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const unsupported_error& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
