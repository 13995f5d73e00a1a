#include "selftest.hpp"

#include <functional>
#include <iostream>
#include <json.hpp>
#include <random>
#include <vector>

#include "k1colim/coeq.hpp"
#include "k1colim/colimit.hpp"

namespace {

using namespace k1colim;

std::vector<RingDescriptor> suite_rings() {
  return {RingDescriptor::modular(2), RingDescriptor::modular(3),
          RingDescriptor::modular(4), RingDescriptor::modular(5),
          RingDescriptor::modular(6), RingDescriptor::integers()};
}

struct Check {
  const char* name;
  std::function<bool(std::mt19937_64&)> body;
};

bool embed_homomorphism(std::mt19937_64& rng) {
  for (const RingDescriptor& ring : suite_rings())
    for (int iter = 0; iter < 20; ++iter) {
      int n = 2 + static_cast<int>(rng() % 3);
      InvertibleMatrix X = random_invertible(ring, n, rng(), 8);
      InvertibleMatrix Y = random_invertible(ring, n, rng(), 8);
      for (int j = 1; j <= n + 1; ++j) {
        if (embed_at(X * Y, j) != embed_at(X, j) * embed_at(Y, j)) return false;
        if (embed_at(X, j).det() != X.det()) return false;
      }
    }
  return true;
}

bool block_commutation(std::mt19937_64& rng) {
  for (const RingDescriptor& ring : suite_rings())
    for (int iter = 0; iter < 40; ++iter) {
      InvertibleMatrix X = random_invertible(ring, 3, rng(), 8);
      InvertibleMatrix Y = random_invertible(ring, 3, rng(), 8);
      if ((stabilize_last(X, 6) * stabilize_first(Y, 6)).matrix() !=
          (stabilize_first(Y, 6) * stabilize_last(X, 6)).matrix())
        return false;
    }
  return true;
}

bool permutation_identity(std::mt19937_64& rng) {
  for (const RingDescriptor& ring : suite_rings())
    for (int n = 1; n <= 4; ++n)
      for (int j = 1; j <= n + 1; ++j) {
        InvertibleMatrix P = conjugating_permutation(ring, n, j);
        InvertibleMatrix X = random_invertible(ring, n, rng(), 8);
        if ((P.inverted() * embed_at(X, n + 1) * P).matrix() != embed_at(X, j).matrix())
          return false;
      }
  return true;
}

bool witness_engine(std::mt19937_64& rng) {
  for (const RingDescriptor& ring : suite_rings()) {
    InvertibleMatrix X = random_invertible(ring, 3, rng(), 8);
    InvertibleMatrix Y = random_invertible(ring, 3, rng(), 8);
    if (!verify_witness(chain_discrepancy_witness(Y))) return false;
    if (!verify_witness(commutation_witness(X, Y))) return false;
    int p = 1 + static_cast<int>(rng() % 3);
    int q = 1 + static_cast<int>(rng() % 2);
    if (q >= p) ++q;
    mpz_class r = ring.is_modular() ? mpz_class(rng() % ring.modulus().get_ui())
                                    : mpz_class(static_cast<long>(rng() % 7) - 3);
    if (!verify_witness(elementary_witness(ElementaryMatrix(ring, 3, p, q, r))))
      return false;
    for (int j = 1; j <= 4; ++j)
      if (!verify_witness(general_embedding_witness(X, j))) return false;
    Witness tampered = commutation_witness(X, Y);
    tampered.terms[0].exponent = -tampered.terms[0].exponent;
    if (verify_witness(tampered)) return false;
  }
  return true;
}

bool factorization_soundness(std::mt19937_64& rng) {
  for (const RingDescriptor& ring : suite_rings()) {
    for (int iter = 0; iter < 10; ++iter) {
      InvertibleMatrix A = InvertibleMatrix::identity(ring, 3);
      for (int i = 0; i < 8; ++i) {
        int p = static_cast<int>(rng() % 3);
        int q = static_cast<int>(rng() % 2);
        if (q >= p) ++q;
        mpz_class r = ring.is_modular() ? mpz_class(rng() % ring.modulus().get_ui())
                                        : mpz_class(static_cast<long>(rng() % 5) - 2);
        A = A * ElementaryMatrix(ring, 3, p + 1, q + 1, r).to_invertible();
      }
      auto f = sl_factor(A);
      if (!f) return false;
      if (ElementaryFactorization::product_of(ring, 3, f->factors()) != A.matrix())
        return false;
    }
    InvertibleMatrix B = random_invertible(ring, 2, rng(), 6);
    ElementaryFactorization w = whitehead_factor(B);
    if (ElementaryFactorization::product_of(ring, 4, w.factors()) != w.target().matrix())
      return false;
  }
  return true;
}

bool rho_lambda_identities(std::mt19937_64& rng) {
  for (unsigned long m = 2; m <= 20; ++m) {
    RingDescriptor ring = RingDescriptor::modular(m);
    for (const K1Class& c : k1_group(ring))
      if (rho(lambda_map(c)) != c) return false;
  }
  for (const RingDescriptor& ring : suite_rings())
    for (int iter = 0; iter < 15; ++iter) {
      ColimitWord w(ring);
      for (int i = 0; i < 3; ++i) {
        ColimitWord l = alpha(random_invertible(ring, 3 + (int)(rng() % 2), rng(), 8));
        w = (rng() % 2 == 0) ? w * l : w * l.inverse();
      }
      if (!equal_in_M(lambda_map(rho(w)), w)) return false;
    }
  return true;
}

bool det_multiplicative(std::mt19937_64& rng) {
  for (const RingDescriptor& ring : suite_rings())
    for (int iter = 0; iter < 50; ++iter) {
      int n = 1 + static_cast<int>(rng() % 4);
      SquareMatrix A(ring, n), B(ring, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          auto draw = [&]() {
            return ring.is_modular() ? mpz_class(rng() % ring.modulus().get_ui())
                                     : mpz_class(static_cast<long>(rng() % 9) - 4);
          };
          A.set(i, j, draw());
          B.set(i, j, draw());
        }
      if (determinant(A * B) != determinant(A) * determinant(B)) return false;
    }
  return true;
}

bool crt_reconstruction(std::mt19937_64& rng) {
  for (int iter = 0; iter < 30; ++iter) {
    unsigned long m = 2 + rng() % 99;
    RingDescriptor ring = RingDescriptor::modular(m);
    CrtDecomposition dec = crt_split(m);
    unsigned long x = rng() % m;
    RingElement acc = ring_zero(ring);
    for (const CrtFactor& f : dec.factors)
      acc = acc + f.idempotent * RingElement(ring, mpz_class(x) % f.prime_power);
    if (acc.value() != x) return false;
  }
  return true;
}

}  // namespace

int run_selftest(std::uint64_t seed, std::ostream& out, std::ostream& err) {
  const Check checks[] = {
      {"embed_homomorphism", embed_homomorphism},
      {"block_commutation", block_commutation},
      {"permutation_identity", permutation_identity},
      {"witness_engine", witness_engine},
      {"factorization_soundness", factorization_soundness},
      {"rho_lambda_identities", rho_lambda_identities},
      {"det_multiplicative", det_multiplicative},
      {"crt_reconstruction", crt_reconstruction},
  };

  nlohmann::ordered_json report;
  report["seed"] = seed;
  report["checks"] = nlohmann::ordered_json::array();
  bool all = true;
  for (const Check& c : checks) {
    std::mt19937_64 rng(seed);
    bool passed = c.body(rng);
    all = all && passed;
    err << (passed ? "ok   " : "FAIL ") << c.name << "\n";
    nlohmann::ordered_json entry;
    entry["name"] = c.name;
    entry["passed"] = passed;
    report["checks"].push_back(std::move(entry));
  }
  report["all_passed"] = all;
  out << report.dump(2) << "\n";
  return all ? 0 : 1;
}
