#include <doctest.h>

#include <random>

#include "k1colim/colimit.hpp"
#include "k1colim/json_io.hpp"
#include "support/oracles.hpp"

using namespace k1colim;
using k1colim::testing::standard_rings;

namespace {

InvertibleMatrix sample(const RingDescriptor& ring, int n, std::uint64_t seed) {
  return random_invertible(ring, n, seed, 12);
}

ColimitWord random_word(const RingDescriptor& ring, std::mt19937_64& rng) {
  ColimitWord w(ring);
  int len = 1 + static_cast<int>(rng() % 4);
  for (int i = 0; i < len; ++i) {
    int level = 3 + static_cast<int>(rng() % 3);
    ColimitWord letter = alpha(sample(ring, level, rng()));
    w = (rng() % 2 == 0) ? w * letter : w * letter.inverse();
  }
  return w;
}

}  // namespace

TEST_CASE("alpha and the word group structure") {
  RingDescriptor z5 = RingDescriptor::modular(5);

  ColimitWord empty(z5);
  CHECK(equal_in_M(alpha(InvertibleMatrix::identity(z5, 3)), empty));

  InvertibleMatrix X = sample(z5, 3, 2);
  CHECK(equal_in_M(alpha(X) * alpha(X.inverted()), empty));
  CHECK((alpha(X) * alpha(X).inverse()).empty());

  // Same-level letters merge; mixed levels stay formal.
  InvertibleMatrix Y = sample(z5, 3, 3);
  CHECK((alpha(X) * alpha(Y)).letters().size() == 1);
  InvertibleMatrix Z4 = sample(z5, 4, 4);
  CHECK((alpha(X) * alpha(Z4)).letters().size() == 2);

  // alpha identifies a matrix with its stabilization.
  CHECK(equal_in_M(alpha(embed_at(X, 4)), alpha(X)));

  CHECK_THROWS_AS(alpha(InvertibleMatrix::identity(z5, 2)), std::invalid_argument);
}

TEST_CASE("rho: letterwise classes, well defined on relators") {
  RingDescriptor z5 = RingDescriptor::modular(5);
  SquareMatrix d(z5, 3);
  d.set(0, 0, 2);
  d.set(1, 1, 1);
  d.set(2, 2, 1);
  CHECK(rho(alpha(*try_invert(d))).unit().value() == 2);
  CHECK(rho(ColimitWord(z5)).unit().is_one());

  std::mt19937_64 rng(83);
  for (int iter = 0; iter < 30; ++iter) {
    InvertibleMatrix X = sample(z5, 3, rng());
    InvertibleMatrix Y = sample(z5, 3, rng());
    CHECK(rho(alpha(X) * alpha(Y)) == k1_mul(rho(alpha(Y)), rho(alpha(X))));
  }

  for (const RingDescriptor& ring : standard_rings()) {
    for (int iter = 0; iter < 20; ++iter) {
      Relator rel(sample(ring, 3, iter));
      CHECK(class_of_matrix(rel.first_side()) == class_of_matrix(rel.last_side()));
      CHECK(rel.element().det().is_one());
    }
  }
}

TEST_CASE("lambda and rho invert each other") {
  for (unsigned long m = 2; m <= 12; ++m) {
    RingDescriptor ring = RingDescriptor::modular(m);
    for (const K1Class& c : k1_group(ring)) {
      CHECK(rho(lambda_map(c)) == c);
      if (c.unit().is_one()) CHECK(lambda_map(c).empty());
    }
  }

  RingDescriptor z5 = RingDescriptor::modular(5);
  std::mt19937_64 rng(89);
  for (int iter = 0; iter < 50; ++iter) {
    InvertibleMatrix X = sample(z5, 3, rng());
    CHECK(equal_in_M(lambda_map(rho(alpha(X))), alpha(X)));
  }
  for (const RingDescriptor& ring : standard_rings()) {
    for (int iter = 0; iter < 25; ++iter) {
      ColimitWord w = random_word(ring, rng);
      CHECK(equal_in_M(lambda_map(rho(w)), w));
    }
  }
}

TEST_CASE("equal_in_M: commutation and elementary kernels") {
  RingDescriptor z5 = RingDescriptor::modular(5);
  std::mt19937_64 rng(97);
  for (int iter = 0; iter < 30; ++iter) {
    InvertibleMatrix X = sample(z5, 3, rng());
    InvertibleMatrix Y = sample(z5, 3, rng());
    CHECK(equal_in_M(alpha(X) * alpha(Y), alpha(Y) * alpha(X)));
  }

  ColimitWord empty(z5);
  for (int r = 1; r < 5; ++r)
    CHECK(equal_in_M(alpha(ElementaryMatrix(z5, 3, 1, 3, r).to_invertible()), empty));

  SquareMatrix d(z5, 3);
  d.set(0, 0, 2);
  d.set(1, 1, 1);
  d.set(2, 2, 1);
  CHECK(!equal_in_M(alpha(*try_invert(d)), empty));
}

TEST_CASE("chain_discrepancy_witness: telescoping certificate") {
  RingDescriptor z2 = RingDescriptor::modular(2);
  Witness trivial = chain_discrepancy_witness(InvertibleMatrix::identity(z2, 3));
  CHECK(trivial.target.matrix().is_identity());
  CHECK(trivial.terms.size() == 3);
  CHECK(verify_witness(trivial));

  std::mt19937_64 rng(101);
  for (const RingDescriptor& ring :
       {RingDescriptor::modular(2), RingDescriptor::modular(6)}) {
    for (int iter = 0; iter < 20; ++iter) {
      InvertibleMatrix Y = sample(ring, 3, rng());
      Witness w = chain_discrepancy_witness(Y);
      CHECK(w.terms.size() == 3);
      CHECK(w.target.matrix() ==
            (stabilize_first(Y, 6) * stabilize_last(Y, 6).inverted()).matrix());
      for (const WitnessTerm& t : w.terms)
        CHECK(t.conjugator.matrix().is_identity());
      CHECK(verify_witness(w));
    }
  }
}

TEST_CASE("commutation_witness: certificate for [L(X), L(Y)]") {
  RingDescriptor z2 = RingDescriptor::modular(2);
  Witness trivial = commutation_witness(InvertibleMatrix::identity(z2, 3),
                                        InvertibleMatrix::identity(z2, 3));
  CHECK(trivial.target.matrix().is_identity());
  CHECK(verify_witness(trivial));

  std::mt19937_64 rng(103);
  for (int iter = 0; iter < 20; ++iter) {
    InvertibleMatrix X = sample(z2, 3, rng());
    InvertibleMatrix Y = sample(z2, 3, rng());
    Witness w = commutation_witness(X, Y);
    CHECK(w.terms.size() == 6);
    InvertibleMatrix LX = stabilize_last(X, 6);
    InvertibleMatrix LY = stabilize_last(Y, 6);
    CHECK(w.target.matrix() ==
          (LX * LY * LX.inverted() * LY.inverted()).matrix());
    CHECK(verify_witness(w));
  }

  RingDescriptor z3 = RingDescriptor::modular(3);
  for (int iter = 0; iter < 5; ++iter) {
    Witness w = commutation_witness(sample(z3, 4, rng()), sample(z3, 4, rng()));
    CHECK(w.terms.size() == 8);
    CHECK(w.target.n() == 8);
    CHECK(verify_witness(w));
  }
}

TEST_CASE("elementary_witness: kernel certificates for elementary matrices") {
  RingDescriptor z2 = RingDescriptor::modular(2);
  Witness w = elementary_witness(ElementaryMatrix(z2, 3, 1, 2, 1));
  CHECK(w.terms.size() == 6);
  CHECK(w.target.n() == 6);
  CHECK(verify_witness(w));

  RingDescriptor z5 = RingDescriptor::modular(5);
  Witness wz = elementary_witness(ElementaryMatrix(z5, 3, 2, 3, 0));
  CHECK(wz.target.matrix().is_identity());
  CHECK(verify_witness(wz));

  // Exhaustive over the nontrivial elementary matrices of GL(3, Z/m), m <= 3.
  for (unsigned long m = 2; m <= 3; ++m) {
    RingDescriptor ring = RingDescriptor::modular(m);
    for (int p = 1; p <= 3; ++p)
      for (int q = 1; q <= 3; ++q) {
        if (p == q) continue;
        for (unsigned long r = 1; r < m; ++r)
          CHECK(verify_witness(elementary_witness(ElementaryMatrix(ring, 3, p, q, r))));
      }
  }
}

TEST_CASE("general_embedding_witness: middle embeddings join the colimit") {
  RingDescriptor z5 = RingDescriptor::modular(5);
  InvertibleMatrix X = sample(z5, 3, 7);

  Witness last = general_embedding_witness(X, 4);
  CHECK(last.target.matrix().is_identity());
  CHECK(last.terms.empty());
  CHECK(verify_witness(last));

  Witness w1 = general_embedding_witness(X, 1);
  CHECK(w1.target.n() == 8);
  CHECK(w1.target.matrix() ==
        (stabilize_last(embed_at(X, 1), 8) * stabilize_last(embed_at(X, 4), 8).inverted())
            .matrix());
  CHECK(verify_witness(w1));

  RingDescriptor z4 = RingDescriptor::modular(4);
  Witness w2 = general_embedding_witness(sample(z4, 3, 8), 2);
  CHECK(verify_witness(w2));

  CHECK_THROWS_AS(general_embedding_witness(X, 0), std::invalid_argument);
  CHECK_THROWS_AS(general_embedding_witness(X, 5), std::invalid_argument);
}

TEST_CASE("verify_witness: tamper detection and malformed structure") {
  RingDescriptor z3 = RingDescriptor::modular(3);
  std::mt19937_64 rng(107);
  Witness w = commutation_witness(sample(z3, 3, rng()), sample(z3, 3, rng()));
  REQUIRE(verify_witness(w));

  Witness empty{InvertibleMatrix::identity(z3, 6), {}};
  CHECK(verify_witness(empty));

  for (std::size_t i : {std::size_t(0), w.terms.size() - 1}) {
    Witness tampered = w;
    tampered.terms[i].exponent = -tampered.terms[i].exponent;
    CHECK(!verify_witness(tampered));
    WitnessDiagnosis d = diagnose_witness(tampered);
    CHECK(!d.ok);
    REQUIRE(d.suspect_term);
    CHECK(*d.suspect_term == i);
  }

  Witness wrong_lift = w;
  wrong_lift.terms[0].lift_to = 7;
  CHECK_THROWS_AS(verify_witness(wrong_lift), malformed_error);

  Witness wrong_conj = w;
  wrong_conj.terms[1].conjugator = InvertibleMatrix::identity(z3, 4);
  CHECK_THROWS_AS(verify_witness(wrong_conj), malformed_error);
}

TEST_CASE("witness JSON round trip preserves verification") {
  RingDescriptor z6 = RingDescriptor::modular(6);
  Witness w = commutation_witness(sample(z6, 3, 1), sample(z6, 3, 2));
  nlohmann::ordered_json j = witness_to_json(w);
  Witness back = witness_from_json(nlohmann::json::parse(j.dump()));
  CHECK(back.target.matrix() == w.target.matrix());
  CHECK(back.terms.size() == w.terms.size());
  CHECK(verify_witness(back));
  CHECK(witness_to_json(back) == j);

  nlohmann::json broken = nlohmann::json::parse(j.dump());
  broken["terms"][0]["relator"]["level"] = 5;
  CHECK_THROWS_AS(witness_from_json(broken), malformed_error);
}

TEST_CASE("witness targets always have determinant one") {
  for (const RingDescriptor& ring : standard_rings()) {
    std::mt19937_64 rng(109);
    Witness a = commutation_witness(sample(ring, 3, rng()), sample(ring, 3, rng()));
    CHECK(a.target.det().is_one());
    Witness b = chain_discrepancy_witness(sample(ring, 3, rng()));
    CHECK(b.target.det().is_one());
  }
}
