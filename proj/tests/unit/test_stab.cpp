#include <doctest.h>

#include <random>

#include "k1colim/stab.hpp"
#include "support/oracles.hpp"

using namespace k1colim;
using k1colim::testing::standard_rings;

namespace {

InvertibleMatrix sample(const RingDescriptor& ring, int n, std::uint64_t seed) {
  return random_invertible(ring, n, seed, 12);
}

}  // namespace

TEST_CASE("embed_at inserts a unit row/column at the requested position") {
  RingDescriptor z = RingDescriptor::integers();
  SquareMatrix X(z, 2);
  X.set(0, 0, 1); X.set(0, 1, 2); X.set(1, 0, 3); X.set(1, 1, 4);  // (a b; c d)

  SquareMatrix j3 = embed_at(X, 3);
  SquareMatrix e3(z, 3);
  e3.set(0, 0, 1); e3.set(0, 1, 2); e3.set(1, 0, 3); e3.set(1, 1, 4); e3.set(2, 2, 1);
  CHECK(j3 == e3);

  SquareMatrix j1 = embed_at(X, 1);
  SquareMatrix e1(z, 3);
  e1.set(0, 0, 1); e1.set(1, 1, 1); e1.set(1, 2, 2); e1.set(2, 1, 3); e1.set(2, 2, 4);
  CHECK(j1 == e1);

  SquareMatrix j2 = embed_at(X, 2);
  SquareMatrix e2(z, 3);
  e2.set(0, 0, 1); e2.set(0, 2, 2); e2.set(1, 1, 1); e2.set(2, 0, 3); e2.set(2, 2, 4);
  CHECK(j2 == e2);

  CHECK_THROWS_AS(embed_at(X, 0), std::invalid_argument);
  CHECK_THROWS_AS(embed_at(X, 4), std::invalid_argument);
}

TEST_CASE("embed_at is a determinant-preserving homomorphism") {
  for (const RingDescriptor& ring : standard_rings()) {
    std::mt19937_64 rng(5);
    for (int iter = 0; iter < 50; ++iter) {
      int n = 2 + static_cast<int>(rng() % 3);
      InvertibleMatrix X = sample(ring, n, rng());
      InvertibleMatrix Y = sample(ring, n, rng());
      for (int j = 1; j <= n + 1; ++j) {
        CHECK(embed_at(X * Y, j) == embed_at(X, j) * embed_at(Y, j));
        CHECK(embed_at(X, j).det() == X.det());
        CHECK(embed_at(InvertibleMatrix::identity(ring, n), j).matrix().is_identity());
      }
    }
  }
}

TEST_CASE("chain_apply: all-Last and all-First give the block forms") {
  RingDescriptor z5 = RingDescriptor::modular(5);
  InvertibleMatrix X = sample(z5, 3, 11);

  InvertibleMatrix L = chain_apply(X, EmbeddingChain::all_last(3, 6));
  SquareMatrix expect_l(z5, 6);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) expect_l.set(i, j, X.matrix().at(i, j));
  for (int i = 3; i < 6; ++i) expect_l.set(i, i, 1);
  CHECK(L.matrix() == expect_l);
  CHECK(L == stabilize_last(X, 6));

  InvertibleMatrix F = chain_apply(X, EmbeddingChain::all_first(3, 6));
  SquareMatrix expect_f(z5, 6);
  for (int i = 0; i < 3; ++i) expect_f.set(i, i, 1);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) expect_f.set(3 + i, 3 + j, X.matrix().at(i, j));
  CHECK(F.matrix() == expect_f);
  CHECK(F == stabilize_first(X, 6));

  CHECK(chain_apply(X, EmbeddingChain{3, {}}) == X);
  CHECK_THROWS_AS(chain_apply(X, EmbeddingChain::all_last(4, 6)), std::invalid_argument);
}

TEST_CASE("chains compose: splitting a chain changes nothing") {
  RingDescriptor z6 = RingDescriptor::modular(6);
  std::mt19937_64 rng(17);
  for (int iter = 0; iter < 40; ++iter) {
    int n = 2 + static_cast<int>(rng() % 2);
    InvertibleMatrix X = sample(z6, n, rng());
    EmbeddingChain chain{n, {}};
    int level = n;
    for (int s = 0; s < 4; ++s) {
      int pick = static_cast<int>(rng() % 3);
      if (pick == 0)
        chain.steps.push_back({StepKind::First, 0});
      else if (pick == 1)
        chain.steps.push_back({StepKind::Last, 0});
      else
        chain.steps.push_back({StepKind::At, 1 + static_cast<int>(rng() % (level + 1))});
      ++level;
    }
    InvertibleMatrix whole = chain_apply(X, chain);
    std::size_t cut = rng() % (chain.steps.size() + 1);
    EmbeddingChain head{n, {chain.steps.begin(), chain.steps.begin() + cut}};
    EmbeddingChain tail{head.end(), {chain.steps.begin() + cut, chain.steps.end()}};
    CHECK(chain_apply(chain_apply(X, head), tail) == whole);
  }
}

TEST_CASE("block commutation: last and first stabilizations commute") {
  for (const RingDescriptor& ring : standard_rings()) {
    std::mt19937_64 rng(23);
    for (int iter = 0; iter < 100; ++iter) {
      int n = 3 + static_cast<int>(rng() % 2);
      InvertibleMatrix X = sample(ring, n, rng());
      InvertibleMatrix Y = sample(ring, n, rng());
      InvertibleMatrix L = stabilize_last(X, 2 * n);
      InvertibleMatrix F = stabilize_first(Y, 2 * n);
      CHECK((L * F).matrix() == (F * L).matrix());
    }
  }
}

TEST_CASE("conjugating_permutation realizes every middle embedding") {
  RingDescriptor z5 = RingDescriptor::modular(5);

  for (int n = 1; n <= 4; ++n) {
    InvertibleMatrix P = conjugating_permutation(z5, n, n + 1);
    CHECK(P.matrix().is_identity());
  }

  std::mt19937_64 rng(29);
  for (const RingDescriptor& ring : standard_rings()) {
    for (int n = 1; n <= 4; ++n) {
      for (int j = 1; j <= n + 1; ++j) {
        InvertibleMatrix P = conjugating_permutation(ring, n, j);
        CHECK(P.check_consistency());
        for (int iter = 0; iter < 10; ++iter) {
          InvertibleMatrix X = sample(ring, n, rng());
          CHECK((P.inverted() * embed_at(X, n + 1) * P).matrix() ==
                embed_at(X, j).matrix());
        }
      }
    }
  }

  // The n = 3, j = 1 instance from the construction's contract: 100 draws.
  for (int iter = 0; iter < 100; ++iter) {
    InvertibleMatrix X = sample(z5, 3, 1000 + iter);
    InvertibleMatrix P = conjugating_permutation(z5, 3, 1);
    CHECK((P.inverted() * embed_at(X, 4) * P).matrix() == embed_at(X, 1).matrix());
    InvertibleMatrix P2 = conjugating_permutation(z5, 3, 2);
    CHECK((P2.inverted() * embed_at(X, 4) * P2).matrix() == embed_at(X, 2).matrix());
  }
}

TEST_CASE("destabilize inverts embed_at exactly on its image") {
  RingDescriptor z6 = RingDescriptor::modular(6);
  std::mt19937_64 rng(37);
  for (int iter = 0; iter < 50; ++iter) {
    int n = 2 + static_cast<int>(rng() % 3);
    InvertibleMatrix X = sample(z6, n, rng());
    for (int j = 1; j <= n + 1; ++j) {
      auto back = destabilize(embed_at(X, j), j);
      REQUIRE(back);
      CHECK(*back == X);
    }
  }

  auto id = destabilize(InvertibleMatrix::identity(z6, 4), 2);
  REQUIRE(id);
  CHECK(id->matrix() == SquareMatrix::identity(z6, 3));

  // Row 2 of the swap matrix is not a unit vector, so j = 2 has no preimage.
  SquareMatrix swap(z6, 3);
  swap.set(0, 1, 1);
  swap.set(1, 0, 1);
  swap.set(2, 2, 1);
  CHECK(!destabilize(*try_invert(swap), 2));
}
