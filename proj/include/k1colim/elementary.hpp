#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "k1colim/matrix.hpp"

namespace k1colim {

// e_{pq}(r): identity plus r at row p, column q (1-based, p != q).
// Determinant 1; inverse is e_{pq}(-r).
class ElementaryMatrix {
 public:
  ElementaryMatrix(RingDescriptor ring, int n, int p, int q, mpz_class r);

  const RingDescriptor& ring() const { return ring_; }
  int n() const { return n_; }
  int p() const { return p_; }
  int q() const { return q_; }
  const RingElement& value() const { return r_; }

  ElementaryMatrix inverse() const;
  SquareMatrix to_square() const;
  InvertibleMatrix to_invertible() const;

  bool operator==(const ElementaryMatrix& o) const {
    return ring_ == o.ring_ && n_ == o.n_ && p_ == o.p_ && q_ == o.q_ && r_ == o.r_;
  }

 private:
  RingDescriptor ring_;
  int n_, p_, q_;
  RingElement r_;
};

// Ordered list of elementary factors whose product equals a fixed target.
// The product is recomputed and checked exactly on construction, so holding
// an ElementaryFactorization is holding a verified certificate.
class ElementaryFactorization {
 public:
  ElementaryFactorization(InvertibleMatrix target, std::vector<ElementaryMatrix> factors);

  const InvertibleMatrix& target() const { return target_; }
  const std::vector<ElementaryMatrix>& factors() const { return factors_; }

  // Left-to-right product, usable as an independent re-check.
  static SquareMatrix product_of(const RingDescriptor& ring, int n,
                                 const std::vector<ElementaryMatrix>& factors);

 private:
  InvertibleMatrix target_;
  std::vector<ElementaryMatrix> factors_;
};

// The pair (a, b) with e = a b a^{-1} b^{-1}: a = e_{ps}(r), b = e_{sq}(1)
// for s the smallest index outside {p, q}. Requires level n >= 3.
std::pair<ElementaryMatrix, ElementaryMatrix> commutator_decomposition(
    const ElementaryMatrix& e);

// Factorization of diag(A, A^{-1}) at level 2n into elementary matrices,
// via (I A; 0 I)(I 0; -A^{-1} I)(I A; 0 I) and the antidiagonal correction
// (0 -I; I 0), each block expanded entrywise. Zero entries are elided.
ElementaryFactorization whitehead_factor(const InvertibleMatrix& A);

// Factorization of a determinant-1 matrix into elementary matrices:
// unit-pivot elimination over Z/p^k, Euclidean row reduction over Z, and
// CRT lifting over composite Z/m. nullopt when det(A) != 1.
std::optional<ElementaryFactorization> sl_factor(const InvertibleMatrix& A);

// Levelwise membership certificate for E(n, R), n >= 3: for the supported
// rings this is exactly the determinant-1 test, always returned with a
// constructive factorization, never as a bare yes.
std::optional<ElementaryFactorization> is_in_E(const InvertibleMatrix& A);

}  // namespace k1colim
