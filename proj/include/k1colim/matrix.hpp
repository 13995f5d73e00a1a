#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "k1colim/ring.hpp"

namespace k1colim {

// Dense exact n x n matrix over a supported ring. Entries are stored
// row-major and kept canonically reduced. Entry access is 0-based; the
// 1-based row/column indices of the domain operations (embeddings,
// elementary positions) are converted at those call sites.
class SquareMatrix {
 public:
  SquareMatrix(RingDescriptor ring, int n);  // zero matrix
  static SquareMatrix identity(RingDescriptor ring, int n);

  const RingDescriptor& ring() const { return ring_; }
  int n() const { return n_; }

  const mpz_class& at(int i, int j) const { return a_[i * n_ + j]; }
  void set(int i, int j, mpz_class v);
  RingElement entry(int i, int j) const { return RingElement(ring_, at(i, j)); }

  bool is_identity() const;
  bool operator==(const SquareMatrix& o) const {
    return ring_ == o.ring_ && n_ == o.n_ && a_ == o.a_;
  }
  bool operator!=(const SquareMatrix& o) const { return !(*this == o); }

  friend SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b);

  // In-place row/column operations (0-based), used by factorization code.
  void add_row_multiple(int dst, int src, const mpz_class& r);  // row_dst += r*row_src
  void add_col_multiple(int dst, int src, const mpz_class& r);  // col_dst += r*col_src
  void scale_row(int i, const mpz_class& u);
  void scale_col(int j, const mpz_class& u);

  SquareMatrix transpose() const;

 private:
  mpz_class& ref(int i, int j) { return a_[i * n_ + j]; }

  RingDescriptor ring_;
  int n_;
  std::vector<mpz_class> a_;
};

// Coefficients [1, c1, ..., cn] of det(lambda*I - A), computed by the
// division-free Samuelson-Berkowitz recursion (valid over any commutative
// ring, zero divisors included).
std::vector<RingElement> char_poly(const SquareMatrix& A);

// det(A) = (-1)^n * cn from the characteristic polynomial above.
RingElement determinant(const SquareMatrix& A);

// A matrix of GL(n,R): the matrix together with its exact inverse and unit
// determinant. The constructor-side check mat*inv == inv*mat == I makes the
// cached data trustworthy everywhere else.
class InvertibleMatrix {
 public:
  const SquareMatrix& matrix() const { return mat_; }
  const SquareMatrix& inverse() const { return inv_; }
  const RingElement& det() const { return det_; }
  int n() const { return mat_.n(); }
  const RingDescriptor& ring() const { return mat_.ring(); }

  InvertibleMatrix inverted() const;

  // Product with composed inverse, avoiding re-inversion.
  friend InvertibleMatrix operator*(const InvertibleMatrix& a,
                                    const InvertibleMatrix& b);

  bool operator==(const InvertibleMatrix& o) const { return mat_ == o.mat_; }
  bool operator!=(const InvertibleMatrix& o) const { return !(*this == o); }

  static InvertibleMatrix identity(const RingDescriptor& ring, int n);

  // Trusted assembly for callers that hold the inverse by construction
  // (embeddings, permutations, elementary products). Verifies in debug
  // builds only; use try_invert when the inverse is not already known.
  static InvertibleMatrix from_parts(SquareMatrix mat, SquareMatrix inv,
                                     RingElement det);

  bool check_consistency() const;  // mat*inv == inv*mat == I and det matches

 private:
  InvertibleMatrix(SquareMatrix mat, SquareMatrix inv, RingElement det)
      : mat_(std::move(mat)), inv_(std::move(inv)), det_(std::move(det)) {}

  SquareMatrix mat_;
  SquareMatrix inv_;
  RingElement det_;
};

// Adjugate inversion: succeeds iff det(A) is a unit (equivalent to
// invertibility over the supported commutative rings). The adjugate is
// evaluated from the characteristic polynomial, division-free.
std::optional<InvertibleMatrix> try_invert(const SquareMatrix& A);

// Deterministic in seed: the product of `length` random elementary matrices
// and one diagonal matrix of random units. Invertible by construction.
InvertibleMatrix random_invertible(const RingDescriptor& ring, int n,
                                   std::uint64_t seed, int length);

}  // namespace k1colim
