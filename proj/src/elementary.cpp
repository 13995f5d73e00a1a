#include "k1colim/elementary.hpp"

namespace k1colim {
namespace {

void require_level(const ElementaryMatrix& e, int min) {
  if (e.n() < min)
    throw std::invalid_argument("operation requires level >= " + std::to_string(min));
}

}  // namespace

ElementaryMatrix::ElementaryMatrix(RingDescriptor ring, int n, int p, int q, mpz_class r)
    : ring_(std::move(ring)), n_(n), p_(p), q_(q), r_(ring_, std::move(r)) {
  if (n < 2) throw std::invalid_argument("elementary matrices need level >= 2");
  if (p < 1 || p > n || q < 1 || q > n)
    throw std::invalid_argument("elementary position out of range");
  if (p == q) throw std::invalid_argument("elementary position must be off-diagonal");
}

ElementaryMatrix ElementaryMatrix::inverse() const {
  return ElementaryMatrix(ring_, n_, p_, q_, (-r_).value());
}

SquareMatrix ElementaryMatrix::to_square() const {
  SquareMatrix m = SquareMatrix::identity(ring_, n_);
  m.set(p_ - 1, q_ - 1, r_.value());
  return m;
}

InvertibleMatrix ElementaryMatrix::to_invertible() const {
  return InvertibleMatrix::from_parts(to_square(), inverse().to_square(),
                                      ring_one(ring_));
}

ElementaryFactorization::ElementaryFactorization(InvertibleMatrix target,
                                                 std::vector<ElementaryMatrix> factors)
    : target_(std::move(target)), factors_(std::move(factors)) {
  for (const ElementaryMatrix& f : factors_) {
    if (f.ring() != target_.ring() || f.n() != target_.n())
      throw std::invalid_argument("factor ring/level differs from target");
  }
  if (product_of(target_.ring(), target_.n(), factors_) != target_.matrix())
    throw std::invalid_argument("factor product does not equal target");
}

SquareMatrix ElementaryFactorization::product_of(
    const RingDescriptor& ring, int n, const std::vector<ElementaryMatrix>& factors) {
  // M * e_{pq}(r) only touches column q, so the product runs in O(n) per factor.
  SquareMatrix m = SquareMatrix::identity(ring, n);
  for (const ElementaryMatrix& f : factors)
    m.add_col_multiple(f.q() - 1, f.p() - 1, f.value().value());
  return m;
}

std::pair<ElementaryMatrix, ElementaryMatrix> commutator_decomposition(
    const ElementaryMatrix& e) {
  require_level(e, 3);
  int s = 1;
  while (s == e.p() || s == e.q()) ++s;
  return {ElementaryMatrix(e.ring(), e.n(), e.p(), s, e.value().value()),
          ElementaryMatrix(e.ring(), e.n(), s, e.q(), 1)};
}

namespace {

// Append the entrywise expansion of a block-unitriangular matrix whose
// off-diagonal block B sits at rows `row0+1..row0+k`, columns `col0+1..col0+k`
// (these single-entry factors commute, so row-major order is fine).
void append_block(std::vector<ElementaryMatrix>& out, const SquareMatrix& B,
                  const RingDescriptor& ring, int level, int row0, int col0,
                  bool negate = false) {
  for (int i = 0; i < B.n(); ++i)
    for (int j = 0; j < B.n(); ++j) {
      mpz_class r = negate ? mpz_class(-B.at(i, j)) : B.at(i, j);
      ring.reduce_inplace(r);
      if (r == 0) continue;
      out.emplace_back(ring, level, row0 + i + 1, col0 + j + 1, std::move(r));
    }
}

}  // namespace

ElementaryFactorization whitehead_factor(const InvertibleMatrix& A) {
  const int n = A.n();
  const int N = 2 * n;
  const RingDescriptor& ring = A.ring();

  std::vector<ElementaryMatrix> factors;
  // (I A; 0 I) (I 0; -A^{-1} I) (I A; 0 I)
  append_block(factors, A.matrix(), ring, N, 0, n);
  append_block(factors, A.inverse(), ring, N, n, 0, /*negate=*/true);
  append_block(factors, A.matrix(), ring, N, 0, n);
  // (0 -I; I 0) = (I -I; 0 I)(I 0; I I)(I -I; 0 I)
  mpz_class minus_one = ring.reduce(-1);
  for (int i = 0; i < n; ++i) factors.emplace_back(ring, N, i + 1, n + i + 1, minus_one);
  for (int i = 0; i < n; ++i) factors.emplace_back(ring, N, n + i + 1, i + 1, 1);
  for (int i = 0; i < n; ++i) factors.emplace_back(ring, N, i + 1, n + i + 1, minus_one);

  SquareMatrix tgt(ring, N);
  SquareMatrix tgt_inv(ring, N);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      tgt.set(i, j, A.matrix().at(i, j));
      tgt.set(n + i, n + j, A.inverse().at(i, j));
      tgt_inv.set(i, j, A.inverse().at(i, j));
      tgt_inv.set(n + i, n + j, A.matrix().at(i, j));
    }
  InvertibleMatrix target =
      InvertibleMatrix::from_parts(std::move(tgt), std::move(tgt_inv), ring_one(ring));
  return ElementaryFactorization(std::move(target), std::move(factors));
}

namespace {

// Shared tail of the elimination strategies: `ops` already satisfies
// ops_t ... ops_1 * A = work with work upper triangular and unit diagonal.
// Clears above the diagonal, then rewrites the remaining diagonal (whose
// entries multiply to 1) as 2x2 Whitehead blocks.
void finish_triangular(SquareMatrix& work, const RingDescriptor& ring,
                       std::vector<ElementaryMatrix>& ops,
                       std::vector<ElementaryMatrix>& diag_factors) {
  const int n = work.n();
  for (int c = n - 1; c >= 1; --c) {
    auto pivot_inv = unit_inverse(RingElement(ring, work.at(c, c)));
    if (!pivot_inv) throw std::logic_error("elimination left a non-unit pivot");
    for (int r = c - 1; r >= 0; --r) {
      if (work.at(r, c) == 0) continue;
      mpz_class t = ring.reduce(work.at(r, c) * pivot_inv->value());
      mpz_class neg = ring.reduce(-t);
      work.add_row_multiple(r, c, neg);
      ops.emplace_back(ring, n, r + 1, c + 1, neg);
    }
  }

  // work = diag(u_1..u_n), prod u_i = 1. Peel off diag(v, v^{-1}) blocks at
  // (i, i+1) with v the running product u_1...u_i; each block is
  // w(v) w(1)^{-1} with w(v) = e_{pq}(v) e_{qp}(-v^{-1}) e_{pq}(v).
  auto emit_w = [&](int p, int q, const RingElement& v) {
    RingElement vinv = *unit_inverse(v);
    diag_factors.emplace_back(ring, n, p, q, v.value());
    diag_factors.emplace_back(ring, n, q, p, (-vinv).value());
    diag_factors.emplace_back(ring, n, p, q, v.value());
  };
  RingElement running = ring_one(ring);
  for (int i = 0; i + 1 < n; ++i) {
    running = running * RingElement(ring, work.at(i, i));
    if (running.is_one()) continue;
    emit_w(i + 1, i + 2, running);
    RingElement one = ring_one(ring);
    // w(1)^{-1} = e_{pq}(-1) e_{qp}(1) e_{pq}(-1)
    diag_factors.emplace_back(ring, n, i + 1, i + 2, (-one).value());
    diag_factors.emplace_back(ring, n, i + 2, i + 1, one.value());
    diag_factors.emplace_back(ring, n, i + 1, i + 2, (-one).value());
  }
}

std::vector<ElementaryMatrix> assemble(const std::vector<ElementaryMatrix>& ops,
                                       const std::vector<ElementaryMatrix>& diag_factors) {
  // ops_t ... ops_1 A = D  =>  A = ops_1^{-1} ... ops_t^{-1} D.
  std::vector<ElementaryMatrix> factors;
  factors.reserve(ops.size() + diag_factors.size());
  for (const ElementaryMatrix& op : ops) factors.push_back(op.inverse());
  factors.insert(factors.end(), diag_factors.begin(), diag_factors.end());
  return factors;
}

// Unit-pivot elimination, valid over local rings (fields and Z/p^k): every
// column of an invertible matrix holds at least one unit entry.
std::vector<ElementaryMatrix> sl_factor_local(const SquareMatrix& A) {
  const RingDescriptor& ring = A.ring();
  const int n = A.n();
  SquareMatrix work = A;
  std::vector<ElementaryMatrix> ops, diag_factors;

  for (int c = 0; c < n; ++c) {
    if (!is_unit(RingElement(ring, work.at(c, c)))) {
      int r = c + 1;
      while (r < n && !is_unit(RingElement(ring, work.at(r, c)))) ++r;
      if (r == n) throw std::logic_error("no unit pivot in column of invertible matrix");
      work.add_row_multiple(c, r, 1);
      ops.emplace_back(ring, n, c + 1, r + 1, 1);
    }
    auto pivot_inv = unit_inverse(RingElement(ring, work.at(c, c)));
    for (int r = c + 1; r < n; ++r) {
      if (work.at(r, c) == 0) continue;
      mpz_class t = ring.reduce(work.at(r, c) * pivot_inv->value());
      mpz_class neg = ring.reduce(-t);
      work.add_row_multiple(r, c, neg);
      ops.emplace_back(ring, n, r + 1, c + 1, neg);
    }
  }
  finish_triangular(work, ring, ops, diag_factors);
  return assemble(ops, diag_factors);
}

// Euclidean row reduction over Z. Pivots end up +-1 because every trailing
// minor of a determinant-+-1 matrix has unit determinant.
std::vector<ElementaryMatrix> sl_factor_integers(const SquareMatrix& A) {
  const RingDescriptor& ring = A.ring();
  const int n = A.n();
  SquareMatrix work = A;
  std::vector<ElementaryMatrix> ops, diag_factors;

  auto row_op = [&](int dst, int src, const mpz_class& r) {
    work.add_row_multiple(dst, src, r);
    ops.emplace_back(ring, n, dst + 1, src + 1, r);
  };

  for (int c = 0; c < n; ++c) {
    for (int r = c + 1; r < n; ++r) {
      // gcd dance between rows c and r until column entry r vanishes; the
      // pivot ends as +-gcd, which is +-1 for every trailing minor of a
      // determinant-1 matrix.
      while (work.at(r, c) != 0) {
        if (work.at(c, c) == 0) {
          row_op(c, r, 1);
          continue;
        }
        mpz_class quot = work.at(r, c) / work.at(c, c);  // truncated
        if (quot != 0) row_op(r, c, mpz_class(-quot));
        if (work.at(r, c) == 0) break;
        mpz_class quot2 = work.at(c, c) / work.at(r, c);
        row_op(c, r, mpz_class(-quot2));
      }
    }
    if (work.at(c, c) == 0) throw std::logic_error("zero column in invertible matrix");
  }
  finish_triangular(work, ring, ops, diag_factors);
  return assemble(ops, diag_factors);
}

}  // namespace

std::optional<ElementaryFactorization> sl_factor(const InvertibleMatrix& A) {
  if (!A.det().is_one()) return std::nullopt;
  const RingDescriptor& ring = A.ring();
  const int n = A.n();

  if (n == 1)
    return ElementaryFactorization(A, {});  // det 1 forces A = (1)

  std::vector<ElementaryMatrix> factors;
  if (!ring.is_modular()) {
    factors = sl_factor_integers(A.matrix());
  } else {
    CrtDecomposition dec = crt_split(ring.modulus());
    if (dec.factors.size() == 1) {
      factors = sl_factor_local(A.matrix());
    } else {
      // Factor each local component, then transport each component factor
      // e_{pq}(r) to e_{pq}(e_i * lift(r)) via the idempotent e_i; the
      // concatenated blocks multiply to A by CRT.
      for (const CrtFactor& f : dec.factors) {
        RingDescriptor local = RingDescriptor::modular(f.prime_power);
        SquareMatrix comp(local, n);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) comp.set(i, j, A.matrix().at(i, j));
        for (const ElementaryMatrix& e : sl_factor_local(comp)) {
          mpz_class lifted = ring.reduce(f.idempotent.value() * e.value().value());
          if (lifted == 0) continue;
          factors.emplace_back(ring, n, e.p(), e.q(), std::move(lifted));
        }
      }
    }
  }
  return ElementaryFactorization(A, std::move(factors));
}

std::optional<ElementaryFactorization> is_in_E(const InvertibleMatrix& A) {
  if (A.n() < 3) throw std::invalid_argument("is_in_E requires level >= 3");
  return sl_factor(A);
}

}  // namespace k1colim
