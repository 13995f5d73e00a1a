#include "k1colim/matrix.hpp"

#include <cassert>
#include <numeric>
#include <random>

namespace k1colim {

SquareMatrix::SquareMatrix(RingDescriptor ring, int n)
    : ring_(std::move(ring)), n_(n), a_(static_cast<std::size_t>(n) * n) {
  if (n < 1) throw std::invalid_argument("matrix dimension must be >= 1");
}

SquareMatrix SquareMatrix::identity(RingDescriptor ring, int n) {
  SquareMatrix m(std::move(ring), n);
  for (int i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

void SquareMatrix::set(int i, int j, mpz_class v) {
  ring_.reduce_inplace(v);
  ref(i, j) = std::move(v);
}

bool SquareMatrix::is_identity() const {
  mpz_class one = ring_.reduce(1);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      if (i == j ? at(i, j) != one : at(i, j) != 0) return false;
    }
  return true;
}

SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
  require_same_ring(a.ring(), b.ring());
  if (a.n() != b.n()) throw std::invalid_argument("dimension mismatch in matrix product");
  const int n = a.n();
  SquareMatrix c(a.ring(), n);
  mpz_class acc;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      acc = 0;
      for (int l = 0; l < n; ++l)
        mpz_addmul(acc.get_mpz_t(), a.at(i, l).get_mpz_t(), b.at(l, j).get_mpz_t());
      a.ring().reduce_inplace(acc);
      c.ref(i, j) = acc;
    }
  return c;
}

void SquareMatrix::add_row_multiple(int dst, int src, const mpz_class& r) {
  for (int j = 0; j < n_; ++j) {
    mpz_addmul(ref(dst, j).get_mpz_t(), r.get_mpz_t(), at(src, j).get_mpz_t());
    ring_.reduce_inplace(ref(dst, j));
  }
}

void SquareMatrix::add_col_multiple(int dst, int src, const mpz_class& r) {
  for (int i = 0; i < n_; ++i) {
    mpz_addmul(ref(i, dst).get_mpz_t(), r.get_mpz_t(), at(i, src).get_mpz_t());
    ring_.reduce_inplace(ref(i, dst));
  }
}

void SquareMatrix::scale_row(int i, const mpz_class& u) {
  for (int j = 0; j < n_; ++j) {
    ref(i, j) *= u;
    ring_.reduce_inplace(ref(i, j));
  }
}

void SquareMatrix::scale_col(int j, const mpz_class& u) {
  for (int i = 0; i < n_; ++i) {
    ref(i, j) *= u;
    ring_.reduce_inplace(ref(i, j));
  }
}

SquareMatrix SquareMatrix::transpose() const {
  SquareMatrix t(ring_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) t.ref(j, i) = at(i, j);
  return t;
}

// Berkowitz recursion on trailing principal submatrices. At block size k
// the (k+1) x k Toeplitz column is (1, -a, -R*C, -R*M*C, ..., -R*M^{k-2}*C)
// for the split (a R; C M) of the current block.
std::vector<RingElement> char_poly(const SquareMatrix& A) {
  const int n = A.n();
  const RingDescriptor& ring = A.ring();

  std::vector<mpz_class> p{1};
  std::vector<mpz_class> t, v, w, q;
  for (int i = n - 1; i >= 0; --i) {
    const int k = n - i;     // size of the block starting at (i, i)
    const int s = k - 1;     // size of its trailing block M
    t.assign(k + 1, 0);
    t[0] = 1;
    t[1] = ring.reduce(-A.at(i, i));
    v.resize(s);
    for (int r = 0; r < s; ++r) v[r] = A.at(i + 1 + r, i);
    for (int j = 2; j <= k; ++j) {
      mpz_class acc;
      for (int c = 0; c < s; ++c)
        mpz_addmul(acc.get_mpz_t(), A.at(i, i + 1 + c).get_mpz_t(), v[c].get_mpz_t());
      t[j] = ring.reduce(-acc);
      if (j < k) {
        w.assign(s, 0);
        for (int r = 0; r < s; ++r) {
          for (int c = 0; c < s; ++c)
            mpz_addmul(w[r].get_mpz_t(), A.at(i + 1 + r, i + 1 + c).get_mpz_t(),
                       v[c].get_mpz_t());
          ring.reduce_inplace(w[r]);
        }
        v.swap(w);
      }
    }
    q.assign(k + 1, 0);
    const int pdeg = static_cast<int>(p.size()) - 1;
    for (int d = 0; d <= k; ++d) {
      mpz_class acc;
      for (int j = std::max(0, d - pdeg); j <= std::min(d, k); ++j)
        mpz_addmul(acc.get_mpz_t(), t[j].get_mpz_t(), p[d - j].get_mpz_t());
      ring.reduce_inplace(acc);
      q[d] = acc;
    }
    p.swap(q);
  }

  std::vector<RingElement> out;
  out.reserve(p.size());
  for (auto& c : p) out.emplace_back(ring, std::move(c));
  return out;
}

RingElement determinant(const SquareMatrix& A) {
  std::vector<RingElement> p = char_poly(A);
  RingElement cn = p.back();
  return (A.n() % 2 == 0) ? cn : -cn;
}

InvertibleMatrix InvertibleMatrix::inverted() const {
  auto dinv = unit_inverse(det_);
  if (!dinv) throw std::logic_error("cached determinant is not a unit");
  return InvertibleMatrix(inv_, mat_, *dinv);
}

InvertibleMatrix operator*(const InvertibleMatrix& a, const InvertibleMatrix& b) {
  return InvertibleMatrix(a.mat_ * b.mat_, b.inv_ * a.inv_, a.det_ * b.det_);
}

InvertibleMatrix InvertibleMatrix::identity(const RingDescriptor& ring, int n) {
  return InvertibleMatrix(SquareMatrix::identity(ring, n),
                          SquareMatrix::identity(ring, n), ring_one(ring));
}

InvertibleMatrix InvertibleMatrix::from_parts(SquareMatrix mat, SquareMatrix inv,
                                              RingElement det) {
  InvertibleMatrix m(std::move(mat), std::move(inv), std::move(det));
  assert(m.check_consistency());
  return m;
}

bool InvertibleMatrix::check_consistency() const {
  if (mat_.n() != inv_.n() || mat_.ring() != inv_.ring()) return false;
  if ((mat_ * inv_).is_identity() == false) return false;
  if ((inv_ * mat_).is_identity() == false) return false;
  return det_ == determinant(mat_) && is_unit(det_);
}

std::optional<InvertibleMatrix> try_invert(const SquareMatrix& A) {
  const int n = A.n();
  const RingDescriptor& ring = A.ring();
  std::vector<RingElement> p = char_poly(A);

  RingElement cn = p.back();
  RingElement det = (n % 2 == 0) ? cn : -cn;
  auto dinv = unit_inverse(det);
  if (!dinv) return std::nullopt;

  // Cayley-Hamilton: adj(A) = (-1)^{n+1} (A^{n-1} + c1 A^{n-2} + ... + c_{n-1} I),
  // evaluated by Horner's scheme on matrices.
  SquareMatrix B = SquareMatrix::identity(ring, n);
  for (int i = 1; i < n; ++i) {
    B = A * B;
    for (int d = 0; d < n; ++d)
      B.set(d, d, B.at(d, d) + p[i].value());
  }
  const bool flip = (n % 2 == 0);  // (-1)^{n+1}
  SquareMatrix inv(ring, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      mpz_class v = B.at(i, j) * dinv->value();
      if (flip) v = -v;
      inv.set(i, j, std::move(v));
    }

  if (!(A * inv).is_identity() || !(inv * A).is_identity())
    throw std::logic_error("adjugate inversion check failed");
  return InvertibleMatrix::from_parts(A, std::move(inv), std::move(det));
}

InvertibleMatrix random_invertible(const RingDescriptor& ring, int n,
                                   std::uint64_t seed, int length) {
  if (n < 1) throw std::invalid_argument("dimension must be >= 1");
  if (length < 0) throw std::invalid_argument("length must be >= 0");
  std::mt19937_64 rng(seed);

  unsigned long m = 0;
  if (ring.is_modular()) {
    if (!ring.modulus().fits_ulong_p())
      throw unsupported_error("random_invertible: modulus too large");
    m = ring.modulus().get_ui();
  }
  auto random_value = [&]() -> mpz_class {
    if (ring.is_modular()) return mpz_class(rng() % m);
    return mpz_class(static_cast<long>(rng() % 7) - 3);  // small, signed
  };
  auto random_unit = [&]() -> mpz_class {
    if (!ring.is_modular()) return (rng() % 2 == 0) ? mpz_class(1) : mpz_class(-1);
    for (;;) {
      unsigned long u = rng() % m;
      if (std::gcd(u, m) == 1) return mpz_class(u);
    }
  };

  SquareMatrix mat = SquareMatrix::identity(ring, n);
  SquareMatrix inv = SquareMatrix::identity(ring, n);
  for (int step = 0; step < length; ++step) {
    if (n == 1) break;  // no off-diagonal positions
    int p = static_cast<int>(rng() % n);
    int q = static_cast<int>(rng() % (n - 1));
    if (q >= p) ++q;
    mpz_class r = random_value();
    // mat <- mat * e_{pq}(r); inv <- e_{pq}(-r) * inv
    mat.add_col_multiple(q, p, r);
    inv.add_row_multiple(p, q, ring.reduce(-r));
  }
  RingElement det = ring_one(ring);
  for (int i = 0; i < n; ++i) {
    RingElement u(ring, random_unit());
    mat.scale_col(i, u.value());
    inv.scale_row(i, unit_inverse(u)->value());
    det = det * u;
  }
  return InvertibleMatrix::from_parts(std::move(mat), std::move(inv), std::move(det));
}

}  // namespace k1colim
