#include "k1colim/colimit.hpp"

namespace k1colim {

ColimitWord::ColimitWord(RingDescriptor ring, std::vector<Letter> letters)
    : ring_(std::move(ring)) {
  for (Letter& l : letters) {
    require_same_ring(ring_, l.matrix.ring());
    if (l.level() < kDiagramBaseLevel)
      throw std::invalid_argument("letters live at level >= 3");
    if (l.exponent != 1 && l.exponent != -1)
      throw std::invalid_argument("letter exponent must be +-1");
    push_merged(std::move(l));
  }
}

void ColimitWord::push_merged(Letter letter) {
  if (letter.matrix.matrix().is_identity()) return;
  if (!letters_.empty() && letters_.back().level() == letter.level()) {
    const Letter& top = letters_.back();
    InvertibleMatrix lhs = top.exponent == 1 ? top.matrix : top.matrix.inverted();
    InvertibleMatrix rhs =
        letter.exponent == 1 ? letter.matrix : letter.matrix.inverted();
    InvertibleMatrix merged = lhs * rhs;
    letters_.pop_back();
    push_merged(Letter{std::move(merged), 1});
    return;
  }
  letters_.push_back(std::move(letter));
}

ColimitWord ColimitWord::inverse() const {
  ColimitWord w(ring_);
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
    w.letters_.push_back(Letter{it->matrix, -it->exponent});
  return w;
}

ColimitWord operator*(const ColimitWord& a, const ColimitWord& b) {
  require_same_ring(a.ring_, b.ring_);
  ColimitWord w(a.ring_);
  w.letters_ = a.letters_;
  for (const Letter& l : b.letters_) w.push_merged(l);
  return w;
}

ColimitWord alpha(const InvertibleMatrix& X) {
  if (X.n() < kDiagramBaseLevel)
    throw std::invalid_argument("alpha is defined from level 3 upwards");
  return ColimitWord(X.ring(), {Letter{X, 1}});
}

K1Class rho(const ColimitWord& w) {
  RingElement u = ring_one(w.ring());
  for (const Letter& l : w.letters()) {
    const RingElement& d = l.matrix.det();
    u = u * (l.exponent == 1 ? d : *unit_inverse(d));
  }
  return K1Class(w.ring(), std::move(u));
}

ColimitWord lambda_map(const K1Class& c) {
  const RingDescriptor& ring = c.ring();
  const int n = kDiagramBaseLevel;
  SquareMatrix m = SquareMatrix::identity(ring, n);
  SquareMatrix minv = SquareMatrix::identity(ring, n);
  m.set(0, 0, c.unit().value());
  minv.set(0, 0, unit_inverse(c.unit())->value());
  return alpha(InvertibleMatrix::from_parts(std::move(m), std::move(minv), c.unit()));
}

bool equal_in_M(const ColimitWord& w, const ColimitWord& v) {
  require_same_ring(w.ring(), v.ring());
  if (!w.ring().sk1_trivial())
    throw unsupported_error("no equality decision outside SK1-trivial rings");
  return rho(w) == rho(v);
}

Relator::Relator(InvertibleMatrix g) : g_(std::move(g)) {
  if (g_.n() < kDiagramBaseLevel)
    throw std::invalid_argument("relators are attached to levels >= 3");
}

Witness chain_discrepancy_witness(const InvertibleMatrix& Y) {
  const int n = Y.n();
  if (n < kDiagramBaseLevel)
    throw std::invalid_argument("witness construction requires level >= 3");
  const int N = 2 * n;
  InvertibleMatrix id = InvertibleMatrix::identity(Y.ring(), N);

  // Term k has generator diag(I_{k-1}, Y); its lifted sides are the mixed
  // chain values m_k = diag(I_k, Y, I_{n-k}) and m_{k-1}, so the product
  // over k = n..1 telescopes to m_n * m_0^{-1} = F(Y) * L(Y)^{-1}.
  Witness w{stabilize_first(Y, N) * stabilize_last(Y, N).inverted(), {}};
  w.terms.reserve(n);
  for (int k = n; k >= 1; --k) {
    Relator rel(stabilize_first(Y, n + k - 1));
    w.terms.push_back(WitnessTerm{id, std::move(rel), N, 1});
  }
  return w;
}

Witness commutation_witness(const InvertibleMatrix& X, const InvertibleMatrix& Y) {
  require_same_ring(X.ring(), Y.ring());
  if (X.n() != Y.n()) throw std::invalid_argument("commutation needs equal levels");
  const int n = X.n();
  if (n < kDiagramBaseLevel)
    throw std::invalid_argument("witness construction requires level >= 3");
  const int N = 2 * n;

  Witness disc = chain_discrepancy_witness(Y);
  InvertibleMatrix LX = stabilize_last(X, N);
  InvertibleMatrix LY = stabilize_last(Y, N);

  // [L(X), L(Y)] = L(X) T^{-1} L(X)^{-1} * T for T = F(Y) L(Y)^{-1},
  // because L(X) commutes with F(Y) blockwise.
  Witness w{LX * LY * LX.inverted() * LY.inverted(), {}};
  w.terms.reserve(2 * disc.terms.size());
  for (auto it = disc.terms.rbegin(); it != disc.terms.rend(); ++it)
    w.terms.push_back(WitnessTerm{LX, it->relator, N, -it->exponent});
  for (WitnessTerm& t : disc.terms) w.terms.push_back(std::move(t));
  return w;
}

Witness elementary_witness(const ElementaryMatrix& e) {
  auto [a, b] = commutator_decomposition(e);
  Witness w = commutation_witness(a.to_invertible(), b.to_invertible());
  InvertibleMatrix target = stabilize_last(e.to_invertible(), 2 * e.n());
  if (target.matrix() != w.target.matrix())
    throw std::logic_error("L(e) differs from [L(a), L(b)]");
  w.target = std::move(target);
  return w;
}

Witness general_embedding_witness(const InvertibleMatrix& X, int j) {
  const int n = X.n();
  if (n < kDiagramBaseLevel)
    throw std::invalid_argument("witness construction requires level >= 3");
  if (j < 1 || j > n + 1)
    throw std::invalid_argument("embedding position out of range");
  const int N = 2 * (n + 1);

  if (j == n + 1)
    return Witness{InvertibleMatrix::identity(X.ring(), N), {}};

  InvertibleMatrix P = conjugating_permutation(X.ring(), n, j);
  InvertibleMatrix V = embed_at(X, n + 1);
  Witness w = commutation_witness(P.inverted(), V);
  InvertibleMatrix target =
      stabilize_last(embed_at(X, j), N) * stabilize_last(V, N).inverted();
  if (target.matrix() != w.target.matrix())
    throw std::logic_error("embedding discrepancy differs from its commutator form");
  w.target = std::move(target);
  return w;
}

namespace {

// Recomputes the value of one term from its generator alone. `cache` keeps
// the most recent conjugator inversion; consecutive terms of the generated
// witnesses share conjugators.
struct ConjugatorCache {
  std::optional<std::pair<SquareMatrix, SquareMatrix>> last;  // (C, C^{-1})

  const SquareMatrix& inverse_of(const SquareMatrix& C) {
    if (!last || last->first != C) {
      auto inv = try_invert(C);
      if (!inv) throw malformed_error("witness conjugator is not invertible");
      last = std::make_pair(C, inv->inverse());
    }
    return last->second;
  }
};

SquareMatrix recompute_term(const WitnessTerm& t, const RingDescriptor& ring, int N,
                            ConjugatorCache& cache) {
  const SquareMatrix& g = t.relator.generator().matrix();
  if (g.ring() != ring) throw malformed_error("witness term ring mismatch");
  const int ng = g.n();
  if (ng < kDiagramBaseLevel) throw malformed_error("witness relator below level 3");
  if (t.lift_to != N) throw malformed_error("witness term lifts to the wrong level");
  if (ng + 1 > N) throw malformed_error("relator sides do not fit below the target level");
  if (t.exponent != 1 && t.exponent != -1)
    throw malformed_error("witness exponent must be +-1");
  if (t.conjugator.n() != N || t.conjugator.ring() != ring)
    throw malformed_error("witness conjugator has the wrong shape");

  SquareMatrix A = stabilize_last(embed_at(g, 1), N);
  SquareMatrix B = stabilize_last(embed_at(g, ng + 1), N);
  if (t.exponent == -1) std::swap(A, B);  // (A B^{-1})^{-1} = B A^{-1}
  auto Binv = try_invert(B);
  if (!Binv) throw malformed_error("witness relator side is not invertible");
  SquareMatrix value = A * Binv->inverse();

  const SquareMatrix& C = t.conjugator.matrix();
  if (C.is_identity()) return value;
  return C * value * cache.inverse_of(C);
}

}  // namespace

bool verify_witness(const Witness& w) {
  const RingDescriptor& ring = w.target.ring();
  const int N = w.target.n();
  ConjugatorCache cache;
  SquareMatrix prod = SquareMatrix::identity(ring, N);
  for (const WitnessTerm& t : w.terms) prod = prod * recompute_term(t, ring, N, cache);
  return prod == w.target.matrix();
}

WitnessDiagnosis diagnose_witness(const Witness& w) {
  const RingDescriptor& ring = w.target.ring();
  const int N = w.target.n();
  const std::size_t K = w.terms.size();
  ConjugatorCache cache;

  std::vector<SquareMatrix> values;
  values.reserve(K);
  for (const WitnessTerm& t : w.terms) values.push_back(recompute_term(t, ring, N, cache));

  std::vector<SquareMatrix> prefix, suffix;
  prefix.reserve(K + 1);
  suffix.assign(K + 1, SquareMatrix::identity(ring, N));
  prefix.push_back(SquareMatrix::identity(ring, N));
  for (std::size_t i = 0; i < K; ++i) prefix.push_back(prefix.back() * values[i]);
  for (std::size_t i = K; i-- > 0;) suffix[i] = values[i] * suffix[i + 1];

  if (prefix[K] == w.target.matrix()) return WitnessDiagnosis{true, std::nullopt};

  WitnessDiagnosis d{false, std::nullopt};
  for (std::size_t i = 0; i < K; ++i) {
    WitnessTerm flipped = w.terms[i];
    flipped.exponent = -flipped.exponent;
    SquareMatrix candidate =
        prefix[i] * recompute_term(flipped, ring, N, cache) * suffix[i + 1];
    if (candidate == w.target.matrix()) {
      d.suspect_term = i;
      break;
    }
  }
  return d;
}

}  // namespace k1colim
