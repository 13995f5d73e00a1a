#include "k1colim/stab.hpp"

namespace k1colim {

EmbeddingChain EmbeddingChain::all_last(int from, int to) {
  if (to < from) throw std::invalid_argument("chain end below start");
  EmbeddingChain c{from, {}};
  c.steps.assign(to - from, EmbedStep{StepKind::Last, 0});
  return c;
}

EmbeddingChain EmbeddingChain::all_first(int from, int to) {
  if (to < from) throw std::invalid_argument("chain end below start");
  EmbeddingChain c{from, {}};
  c.steps.assign(to - from, EmbedStep{StepKind::First, 0});
  return c;
}

SquareMatrix embed_at(const SquareMatrix& X, int j) {
  const int n = X.n();
  if (j < 1 || j > n + 1)
    throw std::invalid_argument("embedding position out of range");
  const int j0 = j - 1;
  SquareMatrix Y(X.ring(), n + 1);
  Y.set(j0, j0, 1);
  for (int i = 0; i <= n; ++i) {
    if (i == j0) continue;
    for (int k = 0; k <= n; ++k) {
      if (k == j0) continue;
      Y.set(i, k, X.at(i - (i > j0), k - (k > j0)));
    }
  }
  return Y;
}

InvertibleMatrix embed_at(const InvertibleMatrix& X, int j) {
  // (i_j(X))^{-1} = i_j(X^{-1}) and the determinant is unchanged.
  return InvertibleMatrix::from_parts(embed_at(X.matrix(), j),
                                      embed_at(X.inverse(), j), X.det());
}

InvertibleMatrix chain_apply(const InvertibleMatrix& X, const EmbeddingChain& chain) {
  if (chain.start != X.n())
    throw std::invalid_argument("chain starts at level " + std::to_string(chain.start) +
                                " but matrix has level " + std::to_string(X.n()));
  InvertibleMatrix Y = X;
  for (const EmbedStep& step : chain.steps) {
    int j;
    switch (step.kind) {
      case StepKind::First: j = 1; break;
      case StepKind::Last: j = Y.n() + 1; break;
      case StepKind::At: j = step.at; break;
      default: throw std::invalid_argument("bad step kind");
    }
    Y = embed_at(Y, j);
  }
  return Y;
}

SquareMatrix stabilize_last(const SquareMatrix& X, int to_level) {
  if (to_level < X.n()) throw std::invalid_argument("target level below matrix level");
  SquareMatrix Y(X.ring(), to_level);
  for (int i = 0; i < X.n(); ++i)
    for (int j = 0; j < X.n(); ++j) Y.set(i, j, X.at(i, j));
  for (int i = X.n(); i < to_level; ++i) Y.set(i, i, 1);
  return Y;
}

InvertibleMatrix stabilize_last(const InvertibleMatrix& X, int to_level) {
  return InvertibleMatrix::from_parts(stabilize_last(X.matrix(), to_level),
                                      stabilize_last(X.inverse(), to_level), X.det());
}

InvertibleMatrix stabilize_first(const InvertibleMatrix& X, int to_level) {
  return chain_apply(X, EmbeddingChain::all_first(X.n(), to_level));
}

InvertibleMatrix conjugating_permutation(const RingDescriptor& ring, int n, int j) {
  if (j < 1 || j > n + 1)
    throw std::invalid_argument("embedding position out of range");
  // sigma fixes 1..j-1, shifts j..n up by one and sends n+1 to j; the
  // matrix has P[i][sigma(i)] = 1 (1-based positions).
  auto sigma = [&](int i) {
    if (i == n + 1) return j;
    return (i >= j) ? i + 1 : i;
  };
  SquareMatrix P(ring, n + 1);
  SquareMatrix Pinv(ring, n + 1);
  for (int i = 1; i <= n + 1; ++i) {
    P.set(i - 1, sigma(i) - 1, 1);
    Pinv.set(sigma(i) - 1, i - 1, 1);
  }
  // sigma is a cycle of length n+2-j; its sign is (-1)^{n+1-j}.
  RingElement det(ring, ((n + 1 - j) % 2 == 0) ? 1 : -1);
  return InvertibleMatrix::from_parts(std::move(P), std::move(Pinv), std::move(det));
}

std::optional<InvertibleMatrix> destabilize(const InvertibleMatrix& Y, int j) {
  const int n1 = Y.n();
  if (n1 < 2) return std::nullopt;
  if (j < 1 || j > n1) throw std::invalid_argument("embedding position out of range");
  const int j0 = j - 1;
  const SquareMatrix& M = Y.matrix();
  mpz_class one = Y.ring().reduce(1);
  for (int k = 0; k < n1; ++k) {
    const mpz_class& row = M.at(j0, k);
    const mpz_class& col = M.at(k, j0);
    if (k == j0 ? (row != one) : (row != 0 || col != 0)) return std::nullopt;
  }
  auto extract = [&](const SquareMatrix& S) {
    SquareMatrix X(Y.ring(), n1 - 1);
    for (int i = 0; i < n1 - 1; ++i)
      for (int k = 0; k < n1 - 1; ++k)
        X.set(i, k, S.at(i + (i >= j0), k + (k >= j0)));
    return X;
  };
  // Y = i_j(X) forces Y^{-1} = i_j(X^{-1}), so the same deletion applies.
  return InvertibleMatrix::from_parts(extract(M), extract(Y.inverse()), Y.det());
}

}  // namespace k1colim
