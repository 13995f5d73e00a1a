#pragma once

#include <optional>
#include <vector>

#include "k1colim/matrix.hpp"

namespace k1colim {

// One stabilisation step GL(n) -> GL(n+1): insert the new unit row/column
// first (position 1), last (position n+1), or at a given 1-based position.
enum class StepKind { First, Last, At };

struct EmbedStep {
  StepKind kind = StepKind::Last;
  int at = 0;  // 1-based position, used only when kind == At

  bool operator==(const EmbedStep& o) const {
    return kind == o.kind && (kind != StepKind::At || at == o.at);
  }
};

// An iterated embedding chain from level `start` upwards, one dimension per
// step. Steps are kept explicit so certificates can cite positions.
struct EmbeddingChain {
  int start = 0;
  std::vector<EmbedStep> steps;

  int end() const { return start + static_cast<int>(steps.size()); }

  static EmbeddingChain all_last(int from, int to);
  static EmbeddingChain all_first(int from, int to);

  bool operator==(const EmbeddingChain& o) const {
    return start == o.start && steps == o.steps;
  }
};

// The block-diagonal embedding i^n_j: row j and column j of the result are
// jth unit vectors and deleting them recovers X. j is 1-based, 1 <= j <= n+1;
// j = n+1 is the usual stabilisation A |-> diag(A, 1).
SquareMatrix embed_at(const SquareMatrix& X, int j);
InvertibleMatrix embed_at(const InvertibleMatrix& X, int j);

InvertibleMatrix chain_apply(const InvertibleMatrix& X, const EmbeddingChain& chain);

// diag(X, I) at the requested level (iterated last embedding).
InvertibleMatrix stabilize_last(const InvertibleMatrix& X, int to_level);
SquareMatrix stabilize_last(const SquareMatrix& X, int to_level);
// diag(I, X) at the requested level (iterated first embedding).
InvertibleMatrix stabilize_first(const InvertibleMatrix& X, int to_level);

// The permutation matrix P of GL(n+1, R) with P^{-1} i_last(X) P = i_j(X)
// for every X in GL(n, R): the cycle moving position n+1 to position j.
InvertibleMatrix conjugating_permutation(const RingDescriptor& ring, int n, int j);

// Inverse of embed_at when Y lies in its image, nullopt otherwise.
std::optional<InvertibleMatrix> destabilize(const InvertibleMatrix& Y, int j);

}  // namespace k1colim
