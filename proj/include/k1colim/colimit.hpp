#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "k1colim/elementary.hpp"
#include "k1colim/k1.hpp"
#include "k1colim/stab.hpp"

namespace k1colim {

// The two-arrow diagram of general linear groups starts at this level; the
// perfectness of E(n, R) used by the witness engine needs n >= 3.
inline constexpr int kDiagramBaseLevel = 3;

// A generator image alpha_n(X)^e inside the colimit group M.
struct Letter {
  InvertibleMatrix matrix;
  int exponent = 1;  // +1 or -1

  int level() const { return matrix.n(); }
};

// A formal product of letters representing an element of M. Words are kept
// normalized: identity letters are dropped and adjacent letters of equal
// level are merged by exact matrix multiplication (a letter with exponent
// -1 merges through the cached inverse). No cross-level merging happens
// here; identifications across levels live in the relator machinery and in
// the decision procedure equal_in_M.
class ColimitWord {
 public:
  explicit ColimitWord(RingDescriptor ring) : ring_(std::move(ring)) {}
  ColimitWord(RingDescriptor ring, std::vector<Letter> letters);

  const RingDescriptor& ring() const { return ring_; }
  const std::vector<Letter>& letters() const { return letters_; }
  bool empty() const { return letters_.empty(); }

  ColimitWord inverse() const;
  friend ColimitWord operator*(const ColimitWord& a, const ColimitWord& b);

 private:
  void push_merged(Letter letter);

  RingDescriptor ring_;
  std::vector<Letter> letters_;
};

// alpha_n: GL(n, R) -> M, n >= 3.
ColimitWord alpha(const InvertibleMatrix& X);

// rho: M -> K1(R), the product of the letters' classes. Well defined on M
// because both sides of every relator share a determinant.
K1Class rho(const ColimitWord& w);

// lambda: K1(R) -> M, the class of diag(u, 1, 1) at the base level.
ColimitWord lambda_map(const K1Class& c);

// Decides equality in M by comparing rho images; exact on the supported
// rings, where M ~ K1(R) ~ R^x.
bool equal_in_M(const ColimitWord& w, const ColimitWord& v);

// The stabilization relator at level n+1 attached to g in GL(n, R), n >= 3:
// its sides are i^n_1(g) and i^n_{n+1}(g), and the relator element is
// first_side * last_side^{-1}. Only g is stored; checkers recompute both
// sides from it.
class Relator {
 public:
  explicit Relator(InvertibleMatrix g);

  const InvertibleMatrix& generator() const { return g_; }
  int level() const { return g_.n(); }

  InvertibleMatrix first_side() const { return embed_at(g_, 1); }
  InvertibleMatrix last_side() const { return embed_at(g_, g_.n() + 1); }
  InvertibleMatrix element() const { return first_side() * last_side().inverted(); }

 private:
  InvertibleMatrix g_;
};

// One factor of a normal-closure certificate: the relator element, lifted
// to level `lift_to` by the all-Last chain, raised to `exponent`, and
// conjugated as c * v^e * c^{-1}.
struct WitnessTerm {
  InvertibleMatrix conjugator;  // at level lift_to
  Relator relator;
  int lift_to = 0;
  int exponent = 1;  // +1 or -1
};

// A machine-checkable certificate that `target` lies in the normal closure
// of the stabilization relators: the ordered product of the term values
// equals the target exactly.
struct Witness {
  InvertibleMatrix target;
  std::vector<WitnessTerm> terms;
};

// Certificate for F(Y) * L(Y)^{-1} at level 2n, where L and F are the
// all-Last and all-First chain values of Y. Exactly n terms with trivial
// conjugators; the product telescopes through the mixed chain values.
Witness chain_discrepancy_witness(const InvertibleMatrix& Y);

// Certificate for the commutator [L(X), L(Y)] at level 2n, assembled from
// the discrepancy witness W of Y as conj_{L(X)}(W^{-1}) * W via the exact
// block identity L(X) F(Y) = F(Y) L(X).
Witness commutation_witness(const InvertibleMatrix& X, const InvertibleMatrix& Y);

// Certificate for L(e) at level 2n for an elementary e, via the commutator
// decomposition e = [a, b] and L([a, b]) = [L(a), L(b)].
Witness elementary_witness(const ElementaryMatrix& e);

// Certificate identifying a middle embedding with the last one in the
// colimit: the target L(i_j(X)) * L(i_last(X))^{-1} at level 2(n+1) equals
// the commutator [L(P^{-1}), L(i_last(X))] for the conjugating permutation P.
Witness general_embedding_witness(const InvertibleMatrix& X, int j);

// Independent checker: recomputes every term from its generator by exact
// matrix arithmetic (embed both sides, lift, invert, conjugate) and compares
// the ordered product against the target. Shares nothing with the witness
// constructors above. Structural damage (level or ring mismatches) raises
// malformed_error, distinct from a clean "false".
bool verify_witness(const Witness& w);

struct WitnessDiagnosis {
  bool ok = false;
  // When the product mismatches and flipping exactly one term's exponent
  // repairs it, the 0-based index of that term.
  std::optional<std::size_t> suspect_term;
};

WitnessDiagnosis diagnose_witness(const Witness& w);

}  // namespace k1colim
