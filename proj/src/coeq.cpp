#include "k1colim/coeq.hpp"

#include <array>
#include <unordered_set>

#include "k1colim/stab.hpp"

namespace k1colim {
namespace {

// Matrices of GL(n, Z/m) packed entrywise into a single 64-bit key,
// base-2^bits digits in row-major order. Keeps the enumerations allocation
// free and hashable.
struct PackedOps {
  int n = 0;
  std::uint64_t m = 0;
  int bits = 0;

  PackedOps(int n_, std::uint64_t m_) : n(n_), m(m_) {
    while ((1ull << bits) < m) ++bits;
    if (n * n * bits > 64)
      throw unsupported_error("matrix encoding exceeds 64 bits at level " +
                              std::to_string(n));
  }

  using Raw = std::array<std::uint8_t, 64>;

  void unpack(std::uint64_t key, Raw& out) const {
    const std::uint64_t mask = (bits == 64) ? ~0ull : ((1ull << bits) - 1);
    for (int i = 0; i < n * n; ++i) out[i] = static_cast<std::uint8_t>(key >> (i * bits) & mask);
  }

  std::uint64_t pack(const Raw& in) const {
    std::uint64_t key = 0;
    for (int i = 0; i < n * n; ++i) key |= static_cast<std::uint64_t>(in[i]) << (i * bits);
    return key;
  }

  std::uint64_t identity() const {
    Raw raw{};
    for (int i = 0; i < n; ++i) raw[i * n + i] = 1;
    return pack(raw);
  }

  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    Raw ra, rb, rc{};
    unpack(a, ra);
    unpack(b, rb);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        std::uint32_t acc = 0;
        for (int l = 0; l < n; ++l)
          acc += static_cast<std::uint32_t>(ra[i * n + l]) * rb[l * n + j];
        rc[i * n + j] = static_cast<std::uint8_t>(acc % m);
      }
    return pack(rc);
  }

  std::uint64_t pack_matrix(const SquareMatrix& a) const {
    Raw raw{};
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) raw[i * n + j] = static_cast<std::uint8_t>(a.at(i, j).get_ui());
    return pack(raw);
  }

  SquareMatrix unpack_matrix(std::uint64_t key, const RingDescriptor& ring) const {
    Raw raw;
    unpack(key, raw);
    SquareMatrix a(ring, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a.set(i, j, raw[i * n + j]);
    return a;
  }
};

// Generators of GL(n, Z/m): the unit elementary matrices plus the diagonal
// unit insertions diag(u, 1, ..., 1); over Z/m every invertible matrix is a
// determinant correction times a product of elementary matrices.
std::vector<SquareMatrix> gl_generators(const RingDescriptor& ring, int n) {
  std::vector<SquareMatrix> gens;
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      if (p == q) continue;
      SquareMatrix e = SquareMatrix::identity(ring, n);
      e.set(p, q, 1);
      gens.push_back(std::move(e));
    }
  for (const RingElement& u : unit_group(ring)) {
    if (u.is_one()) continue;
    SquareMatrix d = SquareMatrix::identity(ring, n);
    d.set(0, 0, u.value());
    gens.push_back(std::move(d));
  }
  return gens;
}

// Right-multiplication closure of the identity under `gens`; in a finite
// group this is exactly the generated subgroup.
std::unordered_set<std::uint64_t> subgroup_closure(const PackedOps& ops,
                                                   const std::vector<std::uint64_t>& gens,
                                                   std::uint64_t budget) {
  std::unordered_set<std::uint64_t> seen;
  std::vector<std::uint64_t> queue;
  seen.insert(ops.identity());
  queue.push_back(ops.identity());
  for (std::size_t head = 0; head < queue.size(); ++head) {
    std::uint64_t x = queue[head];
    for (std::uint64_t g : gens) {
      std::uint64_t y = ops.mul(x, g);
      if (seen.insert(y).second) {
        if (seen.size() > budget) throw unsupported_error("enumeration budget exceeded");
        queue.push_back(y);
      }
    }
  }
  return seen;
}

// Smallest subgroup containing the seeds and closed under conjugation by
// the given group generators: breadth-first closure under right
// multiplication by seeds and conjugation by generator/inverse pairs.
std::unordered_set<std::uint64_t> normal_closure(
    const PackedOps& ops, const std::vector<std::uint64_t>& seeds,
    const std::vector<std::pair<std::uint64_t, std::uint64_t>>& gen_pairs,
    std::uint64_t budget) {
  std::unordered_set<std::uint64_t> seen;
  std::vector<std::uint64_t> queue;
  auto add = [&](std::uint64_t x) {
    if (seen.insert(x).second) {
      if (seen.size() > budget) throw unsupported_error("enumeration budget exceeded");
      queue.push_back(x);
    }
  };
  add(ops.identity());
  for (std::uint64_t s : seeds) add(s);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    std::uint64_t x = queue[head];
    for (std::uint64_t s : seeds) add(ops.mul(x, s));
    for (const auto& [g, ginv] : gen_pairs) {
      add(ops.mul(ops.mul(g, x), ginv));
      add(ops.mul(ops.mul(ginv, x), g));
    }
  }
  return seen;
}

CoeqResult run_closure(const RingDescriptor& ring, int level,
                       const std::vector<std::uint64_t>& relators,
                       std::size_t relator_count, const CoeqOptions& options) {
  PackedOps ops(level, ring.modulus().get_ui());

  std::vector<std::uint64_t> packed_gens;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> gen_pairs;
  for (const SquareMatrix& g : gl_generators(ring, level)) {
    auto inv = try_invert(g);
    if (!inv) throw std::logic_error("group generator not invertible");
    std::uint64_t pg = ops.pack_matrix(g);
    packed_gens.push_back(pg);
    gen_pairs.emplace_back(pg, ops.pack_matrix(inv->inverse()));
  }

  auto group = subgroup_closure(ops, packed_gens, options.element_budget);
  auto closure = normal_closure(ops, relators, gen_pairs, options.element_budget);

  CoeqResult res;
  res.group_order = group.size();
  res.closure_order = closure.size();
  res.relator_count = relator_count;
  if (res.group_order % res.closure_order != 0)
    throw std::logic_error("closure order does not divide group order");
  res.quotient_order = res.group_order / res.closure_order;
  return res;
}

void check_supported(const RingDescriptor& ring, int level) {
  if (!ring.is_modular())
    throw unsupported_error("truncated coequalizer needs a finite modular ring");
  if (!ring.modulus().fits_ulong_p() || ring.modulus().get_ui() > 255)
    throw unsupported_error("modulus too large for packed enumeration");
  if (level < 4)
    throw std::invalid_argument("truncation level must be >= 4 (relators start at level 3)");
}

std::uint64_t pack_relator(const PackedOps& ops, int level, const InvertibleMatrix& g) {
  InvertibleMatrix rel =
      stabilize_last(embed_at(g, 1) * embed_at(g, g.n() + 1).inverted(), level);
  return ops.pack_matrix(rel.matrix());
}

}  // namespace

CoeqResult truncated_coequalizer(const RingDescriptor& ring, int level,
                                 const CoeqOptions& options) {
  check_supported(ring, level);
  PackedOps top(level, ring.modulus().get_ui());

  std::vector<std::uint64_t> relators;
  std::size_t count = 0;
  std::unordered_set<std::uint64_t> dedup;
  for (int n = 3; n < level; ++n) {
    PackedOps ops(n, ring.modulus().get_ui());
    std::vector<std::uint64_t> gens;
    for (const SquareMatrix& g : gl_generators(ring, n)) gens.push_back(ops.pack_matrix(g));
    for (std::uint64_t key : subgroup_closure(ops, gens, options.element_budget)) {
      auto g = try_invert(ops.unpack_matrix(key, ring));
      if (!g) throw std::logic_error("enumerated group element not invertible");
      ++count;
      std::uint64_t packed = pack_relator(top, level, *g);
      if (dedup.insert(packed).second) relators.push_back(packed);
    }
  }
  return run_closure(ring, level, relators, count, options);
}

CoeqResult truncated_coequalizer_with_generators(
    const RingDescriptor& ring, int level, const std::vector<SquareMatrix>& generators,
    const CoeqOptions& options) {
  check_supported(ring, level);
  PackedOps top(level, ring.modulus().get_ui());

  std::vector<std::uint64_t> relators;
  std::unordered_set<std::uint64_t> dedup;
  for (const SquareMatrix& gm : generators) {
    if (gm.n() != level - 1)
      throw std::invalid_argument("relator generators must live one level below the top");
    auto g = try_invert(gm);
    if (!g) throw std::invalid_argument("relator generator is not invertible");
    std::uint64_t packed = pack_relator(top, level, *g);
    if (dedup.insert(packed).second) relators.push_back(packed);
  }
  return run_closure(ring, level, relators, generators.size(), options);
}

}  // namespace k1colim
