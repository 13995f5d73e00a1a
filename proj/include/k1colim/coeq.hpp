#pragma once

#include <cstdint>
#include <vector>

#include "k1colim/matrix.hpp"

namespace k1colim {

struct CoeqOptions {
  // Hard cap on the number of distinct group elements materialized across
  // the enumerations; exceeding it raises unsupported_error.
  std::uint64_t element_budget = 20'000'000;
};

struct CoeqResult {
  std::uint64_t group_order = 0;    // |GL(level, Z/m)|
  std::uint64_t closure_order = 0;  // |normal closure of the relators|
  std::uint64_t quotient_order = 0;
  std::size_t relator_count = 0;
};

// The colimit diagram truncated at a finite level: GL(level, Z/m) modulo the
// normal closure of the stabilization relators i^n_1(g) * i^n_{n+1}(g)^{-1}
// for g in GL(n, Z/m), 3 <= n < level, lifted to the top by all-Last chains.
// Requires a modular ring, level >= 4, and a matrix encoding that fits the
// packed representation; everything is enumerated within the budget.
CoeqResult truncated_coequalizer(const RingDescriptor& ring, int level,
                                 const CoeqOptions& options = {});

// Same computation with the relator generators g given explicitly (each an
// invertible matrix of size level-1). Used to probe degenerate and
// restricted relator sets.
CoeqResult truncated_coequalizer_with_generators(
    const RingDescriptor& ring, int level, const std::vector<SquareMatrix>& generators,
    const CoeqOptions& options = {});

}  // namespace k1colim
