#include <doctest.h>

#include "k1colim/coeq.hpp"
#include "k1colim/k1.hpp"

using namespace k1colim;

TEST_CASE("truncated coequalizer at (Z/2, 4) collapses to K1(Z/2)") {
  RingDescriptor z2 = RingDescriptor::modular(2);
  CoeqResult r = truncated_coequalizer(z2, 4);
  CHECK(r.group_order == 20160);  // (16-1)(16-2)(16-4)(16-8)
  CHECK(r.relator_count == 168);  // |GL(3, Z/2)|
  CHECK(r.quotient_order == k1_group(z2).size());
  CHECK(r.quotient_order == 1);
}

TEST_CASE("degenerate relator set {I} leaves the whole group") {
  RingDescriptor z2 = RingDescriptor::modular(2);
  std::vector<SquareMatrix> gens{SquareMatrix::identity(z2, 3)};
  CoeqResult r = truncated_coequalizer_with_generators(z2, 4, gens);
  CHECK(r.closure_order == 1);
  CHECK(r.quotient_order == 20160);
}

TEST_CASE("a single nontrivial relator already collapses GL(4, Z/2)") {
  RingDescriptor z2 = RingDescriptor::modular(2);
  SquareMatrix g = SquareMatrix::identity(z2, 3);
  g.set(0, 1, 1);  // one elementary generator
  CoeqResult r = truncated_coequalizer_with_generators(z2, 4, {g});
  CHECK(r.quotient_order == 1);
}

TEST_CASE("unsupported shapes are refused cleanly") {
  CHECK_THROWS_AS(truncated_coequalizer(RingDescriptor::integers(), 4),
                  unsupported_error);
  CHECK_THROWS_AS(truncated_coequalizer(RingDescriptor::modular(2), 3),
                  std::invalid_argument);
  // Packing limit: level 5 at modulus 6 needs 25*3 = 75 bits.
  CHECK_THROWS_AS(truncated_coequalizer(RingDescriptor::modular(6), 5),
                  unsupported_error);
  // Tiny budget trips immediately.
  CoeqOptions opts;
  opts.element_budget = 100;
  CHECK_THROWS_AS(truncated_coequalizer(RingDescriptor::modular(2), 4, opts),
                  unsupported_error);
}
