#include "k1colim/k1.hpp"

namespace k1colim {
namespace {

void require_sk1_trivial(const RingDescriptor& ring) {
  if (!ring.sk1_trivial())
    throw unsupported_error("K1 via determinants needs trivial SK1; " +
                            ring.to_string() + " is not declared so");
}

}  // namespace

K1Class::K1Class(RingDescriptor ring, RingElement unit)
    : ring_(std::move(ring)), unit_(std::move(unit)) {
  require_sk1_trivial(ring_);
  require_same_ring(ring_, unit_.ring());
  if (!is_unit(unit_))
    throw std::invalid_argument("K1 class must be carried by a unit, got " +
                                unit_.to_string());
}

K1Class class_of_matrix(const InvertibleMatrix& X) {
  require_sk1_trivial(X.ring());
  return K1Class(X.ring(), X.det());
}

K1Class k1_mul(const K1Class& a, const K1Class& b) {
  require_same_ring(a.ring(), b.ring());
  return K1Class(a.ring(), a.unit() * b.unit());
}

K1Class k1_inv(const K1Class& a) {
  return K1Class(a.ring(), *unit_inverse(a.unit()));
}

std::vector<K1Class> k1_group(const RingDescriptor& ring) {
  require_sk1_trivial(ring);
  std::vector<K1Class> classes;
  if (!ring.is_modular()) {
    classes.emplace_back(ring, RingElement(ring, 1));
    classes.emplace_back(ring, RingElement(ring, -1));
    return classes;
  }
  for (RingElement& u : unit_group(ring)) classes.emplace_back(ring, std::move(u));
  return classes;
}

}  // namespace k1colim
