#pragma once

#include <vector>

#include "k1colim/matrix.hpp"

namespace k1colim {

// A class of K1(R), carried by a unit of R. Valid representation exactly
// because the supported rings have trivial SK1, so the determinant induces
// K1(R) ~ R^x; rings without that capability are refused rather than
// silently projected through det.
class K1Class {
 public:
  K1Class(RingDescriptor ring, RingElement unit);

  const RingDescriptor& ring() const { return ring_; }
  const RingElement& unit() const { return unit_; }

  bool operator==(const K1Class& o) const {
    return ring_ == o.ring_ && unit_ == o.unit_;
  }
  bool operator!=(const K1Class& o) const { return !(*this == o); }

 private:
  RingDescriptor ring_;
  RingElement unit_;
};

// [X], the class of X in K1(R); stable under every embedding i^n_j.
K1Class class_of_matrix(const InvertibleMatrix& X);

K1Class k1_mul(const K1Class& a, const K1Class& b);
K1Class k1_inv(const K1Class& a);

// The full K1 group: all unit classes for Z/m, the classes of +-1 for Z.
std::vector<K1Class> k1_group(const RingDescriptor& ring);

}  // namespace k1colim
