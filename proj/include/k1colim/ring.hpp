#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace k1colim {

// Raised when an operation is outside the library's supported scope
// (infinite enumeration, unsupported ring kind, enumeration budget).
struct unsupported_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when structured input (JSON, witness layout) is not well formed.
// Distinct from a verification that simply answers "false".
struct malformed_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Coefficient ring: the integers Z, or Z/m for a fixed modulus m >= 2.
class RingDescriptor {
 public:
  enum class Kind { Integers, Modular };

  static RingDescriptor integers() { return RingDescriptor(Kind::Integers, 0); }
  static RingDescriptor modular(mpz_class m);

  Kind kind() const { return kind_; }
  bool is_modular() const { return kind_ == Kind::Modular; }
  const mpz_class& modulus() const;

  // K1 classes are represented through determinants only on rings with
  // trivial SK1; both supported kinds qualify.
  bool sk1_trivial() const { return true; }

  // Canonical representative: [0, m) for Z/m, the value itself for Z.
  mpz_class reduce(mpz_class v) const;
  void reduce_inplace(mpz_class& v) const;

  bool operator==(const RingDescriptor& o) const {
    return kind_ == o.kind_ && modulus_ == o.modulus_;
  }
  bool operator!=(const RingDescriptor& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  RingDescriptor(Kind k, mpz_class m) : kind_(k), modulus_(std::move(m)) {}

  Kind kind_;
  mpz_class modulus_;  // 0 for Integers
};

void require_same_ring(const RingDescriptor& a, const RingDescriptor& b);

// An exact ring element, kept canonically reduced.
class RingElement {
 public:
  RingElement(RingDescriptor ring, mpz_class value)
      : ring_(std::move(ring)), value_(ring_.reduce(std::move(value))) {}

  const RingDescriptor& ring() const { return ring_; }
  const mpz_class& value() const { return value_; }

  bool is_zero() const { return value_ == 0; }
  bool is_one() const { return value_ == 1; }

  bool operator==(const RingElement& o) const {
    return ring_ == o.ring_ && value_ == o.value_;
  }
  bool operator!=(const RingElement& o) const { return !(*this == o); }

  std::string to_string() const { return value_.get_str(); }

  friend RingElement operator+(const RingElement& a, const RingElement& b);
  friend RingElement operator-(const RingElement& a, const RingElement& b);
  friend RingElement operator*(const RingElement& a, const RingElement& b);
  friend RingElement operator-(const RingElement& a);

 private:
  RingDescriptor ring_;
  mpz_class value_;
};

RingElement ring_zero(const RingDescriptor& ring);
RingElement ring_one(const RingDescriptor& ring);

// Multiplicative inverse if the element is a unit, nullopt otherwise.
// Units of Z are +-1; units of Z/m are the residues coprime to m.
std::optional<RingElement> unit_inverse(const RingElement& a);
bool is_unit(const RingElement& a);

struct CrtFactor {
  mpz_class prime;
  unsigned exponent = 0;
  mpz_class prime_power;
  RingElement idempotent;  // element of Z/m with e = 1 mod p^k, 0 mod m/p^k
};

// m split into prime-power factors with the matching orthogonal idempotents.
struct CrtDecomposition {
  mpz_class modulus;
  std::vector<CrtFactor> factors;
};

CrtDecomposition crt_split(const mpz_class& m);

// All units of Z/m in increasing order. Refuses Z (infinite; callers that
// want the K1 answer for Z use k1_group instead).
std::vector<RingElement> unit_group(const RingDescriptor& ring);

}  // namespace k1colim
