#include "k1colim/ring.hpp"

namespace k1colim {

RingDescriptor RingDescriptor::modular(mpz_class m) {
  if (m < 2) throw std::invalid_argument("modulus must be >= 2");
  return RingDescriptor(Kind::Modular, std::move(m));
}

const mpz_class& RingDescriptor::modulus() const {
  if (!is_modular()) throw std::invalid_argument("Z has no modulus");
  return modulus_;
}

mpz_class RingDescriptor::reduce(mpz_class v) const {
  reduce_inplace(v);
  return v;
}

void RingDescriptor::reduce_inplace(mpz_class& v) const {
  if (kind_ == Kind::Modular)
    mpz_mod(v.get_mpz_t(), v.get_mpz_t(), modulus_.get_mpz_t());
}

std::string RingDescriptor::to_string() const {
  return is_modular() ? "Z/" + modulus_.get_str() : "Z";
}

void require_same_ring(const RingDescriptor& a, const RingDescriptor& b) {
  if (a != b)
    throw std::invalid_argument("ring mismatch: " + a.to_string() + " vs " +
                                b.to_string());
}

RingElement operator+(const RingElement& a, const RingElement& b) {
  require_same_ring(a.ring_, b.ring_);
  return RingElement(a.ring_, a.value_ + b.value_);
}

RingElement operator-(const RingElement& a, const RingElement& b) {
  require_same_ring(a.ring_, b.ring_);
  return RingElement(a.ring_, a.value_ - b.value_);
}

RingElement operator*(const RingElement& a, const RingElement& b) {
  require_same_ring(a.ring_, b.ring_);
  return RingElement(a.ring_, a.value_ * b.value_);
}

RingElement operator-(const RingElement& a) {
  return RingElement(a.ring_, -a.value_);
}

RingElement ring_zero(const RingDescriptor& ring) {
  return RingElement(ring, 0);
}

RingElement ring_one(const RingDescriptor& ring) {
  return RingElement(ring, 1);
}

std::optional<RingElement> unit_inverse(const RingElement& a) {
  const RingDescriptor& ring = a.ring();
  if (!ring.is_modular()) {
    if (a.value() == 1 || a.value() == -1) return a;
    return std::nullopt;
  }
  mpz_class inv;
  int ok = mpz_invert(inv.get_mpz_t(), a.value().get_mpz_t(),
                      ring.modulus().get_mpz_t());
  if (!ok) return std::nullopt;
  return RingElement(ring, std::move(inv));
}

bool is_unit(const RingElement& a) { return unit_inverse(a).has_value(); }

CrtDecomposition crt_split(const mpz_class& m) {
  if (m < 2) throw std::invalid_argument("modulus must be >= 2");
  RingDescriptor ring = RingDescriptor::modular(m);

  // Trial division; moduli in scope are desk scale.
  std::vector<std::pair<mpz_class, unsigned>> primes;
  mpz_class rem = m;
  mpz_class p = 2;
  while (p * p <= rem) {
    if (rem % p == 0) {
      unsigned k = 0;
      while (rem % p == 0) {
        rem /= p;
        ++k;
      }
      primes.emplace_back(p, k);
    }
    p += (p == 2) ? 1 : 2;
  }
  if (rem > 1) primes.emplace_back(rem, 1);

  CrtDecomposition dec{m, {}};
  for (const auto& [prime, k] : primes) {
    mpz_class pk;
    mpz_pow_ui(pk.get_mpz_t(), prime.get_mpz_t(), k);
    // e = q * (q^{-1} mod p^k) with q = m / p^k; then e = 1 mod p^k and
    // e = 0 mod the complementary factor.
    mpz_class q = m / pk;
    mpz_class b;
    if (q == 1) {
      b = 1;
    } else {
      int ok = mpz_invert(b.get_mpz_t(), q.get_mpz_t(), pk.get_mpz_t());
      if (!ok) throw std::logic_error("crt_split: cofactor not invertible");
    }
    dec.factors.push_back(
        CrtFactor{prime, k, pk, RingElement(ring, q * b)});
  }
  return dec;
}

std::vector<RingElement> unit_group(const RingDescriptor& ring) {
  if (!ring.is_modular())
    throw unsupported_error("unit_group: Z has infinite carrier; units are +-1");
  const mpz_class& m = ring.modulus();
  std::vector<RingElement> units;
  mpz_class g;
  for (mpz_class r = 1; r < m; ++r) {
    mpz_gcd(g.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t());
    if (g == 1) {
      RingElement u(ring, r);
      if (!unit_inverse(u)) throw std::logic_error("unit_group: gcd/invert disagree");
      units.push_back(std::move(u));
    }
  }
  return units;
}

}  // namespace k1colim
