#include "k1colim/json_io.hpp"

namespace k1colim {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

[[noreturn]] void bad(const std::string& what) { throw malformed_error(what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

int int_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_integer()) bad(std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

mpz_class parse_mpz(const json& v, const char* what) {
  try {
    if (v.is_string()) return mpz_class(v.get<std::string>());
    if (v.is_number_integer()) return mpz_class(std::to_string(v.get<long long>()));
  } catch (const std::invalid_argument&) {
  }
  bad(std::string(what) + " must be a decimal string");
}

}  // namespace

ordered_json ring_to_json(const RingDescriptor& ring) {
  ordered_json j;
  if (ring.is_modular()) {
    j["kind"] = "Zmod";
    if (ring.modulus().fits_slong_p())
      j["m"] = ring.modulus().get_si();
    else
      j["m"] = ring.modulus().get_str();
  } else {
    j["kind"] = "Z";
  }
  return j;
}

RingDescriptor ring_from_json(const json& j) {
  const json& kind = field(j, "kind");
  if (!kind.is_string()) bad("ring kind must be a string");
  std::string k = kind.get<std::string>();
  if (k == "Z") return RingDescriptor::integers();
  if (k == "Zmod") {
    mpz_class m = parse_mpz(field(j, "m"), "modulus");
    if (m < 2) bad("modulus must be >= 2");
    return RingDescriptor::modular(std::move(m));
  }
  bad("unknown ring kind '" + k + "'");
}

ordered_json matrix_to_json(const SquareMatrix& m) {
  ordered_json j;
  j["ring"] = ring_to_json(m.ring());
  j["n"] = m.n();
  ordered_json rows = ordered_json::array();
  for (int i = 0; i < m.n(); ++i) {
    ordered_json row = ordered_json::array();
    for (int k = 0; k < m.n(); ++k) row.push_back(m.at(i, k).get_str());
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  return j;
}

SquareMatrix matrix_from_json(const json& j) {
  RingDescriptor ring = ring_from_json(field(j, "ring"));
  int n = int_field(j, "n");
  if (n < 1) bad("matrix dimension must be >= 1");
  const json& rows = field(j, "rows");
  if (!rows.is_array() || static_cast<int>(rows.size()) != n) bad("expected n rows");
  SquareMatrix m(ring, n);
  for (int i = 0; i < n; ++i) {
    const json& row = rows.at(i);
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      bad("expected n entries per row");
    for (int k = 0; k < n; ++k) m.set(i, k, parse_mpz(row.at(k), "matrix entry"));
  }
  return m;
}

InvertibleMatrix invertible_from_json(const json& j) {
  auto inv = try_invert(matrix_from_json(j));
  if (!inv) bad("matrix is not invertible over its ring");
  return *inv;
}

ordered_json chain_to_json(const EmbeddingChain& c) {
  ordered_json j;
  j["start"] = c.start;
  ordered_json steps = ordered_json::array();
  for (const EmbedStep& s : c.steps) {
    switch (s.kind) {
      case StepKind::First: steps.push_back("F"); break;
      case StepKind::Last: steps.push_back("L"); break;
      case StepKind::At: steps.push_back("A" + std::to_string(s.at)); break;
    }
  }
  j["steps"] = std::move(steps);
  return j;
}

EmbeddingChain chain_from_json(const json& j) {
  EmbeddingChain c;
  c.start = int_field(j, "start");
  if (c.start < 1) bad("chain start must be >= 1");
  const json& steps = field(j, "steps");
  if (!steps.is_array()) bad("steps must be an array");
  for (const json& s : steps) {
    if (!s.is_string()) bad("steps must be strings");
    std::string v = s.get<std::string>();
    if (v == "L") {
      c.steps.push_back({StepKind::Last, 0});
    } else if (v == "F") {
      c.steps.push_back({StepKind::First, 0});
    } else if (v.size() > 1 && v[0] == 'A') {
      int at = 0;
      try {
        at = std::stoi(v.substr(1));
      } catch (const std::exception&) {
        bad("bad step '" + v + "'");
      }
      if (at < 1) bad("step position must be >= 1");
      c.steps.push_back({StepKind::At, at});
    } else {
      bad("bad step '" + v + "'");
    }
  }
  return c;
}

ordered_json factorization_to_json(const ElementaryFactorization& f) {
  ordered_json j;
  j["target"] = matrix_to_json(f.target().matrix());
  ordered_json factors = ordered_json::array();
  for (const ElementaryMatrix& e : f.factors()) {
    ordered_json fe;
    fe["p"] = e.p();
    fe["q"] = e.q();
    fe["r"] = e.value().to_string();
    factors.push_back(std::move(fe));
  }
  j["factors"] = std::move(factors);
  return j;
}

ElementaryFactorization factorization_from_json(const json& j) {
  InvertibleMatrix target = invertible_from_json(field(j, "target"));
  const json& factors = field(j, "factors");
  if (!factors.is_array()) bad("factors must be an array");
  std::vector<ElementaryMatrix> fs;
  fs.reserve(factors.size());
  for (const json& fe : factors) {
    int p = int_field(fe, "p");
    int q = int_field(fe, "q");
    mpz_class r = parse_mpz(field(fe, "r"), "factor value");
    try {
      fs.emplace_back(target.ring(), target.n(), p, q, std::move(r));
    } catch (const std::invalid_argument& e) {
      bad(e.what());
    }
  }
  try {
    return ElementaryFactorization(std::move(target), std::move(fs));
  } catch (const std::invalid_argument& e) {
    bad(e.what());
  }
}

ordered_json class_to_json(const K1Class& c) {
  ordered_json j;
  j["ring"] = ring_to_json(c.ring());
  j["unit"] = c.unit().to_string();
  return j;
}

K1Class class_from_json(const json& j) {
  RingDescriptor ring = ring_from_json(field(j, "ring"));
  RingElement unit(ring, parse_mpz(field(j, "unit"), "unit"));
  try {
    return K1Class(std::move(ring), std::move(unit));
  } catch (const std::invalid_argument& e) {
    bad(e.what());
  }
}

ordered_json witness_to_json(const Witness& w) {
  ordered_json j;
  j["target"] = matrix_to_json(w.target.matrix());
  ordered_json terms = ordered_json::array();
  for (const WitnessTerm& t : w.terms) {
    ordered_json te;
    te["conjugator"] = matrix_to_json(t.conjugator.matrix());
    ordered_json rel;
    rel["level"] = t.relator.level();
    rel["g"] = matrix_to_json(t.relator.generator().matrix());
    te["relator"] = std::move(rel);
    te["lift_to"] = t.lift_to;
    te["exp"] = t.exponent;
    terms.push_back(std::move(te));
  }
  j["terms"] = std::move(terms);
  return j;
}

Witness witness_from_json(const json& j) {
  Witness w{invertible_from_json(field(j, "target")), {}};
  const json& terms = field(j, "terms");
  if (!terms.is_array()) bad("terms must be an array");
  w.terms.reserve(terms.size());
  for (const json& te : terms) {
    const json& rel = field(te, "relator");
    InvertibleMatrix g = invertible_from_json(field(rel, "g"));
    if (int_field(rel, "level") != g.n()) bad("relator level disagrees with its generator");
    if (g.n() < kDiagramBaseLevel) bad("relator level must be >= 3");
    InvertibleMatrix conj = invertible_from_json(field(te, "conjugator"));
    int lift_to = int_field(te, "lift_to");
    int exp = int_field(te, "exp");
    w.terms.push_back(WitnessTerm{std::move(conj), Relator(std::move(g)), lift_to, exp});
  }
  return w;
}

}  // namespace k1colim
