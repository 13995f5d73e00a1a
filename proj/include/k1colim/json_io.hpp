#pragma once

#include <json.hpp>

#include "k1colim/colimit.hpp"

namespace k1colim {

// JSON forms, bit-exact round trips. Matrix entries, factor values and
// units serialize as decimal strings; positions are 1-based like the
// operations they feed. Parse failures raise malformed_error.

nlohmann::ordered_json ring_to_json(const RingDescriptor& ring);
RingDescriptor ring_from_json(const nlohmann::json& j);

nlohmann::ordered_json matrix_to_json(const SquareMatrix& m);
SquareMatrix matrix_from_json(const nlohmann::json& j);
InvertibleMatrix invertible_from_json(const nlohmann::json& j);

nlohmann::ordered_json chain_to_json(const EmbeddingChain& c);
EmbeddingChain chain_from_json(const nlohmann::json& j);

nlohmann::ordered_json factorization_to_json(const ElementaryFactorization& f);
ElementaryFactorization factorization_from_json(const nlohmann::json& j);

nlohmann::ordered_json class_to_json(const K1Class& c);
K1Class class_from_json(const nlohmann::json& j);

nlohmann::ordered_json witness_to_json(const Witness& w);
Witness witness_from_json(const nlohmann::json& j);

}  // namespace k1colim
