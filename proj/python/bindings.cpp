// Python bindings for the exact K1 machinery: rings, matrices, embeddings,
// factorization certificates, colimit words, witnesses and the finite
// coequalizer. Arbitrary-precision values cross the boundary as Python ints.

#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "k1colim/coeq.hpp"
#include "k1colim/json_io.hpp"

namespace py = pybind11;
using namespace k1colim;

namespace pybind11::detail {

template <>
struct type_caster<mpz_class> {
  PYBIND11_TYPE_CASTER(mpz_class, const_name("int"));

  bool load(handle src, bool) {
    if (!PyLong_Check(src.ptr())) return false;
    PyObject* s = PyObject_Str(src.ptr());
    if (!s) return false;
    const char* text = PyUnicode_AsUTF8(s);
    bool ok = text != nullptr;
    if (ok) {
      try {
        value = mpz_class(text);
      } catch (const std::invalid_argument&) {
        ok = false;
      }
    }
    Py_DECREF(s);
    return ok;
  }

  static handle cast(const mpz_class& v, return_value_policy, handle) {
    return PyLong_FromString(v.get_str().c_str(), nullptr, 10);
  }
};

}  // namespace pybind11::detail

namespace {

SquareMatrix matrix_from_rows(const RingDescriptor& ring,
                              const std::vector<std::vector<mpz_class>>& rows) {
  int n = static_cast<int>(rows.size());
  SquareMatrix m(ring, n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != n)
      throw std::invalid_argument("rows must form a square matrix");
    for (int j = 0; j < n; ++j) m.set(i, j, rows[i][j]);
  }
  return m;
}

std::vector<std::vector<mpz_class>> rows_of(const SquareMatrix& m) {
  std::vector<std::vector<mpz_class>> rows(m.n());
  for (int i = 0; i < m.n(); ++i)
    for (int j = 0; j < m.n(); ++j) rows[i].push_back(m.at(i, j));
  return rows;
}

nlohmann::json parse_json(const std::string& s) {
  try {
    return nlohmann::json::parse(s);
  } catch (const nlohmann::json::exception& e) {
    throw malformed_error(std::string("bad JSON: ") + e.what());
  }
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "exact K1 computations over Z and Z/m with checkable certificates";

  py::register_exception<unsupported_error>(m, "UnsupportedError");
  py::register_exception<malformed_error>(m, "MalformedError");

  py::class_<RingDescriptor>(m, "RingDescriptor")
      .def_static("Z", &RingDescriptor::integers)
      .def_static("Zmod", &RingDescriptor::modular, py::arg("m"))
      .def_property_readonly("is_modular", &RingDescriptor::is_modular)
      .def_property_readonly("modulus",
                             [](const RingDescriptor& r) { return r.modulus(); })
      .def(py::self == py::self)
      .def(py::self != py::self)
      .def("__repr__", &RingDescriptor::to_string);

  py::class_<RingElement>(m, "RingElement")
      .def(py::init<RingDescriptor, mpz_class>(), py::arg("ring"), py::arg("value"))
      .def_property_readonly("ring", &RingElement::ring)
      .def_property_readonly("value",
                             [](const RingElement& e) { return e.value(); })
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self * py::self)
      .def(-py::self)
      .def(py::self == py::self)
      .def(py::self != py::self)
      .def("__repr__", [](const RingElement& e) {
        return e.to_string() + " in " + e.ring().to_string();
      });

  m.def("unit_inverse", &unit_inverse, py::arg("a"));
  m.def("is_unit", &is_unit, py::arg("a"));
  m.def("unit_group", &unit_group, py::arg("ring"));

  py::class_<CrtFactor>(m, "CrtFactor")
      .def_readonly("prime", &CrtFactor::prime)
      .def_readonly("exponent", &CrtFactor::exponent)
      .def_readonly("prime_power", &CrtFactor::prime_power)
      .def_readonly("idempotent", &CrtFactor::idempotent);
  py::class_<CrtDecomposition>(m, "CrtDecomposition")
      .def_readonly("modulus", &CrtDecomposition::modulus)
      .def_readonly("factors", &CrtDecomposition::factors);
  m.def("crt_split", &crt_split, py::arg("m"));

  py::class_<SquareMatrix>(m, "SquareMatrix")
      .def(py::init(&matrix_from_rows), py::arg("ring"), py::arg("rows"))
      .def_static("identity", &SquareMatrix::identity, py::arg("ring"), py::arg("n"))
      .def_property_readonly("n", &SquareMatrix::n)
      .def_property_readonly("ring", &SquareMatrix::ring)
      .def("rows", &rows_of)
      .def("at", [](const SquareMatrix& m, int i, int j) { return m.at(i, j); },
           py::arg("i"), py::arg("j"))
      .def("is_identity", &SquareMatrix::is_identity)
      .def(py::self * py::self)
      .def(py::self == py::self)
      .def(py::self != py::self);

  m.def("determinant", &determinant, py::arg("matrix"));
  m.def("char_poly", &char_poly, py::arg("matrix"));

  py::class_<InvertibleMatrix>(m, "InvertibleMatrix")
      .def_property_readonly("matrix", &InvertibleMatrix::matrix)
      .def_property_readonly("inverse", &InvertibleMatrix::inverse)
      .def_property_readonly("det", &InvertibleMatrix::det)
      .def_property_readonly("n", &InvertibleMatrix::n)
      .def_property_readonly("ring", &InvertibleMatrix::ring)
      .def("inverted", &InvertibleMatrix::inverted)
      .def_static("identity", &InvertibleMatrix::identity, py::arg("ring"), py::arg("n"))
      .def(py::self * py::self)
      .def(py::self == py::self)
      .def(py::self != py::self);

  m.def("try_invert", &try_invert, py::arg("matrix"));
  m.def("random_invertible", &random_invertible, py::arg("ring"), py::arg("n"),
        py::arg("seed"), py::arg("length"));

  py::enum_<StepKind>(m, "StepKind")
      .value("First", StepKind::First)
      .value("Last", StepKind::Last)
      .value("At", StepKind::At);
  py::class_<EmbedStep>(m, "EmbedStep")
      .def(py::init([](StepKind kind, int at) { return EmbedStep{kind, at}; }),
           py::arg("kind"), py::arg("at") = 0)
      .def_readonly("kind", &EmbedStep::kind)
      .def_readonly("at", &EmbedStep::at);
  py::class_<EmbeddingChain>(m, "EmbeddingChain")
      .def(py::init([](int start, const std::vector<EmbedStep>& steps) {
             return EmbeddingChain{start, steps};
           }),
           py::arg("start"), py::arg("steps"))
      .def_static("all_last", &EmbeddingChain::all_last, py::arg("from_level"),
                  py::arg("to_level"))
      .def_static("all_first", &EmbeddingChain::all_first, py::arg("from_level"),
                  py::arg("to_level"))
      .def_readonly("start", &EmbeddingChain::start)
      .def_readonly("steps", &EmbeddingChain::steps)
      .def_property_readonly("end", &EmbeddingChain::end);

  m.def("embed_at",
        py::overload_cast<const InvertibleMatrix&, int>(&embed_at), py::arg("x"),
        py::arg("j"));
  m.def("embed_matrix_at", py::overload_cast<const SquareMatrix&, int>(&embed_at),
        py::arg("x"), py::arg("j"));
  m.def("chain_apply", &chain_apply, py::arg("x"), py::arg("chain"));
  m.def("stabilize_last",
        py::overload_cast<const InvertibleMatrix&, int>(&stabilize_last),
        py::arg("x"), py::arg("to_level"));
  m.def("stabilize_first", &stabilize_first, py::arg("x"), py::arg("to_level"));
  m.def("conjugating_permutation", &conjugating_permutation, py::arg("ring"),
        py::arg("n"), py::arg("j"));
  m.def("destabilize", &destabilize, py::arg("y"), py::arg("j"));

  py::class_<ElementaryMatrix>(m, "ElementaryMatrix")
      .def(py::init<RingDescriptor, int, int, int, mpz_class>(), py::arg("ring"),
           py::arg("n"), py::arg("p"), py::arg("q"), py::arg("r"))
      .def_property_readonly("ring", &ElementaryMatrix::ring)
      .def_property_readonly("n", &ElementaryMatrix::n)
      .def_property_readonly("p", &ElementaryMatrix::p)
      .def_property_readonly("q", &ElementaryMatrix::q)
      .def_property_readonly("value", &ElementaryMatrix::value)
      .def("inverse", &ElementaryMatrix::inverse)
      .def("to_square", &ElementaryMatrix::to_square)
      .def("to_invertible", &ElementaryMatrix::to_invertible)
      .def(py::self == py::self);

  py::class_<ElementaryFactorization>(m, "ElementaryFactorization")
      .def(py::init<InvertibleMatrix, std::vector<ElementaryMatrix>>(),
           py::arg("target"), py::arg("factors"))
      .def_property_readonly("target", &ElementaryFactorization::target)
      .def_property_readonly("factors", &ElementaryFactorization::factors)
      .def_static("product_of", &ElementaryFactorization::product_of,
                  py::arg("ring"), py::arg("n"), py::arg("factors"));

  m.def("commutator_decomposition", &commutator_decomposition, py::arg("e"));
  m.def("whitehead_factor", &whitehead_factor, py::arg("a"));
  m.def("sl_factor", &sl_factor, py::arg("a"));
  m.def("is_in_E", &is_in_E, py::arg("a"));

  py::class_<K1Class>(m, "K1Class")
      .def(py::init<RingDescriptor, RingElement>(), py::arg("ring"), py::arg("unit"))
      .def_property_readonly("ring", &K1Class::ring)
      .def_property_readonly("unit", &K1Class::unit)
      .def(py::self == py::self)
      .def(py::self != py::self)
      .def("__repr__", [](const K1Class& c) {
        return "[" + c.unit().to_string() + "] in K1(" + c.ring().to_string() + ")";
      });

  m.def("class_of_matrix", &class_of_matrix, py::arg("x"));
  m.def("k1_mul", &k1_mul, py::arg("a"), py::arg("b"));
  m.def("k1_inv", &k1_inv, py::arg("a"));
  m.def("k1_group", &k1_group, py::arg("ring"));

  py::class_<Letter>(m, "Letter")
      .def_readonly("matrix", &Letter::matrix)
      .def_readonly("exponent", &Letter::exponent)
      .def_property_readonly("level", &Letter::level);

  py::class_<ColimitWord>(m, "ColimitWord")
      .def(py::init<RingDescriptor>(), py::arg("ring"))
      .def_property_readonly("ring", &ColimitWord::ring)
      .def_property_readonly("letters", &ColimitWord::letters)
      .def_property_readonly("empty", &ColimitWord::empty)
      .def("inverse", &ColimitWord::inverse)
      .def(py::self * py::self);

  m.def("alpha", &alpha, py::arg("x"));
  m.def("rho", &rho, py::arg("w"));
  m.def("lambda_map", &lambda_map, py::arg("c"));
  m.def("equal_in_M", &equal_in_M, py::arg("w"), py::arg("v"));

  py::class_<Relator>(m, "Relator")
      .def(py::init<InvertibleMatrix>(), py::arg("g"))
      .def_property_readonly("generator", &Relator::generator)
      .def_property_readonly("level", &Relator::level)
      .def("first_side", &Relator::first_side)
      .def("last_side", &Relator::last_side)
      .def("element", &Relator::element);

  py::class_<WitnessTerm>(m, "WitnessTerm")
      .def(py::init([](InvertibleMatrix conj, Relator rel, int lift_to, int exp) {
             return WitnessTerm{std::move(conj), std::move(rel), lift_to, exp};
           }),
           py::arg("conjugator"), py::arg("relator"), py::arg("lift_to"),
           py::arg("exponent"))
      .def_readonly("conjugator", &WitnessTerm::conjugator)
      .def_readonly("relator", &WitnessTerm::relator)
      .def_readonly("lift_to", &WitnessTerm::lift_to)
      .def_readonly("exponent", &WitnessTerm::exponent);

  py::class_<Witness>(m, "Witness")
      .def(py::init([](InvertibleMatrix target, std::vector<WitnessTerm> terms) {
             return Witness{std::move(target), std::move(terms)};
           }),
           py::arg("target"), py::arg("terms"))
      .def_readonly("target", &Witness::target)
      .def_readonly("terms", &Witness::terms);

  m.def("chain_discrepancy_witness", &chain_discrepancy_witness, py::arg("y"));
  m.def("commutation_witness", &commutation_witness, py::arg("x"), py::arg("y"));
  m.def("elementary_witness", &elementary_witness, py::arg("e"));
  m.def("general_embedding_witness", &general_embedding_witness, py::arg("x"),
        py::arg("j"));
  m.def("verify_witness", &verify_witness, py::arg("w"));
  m.def("diagnose_witness", [](const Witness& w) {
    WitnessDiagnosis d = diagnose_witness(w);
    return py::make_tuple(d.ok, d.suspect_term);
  }, py::arg("w"));

  py::class_<CoeqOptions>(m, "CoeqOptions")
      .def(py::init<>())
      .def_readwrite("element_budget", &CoeqOptions::element_budget);
  py::class_<CoeqResult>(m, "CoeqResult")
      .def_readonly("group_order", &CoeqResult::group_order)
      .def_readonly("closure_order", &CoeqResult::closure_order)
      .def_readonly("quotient_order", &CoeqResult::quotient_order)
      .def_readonly("relator_count", &CoeqResult::relator_count);
  m.def("truncated_coequalizer", &truncated_coequalizer, py::arg("ring"),
        py::arg("level"), py::arg("options") = CoeqOptions{});
  m.def("truncated_coequalizer_with_generators", &truncated_coequalizer_with_generators,
        py::arg("ring"), py::arg("level"), py::arg("generators"),
        py::arg("options") = CoeqOptions{});

  // JSON forms, as strings, matching the CLI's file formats.
  m.def("ring_to_json", [](const RingDescriptor& r) { return ring_to_json(r).dump(); });
  m.def("ring_from_json",
        [](const std::string& s) { return ring_from_json(parse_json(s)); });
  m.def("matrix_to_json", [](const SquareMatrix& v) { return matrix_to_json(v).dump(); });
  m.def("matrix_from_json",
        [](const std::string& s) { return matrix_from_json(parse_json(s)); });
  m.def("factorization_to_json",
        [](const ElementaryFactorization& f) { return factorization_to_json(f).dump(); });
  m.def("factorization_from_json", [](const std::string& s) {
    return factorization_from_json(parse_json(s));
  });
  m.def("class_to_json", [](const K1Class& c) { return class_to_json(c).dump(); });
  m.def("class_from_json",
        [](const std::string& s) { return class_from_json(parse_json(s)); });
  m.def("witness_to_json", [](const Witness& w) { return witness_to_json(w).dump(); });
  m.def("witness_from_json",
        [](const std::string& s) { return witness_from_json(parse_json(s)); });
}
