#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "formint/adic.hpp"
#include "formint/gm_action.hpp"

namespace formint {

using json = nlohmann::ordered_json;

inline json to_json(const TruncSeries& s) {
  json basis = json::array();
  for (Basis b : s.basis()) basis.push_back(to_string(b));
  json terms = json::array();
  for (const auto& [e, c] : s.terms()) terms.push_back({{"exps", e}, {"poly", c.to_string()}});
  return {{"formal_vars", s.formal_vars()}, {"basis", basis}, {"order", s.order()}, {"terms", terms}};
}

inline json to_json(const VectorField& v) {
  json comps = json::array();
  for (const auto& c : v.components) comps.push_back(c.to_string());
  return comps;
}

inline json to_json(const FlowSolution& flow) {
  json coords = json::array();
  for (const auto& c : flow.coordinates) coords.push_back(to_json(c));
  return {{"field", flow.vector_field.field.name()},
          {"basis", to_string(flow.basis)},
          {"order", flow.order},
          {"state_vars", flow.vector_field.state_vars},
          {"initial_vars", flow.initial_vars},
          {"vector_field", to_json(flow.vector_field)},
          {"coordinates", coords}};
}

inline json to_json(const FormalAction& a) {
  json coaction = json::array();
  for (const auto& c : a.coaction) coaction.push_back(to_json(c));
  json out = {{"group", to_string(a.group)},
              {"field", a.field.name()},
              {"order", a.order},
              {"state_vars", a.state_vars}};
  if (a.group == GroupType::Gm) out["weight"] = a.weight;
  out["coaction"] = coaction;
  return out;
}

inline std::string vector_to_string(const Vector& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + v[i].to_string();
  return out + "]";
}

inline json to_json(const Matrix& m) {
  json rows = json::array();
  for (const auto& r : m) rows.push_back(vector_to_string(r));
  return rows;
}

inline json to_json(const IdealChain& chain) {
  json index = chain.nilpotency_index ? json(*chain.nilpotency_index) : json(nullptr);
  return {{"dims", chain.dims()}, {"nilpotency_index", index}};
}

inline json to_json(const SquareZeroTower& tower) {
  json algebras = json::array();
  for (const auto& a : tower.algebras) algebras.push_back({{"dim", a.dim()}, {"labels", a.labels()}});
  json kernels = json::array();
  for (const auto& k : tower.kernels) {
    json basis = json::array();
    for (const auto& v : k) basis.push_back(vector_to_string(v));
    kernels.push_back(basis);
  }
  json surj = json::array();
  for (const auto& m : tower.surjections) surj.push_back(to_json(m));
  return {{"length", tower.length()},
          {"kernel_dims", tower.kernel_dims()},
          {"algebras", algebras},
          {"surjections", surj},
          {"kernels", kernels}};
}

inline json to_json(const GradedReport& g) {
  return {{"pass", g.pass}, {"dims_gr", g.dims_gr}, {"dims_sym_bound", g.dims_sym_bound}};
}

inline json to_json(const FiniteAlgebra& a) {
  json products = json::array();
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = i; j < a.dim(); ++j) {
      Vector p = a.product(i, j);
      if (is_zero(p)) continue;
      json coeffs = json::array();
      for (const auto& c : p) coeffs.push_back(c.to_string());
      products.push_back({i, j, coeffs});
    }
  json unit = json::array();
  for (const auto& c : a.unit()) unit.push_back(c.to_string());
  return {{"field", a.field().name()}, {"dim", a.dim()}, {"labels", a.labels()}, {"unit", unit}, {"products", products}};
}

namespace detail {
inline Coefficient coefficient_from_json(const Field& f, const json& j) {
  if (j.is_number_integer()) return Coefficient(f, j.get<long>());
  if (j.is_string()) return Coefficient::parse(f, j.get<std::string>());
  throw Error(ErrorKind::ParseError, "coefficient must be an integer or a \"p/q\" string");
}
}  // namespace detail

/// Reads `{field, dim, labels, unit, products: [[i, j, [coeffs...]], ...]}`.
/// Products are listed for i <= j; the symmetric entries are filled in and
/// unlisted products are zero.
inline FiniteAlgebra algebra_from_json(const json& j) {
  try {
    const Field field = Field::parse(j.at("field").get<std::string>());
    const auto dim = j.at("dim").get<std::size_t>();
    std::vector<std::string> labels;
    if (j.contains("labels")) {
      labels = j.at("labels").get<std::vector<std::string>>();
    } else {
      for (std::size_t i = 0; i < dim; ++i) labels.push_back("e" + std::to_string(i));
    }
    if (labels.size() != dim) throw Error(ErrorKind::DimensionMismatch, "labels length differs from dim");
    Vector unit;
    for (const auto& c : j.at("unit")) unit.push_back(detail::coefficient_from_json(field, c));
    std::vector<Coefficient> table(dim * dim * dim, Coefficient::zero(field));
    for (const auto& entry : j.at("products")) {
      const auto i = entry.at(0).get<std::size_t>();
      const auto k = entry.at(1).get<std::size_t>();
      const auto& coeffs = entry.at(2);
      if (i >= dim || k >= dim || coeffs.size() != dim)
        throw Error(ErrorKind::DimensionMismatch, "product entry out of range: " + entry.dump());
      for (std::size_t l = 0; l < dim; ++l) {
        Coefficient c = detail::coefficient_from_json(field, coeffs[l]);
        table[(i * dim + k) * dim + l] = c;
        table[(k * dim + i) * dim + l] = c;
      }
    }
    return FiniteAlgebra(field, std::move(labels), std::move(table), std::move(unit));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("algebra JSON: ") + e.what());
  }
}

/// A file path ending in .json, or a presentation like `F2[x]/(x^3)`.
inline FiniteAlgebra load_algebra(const std::string& source) {
  if (source.size() > 5 && source.substr(source.size() - 5) == ".json") {
    std::ifstream in(source);
    if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + source + "'");
    json j;
    try {
      j = json::parse(in);
    } catch (const json::exception& e) {
      throw Error(ErrorKind::ParseError, "'" + source + "': " + e.what());
    }
    return algebra_from_json(j);
  }
  return parse_algebra_presentation(source);
}

/// Ideal generators separated by ';'. Each is a basis label or a comma list
/// of coordinates.
inline std::vector<Vector> parse_generators(const FiniteAlgebra& a, const std::string& text) {
  std::vector<Vector> gens;
  if (trim(text).empty()) return gens;
  for (const auto& token : split_trimmed(text, ';')) {
    auto label = std::find(a.labels().begin(), a.labels().end(), token);
    if (label != a.labels().end()) {
      gens.push_back(a.basis_vector(static_cast<std::size_t>(label - a.labels().begin())));
      continue;
    }
    Vector v;
    try {
      for (const auto& c : split_trimmed(token, ',')) v.push_back(Coefficient::parse(a.field(), c));
    } catch (const Error&) {
      throw Error(ErrorKind::ParseError, "'" + token + "' is neither a basis label nor a coordinate list");
    }
    a.check(v);
    gens.push_back(std::move(v));
  }
  return gens;
}

}  // namespace formint
