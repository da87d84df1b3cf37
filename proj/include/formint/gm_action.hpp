#pragma once

#include <string>
#include <vector>

#include "formint/flow.hpp"

namespace formint {

enum class GroupType { Ga, GaSharp, Gm };

inline const char* to_string(GroupType g) {
  switch (g) {
    case GroupType::Ga: return "Ga";
    case GroupType::GaSharp: return "GaSharp";
    case GroupType::Gm: return "Gm";
  }
  return "?";
}

/// A truncated coaction k[x] -> k[x][[t]] of a one-dimensional formal group.
/// coaction[i] is the image of state_vars[i], with coefficients in k[x].
struct FormalAction {
  GroupType group = GroupType::Gm;
  Field field;
  VarList state_vars;
  std::vector<TruncSeries> coaction;
  unsigned order = 0;
  long weight = 0;  // Gm only
};

struct AnchorField {
  VectorField field;
  bool is_zero = true;
};

/// x -> (1+t)^n x, expanded with binomial coefficients of the field.
inline FormalAction gm_action(unsigned weight, const Field& field, unsigned order,
                              const std::string& var = "x") {
  if (order < 1) throw Error(ErrorKind::OrderMismatch, "action order must be at least 1");
  const VarList vars{var};
  const MultiPoly x = MultiPoly::variable(field, vars, var);
  const BinomialTable binom(field, weight);
  std::vector<MultiPoly> coeffs;
  for (unsigned k = 0; k <= std::min(weight, order); ++k) coeffs.push_back(x * binom(weight, k));
  FormalAction a;
  a.group = GroupType::Gm;
  a.field = field;
  a.state_vars = vars;
  a.coaction.push_back(TruncSeries::univariate(field, vars, "t", Basis::Monomial, order, coeffs));
  a.order = order;
  a.weight = weight;
  return a;
}

/// Reads a flow as the coaction x_i -> x_i(t) by renaming a_i back to x_i.
inline FormalAction action_from_flow(const FlowSolution& flow) {
  const auto& v = flow.vector_field;
  std::map<std::string, MultiPoly> rename;
  for (std::size_t i = 0; i < v.dim(); ++i)
    rename.emplace(flow.initial_vars[i], MultiPoly::variable(v.field, v.state_vars, v.state_vars[i]));
  FormalAction a;
  a.group = flow.basis == Basis::Monomial ? GroupType::Ga : GroupType::GaSharp;
  a.field = v.field;
  a.state_vars = v.state_vars;
  a.order = flow.order;
  for (const auto& c : flow.coordinates)
    a.coaction.push_back(c.map_coefficients(v.field, v.state_vars,
                                            [&](const MultiPoly& p) { return poly_substitute(p, rename); }));
  return a;
}

/// The infinitesimal generator: the degree-1 coefficient of each coordinate
/// (of t, or of g_1(t) for divided powers).
inline AnchorField anchor(const FormalAction& action) {
  if (action.order < 1) throw Error(ErrorKind::OrderMismatch, "anchor needs order at least 1");
  std::vector<MultiPoly> comps;
  for (const auto& c : action.coaction) comps.push_back(c.coefficient(1U));
  AnchorField out;
  out.field = VectorField(action.field, action.state_vars, std::move(comps));
  out.is_zero = out.field.is_zero();
  return out;
}

/// Pulls a Gm action back along z -> z^l, i.e. t -> (1+t)^l - 1.
inline FormalAction restrict_power(const FormalAction& action, unsigned l) {
  if (action.group != GroupType::Gm) throw Error(ErrorKind::GroupMismatch, "restriction needs a Gm action");
  if (l < 1) throw Error(ErrorKind::ArityMismatch, "restriction exponent must be positive");
  FormalAction out = action;
  out.weight = action.weight * static_cast<long>(l);
  out.coaction.clear();
  for (const auto& c : action.coaction) {
    const BinomialTable binom(action.field, l);
    std::vector<MultiPoly> inner{c.zero_coefficient()};
    for (unsigned k = 1; k <= l; ++k) inner.push_back(c.zero_coefficient().constant_like(binom(l, k)));
    TruncSeries u = TruncSeries::univariate(c.field(), c.params(), c.formal_vars()[0], Basis::Monomial,
                                            c.order(), inner);
    out.coaction.push_back(series_compose(c, u));
  }
  return out;
}

/// True iff every coefficient of degree 1..order vanishes. `order` may not
/// exceed the order the action was computed to.
inline bool action_is_trivial(const FormalAction& action, unsigned order) {
  if (order > action.order)
    throw Error(ErrorKind::OrderMismatch, "action known to order " + std::to_string(action.order) +
                                              ", asked about order " + std::to_string(order));
  for (const auto& c : action.coaction)
    for (const auto& [e, v] : c.terms())
      if (e[0] >= 1 && e[0] <= order) return false;
  return true;
}

inline CheckReport check_action_counit(const FormalAction& action) {
  CheckReport r{"counit", true, 0, {}};
  for (std::size_t i = 0; i < action.coaction.size(); ++i) {
    const auto& c = action.coaction[i];
    MultiPoly expected = MultiPoly::variable(action.field, c.params(), action.state_vars[i]);
    if (!(c.coefficient(0U) == expected)) {
      r.pass = false;
      r.witnesses.push_back({i, 0, {0}, "constant term " + c.coefficient(0U).to_string()});
    }
  }
  return r;
}

/// Acting twice equals acting once by the group law (s+t, or s+t+st for Gm).
inline CheckReport check_action_coassociativity(const FormalAction& action) {
  return check_coaction_coassociativity(action.coaction, action.state_vars,
                                        action.group == GroupType::Gm ? GroupLaw::Multiplicative
                                                                      : GroupLaw::Additive);
}

}  // namespace formint
