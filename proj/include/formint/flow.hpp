#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "formint/parse.hpp"
#include "formint/series.hpp"

namespace formint {

/// A polynomial vector field sum_i f_i d/dx_i on affine space.
struct VectorField {
  Field field;
  VarList state_vars;
  std::vector<MultiPoly> components;

  VectorField() = default;
  VectorField(Field f, VarList vars, std::vector<MultiPoly> comps)
      : field(f), state_vars(std::move(vars)), components(std::move(comps)) {
    if (components.size() != state_vars.size())
      throw Error(ErrorKind::ArityMismatch, std::to_string(state_vars.size()) + " state variables but " +
                                                std::to_string(components.size()) + " components");
    for (auto& c : components) {
      require_same_field(field, c.field());
      c = c.with_vars(state_vars);
    }
  }

  /// Components separated by ';', e.g. "x + y; y^2".
  static VectorField parse(const Field& field, const VarList& vars, std::string_view text) {
    std::vector<MultiPoly> comps;
    for (const auto& piece : split_trimmed(text, ';')) comps.push_back(parse_poly(field, vars, piece));
    return VectorField(field, vars, std::move(comps));
  }

  std::size_t dim() const { return state_vars.size(); }

  bool is_zero() const {
    return std::all_of(components.begin(), components.end(), [](const MultiPoly& p) { return p.is_zero(); });
  }

  friend bool operator==(const VectorField&, const VectorField&) = default;
};

/// Parameter names for the initial point: `a_<var>` for each state variable.
inline VarList initial_var_names(const VarList& state_vars) {
  VarList out;
  for (const auto& v : state_vars) {
    std::string name = "a_" + v;
    if (std::find(state_vars.begin(), state_vars.end(), name) != state_vars.end())
      throw Error(ErrorKind::VariableMismatch, "initial variable '" + name + "' collides with a state variable");
    out.push_back(std::move(name));
  }
  return out;
}

/// The formal flow x(t) of a vector field through a generic initial point a.
/// coordinates[i] lies in k[a][[t]] (or k[a]<t> for divided powers).
struct FlowSolution {
  VectorField vector_field;
  Basis basis = Basis::DividedPower;
  unsigned order = 0;
  VarList initial_vars;
  std::vector<TruncSeries> coordinates;

  std::string formal_var() const { return coordinates.empty() ? "t" : coordinates.front().formal_vars()[0]; }
};

/// Solves x'(t) = f(x(t)), x(0) = a, one degree at a time. The coefficient of
/// degree n+1 is read off [t^n] f(x_{<=n}(t)), divided by n+1 in the monomial
/// basis and taken as is for divided powers (d/dt g_{n+1} = g_n).
inline FlowSolution integrate_flow(const VectorField& v, unsigned order, Basis basis) {
  if (order < 1) throw Error(ErrorKind::OrderMismatch, "integration order must be at least 1");
  if (v.components.size() != v.state_vars.size())
    throw Error(ErrorKind::ArityMismatch, "components/state variables mismatch");
  const Field& field = v.field;
  const auto p = field.characteristic();
  if (basis == Basis::Monomial && p != 0 && p <= order)
    throw CharacteristicObstruction(
        p, std::to_string(p) + " is not invertible in " + field.name() +
               "; the monomial basis needs 1/n for n up to the order (use divided powers)");

  FlowSolution flow;
  flow.vector_field = v;
  flow.basis = basis;
  flow.order = order;
  flow.initial_vars = initial_var_names(v.state_vars);

  const VarList& params = flow.initial_vars;
  for (const auto& a : params) {
    std::vector<MultiPoly> c0{MultiPoly::variable(field, params, a)};
    flow.coordinates.push_back(TruncSeries::univariate(field, params, "t", basis, order, c0));
  }

  for (unsigned n = 0; n < order; ++n) {
    std::map<std::string, TruncSeries> partial;
    for (std::size_t i = 0; i < v.dim(); ++i)
      partial.emplace(v.state_vars[i], flow.coordinates[i].truncated(n));
    SeriesEvaluator eval(partial);
    std::vector<MultiPoly> next;
    for (const auto& f : v.components) {
      MultiPoly c = eval(f).coefficient(n);
      if (basis == Basis::Monomial) c *= Coefficient(field, static_cast<long>(n + 1)).inverse();
      next.push_back(std::move(c));
    }
    for (std::size_t i = 0; i < v.dim(); ++i) flow.coordinates[i].add({n + 1}, next[i]);
  }
  return flow;
}

struct Witness {
  std::size_t coordinate = 0;
  unsigned degree = 0;
  Exponents exponents;
  std::string detail;
};

struct CheckReport {
  std::string name;
  bool pass = true;
  unsigned max_checked_degree = 0;
  std::vector<Witness> witnesses;

  /// Smallest total degree among witnesses, if any.
  std::optional<unsigned> first_failing_degree() const {
    std::optional<unsigned> best;
    for (const auto& w : witnesses)
      if (!best || w.degree < *best) best = w.degree;
    return best;
  }
};

/// Records every exponent where two same-shaped series differ.
inline void collect_differences(const TruncSeries& lhs, const TruncSeries& rhs, std::size_t coordinate,
                                CheckReport& report) {
  TruncSeries diff = lhs - rhs;
  for (const auto& [e, c] : diff.terms()) {
    report.pass = false;
    report.witnesses.push_back({coordinate, total_degree(e), e,
                                "difference " + c.to_string() + " at " + lhs.basis_element(e)});
  }
}

/// Unit axiom: the flow at t = 0 is the identity, x_i(0) = a_i.
inline CheckReport check_counit(const FlowSolution& flow) {
  CheckReport r{"counit", true, 0, {}};
  for (std::size_t i = 0; i < flow.coordinates.size(); ++i) {
    const auto& c = flow.coordinates[i];
    MultiPoly expected = MultiPoly::variable(c.field(), c.params(), flow.initial_vars.at(i));
    MultiPoly got = c.coefficient(0U);
    if (!(got == expected)) {
      r.pass = false;
      r.witnesses.push_back({i, 0, {0}, "constant term " + got.to_string() + ", expected " + expected.to_string()});
    }
  }
  return r;
}

/// x_i'(t) = f_i(x(t)) modulo terms of degree >= N.
inline CheckReport check_tangency(const FlowSolution& flow) {
  CheckReport r{"tangency", true, flow.order == 0 ? 0 : flow.order - 1, {}};
  if (flow.order == 0) return r;
  const auto& v = flow.vector_field;
  std::map<std::string, TruncSeries> images;
  for (std::size_t i = 0; i < v.dim(); ++i) images.emplace(v.state_vars[i], flow.coordinates[i]);
  SeriesEvaluator eval(images);
  for (std::size_t i = 0; i < v.dim(); ++i) {
    TruncSeries lhs = series_derivative(flow.coordinates[i], flow.formal_var());
    TruncSeries rhs = eval(v.components[i]).truncated(flow.order - 1);
    collect_differences(lhs, rhs, i, r);
  }
  return r;
}

/// Which one-dimensional formal group a coaction is for; fixes the law used
/// in the coassociativity check.
enum class GroupLaw { Additive, Multiplicative };

/// Compares Phi(s, Phi(t, a)) with Phi(s (+) t, a) for coordinates given as
/// series in t over k[params]; params[j] is substituted by coordinates[j](t).
/// Both sides are bivariate series in (s, t) truncated at total degree N.
inline CheckReport check_coaction_coassociativity(const std::vector<TruncSeries>& coordinates,
                                                  const VarList& params, GroupLaw law) {
  CheckReport r{"coassociativity", true, 0, {}};
  if (coordinates.empty()) return r;
  const TruncSeries& shape = coordinates.front();
  r.max_checked_degree = shape.order();
  const std::string t = shape.formal_vars()[0];
  const std::string s = t == "s" ? "u" : "s";
  const Basis basis = shape.basis()[0];

  SeriesEvaluator eval(params, coordinates);

  std::optional<TruncSeries> law_series;
  if (law == GroupLaw::Multiplicative) {
    if (basis != Basis::Monomial)
      throw Error(ErrorKind::BasisMismatch, "multiplicative law is stated in the monomial basis");
    TruncSeries u(shape.field(), shape.params(), {s, t}, {basis, basis}, shape.order());
    MultiPoly one = shape.zero_coefficient().constant_like(Coefficient::one(shape.field()));
    u.add({1, 0}, one);
    u.add({0, 1}, one);
    u.add({1, 1}, one);
    law_series = std::move(u);
  }

  for (std::size_t i = 0; i < coordinates.size(); ++i) {
    const TruncSeries& phi = coordinates[i];
    TruncSeries lhs(phi.field(), phi.params(), {s, t}, {basis, basis}, phi.order());
    for (const auto& [e, c] : phi.terms()) {
      const std::uint32_t n = e[0];
      const TruncSeries inner = eval(c);
      for (const auto& [m, d] : inner.terms()) lhs.add({n, m[0]}, d);
    }
    TruncSeries rhs = law_series ? series_compose(phi, *law_series) : series_add_substitute(phi, s);
    collect_differences(lhs, rhs, i, r);
  }
  return r;
}

inline CheckReport check_coassociativity(const FlowSolution& flow) {
  return check_coaction_coassociativity(flow.coordinates, flow.initial_vars, GroupLaw::Additive);
}

enum class LeafClass { Constant, LinearlyImmersive, Degenerate };

inline const char* to_string(LeafClass c) {
  switch (c) {
    case LeafClass::Constant: return "Constant";
    case LeafClass::LinearlyImmersive: return "LinearlyImmersive";
    case LeafClass::Degenerate: return "Degenerate";
  }
  return "?";
}

struct FormalLeaf {
  std::vector<TruncSeries> leaf;  // coefficients are constants (no parameters)
  LeafClass classification = LeafClass::Constant;
};

/// Specialises the flow at a point. Constant: nothing above degree 0.
/// LinearlyImmersive: nonzero velocity. Degenerate: zero velocity but a
/// nonzero higher term.
inline FormalLeaf formal_leaf(const FlowSolution& flow, const std::vector<Coefficient>& point) {
  if (point.size() != flow.initial_vars.size())
    throw Error(ErrorKind::ArityMismatch, "point has " + std::to_string(point.size()) + " coordinates, expected " +
                                              std::to_string(flow.initial_vars.size()));
  const Field& field = flow.vector_field.field;
  for (const auto& c : point) require_same_field(field, c.field());
  FormalLeaf out;
  bool linear = false, higher = false;
  for (const auto& coord : flow.coordinates) {
    TruncSeries leaf = coord.map_coefficients(field, {}, [&](const MultiPoly& c) {
      return MultiPoly::constant(field, {}, poly_evaluate(c, point));
    });
    for (const auto& [e, c] : leaf.terms()) {
      if (e[0] == 1) linear = true;
      else if (e[0] > 1) higher = true;
    }
    out.leaf.push_back(std::move(leaf));
  }
  out.classification = linear ? LeafClass::LinearlyImmersive
                       : higher ? LeafClass::Degenerate
                                : LeafClass::Constant;
  return out;
}

}  // namespace formint
