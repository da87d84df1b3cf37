#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "formint/poly.hpp"

namespace formint {

enum class Basis { Monomial, DividedPower };

inline const char* to_string(Basis b) { return b == Basis::Monomial ? "monomial" : "divided"; }

inline Basis parse_basis(std::string_view text) {
  if (text == "monomial") return Basis::Monomial;
  if (text == "divided" || text == "divided-power" || text == "dp") return Basis::DividedPower;
  throw Error(ErrorKind::ParseError, "unknown basis '" + std::string(text) + "'");
}

/// Binomial coefficients C(n, k), 0 <= k <= n <= nmax, built by the Pascal
/// recurrence directly in the field.
class BinomialTable {
 public:
  BinomialTable(const Field& field, unsigned nmax) : rows_(nmax + 1) {
    for (unsigned n = 0; n <= nmax; ++n) {
      rows_[n].assign(n + 1, Coefficient::one(field));
      for (unsigned k = 1; k < n; ++k) rows_[n][k] = rows_[n - 1][k - 1] + rows_[n - 1][k];
    }
  }
  const Coefficient& operator()(unsigned n, unsigned k) const { return rows_.at(n).at(k); }
  unsigned max_n() const { return static_cast<unsigned>(rows_.size()) - 1; }

 private:
  std::vector<std::vector<Coefficient>> rows_;
};

/// Ascending total degree, and within a degree the earlier formal variable
/// first (s^2, s*t, t^2).
struct SeriesOrder {
  bool operator()(const Exponents& a, const Exponents& b) const {
    auto da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    return a > b;
  }
};

/// A power series in one or two formal variables, truncated at total degree
/// `order`, with coefficients in a polynomial ring k[params]. Each formal
/// variable carries its own basis tag: t^n or the divided power g_n(t).
class TruncSeries {
 public:
  using CoeffMap = std::map<Exponents, MultiPoly, SeriesOrder>;

  TruncSeries() = default;

  TruncSeries(const Field& field, VarList params, VarList formal_vars, std::vector<Basis> basis,
              unsigned order)
      : field_(field),
        params_(std::move(params)),
        formal_vars_(std::move(formal_vars)),
        basis_(std::move(basis)),
        order_(order) {
    if (formal_vars_.empty() || formal_vars_.size() > 2)
      throw Error(ErrorKind::ArityMismatch, "series support one or two formal variables");
    if (basis_.size() != formal_vars_.size())
      throw Error(ErrorKind::ArityMismatch, "one basis tag per formal variable");
    if (formal_vars_.size() == 2 && formal_vars_[0] == formal_vars_[1])
      throw Error(ErrorKind::VariableMismatch, "duplicate formal variable '" + formal_vars_[0] + "'");
  }

  /// Univariate series from its coefficient list c_0, c_1, ...; entries past
  /// `order` are discarded.
  static TruncSeries univariate(const Field& field, VarList params, std::string var, Basis basis,
                                unsigned order, const std::vector<MultiPoly>& coeffs) {
    TruncSeries s(field, std::move(params), {std::move(var)}, {basis}, order);
    for (std::size_t n = 0; n < coeffs.size(); ++n) s.add({static_cast<std::uint32_t>(n)}, coeffs[n]);
    return s;
  }

  /// Same shape, zero coefficients.
  TruncSeries zero_like() const {
    TruncSeries s = *this;
    s.coeffs_.clear();
    return s;
  }
  TruncSeries constant_like(const MultiPoly& c) const {
    TruncSeries s = zero_like();
    s.add(Exponents(nformal(), 0), c);
    return s;
  }

  const Field& field() const noexcept { return field_; }
  const VarList& params() const noexcept { return params_; }
  const VarList& formal_vars() const noexcept { return formal_vars_; }
  const std::vector<Basis>& basis() const noexcept { return basis_; }
  std::size_t nformal() const noexcept { return formal_vars_.size(); }
  unsigned order() const noexcept { return order_; }
  const CoeffMap& terms() const noexcept { return coeffs_; }

  MultiPoly zero_coefficient() const { return MultiPoly(field_, params_); }

  MultiPoly coefficient(const Exponents& e) const {
    auto it = coeffs_.find(e);
    return it == coeffs_.end() ? zero_coefficient() : it->second;
  }
  /// Coefficient of t^n (or g_n(t)) for a univariate series.
  MultiPoly coefficient(unsigned n) const { return coefficient(Exponents{n}); }

  bool is_zero() const noexcept { return coeffs_.empty(); }

  /// Adds c at exponent e; silently drops terms beyond the truncation order.
  void add(const Exponents& e, const MultiPoly& c) {
    if (e.size() != nformal()) throw Error(ErrorKind::ArityMismatch, "exponent length");
    if (total_degree(e) > order_ || c.is_zero()) return;
    if (c.vars() != params_) {
      require_same_field(field_, c.field());
      throw Error(ErrorKind::VariableMismatch,
                  "coefficient in {" + join(c.vars()) + "}, series over {" + join(params_) + "}");
    }
    require_same_field(field_, c.field());
    auto [it, inserted] = coeffs_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) coeffs_.erase(it);
    }
  }

  void set(const Exponents& e, const MultiPoly& c) {
    coeffs_.erase(e);
    add(e, c);
  }

  void require_compatible(const TruncSeries& o) const {
    require_same_field(field_, o.field_);
    if (formal_vars_ != o.formal_vars_)
      throw Error(ErrorKind::VariableMismatch, "formal variables {" + join(formal_vars_) + "} vs {" +
                                                   join(o.formal_vars_) + "}");
    if (basis_ != o.basis_) throw Error(ErrorKind::BasisMismatch, "series bases differ");
    if (order_ != o.order_)
      throw Error(ErrorKind::OrderMismatch,
                  std::to_string(order_) + " vs " + std::to_string(o.order_));
    if (params_ != o.params_)
      throw Error(ErrorKind::VariableMismatch,
                  "coefficient rings {" + join(params_) + "} vs {" + join(o.params_) + "}");
  }

  TruncSeries& operator+=(const TruncSeries& o) {
    require_compatible(o);
    for (const auto& [e, c] : o.coeffs_) add(e, c);
    return *this;
  }
  TruncSeries& operator-=(const TruncSeries& o) {
    require_compatible(o);
    for (const auto& [e, c] : o.coeffs_) add(e, -c);
    return *this;
  }
  friend TruncSeries operator+(TruncSeries a, const TruncSeries& b) { return a += b; }
  friend TruncSeries operator-(TruncSeries a, const TruncSeries& b) { return a -= b; }

  /// Multiplies every coefficient by a polynomial in the parameters.
  TruncSeries scaled(const MultiPoly& c) const {
    TruncSeries out = zero_like();
    for (const auto& [e, v] : coeffs_) out.add(e, v * c);
    return out;
  }

  /// Drops every term of total degree above `order` and lowers the bound.
  TruncSeries truncated(unsigned order) const {
    if (order > order_)
      throw Error(ErrorKind::OrderMismatch, "cannot raise order " + std::to_string(order_) + " to " +
                                                std::to_string(order));
    TruncSeries out = *this;
    out.order_ = order;
    std::erase_if(out.coeffs_, [&](const auto& t) { return total_degree(t.first) > order; });
    return out;
  }

  /// Applies a map to every coefficient; the results must share `params`.
  template <typename Fn>
  TruncSeries map_coefficients(const Field& field, const VarList& params, Fn&& fn) const {
    TruncSeries out(field, params, formal_vars_, basis_, order_);
    for (const auto& [e, c] : coeffs_) out.add(e, fn(c));
    return out;
  }

  friend bool operator==(const TruncSeries& a, const TruncSeries& b) {
    return a.field_ == b.field_ && a.params_ == b.params_ && a.formal_vars_ == b.formal_vars_ &&
           a.basis_ == b.basis_ && a.order_ == b.order_ && a.coeffs_ == b.coeffs_;
  }

  /// Monomial basis as `c * t^n`, divided powers as `c * g_n(t)`.
  std::string to_string() const {
    if (coeffs_.empty()) return "0";
    std::string out;
    for (const auto& [e, c] : coeffs_) {
      if (!out.empty()) out += " + ";
      std::string element = basis_element(e);
      std::string coeff = c.size() > 1 ? "(" + c.to_string() + ")" : c.to_string();
      out += element.empty() ? coeff : coeff + " * " + element;
    }
    return out;
  }

  std::string basis_element(const Exponents& e) const {
    std::string out;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!out.empty()) out += "*";
      const std::string& v = formal_vars_[i];
      if (basis_[i] == Basis::DividedPower) out += "g_" + std::to_string(e[i]) + "(" + v + ")";
      else out += e[i] == 1 ? v : v + "^" + std::to_string(e[i]);
    }
    return out;
  }

 private:
  Field field_;
  VarList params_;
  VarList formal_vars_{"t"};
  std::vector<Basis> basis_{Basis::Monomial};
  unsigned order_ = 0;
  CoeffMap coeffs_;
};

inline std::ostream& operator<<(std::ostream& os, const TruncSeries& s) { return os << s.to_string(); }

/// Truncated product. Per formal variable, t^i t^j = t^(i+j) and
/// g_i g_j = C(i+j, i) g_(i+j).
inline TruncSeries series_mul(const TruncSeries& a, const TruncSeries& b) {
  a.require_compatible(b);
  TruncSeries out = a.zero_like();
  const unsigned order = a.order();
  const bool any_divided = std::any_of(a.basis().begin(), a.basis().end(),
                                       [](Basis x) { return x == Basis::DividedPower; });
  const BinomialTable binom(a.field(), any_divided ? order : 0);
  Exponents e(a.nformal());
  for (const auto& [ea, ca] : a.terms()) {
    const auto da = total_degree(ea);
    for (const auto& [eb, cb] : b.terms()) {
      if (da + total_degree(eb) > order) break;
      Coefficient scale = Coefficient::one(a.field());
      for (std::size_t i = 0; i < e.size(); ++i) {
        e[i] = ea[i] + eb[i];
        if (a.basis()[i] == Basis::DividedPower) scale *= binom(e[i], ea[i]);
      }
      if (scale.is_zero()) continue;
      out.add(e, (ca * cb) * scale);
    }
  }
  return out;
}

/// d/dvar; t^n -> n t^(n-1), g_n -> g_(n-1). The result has order N-1.
inline TruncSeries series_derivative(const TruncSeries& s, const std::string& var) {
  auto it = std::find(s.formal_vars().begin(), s.formal_vars().end(), var);
  if (it == s.formal_vars().end())
    throw Error(ErrorKind::UnknownVariable, "'" + var + "' is not a formal variable");
  if (s.order() == 0) throw Error(ErrorKind::OrderMismatch, "cannot differentiate an order-0 series");
  const auto k = static_cast<std::size_t>(it - s.formal_vars().begin());
  TruncSeries out(s.field(), s.params(), s.formal_vars(), s.basis(), s.order() - 1);
  for (const auto& [e, c] : s.terms()) {
    if (e[k] == 0) continue;
    Exponents ne = e;
    --ne[k];
    if (s.basis()[k] == Basis::DividedPower) out.add(ne, c);
    else out.add(ne, c * Coefficient(s.field(), static_cast<long>(e[k])));
  }
  return out;
}

/// Rewrites a univariate series through t^n = n! g_n(t).
inline TruncSeries series_convert_basis(const TruncSeries& s, Basis target) {
  if (s.nformal() != 1) throw Error(ErrorKind::ArityMismatch, "basis conversion needs one formal variable");
  if (s.basis()[0] == target) return s;
  std::vector<Coefficient> fact{Coefficient::one(s.field())};
  for (unsigned n = 1; n <= s.order(); ++n) fact.push_back(fact.back() * Coefficient(s.field(), static_cast<long>(n)));
  if (target == Basis::Monomial) {
    for (unsigned n = 0; n <= s.order(); ++n)
      if (fact[n].is_zero())
        throw CharacteristicObstruction(
            n, std::to_string(n) + "! is not invertible in " + s.field().name());
  }
  TruncSeries out(s.field(), s.params(), s.formal_vars(), {target}, s.order());
  for (const auto& [e, c] : s.terms()) {
    const auto& f = fact[e[0]];
    out.add(e, target == Basis::DividedPower ? c * f : c * f.inverse());
  }
  return out;
}

/// Pulls a univariate series in t back along the additive law t -> s + t:
/// g_n(s+t) = sum g_i(s) g_j(t) and (s+t)^n by the binomial theorem. The
/// result is in (new_var, t), truncated at total degree N.
inline TruncSeries series_add_substitute(const TruncSeries& s, const std::string& new_var = "s") {
  if (s.nformal() != 1) throw Error(ErrorKind::ArityMismatch, "additive substitution needs one formal variable");
  const Basis b = s.basis()[0];
  TruncSeries out(s.field(), s.params(), {new_var, s.formal_vars()[0]}, {b, b}, s.order());
  const BinomialTable binom(s.field(), b == Basis::Monomial ? s.order() : 0);
  for (const auto& [e, c] : s.terms()) {
    const unsigned n = e[0];
    for (unsigned i = 0; i <= n; ++i) {
      if (b == Basis::DividedPower) out.add({i, n - i}, c);
      else if (!binom(n, i).is_zero()) out.add({i, n - i}, c * binom(n, i));
    }
  }
  return out;
}

/// Evaluates polynomials at a fixed tuple of series. Monomials in the images
/// are cached, so evaluating many polynomials over the same images costs one
/// series product per distinct monomial.
class SeriesEvaluator {
 public:
  /// `images[i]` is the image of `vars[i]`; all images must share shape.
  SeriesEvaluator(VarList vars, std::vector<TruncSeries> images)
      : vars_(std::move(vars)), images_(std::move(images)) {
    if (images_.empty()) throw Error(ErrorKind::MissingAssignment, "no series images given");
    if (vars_.size() != images_.size()) throw Error(ErrorKind::ArityMismatch, "one image per variable");
    for (const auto& img : images_) images_.front().require_compatible(img);
    const auto& first = images_.front();
    unit_ = first.zero_coefficient().constant_like(Coefficient::one(first.field()));
    monomials_.emplace(Exponents(vars_.size(), 0), first.constant_like(unit_));
  }

  SeriesEvaluator(const std::map<std::string, TruncSeries>& assignment)
      : SeriesEvaluator(keys(assignment), values(assignment)) {}

  const TruncSeries& shape() const { return images_.front(); }

  TruncSeries operator()(const MultiPoly& f) {
    require_same_field(f.field(), shape().field());
    std::vector<std::size_t> slot(f.nvars());
    for (std::size_t i = 0; i < f.nvars(); ++i) {
      auto it = std::find(vars_.begin(), vars_.end(), f.vars()[i]);
      if (it == vars_.end())
        throw Error(ErrorKind::MissingAssignment, "no image for '" + f.vars()[i] + "'");
      slot[i] = static_cast<std::size_t>(it - vars_.begin());
    }
    TruncSeries out = shape().zero_like();
    Exponents e(vars_.size());
    for (const auto& [fe, c] : f.terms()) {
      std::fill(e.begin(), e.end(), 0);
      for (std::size_t i = 0; i < fe.size(); ++i) e[slot[i]] += fe[i];
      for (const auto& [k, v] : monomial(e).terms()) out.add(k, v * c);
    }
    return out;
  }

 private:
  static VarList keys(const std::map<std::string, TruncSeries>& m) {
    VarList out;
    for (const auto& kv : m) out.push_back(kv.first);
    return out;
  }
  static std::vector<TruncSeries> values(const std::map<std::string, TruncSeries>& m) {
    std::vector<TruncSeries> out;
    for (const auto& kv : m) out.push_back(kv.second);
    return out;
  }

  const TruncSeries& monomial(const Exponents& e) {
    if (auto it = monomials_.find(e); it != monomials_.end()) return it->second;
    std::size_t k = e.size();
    while (e[k - 1] == 0) --k;
    Exponents lower = e;
    --lower[k - 1];
    TruncSeries value = series_mul(monomial(lower), images_[k - 1]);
    return monomials_.emplace(e, std::move(value)).first->second;
  }

  VarList vars_;
  std::vector<TruncSeries> images_;
  MultiPoly unit_;
  std::map<Exponents, TruncSeries> monomials_;
};

/// Evaluates f at series: each variable of f goes to its image. All images
/// must share formal variables, basis, order and coefficient ring.
inline TruncSeries poly_eval_series(const MultiPoly& f, const std::map<std::string, TruncSeries>& assignment) {
  for (const auto& v : f.vars())
    if (!assignment.contains(v)) throw Error(ErrorKind::MissingAssignment, "no image for '" + v + "'");
  return SeriesEvaluator(assignment)(f);
}

/// Composition S(U) for a univariate monomial-basis S and a monomial-basis U
/// with zero constant term; the result lives in U's formal variables.
inline TruncSeries series_compose(const TruncSeries& s, const TruncSeries& inner) {
  if (s.nformal() != 1 || s.basis()[0] != Basis::Monomial)
    throw Error(ErrorKind::BasisMismatch, "composition needs a univariate monomial-basis series");
  for (Basis b : inner.basis())
    if (b != Basis::Monomial) throw Error(ErrorKind::BasisMismatch, "inner series must use the monomial basis");
  if (!inner.coefficient(Exponents(inner.nformal(), 0)).is_zero())
    throw Error(ErrorKind::OrderMismatch, "inner series must have zero constant term");
  require_same_field(s.field(), inner.field());
  if (s.params() != inner.params())
    throw Error(ErrorKind::VariableMismatch, "coefficient rings differ");
  if (s.order() != inner.order())
    throw Error(ErrorKind::OrderMismatch, std::to_string(s.order()) + " vs " + std::to_string(inner.order()));
  TruncSeries out = inner.zero_like();
  TruncSeries power = inner.constant_like(s.zero_coefficient().constant_like(Coefficient::one(s.field())));
  for (unsigned n = 0; n <= s.order(); ++n) {
    out += power.scaled(s.coefficient(n));
    power = series_mul(power, inner);
  }
  return out;
}

}  // namespace formint
