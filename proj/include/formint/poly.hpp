#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "formint/field.hpp"

namespace formint {

using Exponents = std::vector<std::uint32_t>;
using VarList = std::vector<std::string>;

inline std::uint32_t total_degree(const Exponents& e) {
  return std::accumulate(e.begin(), e.end(), std::uint32_t{0});
}

/// Graded lexicographic order, largest first: higher total degree wins, ties
/// broken by the first differing exponent.
struct GrlexGreater {
  bool operator()(const Exponents& a, const Exponents& b) const {
    auto da = total_degree(a), db = total_degree(b);
    if (da != db) return da > db;
    return a > b;
  }
};

inline std::string join(const VarList& names, const char* sep = ",") {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += sep;
    out += names[i];
  }
  return out;
}

/// Sparse multivariate polynomial over a Field in a fixed, ordered list of
/// variables. Zero coefficients are never stored, so structural equality is
/// polynomial equality.
class MultiPoly {
 public:
  using TermMap = std::map<Exponents, Coefficient, GrlexGreater>;

  MultiPoly() : vars_(std::make_shared<const VarList>()) {}
  MultiPoly(const Field& field, VarList vars)
      : field_(field), vars_(std::make_shared<const VarList>(std::move(vars))) {
    for (std::size_t i = 0; i < vars_->size(); ++i)
      for (std::size_t j = i + 1; j < vars_->size(); ++j)
        if ((*vars_)[i] == (*vars_)[j])
          throw Error(ErrorKind::VariableMismatch, "duplicate variable '" + (*vars_)[i] + "'");
  }

  static MultiPoly constant(const Field& field, VarList vars, const Coefficient& c) {
    MultiPoly p(field, std::move(vars));
    p.add_term(Exponents(p.nvars(), 0), c);
    return p;
  }
  static MultiPoly constant(const Field& field, VarList vars, long c) {
    return constant(field, std::move(vars), Coefficient(field, c));
  }

  static MultiPoly variable(const Field& field, VarList vars, const std::string& name) {
    MultiPoly p(field, std::move(vars));
    Exponents e(p.nvars(), 0);
    e[p.index_of(name)] = 1;
    p.add_term(e, Coefficient::one(field));
    return p;
  }

  /// A zero polynomial sharing this one's field and variables.
  MultiPoly zero_like() const {
    MultiPoly p;
    p.field_ = field_;
    p.vars_ = vars_;
    return p;
  }
  MultiPoly constant_like(const Coefficient& c) const {
    MultiPoly p = zero_like();
    p.add_term(Exponents(nvars(), 0), c);
    return p;
  }

  const Field& field() const noexcept { return field_; }
  const VarList& vars() const noexcept { return *vars_; }
  std::size_t nvars() const noexcept { return vars_->size(); }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
  }

  Coefficient coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Coefficient::zero(field_) : it->second;
  }
  Coefficient constant_term() const { return coefficient(Exponents(nvars(), 0)); }

  /// Total degree; -1 for the zero polynomial.
  long degree() const {
    return terms_.empty() ? -1 : static_cast<long>(total_degree(terms_.begin()->first));
  }

  std::size_t index_of(const std::string& name) const {
    auto it = std::find(vars_->begin(), vars_->end(), name);
    if (it == vars_->end())
      throw Error(ErrorKind::UnknownVariable, "'" + name + "' not in {" + join(*vars_) + "}");
    return static_cast<std::size_t>(it - vars_->begin());
  }
  bool has_var(const std::string& name) const {
    return std::find(vars_->begin(), vars_->end(), name) != vars_->end();
  }

  /// Adds c * x^e in place, keeping canonical form.
  void add_term(const Exponents& e, const Coefficient& c) {
    require_same_field(field_, c.field());
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  void require_compatible(const MultiPoly& o) const {
    require_same_field(field_, o.field_);
    if (vars_ != o.vars_ && *vars_ != *o.vars_)
      throw Error(ErrorKind::VariableMismatch,
                  "{" + join(*vars_) + "} vs {" + join(*o.vars_) + "}");
  }

  MultiPoly& operator+=(const MultiPoly& o) {
    require_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  MultiPoly& operator-=(const MultiPoly& o) {
    require_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  MultiPoly& operator*=(const Coefficient& c) {
    require_same_field(field_, c.field());
    if (c.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
  }

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(MultiPoly a, const Coefficient& c) { return a *= c; }
  friend MultiPoly operator*(const Coefficient& c, MultiPoly a) { return a *= c; }
  MultiPoly operator-() const { return *this * (-Coefficient::one(field_)); }

  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    a.require_compatible(b);
    MultiPoly out = a.zero_like();
    if (a.is_zero() || b.is_zero()) return out;
    Exponents e(a.nvars());
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        out.add_term(e, ca * cb);
      }
    }
    return out;
  }
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

  MultiPoly pow(unsigned n) const {
    MultiPoly result = constant_like(Coefficient::one(field_)), base = *this;
    while (n) {
      if (n & 1U) result *= base;
      n >>= 1U;
      if (n) base *= base;
    }
    return result;
  }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.field_ == b.field_ && *a.vars_ == *b.vars_ && a.terms_ == b.terms_;
  }

  /// The same polynomial viewed in a different variable list; every variable
  /// that occurs must be present in `vars`.
  MultiPoly with_vars(const VarList& vars) const {
    MultiPoly out(field_, vars);
    std::vector<std::size_t> map(nvars());
    for (std::size_t i = 0; i < nvars(); ++i) {
      auto it = std::find(vars.begin(), vars.end(), (*vars_)[i]);
      map[i] = it == vars.end() ? vars.size() : static_cast<std::size_t>(it - vars.begin());
    }
    for (const auto& [e, c] : terms_) {
      Exponents ne(vars.size(), 0);
      for (std::size_t i = 0; i < nvars(); ++i) {
        if (e[i] == 0) continue;
        if (map[i] == vars.size())
          throw Error(ErrorKind::VariableMismatch,
                      "'" + (*vars_)[i] + "' occurs but is not in {" + join(vars) + "}");
        ne[map[i]] = e[i];
      }
      out.add_term(ne, c);
    }
    return out;
  }

  /// Coefficientwise image in another field (Q -> F_p reduction).
  MultiPoly reduce_to(const Field& target) const {
    MultiPoly out = zero_like();
    out.field_ = target;
    for (const auto& [e, c] : terms_) out.add_term(e, c.reduce_to(target));
    return out;
  }

  bool has_integral_coefficients() const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [](const auto& t) { return t.second.is_integral(); });
  }

  std::string to_string() const;

 private:
  Field field_;
  std::shared_ptr<const VarList> vars_;
  TermMap terms_;
};

inline MultiPoly poly_mul(const MultiPoly& f, const MultiPoly& g) { return f * g; }

inline MultiPoly poly_partial(const MultiPoly& f, const std::string& var) {
  const std::size_t k = f.index_of(var);
  MultiPoly out = f.zero_like();
  for (const auto& [e, c] : f.terms()) {
    if (e[k] == 0) continue;
    Exponents ne = e;
    --ne[k];
    out.add_term(ne, c * Coefficient(f.field(), static_cast<long>(e[k])));
  }
  return out;
}

/// Ring homomorphism sending each variable of f to its image. All images must
/// share one field and one variable list; the result lives in that list.
inline MultiPoly poly_substitute(const MultiPoly& f, const std::map<std::string, MultiPoly>& assignment) {
  std::vector<const MultiPoly*> images(f.nvars());
  const MultiPoly* first = nullptr;
  for (std::size_t i = 0; i < f.nvars(); ++i) {
    auto it = assignment.find(f.vars()[i]);
    if (it == assignment.end())
      throw Error(ErrorKind::MissingAssignment, "no image for '" + f.vars()[i] + "'");
    images[i] = &it->second;
    require_same_field(f.field(), it->second.field());
    if (first) first->require_compatible(it->second);
    else first = &it->second;
  }
  if (!first) {
    if (assignment.empty()) return f;
    first = &assignment.begin()->second;
    require_same_field(f.field(), first->field());
  }
  // Powers are cached per variable so each term costs one product per factor.
  std::vector<std::vector<MultiPoly>> powers(f.nvars());
  auto power = [&](std::size_t i, std::uint32_t n) -> const MultiPoly& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(first->constant_like(Coefficient::one(f.field())));
    while (cache.size() <= n) cache.push_back(cache.back() * *images[i]);
    return cache[n];
  };
  MultiPoly out = first->zero_like();
  for (const auto& [e, c] : f.terms()) {
    MultiPoly term = first->constant_like(c);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i]) term *= power(i, e[i]);
    out += term;
  }
  return out;
}

/// Evaluates at a point given in variable order.
inline Coefficient poly_evaluate(const MultiPoly& f, const std::vector<Coefficient>& point) {
  if (point.size() != f.nvars())
    throw Error(ErrorKind::ArityMismatch, "expected " + std::to_string(f.nvars()) + " values, got " +
                                              std::to_string(point.size()));
  Coefficient sum = Coefficient::zero(f.field());
  for (const auto& [e, c] : f.terms()) {
    Coefficient term = c;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i]) term *= point[i].pow(e[i]);
    sum += term;
  }
  return sum;
}

inline std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    bool negative = c.is_negative();
    Coefficient mag = negative ? -c : c;
    if (first) out += negative ? "-" : "";
    else out += negative ? " - " : " + ";
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += (*vars_)[i];
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty()) out += mag.to_string();
    else if (mag.is_one()) out += mono;
    else out += mag.to_string() + "*" + mono;
  }
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const MultiPoly& p) { return os << p.to_string(); }

}  // namespace formint
