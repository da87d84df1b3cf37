#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "formint/linalg.hpp"
#include "formint/parse.hpp"
#include "formint/poly.hpp"

namespace formint {

/// A finite-dimensional commutative unital algebra given by structure
/// constants e_i e_j = sum_k c_ij^k e_k. The constructor rejects tables that
/// are not commutative, associative and unital.
class FiniteAlgebra {
 public:
  FiniteAlgebra(const Field& field, std::vector<std::string> labels, std::vector<Coefficient> table, Vector unit)
      : field_(field), labels_(std::move(labels)), table_(std::move(table)), unit_(std::move(unit)) {
    const std::size_t n = labels_.size();
    if (n == 0) throw Error(ErrorKind::InvalidAlgebra, "dimension must be positive");
    if (table_.size() != n * n * n)
      throw Error(ErrorKind::DimensionMismatch, "structure table needs dim^3 entries");
    if (unit_.size() != n) throw Error(ErrorKind::DimensionMismatch, "unit vector length");
    for (const auto& c : table_) require_same_field(field_, c.field());
    for (const auto& c : unit_) require_same_field(field_, c.field());
    validate();
  }

  const Field& field() const noexcept { return field_; }
  std::size_t dim() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const Vector& unit() const noexcept { return unit_; }

  const Coefficient& structure(std::size_t i, std::size_t j, std::size_t k) const {
    return table_[(i * dim() + j) * dim() + k];
  }

  Vector basis_vector(std::size_t i) const { return unit_vector(field_, dim(), i); }

  Vector product(std::size_t i, std::size_t j) const {
    Vector v(table_.begin() + static_cast<std::ptrdiff_t>((i * dim() + j) * dim()),
             table_.begin() + static_cast<std::ptrdiff_t>((i * dim() + j + 1) * dim()));
    return v;
  }

  Vector multiply(const Vector& u, const Vector& v) const {
    check(u);
    check(v);
    Vector out = zero_vector(field_, dim());
    for (std::size_t i = 0; i < dim(); ++i) {
      if (u[i].is_zero()) continue;
      for (std::size_t j = 0; j < dim(); ++j) {
        if (v[j].is_zero()) continue;
        const Coefficient c = u[i] * v[j];
        for (std::size_t k = 0; k < dim(); ++k)
          if (!structure(i, j, k).is_zero()) out[k] += c * structure(i, j, k);
      }
    }
    return out;
  }

  std::size_t index_of(const std::string& label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) throw Error(ErrorKind::UnknownVariable, "no basis element '" + label + "'");
    return static_cast<std::size_t>(it - labels_.begin());
  }

  void check(const Vector& v) const {
    if (v.size() != dim())
      throw Error(ErrorKind::DimensionMismatch,
                  "vector of length " + std::to_string(v.size()) + " in algebra of dimension " + std::to_string(dim()));
    for (const auto& c : v) require_same_field(field_, c.field());
  }

 private:
  void validate() const {
    const std::size_t n = dim();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          if (!(structure(i, j, k) == structure(j, i, k)))
            throw Error(ErrorKind::InvalidAlgebra, "not commutative at (" + labels_[i] + ", " + labels_[j] + ")");
    for (std::size_t i = 0; i < n; ++i) {
      if (!(multiply(unit_, basis_vector(i)) == basis_vector(i)))
        throw Error(ErrorKind::InvalidAlgebra, "unit law fails on " + labels_[i]);
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t l = 0; l < n; ++l) {
          Vector left = multiply(product(i, j), basis_vector(l));
          Vector right = multiply(basis_vector(i), product(j, l));
          if (!(left == right))
            throw Error(ErrorKind::InvalidAlgebra,
                        "not associative at (" + labels_[i] + ", " + labels_[j] + ", " + labels_[l] + ")");
        }
  }

  Field field_;
  std::vector<std::string> labels_;
  std::vector<Coefficient> table_;
  Vector unit_;
};

/// Monomial label like `1`, `x`, `x^2*y`.
inline std::string monomial_label(const VarList& vars, const Exponents& e) {
  std::string out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += vars[i];
    if (e[i] > 1) out += "^" + std::to_string(e[i]);
  }
  return out.empty() ? "1" : out;
}

/// k[vars]/(monomials): basis of standard monomials, ordered by degree and
/// then lexicographically. Every variable needs a pure power among the
/// relations so the quotient is finite-dimensional.
inline FiniteAlgebra monomial_quotient(const Field& field, const VarList& vars, const std::vector<Exponents>& relations) {
  std::vector<std::uint32_t> bound(vars.size(), 0);
  for (const auto& r : relations) {
    if (r.size() != vars.size()) throw Error(ErrorKind::DimensionMismatch, "relation exponent length");
    std::size_t nonzero = 0, idx = 0;
    for (std::size_t i = 0; i < r.size(); ++i)
      if (r[i]) ++nonzero, idx = i;
    if (nonzero == 0) throw Error(ErrorKind::InvalidAlgebra, "relation 1 gives the zero ring");
    if (nonzero == 1 && (bound[idx] == 0 || r[idx] < bound[idx])) bound[idx] = r[idx];
  }
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (bound[i] == 0)
      throw Error(ErrorKind::InvalidAlgebra, "no pure power of '" + vars[i] + "' among the relations; not finite-dimensional");

  auto standard = [&](const Exponents& e) {
    for (const auto& r : relations) {
      bool divisible = true;
      for (std::size_t i = 0; i < e.size(); ++i) divisible = divisible && e[i] >= r[i];
      if (divisible) return false;
    }
    return true;
  };
  std::vector<Exponents> basis;
  Exponents e(vars.size(), 0);
  for (;;) {
    if (standard(e)) basis.push_back(e);
    std::size_t i = 0;
    while (i < e.size() && ++e[i] == bound[i]) e[i++] = 0;
    if (i == e.size()) break;
  }
  std::sort(basis.begin(), basis.end(), [](const Exponents& a, const Exponents& b) {
    auto da = total_degree(a), db = total_degree(b);
    return da != db ? da < db : a > b;
  });

  const std::size_t n = basis.size();
  std::vector<std::string> labels;
  for (const auto& b : basis) labels.push_back(monomial_label(vars, b));
  std::vector<Coefficient> table(n * n * n, Coefficient::zero(field));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Exponents sum(vars.size());
      for (std::size_t k = 0; k < sum.size(); ++k) sum[k] = basis[i][k] + basis[j][k];
      auto it = std::find(basis.begin(), basis.end(), sum);
      if (it != basis.end()) table[(i * n + j) * n + static_cast<std::size_t>(it - basis.begin())] = Coefficient::one(field);
    }
  return FiniteAlgebra(field, std::move(labels), std::move(table), unit_vector(field, n, 0));
}

/// k[x]/(x^m).
inline FiniteAlgebra truncated_polynomial_algebra(const Field& field, std::uint32_t m, const std::string& var = "x") {
  if (m == 0) throw Error(ErrorKind::InvalidAlgebra, "k[x]/(1) is the zero ring");
  return monomial_quotient(field, {var}, {{m}});
}

/// The field itself as a one-dimensional algebra.
inline FiniteAlgebra ground_field_algebra(const Field& field) {
  return FiniteAlgebra(field, {"1"}, {Coefficient::one(field)}, {Coefficient::one(field)});
}

/// Direct product A x B; basis labels become (a,0) and (0,b).
inline FiniteAlgebra product_algebra(const FiniteAlgebra& a, const FiniteAlgebra& b) {
  require_same_field(a.field(), b.field());
  const std::size_t n = a.dim() + b.dim();
  std::vector<std::string> labels;
  for (const auto& l : a.labels()) labels.push_back("(" + l + ",0)");
  for (const auto& l : b.labels()) labels.push_back("(0," + l + ")");
  std::vector<Coefficient> table(n * n * n, Coefficient::zero(a.field()));
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      for (std::size_t k = 0; k < a.dim(); ++k) table[(i * n + j) * n + k] = a.structure(i, j, k);
  const std::size_t o = a.dim();
  for (std::size_t i = 0; i < b.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j)
      for (std::size_t k = 0; k < b.dim(); ++k) table[((o + i) * n + o + j) * n + o + k] = b.structure(i, j, k);
  Vector unit = a.unit();
  unit.insert(unit.end(), b.unit().begin(), b.unit().end());
  return FiniteAlgebra(a.field(), std::move(labels), std::move(table), std::move(unit));
}

/// Parses presentations such as `F2[x]/(x^3)`, `Q[x,y]/(x^2,x*y,y^2)` and
/// products `F3[x]/(x^2) * F3` (factors joined by ` * ` outside brackets).
inline FiniteAlgebra parse_algebra_presentation(std::string_view text) {
  std::vector<std::string> factors;
  int depth = 0;
  std::string cur;
  for (char c : text) {
    if (c == '[' || c == '(') ++depth;
    if (c == ']' || c == ')') --depth;
    if (c == '*' && depth == 0) {
      factors.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  factors.push_back(cur);

  std::optional<FiniteAlgebra> result;
  for (auto piece : factors) {
    auto trimmed = trim(piece);
    auto lb = trimmed.find('[');
    std::optional<FiniteAlgebra> factor;
    if (lb == std::string::npos) {
      factor = ground_field_algebra(Field::parse(trimmed));
    } else {
      const Field field = Field::parse(trimmed.substr(0, lb));
      auto rb = trimmed.find(']', lb);
      if (rb == std::string::npos) throw Error(ErrorKind::ParseError, "missing ']' in '" + trimmed + "'");
      VarList vars = split_trimmed(std::string_view(trimmed).substr(lb + 1, rb - lb - 1), ',');
      std::string rest = trim(std::string_view(trimmed).substr(rb + 1));
      if (rest.size() < 3 || rest[0] != '/')
        throw Error(ErrorKind::ParseError, "expected '/(relations)' after ']' in '" + trimmed + "'");
      rest = trim(std::string_view(rest).substr(1));
      if (rest.front() != '(' || rest.back() != ')')
        throw Error(ErrorKind::ParseError, "relations must be parenthesised in '" + trimmed + "'");
      std::vector<Exponents> relations;
      for (const auto& rel : split_trimmed(std::string_view(rest).substr(1, rest.size() - 2), ',')) {
        MultiPoly p = parse_poly(field, vars, rel);
        if (p.size() != 1) throw Error(ErrorKind::ParseError, "relation '" + rel + "' is not a monomial");
        relations.push_back(p.terms().begin()->first);
      }
      factor = monomial_quotient(field, vars, relations);
    }
    result = result ? product_algebra(*result, *factor) : *factor;
  }
  return *result;
}

/// The descending chain A = I^0 >= I >= I^2 >= ... of ideal powers, listed
/// until it reaches zero or stabilises.
struct IdealChain {
  FiniteAlgebra algebra;
  std::vector<Vector> generators;
  std::vector<Subspace> powers;
  std::optional<std::size_t> nilpotency_index;

  std::vector<std::size_t> dims() const {
    std::vector<std::size_t> out;
    for (const auto& p : powers) out.push_back(p.dim());
    return out;
  }
  /// I^k, or the stable tail value beyond the listed range.
  const Subspace& power(std::size_t k) const { return powers[std::min(k, powers.size() - 1)]; }
};

/// span{ u v : u in U, v in V }.
inline Subspace product_span(const FiniteAlgebra& a, const Subspace& u, const Subspace& v) {
  Subspace out(a.field(), a.dim());
  for (const auto& x : u.basis())
    for (const auto& y : v.basis()) out.insert(a.multiply(x, y));
  return out;
}

inline IdealChain ideal_powers(const FiniteAlgebra& a, const std::vector<Vector>& gens) {
  for (const auto& g : gens) a.check(g);
  IdealChain chain{a, gens, {}, std::nullopt};
  const Subspace whole = Subspace::full(a.field(), a.dim());
  chain.powers.push_back(whole);
  const Subspace ideal = product_span(a, whole, Subspace::span(a.field(), a.dim(), gens));
  chain.powers.push_back(ideal);
  for (;;) {
    const Subspace& last = chain.powers.back();
    if (last.dim() == 0) {
      chain.nilpotency_index = chain.powers.size() - 1;
      break;
    }
    Subspace next = product_span(a, ideal, last);
    if (next == last) break;
    chain.powers.push_back(std::move(next));
  }
  return chain;
}

/// Quotient of an algebra by an ideal, with coordinates on the pivot-free
/// columns of the ideal's echelon basis.
struct Quotient {
  FiniteAlgebra algebra;
  std::vector<std::size_t> columns;  // columns of the ambient algebra kept
  Matrix projection;                 // dim(A/J) x dim(A)
};

inline Quotient quotient_algebra(const FiniteAlgebra& a, const Subspace& ideal) {
  const std::vector<std::size_t> cols = ideal.free_columns();
  auto restrict = [&](const Vector& v) {
    Vector nf = ideal.normal_form(v);
    Vector out;
    for (auto c : cols) out.push_back(nf[c]);
    return out;
  };
  const std::size_t n = cols.size();
  if (n == 0) throw Error(ErrorKind::InvalidAlgebra, "quotient by the unit ideal is the zero ring");
  std::vector<std::string> labels;
  for (auto c : cols) labels.push_back(a.labels()[c]);
  std::vector<Coefficient> table;
  table.reserve(n * n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vector prod = restrict(a.product(cols[i], cols[j]));
      table.insert(table.end(), prod.begin(), prod.end());
    }
  Matrix projection(n, zero_vector(a.field(), a.dim()));
  for (std::size_t j = 0; j < a.dim(); ++j) {
    Vector img = restrict(a.basis_vector(j));
    for (std::size_t i = 0; i < n; ++i) projection[i][j] = img[i];
  }
  return Quotient{FiniteAlgebra(a.field(), std::move(labels), std::move(table), restrict(a.unit())), cols,
                  std::move(projection)};
}

/// A = A/I^m -> A/I^(m-1) -> ... -> A/I = B. Step j maps algebras[j] onto
/// algebras[j+1]; its kernel I^(m-1-j)/I^(m-j) squares to zero.
struct SquareZeroTower {
  std::vector<FiniteAlgebra> algebras;
  std::vector<Matrix> surjections;
  std::vector<std::vector<Vector>> kernels;  // in coordinates of algebras[j]
  Matrix quotient_map;                       // A -> B directly

  std::size_t length() const { return algebras.size(); }
  std::vector<std::size_t> kernel_dims() const {
    std::vector<std::size_t> out;
    for (const auto& k : kernels) out.push_back(k.size());
    return out;
  }
};

inline SquareZeroTower decompose_artinian(const FiniteAlgebra& a, const std::vector<Vector>& gens) {
  const IdealChain chain = ideal_powers(a, gens);
  if (!chain.nilpotency_index)
    throw Error(ErrorKind::NotNilpotent, "ideal powers stabilise at dimension " +
                                             std::to_string(chain.powers.back().dim()) + "; not an Artinian extension");
  const std::size_t m = *chain.nilpotency_index;
  std::vector<Quotient> quotients;
  for (std::size_t k = m; k >= 1; --k) quotients.push_back(quotient_algebra(a, chain.power(k)));

  SquareZeroTower tower;
  for (const auto& q : quotients) tower.algebras.push_back(q.algebra);
  tower.quotient_map = quotients.back().projection;
  for (std::size_t j = 0; j + 1 < quotients.size(); ++j) {
    const Quotient& src = quotients[j];
    const Quotient& dst = quotients[j + 1];
    // Image of each source basis element e_c (c a kept column of A).
    Matrix surj(dst.columns.size(), zero_vector(a.field(), src.columns.size()));
    for (std::size_t s = 0; s < src.columns.size(); ++s)
      for (std::size_t r = 0; r < dst.columns.size(); ++r) surj[r][s] = dst.projection[r][src.columns[s]];
    tower.surjections.push_back(std::move(surj));

    // I^k / I^(k+1), with k = m-1-j, written in the source coordinates.
    const std::size_t k = m - 1 - j;
    Subspace kernel(a.field(), src.columns.size());
    for (const auto& v : chain.power(k).basis()) kernel.insert(mat_vec(src.projection, v));
    tower.kernels.push_back(kernel.basis());
  }
  return tower;
}

/// Re-verifies a tower: each step is a surjective algebra map whose kernel is
/// the listed subspace and squares to zero, and the composite is A -> B.
struct TowerVerification {
  bool algebra_maps = true;
  bool kernels_exact = true;
  bool square_zero = true;
  bool composite = true;
  bool ok() const { return algebra_maps && kernels_exact && square_zero && composite; }
};

inline TowerVerification verify_tower(const FiniteAlgebra& a, const SquareZeroTower& tower) {
  TowerVerification r;
  const Field& f = a.field();
  for (std::size_t j = 0; j < tower.surjections.size(); ++j) {
    const FiniteAlgebra& src = tower.algebras[j];
    const FiniteAlgebra& dst = tower.algebras[j + 1];
    const Matrix& phi = tower.surjections[j];
    if (!(mat_vec(phi, src.unit()) == dst.unit())) r.algebra_maps = false;
    for (std::size_t x = 0; x < src.dim(); ++x)
      for (std::size_t y = 0; y < src.dim(); ++y) {
        Vector lhs = mat_vec(phi, src.product(x, y));
        Vector rhs = dst.multiply(mat_vec(phi, src.basis_vector(x)), mat_vec(phi, src.basis_vector(y)));
        if (!(lhs == rhs)) r.algebra_maps = false;
      }
    const auto& kernel = tower.kernels[j];
    for (const auto& k : kernel)
      if (!is_zero(mat_vec(phi, k))) r.kernels_exact = false;
    if (Subspace::span(f, src.dim(), kernel).dim() + dst.dim() != src.dim()) r.kernels_exact = false;
    for (const auto& u : kernel)
      for (const auto& w : kernel)
        if (!is_zero(src.multiply(u, w))) r.square_zero = false;
  }
  Matrix composite = Subspace::full(f, a.dim()).basis();  // identity
  std::size_t cols = a.dim();
  for (const auto& phi : tower.surjections) composite = mat_mul(f, phi, composite, phi.empty() ? 0 : phi[0].size(), cols);
  if (!(composite == tower.quotient_map)) r.composite = false;
  return r;
}

struct GradedReport {
  bool pass = true;
  std::vector<std::size_t> dims_gr;         // dim I^k/I^(k+1), k = 1..m
  std::vector<std::size_t> dims_sym_bound;  // C(d+k-1, k), d = dim I/I^2
  std::vector<std::size_t> failing_degrees;
};

inline std::size_t binomial_count(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Checks that gr_I(A) is generated by I/I^2: k-fold products of lifts of a
/// basis of I/I^2, together with I^(k+1), span I^k for every k >= 1.
inline GradedReport graded_generation(const FiniteAlgebra& a, const std::vector<Vector>& gens) {
  const IdealChain chain = ideal_powers(a, gens);
  if (!chain.nilpotency_index)
    throw Error(ErrorKind::NotNilpotent, "ideal is not nilpotent");
  const std::size_t m = *chain.nilpotency_index;
  const Field& f = a.field();
  GradedReport r;

  // Lifts of a basis of I/I^2: echelon basis of the normal forms mod I^2.
  Subspace lifts(f, a.dim());
  for (const auto& v : chain.power(1).basis()) lifts.insert(chain.power(2).normal_form(v));
  const std::size_t d = lifts.dim();

  Subspace products = lifts;
  for (std::size_t k = 1; k <= m; ++k) {
    const Subspace& ik = chain.power(k);
    const Subspace& next = chain.power(k + 1);
    r.dims_gr.push_back(ik.dim() - next.dim());
    r.dims_sym_bound.push_back(binomial_count(d + k - 1, k));
    Subspace generated = next;
    for (const auto& v : products.basis()) generated.insert(v);
    bool ok = generated == ik && r.dims_gr.back() <= r.dims_sym_bound.back();
    if (!ok) {
      r.pass = false;
      r.failing_degrees.push_back(k);
    }
    products = product_span(a, products, lifts);
  }
  return r;
}

}  // namespace formint
