#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "formint/field.hpp"

namespace formint {

using Vector = std::vector<Coefficient>;
using Matrix = std::vector<Vector>;  // row-major, rows x cols

inline Vector zero_vector(const Field& f, std::size_t n) { return Vector(n, Coefficient::zero(f)); }

inline Vector unit_vector(const Field& f, std::size_t n, std::size_t i) {
  Vector v = zero_vector(f, n);
  v.at(i) = Coefficient::one(f);
  return v;
}

inline bool is_zero(const Vector& v) {
  for (const auto& c : v)
    if (!c.is_zero()) return false;
  return true;
}

inline Vector mat_vec(const Matrix& m, const Vector& v) {
  Vector out;
  out.reserve(m.size());
  for (const auto& row : m) {
    if (row.size() != v.size()) throw Error(ErrorKind::DimensionMismatch, "matrix/vector sizes");
    Coefficient s = Coefficient::zero(v.empty() ? Field{} : v.front().field());
    for (std::size_t j = 0; j < v.size(); ++j)
      if (!row[j].is_zero() && !v[j].is_zero()) s += row[j] * v[j];
    out.push_back(std::move(s));
  }
  return out;
}

/// Matrix product a * b where b has `inner` rows.
inline Matrix mat_mul(const Field& f, const Matrix& a, const Matrix& b, std::size_t inner, std::size_t cols) {
  Matrix out(a.size(), zero_vector(f, cols));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < cols; ++j)
        if (!b[k][j].is_zero()) out[i][j] += a[i][k] * b[k][j];
    }
  return out;
}

/// A subspace of k^n held as a reduced row echelon basis. Pivots are chosen
/// leftmost, so the basis (and every normal form) is canonical.
class Subspace {
 public:
  Subspace(const Field& field, std::size_t ambient) : field_(field), ambient_(ambient) {}

  static Subspace span(const Field& field, std::size_t ambient, const std::vector<Vector>& vectors) {
    Subspace s(field, ambient);
    for (const auto& v : vectors) s.insert(v);
    return s;
  }
  static Subspace full(const Field& field, std::size_t ambient) {
    Subspace s(field, ambient);
    for (std::size_t i = 0; i < ambient; ++i) s.insert(unit_vector(field, ambient, i));
    return s;
  }

  const Field& field() const noexcept { return field_; }
  std::size_t ambient() const noexcept { return ambient_; }
  std::size_t dim() const noexcept { return rows_.size(); }
  const std::vector<Vector>& basis() const noexcept { return rows_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  /// Columns that carry no pivot; their unit vectors span a complement.
  std::vector<std::size_t> free_columns() const {
    std::vector<std::size_t> out;
    std::vector<bool> is_pivot(ambient_, false);
    for (auto p : pivots_) is_pivot[p] = true;
    for (std::size_t c = 0; c < ambient_; ++c)
      if (!is_pivot[c]) out.push_back(c);
    return out;
  }

  /// Remainder of v after eliminating every pivot column; zero iff v lies in
  /// the subspace.
  Vector normal_form(Vector v) const {
    check(v);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Coefficient c = v[pivots_[r]];
      if (c.is_zero()) continue;
      for (std::size_t j = 0; j < ambient_; ++j)
        if (!rows_[r][j].is_zero()) v[j] -= c * rows_[r][j];
    }
    return v;
  }

  bool contains(const Vector& v) const { return is_zero(normal_form(v)); }

  bool contains(const Subspace& other) const {
    for (const auto& v : other.rows_)
      if (!contains(v)) return false;
    return true;
  }

  /// Adds v to the spanning set; returns false if it was already contained.
  bool insert(const Vector& v) {
    Vector w = normal_form(v);
    std::size_t p = 0;
    while (p < ambient_ && w[p].is_zero()) ++p;
    if (p == ambient_) return false;
    const Coefficient inv = w[p].inverse();
    for (auto& c : w) c *= inv;
    for (auto& row : rows_) {
      const Coefficient c = row[p];
      if (c.is_zero()) continue;
      for (std::size_t j = 0; j < ambient_; ++j)
        if (!w[j].is_zero()) row[j] -= c * w[j];
    }
    // keep rows ordered by pivot column
    std::size_t pos = 0;
    while (pos < pivots_.size() && pivots_[pos] < p) ++pos;
    rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(w));
    pivots_.insert(pivots_.begin() + static_cast<std::ptrdiff_t>(pos), p);
    return true;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.field_ == b.field_ && a.ambient_ == b.ambient_ && a.rows_ == b.rows_;
  }

 private:
  void check(const Vector& v) const {
    if (v.size() != ambient_)
      throw Error(ErrorKind::DimensionMismatch,
                  "vector of length " + std::to_string(v.size()) + " in k^" + std::to_string(ambient_));
    for (const auto& c : v) require_same_field(field_, c.field());
  }

  Field field_;
  std::size_t ambient_;
  std::vector<Vector> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace formint
