#pragma once

#include <gmpxx.h>

#include <cctype>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "formint/errors.hpp"

namespace formint {

/// A coefficient field: the rationals, or the prime field F_p.
class Field {
 public:
  static constexpr std::uint64_t kMaxPrime = (std::uint64_t{1} << 31);

  Field() = default;  // Q

  static Field rationals() { return Field{}; }

  /// Throws InvalidField unless p is a prime below kMaxPrime (trial division).
  static Field prime(std::uint64_t p) {
    if (p < 2 || p >= kMaxPrime || !is_prime(p))
      throw Error(ErrorKind::InvalidField, std::to_string(p) + " is not a supported prime");
    Field f;
    f.p_ = static_cast<std::uint32_t>(p);
    return f;
  }

  /// Accepts "Q" or "F<p>" (also "GF<p>").
  static Field parse(std::string_view text) {
    if (text == "Q" || text == "QQ") return rationals();
    std::string_view digits;
    if (text.size() > 1 && text[0] == 'F') digits = text.substr(1);
    else if (text.size() > 2 && text.substr(0, 2) == "GF") digits = text.substr(2);
    if (digits.empty() || digits.size() > 10)
      throw Error(ErrorKind::InvalidField, "unrecognised field '" + std::string(text) + "'");
    std::uint64_t p = 0;
    for (char c : digits) {
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw Error(ErrorKind::InvalidField, "unrecognised field '" + std::string(text) + "'");
      p = p * 10 + static_cast<std::uint64_t>(c - '0');
    }
    return prime(p);
  }

  static bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  }

  std::uint32_t characteristic() const noexcept { return p_; }
  bool is_rational() const noexcept { return p_ == 0; }

  std::string name() const { return p_ == 0 ? "Q" : "F" + std::to_string(p_); }

  friend bool operator==(const Field&, const Field&) = default;

 private:
  std::uint32_t p_ = 0;
};

inline void require_same_field(const Field& a, const Field& b) {
  if (!(a == b)) throw Error(ErrorKind::FieldMismatch, a.name() + " vs " + b.name());
}

/// An exact field element. Rationals are kept canonical by GMP (lowest terms,
/// positive denominator); residues lie in [0, p).
class Coefficient {
 public:
  Coefficient() : value_(mpq_class(0)) {}

  Coefficient(const Field& field, long value) : field_(field) {
    if (field.is_rational()) {
      value_ = mpq_class(value);
    } else {
      long p = static_cast<long>(field.characteristic());
      long r = value % p;
      if (r < 0) r += p;
      value_ = static_cast<std::uint32_t>(r);
    }
  }

  Coefficient(const Field& field, const mpq_class& value) : field_(field) {
    if (field.is_rational()) {
      mpq_class v(value);
      v.canonicalize();
      value_ = std::move(v);
    } else {
      value_ = reduce(value.get_num(), value.get_den(), field);
    }
  }

  static Coefficient zero(const Field& f) { return Coefficient(f, 0L); }
  static Coefficient one(const Field& f) { return Coefficient(f, 1L); }

  /// Parses an integer or `p/q` literal with optional leading sign.
  static Coefficient parse(const Field& f, std::string_view text) {
    std::string s(text);
    mpq_class q;
    try {
      auto slash = s.find('/');
      auto check_int = [&](const std::string& part) {
        std::size_t i = (!part.empty() && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
        if (i >= part.size()) throw std::invalid_argument(part);
        for (; i < part.size(); ++i)
          if (!std::isdigit(static_cast<unsigned char>(part[i]))) throw std::invalid_argument(part);
      };
      if (slash == std::string::npos) {
        check_int(s);
        q = mpq_class(mpz_class(s[0] == '+' ? s.substr(1) : s));
      } else {
        std::string num = s.substr(0, slash), den = s.substr(slash + 1);
        check_int(num);
        check_int(den);
        if (den[0] == '-' || den[0] == '+')
          throw std::invalid_argument(den);
        mpz_class d(den);
        if (d == 0) throw Error(ErrorKind::ParseError, "zero denominator in '" + s + "'");
        q = mpq_class(mpz_class(num[0] == '+' ? num.substr(1) : num), d);
      }
    } catch (const std::invalid_argument&) {
      throw Error(ErrorKind::ParseError, "malformed number '" + s + "'");
    }
    return Coefficient(f, q);
  }

  const Field& field() const noexcept { return field_; }

  bool is_zero() const {
    if (auto r = std::get_if<std::uint32_t>(&value_)) return *r == 0;
    return sgn(std::get<mpq_class>(value_)) == 0;
  }
  bool is_one() const {
    if (auto r = std::get_if<std::uint32_t>(&value_)) return *r == 1;
    return std::get<mpq_class>(value_) == 1;
  }

  /// The rational value (Q only).
  const mpq_class& rational() const { return std::get<mpq_class>(value_); }
  /// The residue in [0, p) (F_p only).
  std::uint32_t residue() const { return std::get<std::uint32_t>(value_); }

  bool is_integral() const {
    return field_.is_rational() ? rational().get_den() == 1 : true;
  }

  /// Image under Z_(p) -> F_p. Throws CharacteristicObstruction if p divides
  /// the denominator.
  Coefficient reduce_to(const Field& target) const {
    if (target == field_) return *this;
    if (!field_.is_rational() || target.is_rational())
      throw Error(ErrorKind::FieldMismatch, "cannot map " + field_.name() + " to " + target.name());
    Coefficient c;
    c.field_ = target;
    c.value_ = reduce(rational().get_num(), rational().get_den(), target);
    return c;
  }

  Coefficient operator-() const {
    Coefficient c(*this);
    if (auto r = std::get_if<std::uint32_t>(&c.value_)) {
      if (*r != 0) *r = field_.characteristic() - *r;
    } else {
      std::get<mpq_class>(c.value_) = -std::get<mpq_class>(c.value_);
    }
    return c;
  }

  Coefficient& operator+=(const Coefficient& o) {
    require_same_field(field_, o.field_);
    if (auto r = std::get_if<std::uint32_t>(&value_)) {
      std::uint64_t s = std::uint64_t{*r} + o.residue();
      *r = static_cast<std::uint32_t>(s % field_.characteristic());
    } else {
      std::get<mpq_class>(value_) += o.rational();
    }
    return *this;
  }
  Coefficient& operator-=(const Coefficient& o) { return *this += -o; }
  Coefficient& operator*=(const Coefficient& o) {
    require_same_field(field_, o.field_);
    if (auto r = std::get_if<std::uint32_t>(&value_)) {
      std::uint64_t s = std::uint64_t{*r} * o.residue();
      *r = static_cast<std::uint32_t>(s % field_.characteristic());
    } else {
      std::get<mpq_class>(value_) *= o.rational();
    }
    return *this;
  }
  Coefficient& operator/=(const Coefficient& o) { return *this *= o.inverse(); }

  friend Coefficient operator+(Coefficient a, const Coefficient& b) { return a += b; }
  friend Coefficient operator-(Coefficient a, const Coefficient& b) { return a -= b; }
  friend Coefficient operator*(Coefficient a, const Coefficient& b) { return a *= b; }
  friend Coefficient operator/(Coefficient a, const Coefficient& b) { return a /= b; }

  Coefficient inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero in " + field_.name());
    Coefficient c(*this);
    if (auto r = std::get_if<std::uint32_t>(&c.value_)) {
      *r = static_cast<std::uint32_t>(pow_mod(*r, field_.characteristic() - 2, field_.characteristic()));
    } else {
      auto& q = std::get<mpq_class>(c.value_);
      q = 1 / q;
    }
    return c;
  }

  Coefficient pow(unsigned e) const {
    Coefficient result = one(field_), base = *this;
    while (e) {
      if (e & 1U) result *= base;
      base *= base;
      e >>= 1U;
    }
    return result;
  }

  friend bool operator==(const Coefficient& a, const Coefficient& b) {
    return a.field_ == b.field_ && a.value_ == b.value_;
  }

  /// Negative rationals render with a leading '-'; residues never do.
  bool is_negative() const {
    auto q = std::get_if<mpq_class>(&value_);
    return q && sgn(*q) < 0;
  }

  std::string to_string() const {
    if (auto r = std::get_if<std::uint32_t>(&value_)) return std::to_string(*r);
    return std::get<mpq_class>(value_).get_str();
  }

  friend std::ostream& operator<<(std::ostream& os, const Coefficient& c) { return os << c.to_string(); }

 private:
  static std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    b %= m;
    while (e) {
      if (e & 1U) r = r * b % m;
      b = b * b % m;
      e >>= 1U;
    }
    return r;
  }

  static std::uint32_t reduce(const mpz_class& num, const mpz_class& den, const Field& f) {
    const unsigned long p = f.characteristic();
    unsigned long d = mpz_fdiv_ui(den.get_mpz_t(), p);
    if (d == 0) {
      throw CharacteristicObstruction(
          p, "denominator " + den.get_str() + " is not invertible in " + f.name());
    }
    unsigned long n = mpz_fdiv_ui(num.get_mpz_t(), p);
    return static_cast<std::uint32_t>(n * pow_mod(d, p - 2, p) % p);
  }

  Field field_;
  std::variant<std::uint32_t, mpq_class> value_;
};

/// n! computed in the field; zero once n reaches the characteristic.
inline Coefficient factorial(const Field& f, unsigned n) {
  Coefficient r = Coefficient::one(f);
  for (unsigned k = 2; k <= n; ++k) r *= Coefficient(f, static_cast<long>(k));
  return r;
}

}  // namespace formint
