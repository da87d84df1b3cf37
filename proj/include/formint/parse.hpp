#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "formint/poly.hpp"

namespace formint {

namespace detail {

// Grammar:
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor (['*'] factor)*
//   factor := atom ['^' integer]
//   atom   := integer ['/' integer] | identifier | '(' expr ')'
class PolyParser {
 public:
  PolyParser(const Field& field, const VarList& vars, std::string_view text)
      : field_(field), vars_(vars), text_(text), zero_(field, vars) {}

  MultiPoly parse() {
    MultiPoly p = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::ParseError,
                what + " at column " + std::to_string(pos_ + 1) + " in '" + std::string(text_) + "'");
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
  static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
  static bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

  MultiPoly expr() {
    MultiPoly acc = zero_;
    bool negate = false;
    if (peek() == '+' || peek() == '-') negate = text_[pos_++] == '-';
    if (peek() == '\0') fail("expected a term");
    acc = negate ? -term() : term();
    for (char c = peek(); c == '+' || c == '-'; c = peek()) {
      ++pos_;
      if (c == '+') acc += term();
      else acc -= term();
    }
    return acc;
  }

  MultiPoly term() {
    MultiPoly acc = factor();
    for (;;) {
      char c = peek();
      if (c == '*') {
        ++pos_;
        acc *= factor();
      } else if (c == '(' || ident_start(c) || digit(c)) {
        acc *= factor();
      } else {
        return acc;
      }
    }
  }

  MultiPoly factor() {
    MultiPoly base = atom();
    if (peek() == '^') {
      ++pos_;
      skip_ws();
      std::string digits = integer();
      if (digits.size() > 6) fail("exponent too large");
      base = base.pow(static_cast<unsigned>(std::stoul(digits)));
    }
    return base;
  }

  std::string integer() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && digit(text_[pos_])) ++pos_;
    if (start == pos_) fail("expected an integer");
    return std::string(text_.substr(start, pos_ - start));
  }

  MultiPoly atom() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      MultiPoly inner = expr();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (digit(c)) {
      std::string lit = integer();
      if (peek() == '/') {
        ++pos_;
        skip_ws();
        if (pos_ >= text_.size() || !digit(text_[pos_]))
          fail("'/' is only allowed inside a rational literal");
        lit += "/" + integer();
      }
      return MultiPoly::constant(field_, vars_, Coefficient::parse(field_, lit));
    }
    if (ident_start(c)) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      if (std::find(vars_.begin(), vars_.end(), name) == vars_.end())
        throw Error(ErrorKind::UnknownVariable, "'" + name + "' not in {" + join(vars_) + "}");
      return MultiPoly::variable(field_, vars_, name);
    }
    if (c == '\0') fail("unexpected end of input");
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const Field& field_;
  const VarList& vars_;
  std::string_view text_;
  std::size_t pos_ = 0;
  MultiPoly zero_;
};

}  // namespace detail

/// Parses e.g. `x + y`, `y^2`, `3*x`, `3/2 x y^2` into a polynomial in `vars`.
inline MultiPoly parse_poly(const Field& field, const VarList& vars, std::string_view text) {
  return detail::PolyParser(field, vars, text).parse();
}

inline std::string trim(std::string_view piece) {
  while (!piece.empty() && std::isspace(static_cast<unsigned char>(piece.front()))) piece.remove_prefix(1);
  while (!piece.empty() && std::isspace(static_cast<unsigned char>(piece.back()))) piece.remove_suffix(1);
  return std::string(piece);
}

/// Splits on a separator, trimming whitespace around each piece.
inline std::vector<std::string> split_trimmed(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    std::size_t end = text.find(sep, start);
    out.push_back(trim(text.substr(start, end == std::string_view::npos ? text.npos : end - start)));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}

}  // namespace formint
