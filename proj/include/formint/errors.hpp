#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace formint {

enum class ErrorKind {
  InvalidField,
  FieldMismatch,
  VariableMismatch,
  UnknownVariable,
  MissingAssignment,
  BasisMismatch,
  OrderMismatch,
  CharacteristicObstruction,
  ArityMismatch,
  DimensionMismatch,
  NotNilpotent,
  InvalidAlgebra,
  ParseError,
  GroupMismatch,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidField: return "InvalidField";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::VariableMismatch: return "VariableMismatch";
    case ErrorKind::UnknownVariable: return "UnknownVariable";
    case ErrorKind::MissingAssignment: return "MissingAssignment";
    case ErrorKind::BasisMismatch: return "BasisMismatch";
    case ErrorKind::OrderMismatch: return "OrderMismatch";
    case ErrorKind::CharacteristicObstruction: return "CharacteristicObstruction";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotNilpotent: return "NotNilpotent";
    case ErrorKind::InvalidAlgebra: return "InvalidAlgebra";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::GroupMismatch: return "GroupMismatch";
  }
  return "Unknown";
}

/// Base of every exception thrown by the library. The message is prefixed
/// with the kind name so a single `what()` line is a usable diagnostic.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised when an integer n (a factorial or a divisor) is zero in the
/// coefficient field.
class CharacteristicObstruction : public Error {
 public:
  CharacteristicObstruction(std::size_t n, const std::string& detail)
      : Error(ErrorKind::CharacteristicObstruction,
              "(" + std::to_string(n) + ") " + detail),
        n_(n) {}

  std::size_t n() const noexcept { return n_; }

 private:
  std::size_t n_;
};

}  // namespace formint
