#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace powerpos {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed polynomial or matrix text. offset() is the byte offset of the
/// offending character in the input.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t offset)
      : Error(message + " at offset " + std::to_string(offset)), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Operands live in different ambient dimensions.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An input violates an operation's precondition (non-homogeneous, index out
/// of range, point outside the open orthant, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A configured size or iteration budget was exceeded.
class BudgetError : public Error {
 public:
  using Error::Error;
};

}  // namespace powerpos
