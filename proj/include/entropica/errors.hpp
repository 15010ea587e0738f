#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace entropica {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed term, identity or algebra text. `position` is a byte offset for
/// term syntax and a 1-based line number for algebra files.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " (at " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Operation symbols or arities that do not fit the algebra at hand.
class SignatureError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Evaluation needed a variable the assignment does not bind.
class UnboundVariable : public Error {
 public:
  using Error::Error;
};

/// A size cap or cell budget was hit. `partial` reports how far the
/// computation got (elements found, subsets generated, ...).
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& message, std::size_t partial)
      : Error(message), partial_(partial) {}

  std::size_t partial() const noexcept { return partial_; }

 private:
  std::size_t partial_;
};

}  // namespace entropica
