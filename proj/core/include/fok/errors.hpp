#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fok {

/// Caller violated an operation's precondition or supplied a bad argument.
/// The CLI maps this to exit code 2.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Lexical or grammatical error in formula / sequent / file text.
class ParseError : public UsageError {
 public:
  ParseError(const std::string& message, std::size_t offset);

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Input model or signature that fails structural validation (exit code 3).
class InvalidInputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidModelError : public InvalidInputError {
 public:
  using InvalidInputError::InvalidInputError;
};

class InvalidSignatureError : public InvalidInputError {
 public:
  using InvalidInputError::InvalidInputError;
};

/// Operation applied outside its mathematical domain, e.g. asking for a
/// non-supermultiplicativity witness of a supermultiplicative function.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace fok
