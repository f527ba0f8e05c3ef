#pragma once

#include <stdexcept>
#include <string>

namespace kabelian {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Two words (or a word and a signature) over different alphabets were combined.
class AlphabetMismatchError : public Error {
public:
  explicit AlphabetMismatchError(const std::string& what) : Error(what) {}
};

/// An enumeration exceeded its configured resource budget.
class BudgetExceededError : public Error {
public:
  explicit BudgetExceededError(const std::string& what) : Error(what) {}
};

/// A textual input (word, stream spec, morphism, ...) could not be parsed.
class ParseError : public Error {
public:
  explicit ParseError(const std::string& what) : Error(what) {}
};

/// A precondition of an operation was violated by the caller.
class DomainError : public Error {
public:
  explicit DomainError(const std::string& what) : Error(what) {}
};

}  // namespace kabelian
