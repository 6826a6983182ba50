#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace proportia {

// Base of every error the library throws. kind() is a stable machine-readable
// tag used by the CLI when it emits structured error records.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, const std::string& message)
      : Error("SyntaxError",
              "syntax error at position " + std::to_string(position) + ": " +
                  message),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class UnknownSymbol : public Error {
 public:
  explicit UnknownSymbol(const std::string& name)
      : Error("UnknownSymbol", "unknown symbol '" + name + "'"), name_(name) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

class ArityMismatch : public Error {
 public:
  ArityMismatch(const std::string& symbol, std::size_t expected,
                std::size_t got)
      : Error("ArityMismatch", "symbol '" + symbol + "' expects " +
                                   std::to_string(expected) +
                                   " argument(s), got " + std::to_string(got)),
        expected_(expected),
        got_(got) {}
  std::size_t expected() const noexcept { return expected_; }
  std::size_t got() const noexcept { return got_; }

 private:
  std::size_t expected_;
  std::size_t got_;
};

class UnboundVariable : public Error {
 public:
  explicit UnboundVariable(std::size_t index)
      : Error("UnboundVariable",
              "variable z" + std::to_string(index) + " is not bound"),
        index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

class UnknownConstant : public Error {
 public:
  explicit UnknownConstant(const std::string& name)
      : Error("UnknownConstant", "constant '" + name + "' is not interpreted") {}
};

class ElementNotInCarrier : public Error {
 public:
  ElementNotInCarrier(const std::string& literal, const std::string& algebra)
      : Error("ElementNotInCarrier", "'" + literal +
                                         "' is not an element of algebra '" +
                                         algebra + "'") {}
};

class BadParams : public Error {
 public:
  explicit BadParams(const std::string& message)
      : Error("BadParams", message) {}
};

class LanguageMismatch : public Error {
 public:
  explicit LanguageMismatch(const std::string& message)
      : Error("LanguageMismatch", message) {}
};

class SpecError : public Error {
 public:
  SpecError(std::size_t line, const std::string& message)
      : Error("SpecError",
              "line " + std::to_string(line) + ": " + message),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class MissingAlgebra : public Error {
 public:
  explicit MissingAlgebra(const std::string& message)
      : Error("MissingAlgebra", message) {}
};

class NotAJustification : public Error {
 public:
  explicit NotAJustification(const std::string& message)
      : Error("NotAJustification", message) {}
};

class NotSingleDomain : public Error {
 public:
  NotSingleDomain()
      : Error("NotSingleDomain",
              "axioms are only defined within a single domain") {}
};

class TermOutOfBounds : public Error {
 public:
  explicit TermOutOfBounds(const std::string& message)
      : Error("TermOutOfBounds", message) {}
};

class UndefinedAt : public Error {
 public:
  explicit UndefinedAt(const std::string& message)
      : Error("UndefinedAt", message) {}
};

class NotSubsetOfUniverse : public Error {
 public:
  explicit NotSubsetOfUniverse(const std::string& message)
      : Error("NotSubsetOfUniverse", message) {}
};

class OutOfBound : public Error {
 public:
  explicit OutOfBound(const std::string& message)
      : Error("OutOfBound", message) {}
};

class ScopeTooLarge : public Error {
 public:
  explicit ScopeTooLarge(const std::string& message)
      : Error("ScopeTooLarge", message) {}
};

}  // namespace proportia
