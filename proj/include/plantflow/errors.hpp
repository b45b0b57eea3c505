#pragma once

#include <stdexcept>
#include <string>

namespace plantflow {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An rv_id, node or edge reference that does not resolve.
class MappingError : public Error {
 public:
  using Error::Error;
};

/// Malformed input whose shape is wrong before any solving starts
/// (LP dimension mismatch, inverted bounds, bad arity).
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// A backend/semantics pairing the chosen backend cannot realise.
class UnsupportedCombination : public Error {
 public:
  using Error::Error;
};

/// Document text that fails to parse or validate. `where` holds a
/// `line:column` position or a JSON pointer to the offending field.
class ParseError : public Error {
 public:
  ParseError(std::string where, const std::string& what)
      : Error(where.empty() ? what : where + ": " + what), where_(std::move(where)) {}

  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

}  // namespace plantflow
