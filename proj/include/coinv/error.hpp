#pragma once

#include <stdexcept>
#include <string>

namespace coinv {

/// Base class for all input/contract errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class LabelNotFound : public Error {
 public:
  explicit LabelNotFound(const std::string& label)
      : Error("unknown label '" + label + "'") {}
};

class InvalidModel : public Error {
  using Error::Error;
};

class InvalidLattice : public Error {
  using Error::Error;
};

class InvalidParameters : public Error {
  using Error::Error;
};

/// Genus 0 with fewer than three points, or 2g - 2 + n <= 0.
class UnsupportedBase : public Error {
  using Error::Error;
};

/// An operation was applied to a class on the wrong (g, n).
class DimensionError : public Error {
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Exhaustive F-curve enumeration refused because the instance is too large.
class EnumerationTooLarge : public Error {
  using Error::Error;
};

}  // namespace coinv
