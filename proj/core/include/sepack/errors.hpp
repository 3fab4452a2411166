#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sepack {

/// Malformed or out-of-domain arguments (bad dimension, empty input, n too small).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The operation exists only for some dimensions (the exact TS decision is planar).
class UnsupportedDimension : public std::invalid_argument {
 public:
  UnsupportedDimension(const std::string& op, int dimension)
      : std::invalid_argument(op + ": unsupported dimension " + std::to_string(dimension)),
        dimension_(dimension) {}
  int dimension() const noexcept { return dimension_; }

 private:
  int dimension_;
};

/// Two centers closer than 2r - tol.
struct Violation {
  std::size_t i = 0;
  std::size_t j = 0;
  double distance = 0.0;
};

class InvalidPacking : public std::runtime_error {
 public:
  explicit InvalidPacking(const Violation& v)
      : std::runtime_error("overlapping balls " + std::to_string(v.i) + " and " + std::to_string(v.j) +
                           " (center distance " + std::to_string(v.distance) + ")"),
        violation_(v) {}
  const Violation& violation() const noexcept { return violation_; }

 private:
  Violation violation_;
};

/// A generator could not place its configuration (no free corner, overlap, ...).
class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An embedded graph is not a plane straight-line graph, or face tracing went wrong.
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Catalog hash collision between entries with different content.
class IntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Packing file could not be parsed. Carries the line (1-based, 0 if unknown) and the field path.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line, std::string field)
      : std::runtime_error(format(what, line, field)), line_(line), field_(std::move(field)) {}
  std::size_t line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  static std::string format(const std::string& what, std::size_t line, const std::string& field) {
    std::string out;
    if (line != 0) out += "line " + std::to_string(line) + ": ";
    if (!field.empty()) out += field + ": ";
    return out + what;
  }
  std::size_t line_;
  std::string field_;
};

}  // namespace sepack
