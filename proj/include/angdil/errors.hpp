#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace angdil {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Bad argument to an operation (a > b, p < 2, invalid rule parameters...).
class ArgumentError : public Error {
public:
  using Error::Error;
};

/// A polar-frame quantity was requested at r = 0.
class SingularPointError : public Error {
public:
  using Error::Error;
};

/// A sampled mapping was queried outside the radial hull of its grid.
class OutOfDomainError : public Error {
public:
  using Error::Error;
};

/// An integrand or jet produced a non-finite value.
class EvaluationError : public Error {
public:
  using Error::Error;
};

/// J_f <= 0 where a positive Jacobian is required.
class RegularityViolation : public Error {
public:
  RegularityViolation(const std::string& what, double r, double theta, double jacobian)
      : Error(what), r_(r), theta_(theta), jacobian_(jacobian) {}

  double r() const noexcept { return r_; }
  double theta() const noexcept { return theta_; }
  double jacobian() const noexcept { return jacobian_; }

private:
  double r_;
  double theta_;
  double jacobian_;
};

/// A theorem hypothesis (e.g. f(0) = 0) does not hold for the given map.
class HypothesisViolation : public Error {
public:
  using Error::Error;
};

/// Malformed input file; carries the 1-based line number (0 when not line-based).
class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

/// Sample rows do not form a full tensor (r, theta) grid.
class StructureError : public Error {
public:
  using Error::Error;
};

/// Sample values leave the closed unit disk.
class DomainError : public Error {
public:
  using Error::Error;
};

}  // namespace angdil
