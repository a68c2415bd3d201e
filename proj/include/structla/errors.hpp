#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace structla {

// Base class for every error the library raises on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Domain errors: the input is well formed but the mathematics forbids it
// (poles, singular pivots, division by an exact zero).
class DomainError : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public DomainError {
 public:
  DivisionByZero() : DomainError("division by zero") {}
  explicit DivisionByZero(const std::string& what) : DomainError(what) {}
};

// An entry 1/(x_i + y_j) with x_i + y_j = 0, or a zero factor raised to a
// negative power.
class PoleError : public DomainError {
 public:
  PoleError(const std::string& what, std::size_t i, std::size_t j)
      : DomainError(what), row_(i), col_(j) {}
  std::size_t row() const { return row_; }
  std::size_t col() const { return col_; }

 private:
  std::size_t row_;
  std::size_t col_;
};

class SingularError : public DomainError {
 public:
  SingularError(const std::string& what, std::size_t step)
      : DomainError(what), step_(step) {}
  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

class ConvergenceError : public DomainError {
 public:
  ConvergenceError(const std::string& what, double residual)
      : DomainError(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

// Input text that does not conform to one of the accepted grammars.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Caller violated a documented precondition (size mismatch, bad argument).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace structla
