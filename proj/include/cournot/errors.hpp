#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cournot {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MissingAssignment : public Error {
 public:
  using Error::Error;
};

class ZeroPolynomial : public Error {
 public:
  using Error::Error;
};

class DegreeZero : public Error {
 public:
  using Error::Error;
};

class InexactDivision : public Error {
 public:
  using Error::Error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class UnknownIdentifier : public SyntaxError {
 public:
  using SyntaxError::SyntaxError;
};

class NonConstantDivisor : public Error {
 public:
  using Error::Error;
};

class DegenerateSystem : public Error {
 public:
  using Error::Error;
};

class ZeroBorderPolynomial : public Error {
 public:
  using Error::Error;
};

class TooManyParameters : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class OnBoundary : public Error {
 public:
  using Error::Error;
};

class NonpositiveState : public Error {
 public:
  NonpositiveState(const std::string& what, std::size_t period) : Error(what), period_(period) {}
  std::size_t period() const { return period_; }

 private:
  std::size_t period_;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

class UnknownModel : public Error {
 public:
  using Error::Error;
};

}  // namespace cournot
