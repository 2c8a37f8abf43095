#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace ioopt {

enum class ErrorKind {
  parse,        // malformed table or config input
  structural,   // reducible / periodic where the operation needs otherwise
  model,        // singular system, rho >= 1, and similar modelling failures
  domain,       // argument outside the operation's domain
  convergence,  // iteration budget exhausted
  numeric,      // overflow / non-finite values in float mode
  io,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ParseError : public Error {
 public:
  /// row/column are 1-based; 0 means "not applicable".
  ParseError(const std::string& what, std::size_t row, std::size_t column = 0);
  std::size_t row() const noexcept { return row_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t row_;
  std::size_t column_;
};

class StructuralError : public Error {
 public:
  explicit StructuralError(const std::string& what) : Error(ErrorKind::structural, what) {}
};

class ModelError : public Error {
 public:
  explicit ModelError(const std::string& what) : Error(ErrorKind::model, what) {}
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorKind::domain, what) {}
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double lower, double upper, int iterations)
      : Error(ErrorKind::convergence, what), lower_(lower), upper_(upper), iterations_(iterations) {}
  /// Last Collatz-Wielandt interval seen before giving up.
  double lower() const noexcept { return lower_; }
  double upper() const noexcept { return upper_; }
  int iterations() const noexcept { return iterations_; }

 private:
  double lower_;
  double upper_;
  int iterations_;
};

class NumericError : public Error {
 public:
  NumericError(const std::string& what, std::vector<double> last_valid, int step)
      : Error(ErrorKind::numeric, what), last_valid_(std::move(last_valid)), step_(step) {}
  const std::vector<double>& last_valid() const noexcept { return last_valid_; }
  int step() const noexcept { return step_; }

 private:
  std::vector<double> last_valid_;
  int step_;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorKind::io, what) {}
};

}  // namespace ioopt
