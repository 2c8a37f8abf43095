#include "ioopt/errors.hpp"

namespace ioopt {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::parse: return "parse";
    case ErrorKind::structural: return "structural";
    case ErrorKind::model: return "model";
    case ErrorKind::domain: return "domain";
    case ErrorKind::convergence: return "convergence";
    case ErrorKind::numeric: return "numeric";
    case ErrorKind::io: return "io";
  }
  return "unknown";
}

namespace {
std::string located(const std::string& what, std::size_t row, std::size_t column) {
  std::string out = what;
  if (row > 0) {
    out += " (row " + std::to_string(row);
    if (column > 0) out += ", column " + std::to_string(column);
    out += ")";
  }
  return out;
}
}  // namespace

ParseError::ParseError(const std::string& what, std::size_t row, std::size_t column)
    : Error(ErrorKind::parse, located(what, row, column)), row_(row), column_(column) {}

}  // namespace ioopt
