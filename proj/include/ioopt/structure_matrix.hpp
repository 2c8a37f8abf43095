// Structure matrices and their pattern-level predicates.
//
// A structure matrix is a nonnegative d x d table of consumption
// coefficients: entry (i, j) is the amount of product j consumed to make one
// unit of product i. Entries are held exactly (as parsed) together with their
// nearest double, so both numeric modes can work from the same object.
#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ioopt/dense.hpp"

namespace ioopt {

struct NumericMode {
  enum class Kind { exact_rational, binary_float };

  Kind kind = Kind::binary_float;
  int precision_bits = 53;  // meaningful for binary_float only
  double tolerance = 1e-12; // zero iff exact_rational

  static NumericMode exact() { return {Kind::exact_rational, 0, 0.0}; }
  static NumericMode floating(double tolerance = 1e-12);

  bool is_exact() const noexcept { return kind == Kind::exact_rational; }
};

const char* to_string(NumericMode::Kind kind) noexcept;

class StructureMatrix {
 public:
  /// Throws DomainError on a negative entry, non-square grid, or bad labels.
  /// Empty labels get the defaults "p1".."pd".
  static StructureMatrix from_exact(Matrix<Rational> entries, std::vector<std::string> labels = {});
  /// Each double is taken at its exact binary value.
  static StructureMatrix from_values(const Matrix<double>& entries, std::vector<std::string> labels = {});

  std::size_t dim() const noexcept { return values_.rows(); }
  const Matrix<double>& values() const noexcept { return values_; }
  const Matrix<Rational>& exact() const noexcept { return exact_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  bool positive(std::size_t i, std::size_t j) const { return exact_(i, j) > 0; }

  StructureMatrix transposed() const;
  StructureMatrix with_values(const Matrix<double>& entries) const;

 private:
  StructureMatrix(Matrix<Rational> exact, Matrix<double> values, std::vector<std::string> labels)
      : exact_(std::move(exact)), values_(std::move(values)), labels_(std::move(labels)) {}

  Matrix<Rational> exact_;
  Matrix<double> values_;
  std::vector<std::string> labels_;
};

std::vector<std::string> default_labels(std::size_t d);

/// Strong connectivity of the graph with an edge i -> j whenever a_ij > 0.
bool is_irreducible(const StructureMatrix& a);

/// Common period of an irreducible matrix. Throws StructuralError when the
/// matrix is reducible (including d = 1 with a zero entry).
int period(const StructureMatrix& a);

inline bool is_aperiodic(const StructureMatrix& a) { return is_irreducible(a) && period(a) == 1; }

/// Least m with A^m entrywise positive, found by boolean powering.
/// Throws StructuralError for reducible or periodic input.
int min_positivity_exponent(const StructureMatrix& a);

struct CwBounds {
  double lower = 0.0;
  double upper = 0.0;
  /// Set when the input is reducible; the bracket on rho is then not guaranteed.
  bool reducible_warning = false;
};

/// Collatz-Wielandt bounds min_k (xA)_k / x_k and max_k (xA)_k / x_k for a
/// strictly positive row vector x. Throws DomainError otherwise.
CwBounds cw_bounds(const StructureMatrix& a, std::span<const double> x);

/// Same quotients for the column iteration A x.
CwBounds cw_bounds_right(const Matrix<double>& a, std::span<const double> x);

/// Lower/upper quotient without any structural check.
CwBounds cw_quotients(const Matrix<double>& a, std::span<const double> x, bool right_side);

/// max_ij a_ij - min_ij a_ij.
double amplitude(const Matrix<double>& a);
inline double amplitude(const StructureMatrix& a) { return amplitude(a.values()); }

}  // namespace ioopt
