// Fixtures and hand-rolled generators shared by the test binaries.
#pragma once

#include <cmath>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "ioopt/structure_matrix.hpp"

namespace ioopt::testing {

inline const char* kTwoSectorCsv =
    "product,Agriculture,Manufacturing\n"
    "Agriculture,0.25,0.14\n"
    "Manufacturing,0.4,0.12\n";

inline StructureMatrix two_sector() {
  Matrix<Rational> m{{Rational(1, 4), Rational(7, 50)}, {Rational(2, 5), Rational(3, 25)}};
  return StructureMatrix::from_exact(m, {"Agriculture", "Manufacturing"});
}

// Closed forms for the two-sector table: characteristic polynomial
// l^2 - 0.37 l - 0.026 = 0.
inline double two_sector_rho() { return (37.0 + std::sqrt(2409.0)) / 200.0; }
inline double two_sector_u1_at_20() { return 5.0 / 7.0 * (std::sqrt(2409.0) + 13.0); }
inline double two_sector_v2_over_v1() { return (std::sqrt(2409.0) - 13.0) / 28.0; }

/// Irreducible and aperiodic: a random cyclic permutation guarantees strong
/// connectivity and one positive diagonal entry breaks periodicity.
inline Matrix<double> random_primitive(std::size_t d, std::mt19937& rng, double density = 0.4) {
  std::uniform_real_distribution<double> value(0.05, 1.0);
  std::bernoulli_distribution keep(density);
  Matrix<double> m(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (keep(rng)) m(i, j) = value(rng);
  std::vector<std::size_t> perm(d);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  for (std::size_t k = 0; k < d; ++k) {
    auto& e = m(perm[k], perm[(k + 1) % d]);
    if (e == 0.0) e = value(rng);
  }
  auto& diag = m(perm[0], perm[0]);
  if (diag == 0.0) diag = value(rng);
  return m;
}

/// Scaled so every row sum is at most `bound` (hence rho <= bound).
inline Matrix<double> with_row_sum_bound(Matrix<double> m, double bound) {
  double top = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double s = 0.0;
    for (double x : m.row(i)) s += x;
    top = std::max(top, s);
  }
  return scaled(m, bound / top);
}

inline std::vector<double> random_positive_vector(std::size_t d, std::mt19937& rng, double lo = 0.5,
                                                  double hi = 2.0) {
  std::uniform_real_distribution<double> value(lo, hi);
  std::vector<double> v(d);
  for (auto& x : v) x = value(rng);
  return v;
}

inline double max_diff(const Matrix<double>& a, const Matrix<double>& b) {
  double out = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out = std::max(out, std::abs(a(i, j) - b(i, j)));
  return out;
}

inline double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double out = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) out = std::max(out, std::abs(a[k] - b[k]));
  return out;
}

}  // namespace ioopt::testing
