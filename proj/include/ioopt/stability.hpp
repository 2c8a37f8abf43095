// Idealised input-output iteration x_k = x_{k+1} M and collapse detection.
//
// Each step solves a linear system with a factorization of M computed once.
// The exact path runs over GMP rationals so sign changes are not an artefact
// of rounding; the float path is used wherever irrational eigen-data enters
// (the transformed chain P in particular).
#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ioopt/chen_transform.hpp"

namespace ioopt {

enum class Space { a_space, p_space };

const char* to_string(Space s) noexcept;

inline constexpr int kDefaultHorizon = 1000;

struct Trajectory {
  std::vector<std::vector<double>> steps;  // x_0 .. x_N (double view)
  std::vector<std::vector<Rational>> exact_steps;  // filled in exact mode only
  Space space = Space::a_space;
  Matrix<double> matrix;  // the iterated matrix
  NumericMode mode;
  /// True when iteration stopped at a step with a negative component.
  bool stopped_on_negative = false;

  std::size_t size() const noexcept { return steps.size(); }
  /// Sign of component k at step n, from the exact value when available.
  int sign(std::size_t n, std::size_t k) const;
};

struct IterateOptions {
  /// Singularity floor for float mode: |det M| / prod_i |row_i|_2 must exceed it.
  double determinant_floor = 1e-14;
  Space space = Space::a_space;
};

/// Float iteration. Throws ModelError for a singular M, NumericError on overflow.
Trajectory iterate(const Matrix<double>& m, std::span<const double> x0, int n_max = kDefaultHorizon,
                   const IterateOptions& opts = {});
/// Exact iteration. Throws ModelError for a singular M.
Trajectory iterate(const Matrix<Rational>& m, std::span<const Rational> x0, int n_max = kDefaultHorizon,
                   const IterateOptions& opts = {});

struct StabilityReport {
  std::optional<int> collapse_time;
  std::optional<std::size_t> collapse_product;  // 0-based; lowest negative index
  std::optional<std::pair<int, int>> crisis_window;
  std::pair<double, double> terminal_magnitudes;  // (max, min) of the final step
  int steps_run = 0;
};

struct CollapseOptions {
  /// Nominal growth is 1/rho. Missing: 1 in P-space, estimated from the matrix in A-space.
  std::optional<double> rho;
  /// Relative deviation of the growth ratio from 1/rho that marks a crisis step.
  double crisis_threshold = 0.10;
};

StabilityReport collapse_report(const Trajectory& t, const CollapseOptions& opts = {});

enum class Direction { a_to_p, p_to_a };

/// mu_n = rho^n (x_n . v) or x_n = rho^{-n} (mu_n . v^{-1}), stepwise.
/// Throws DomainError when the trajectory's matrix does not match the triple.
Trajectory convert(const Trajectory& t, const EigenTriple& triple, Direction direction, double tolerance = 1e-9);

/// Largest one-step residual |mu_{n+1} M - mu_n| of a P-space trajectory,
/// relative to the larger of the two states. A converted A-space run
/// satisfies the chain recursion at every step up to rounding.
double step_residual(const Trajectory& t);

struct EquivalenceResult {
  bool equivalent = false;
  StabilityReport a_space;
  StabilityReport p_space;
};

/// Iterates A exactly from x0 and the transformed chain in float from x0 . v,
/// and compares collapse time and product.
EquivalenceResult equivalence_check(const StructureMatrix& a, const EigenTriple& triple,
                                    std::span<const Rational> x0, int n_max = kDefaultHorizon);

}  // namespace ioopt
