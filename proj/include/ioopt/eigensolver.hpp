// Maximal eigenpair (rho, u, v) of irreducible aperiodic nonnegative
// matrices. Both solvers stop on the width of the Collatz-Wielandt interval
// of the current iterate, which always brackets rho.
#pragma once

#include <functional>
#include <span>
#include <vector>

#include "ioopt/errors.hpp"
#include "ioopt/structure_matrix.hpp"

namespace ioopt {

enum class Side { left, right };

enum class Preconditioning { none, quasi_symmetrize, smooth_with_guess };

enum class SolverMethod { power, inverse_power };

struct SolverConfig {
  double tolerance = 1e-12;
  int max_iterations = 100000;
  Preconditioning preconditioning = Preconditioning::none;
  SolverMethod method = SolverMethod::inverse_power;
  /// Inverse power shift = CW upper + shift_margin * (upper - lower).
  double shift_margin = 1.0;
  /// Approximate right eigenvector for smooth_with_guess; empty means a short
  /// power run supplies it.
  std::vector<double> smoothing_guess;
  /// Called with every Collatz-Wielandt interval the solvers evaluate.
  std::function<void(int iteration, const CwBounds&)> observer;

  void validate() const;
};

struct Eigenpair {
  double rho = 0.0;
  std::vector<double> vec;  // positive, max component 1
  int iterations = 0;
  CwBounds final_bounds;
};

/// Maximal eigentriple normalised so that sum(v) = d and u . v = 1.
struct EigenTriple {
  double rho = 0.0;
  std::vector<double> u;  // row vector: u A = rho u
  std::vector<double> v;  // column vector: A v = rho v
  double residual = 0.0;

  std::size_t dim() const noexcept { return v.size(); }
};

Eigenpair power_eigenpair(const StructureMatrix& a, Side side, const SolverConfig& cfg = {});
Eigenpair inverse_power_eigenpair(const StructureMatrix& a, Side side, const SolverConfig& cfg = {});

/// Both eigenvectors, optionally preconditioned, rescaled and verified.
EigenTriple eigentriple(const StructureMatrix& a, const SolverConfig& cfg = {});

/// max(|uA - rho u|_inf / (rho |u|_inf), |Av - rho v|_inf / (rho |v|_inf)).
double eigen_residual(const Matrix<double>& a, double rho, std::span<const double> u, std::span<const double> v);

/// Rescales to sum(v) = d, u . v = 1.
void normalize_triple(std::span<double> u, std::span<double> v);

struct QuasiSymmetrization {
  std::vector<double> mu;  // positive, mu[0] = 1, mu Q = 0 for Q = A - diag(A 1)
  Matrix<double> a_hat;    // D_{mu^1/2} A D_{mu^-1/2}
};

/// Throws StructuralError for reducible input.
QuasiSymmetrization quasi_symmetrize(const StructureMatrix& a);

/// mu_i a_ij == mu_j a_ji for all pairs, relative to tolerance (0 = exact).
bool is_symmetrizable(const Matrix<double>& a, std::span<const double> mu, double tolerance = 1e-12);
bool is_symmetrizable(const Matrix<Rational>& a, std::span<const Rational> mu);

/// D_w^{-1} A D_w, entries a_ij w_j / w_i.
template <class T>
Matrix<T> smooth_transform(const Matrix<T>& a, std::span<const T> w) {
  if (w.size() != a.rows()) throw DomainError("smoothing vector length mismatch");
  for (const T& wi : w)
    if (!(wi > 0)) throw DomainError("smoothing vector must be strictly positive");
  return diagonal_similarity(a, w, w);
}

}  // namespace ioopt
