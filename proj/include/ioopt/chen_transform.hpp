// Diagonal-similarity transforms between a structure matrix and Markov
// chains: the row-stochastic P = D_v^{-1} (A / rho) D_v, the column-stochastic
// dual Q = D_u (A / rho) D_u^{-1}, their inverses, and the complex
// generalization used for Hermitian matrices.
#pragma once

#include <complex>
#include <span>
#include <vector>

#include "ioopt/eigensolver.hpp"

namespace ioopt {

struct TransitionChain {
  Matrix<double> p;          // row-stochastic
  std::vector<double> mu;    // u . v componentwise; left eigenvector of p
  std::vector<double> pi;    // mu / sum(mu)
  double source_rho = 0.0;
  EigenTriple source;        // eigen data the chain was derived from

  std::size_t dim() const noexcept { return mu.size(); }
};

struct DualChain {
  Matrix<double> q;                 // column-stochastic
  std::vector<double> equilibrium;  // u . v componentwise; right eigenvector of q
};

/// Default stochasticity tolerance when validating externally supplied chains.
inline constexpr double kStochasticTolerance = 1e-10;

/// Throws DomainError when the triple is not an eigentriple of `a` to within
/// `tolerance` (relative residual).
TransitionChain chen_transform(const Matrix<double>& a, const EigenTriple& t, double tolerance = 1e-9);
inline TransitionChain chen_transform(const StructureMatrix& a, const EigenTriple& t, double tolerance = 1e-9) {
  return chen_transform(a.values(), t, tolerance);
}

/// D_w^{-1} (A / rho) D_w with no renormalisation; row-stochastic iff w is
/// proportional to the maximal right eigenvector.
Matrix<double> similarity_transform(const Matrix<double>& a, double rho, std::span<const double> w);

DualChain dual_chain(const Matrix<double>& a, const EigenTriple& t, double tolerance = 1e-9);
inline DualChain dual_chain(const StructureMatrix& a, const EigenTriple& t, double tolerance = 1e-9) {
  return dual_chain(a.values(), t, tolerance);
}

/// D_w P D_w^{-1}, or D_w^{-1} Q D_w when `dual`. The input must be row- (resp.
/// column-) stochastic to within `tolerance`.
Matrix<double> inverse_chen(const Matrix<double>& chain, std::span<const double> w, bool dual,
                            double tolerance = kStochasticTolerance);

/// Largest |row sum - 1| (or column sum when `columns`).
double stochastic_deviation(const Matrix<double>& m, bool columns = false);

/// Stationary vector of an irreducible row-stochastic matrix by direct solve.
std::vector<double> stationary_distribution(const Matrix<double>& p);

using Complex = std::complex<double>;

/// R_v = D_v^{-1} (A / lambda) D_v for a complex right eigenpair (lambda, v).
/// Throws DomainError for a zero component of v or lambda == 0.
Matrix<Complex> generalized_transform(const Matrix<Complex>& a, Complex lambda, std::span<const Complex> v);

/// |v_k|^2 / |v|^2. Throws DomainError for the zero vector.
std::vector<double> wave_probability(std::span<const Complex> v);

}  // namespace ioopt
