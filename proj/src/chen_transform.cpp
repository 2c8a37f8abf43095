#include "ioopt/chen_transform.hpp"

#include <cmath>

#include "ioopt/errors.hpp"

namespace ioopt {

namespace {

void require_positive(std::span<const double> w, const char* what) {
  for (double x : w)
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError(std::string(what) + " must be strictly positive");
}

void check_triple(const Matrix<double>& a, const EigenTriple& t, double tolerance) {
  if (t.u.size() != a.rows() || t.v.size() != a.rows()) throw DomainError("eigentriple dimension mismatch");
  if (!(t.rho > 0.0)) throw DomainError("eigentriple has a non-positive eigenvalue");
  require_positive(t.u, "left eigenvector");
  require_positive(t.v, "right eigenvector");
  const double r = eigen_residual(a, t.rho, t.u, t.v);
  if (!(r <= tolerance))
    throw DomainError("eigentriple residual " + format_double(r) + " exceeds " + format_double(tolerance));
}

}  // namespace

double stochastic_deviation(const Matrix<double>& m, bool columns) {
  double worst = 0.0;
  const std::size_t n = columns ? m.cols() : m.rows();
  for (std::size_t k = 0; k < n; ++k) {
    double s = 0.0;
    for (std::size_t l = 0; l < (columns ? m.rows() : m.cols()); ++l) s += columns ? m(l, k) : m(k, l);
    worst = std::max(worst, std::abs(s - 1.0));
  }
  return worst;
}

TransitionChain chen_transform(const Matrix<double>& a, const EigenTriple& t, double tolerance) {
  check_triple(a, t, tolerance);
  const std::size_t d = a.rows();
  TransitionChain c;
  c.p = similarity_transform(a, t.rho, t.v);
  // The per-row sums are the Collatz-Wielandt quotients (Av)_i / (rho v_i),
  // equal to 1 up to the triple's residual; dividing them out makes P
  // stochastic to rounding.
  for (std::size_t i = 0; i < d; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < d; ++j) s += c.p(i, j);
    for (std::size_t j = 0; j < d; ++j) c.p(i, j) /= s;
  }
  c.mu = hadamard<double>(t.u, t.v);
  const double total = sum(c.mu);
  c.pi = c.mu;
  for (double& x : c.pi) x /= total;
  c.source_rho = t.rho;
  c.source = t;
  return c;
}

Matrix<double> similarity_transform(const Matrix<double>& a, double rho, std::span<const double> w) {
  if (w.size() != a.rows()) throw DomainError("similarity vector length mismatch");
  require_positive(w, "similarity vector");
  if (!(rho > 0.0)) throw DomainError("rho must be positive");
  return scaled(diagonal_similarity(a, w, w), 1.0 / rho);
}

DualChain dual_chain(const Matrix<double>& a, const EigenTriple& t, double tolerance) {
  check_triple(a, t, tolerance);
  const std::size_t d = a.rows();
  std::vector<double> inv_u(d);
  for (std::size_t k = 0; k < d; ++k) inv_u[k] = 1.0 / t.u[k];
  DualChain out;
  // q_ij = u_i a_ij / (rho u_j)
  out.q = scaled(diagonal_similarity<double>(a, inv_u, inv_u), 1.0 / t.rho);
  for (std::size_t j = 0; j < d; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < d; ++i) s += out.q(i, j);
    for (std::size_t i = 0; i < d; ++i) out.q(i, j) /= s;
  }
  out.equilibrium = hadamard<double>(t.u, t.v);
  return out;
}

Matrix<double> inverse_chen(const Matrix<double>& chain, std::span<const double> w, bool dual, double tolerance) {
  if (!chain.square() || w.size() != chain.rows()) throw DomainError("chain/vector dimension mismatch");
  require_positive(w, "transform vector");
  for (double x : chain.data())
    if (x < 0.0) throw DomainError("chain has a negative entry");
  const double dev = stochastic_deviation(chain, dual);
  if (dev > tolerance)
    throw DomainError(std::string(dual ? "column" : "row") + " sums deviate from 1 by " + format_double(dev));
  if (dual) return diagonal_similarity<double>(chain, w, w);
  std::vector<double> inv(w.size());
  for (std::size_t k = 0; k < w.size(); ++k) inv[k] = 1.0 / w[k];
  return diagonal_similarity<double>(chain, inv, inv);
}

std::vector<double> stationary_distribution(const Matrix<double>& p) {
  const std::size_t d = p.rows();
  std::vector<double> pi(d, 1.0);
  if (d > 1) {
    // pi (P - I) = 0 with pi_1 = 1, then normalise.
    Matrix<double> reduced(d - 1, d - 1);
    std::vector<double> rhs(d - 1);
    for (std::size_t i = 1; i < d; ++i) {
      rhs[i - 1] = -p(0, i);
      for (std::size_t j = 1; j < d; ++j) reduced(i - 1, j - 1) = p(i, j) - (i == j ? 1.0 : 0.0);
    }
    LuFactor<double> lu(std::move(reduced));
    if (lu.singular()) throw NumericError("stationary system is singular", {}, 0);
    auto tail = lu.solve_left(rhs);
    for (std::size_t i = 1; i < d; ++i) pi[i] = tail[i - 1];
  }
  const double total = sum(pi);
  for (double& x : pi) x /= total;
  return pi;
}

Matrix<Complex> generalized_transform(const Matrix<Complex>& a, Complex lambda, std::span<const Complex> v) {
  if (!a.square() || v.size() != a.rows()) throw DomainError("dimension mismatch");
  if (lambda == Complex(0.0)) throw DomainError("eigenvalue must be nonzero");
  for (const auto& x : v)
    if (x == Complex(0.0)) throw DomainError("right eigenvector has a zero component");
  Matrix<Complex> r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) * v[j] / (lambda * v[i]);
  return r;
}

std::vector<double> wave_probability(std::span<const Complex> v) {
  double total = 0.0;
  for (const auto& x : v) total += std::norm(x);
  if (!(total > 0.0)) throw DomainError("wave vector is zero");
  std::vector<double> pi(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) pi[k] = std::norm(v[k]) / total;
  return pi;
}

}  // namespace ioopt
