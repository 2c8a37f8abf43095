#include "ioopt/eigensolver.hpp"

#include <cmath>

#include "ioopt/errors.hpp"

namespace ioopt {

void SolverConfig::validate() const {
  if (!(tolerance > 0.0)) throw DomainError("solver tolerance must be positive");
  if (max_iterations < 1) throw DomainError("max_iterations must be at least 1");
  if (!(shift_margin > 0.0)) throw DomainError("shift_margin must be positive");
}

namespace {

void require_primitive(const StructureMatrix& a) {
  if (!is_irreducible(a)) throw StructuralError("matrix is reducible; the maximal eigenpair is not determined");
  if (period(a) != 1) throw StructuralError("matrix is periodic; power-type iterations do not converge");
}

void scale_to_unit_max(std::vector<double>& x) {
  const double m = max_abs(x);
  for (double& xi : x) xi /= m;
}

bool converged(const CwBounds& b, double tol) { return b.upper - b.lower < tol * b.lower; }

// Right-side power iteration on m; left problems pass the transpose.
Eigenpair power_right(const Matrix<double>& m, const SolverConfig& cfg, std::vector<double> x) {
  scale_to_unit_max(x);
  CwBounds b;
  for (int it = 0; it <= cfg.max_iterations; ++it) {
    b = cw_quotients(m, x, true);
    if (cfg.observer) cfg.observer(it, b);
    if (converged(b, cfg.tolerance)) return {0.5 * (b.lower + b.upper), std::move(x), it, b};
    x = right_multiply(m, x);
    scale_to_unit_max(x);
  }
  throw ConvergenceError("power iteration did not reach the requested Collatz-Wielandt width", b.lower, b.upper,
                         cfg.max_iterations);
}

Eigenpair inverse_power_right(const Matrix<double>& m, const SolverConfig& cfg, std::vector<double> x) {
  constexpr int kRetries = 3;
  const std::size_t d = m.rows();
  scale_to_unit_max(x);
  CwBounds b;
  for (int it = 0; it <= cfg.max_iterations; ++it) {
    b = cw_quotients(m, x, true);
    if (cfg.observer) cfg.observer(it, b);
    if (converged(b, cfg.tolerance)) return {0.5 * (b.lower + b.upper), std::move(x), it, b};

    double margin = cfg.shift_margin;
    std::vector<double> y;
    for (int attempt = 0; attempt <= kRetries; ++attempt, margin *= 10.0) {
      const double shift = b.upper + margin * (b.upper - b.lower);
      Matrix<double> shifted(d, d);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) shifted(i, j) = (i == j ? shift : 0.0) - m(i, j);
      LuFactor<double> lu(std::move(shifted));
      if (lu.singular()) continue;
      auto candidate = lu.solve(x);
      // (sI - A)^{-1} is a positive matrix for s > rho; anything else means
      // the solve was numerically destroyed.
      bool ok = true;
      for (double c : candidate) ok = ok && std::isfinite(c) && c > 0.0;
      if (ok) {
        y = std::move(candidate);
        break;
      }
    }
    if (y.empty())
      throw ConvergenceError("shifted system singular after enlarging the shift margin", b.lower, b.upper, it);
    x = std::move(y);
    scale_to_unit_max(x);
  }
  throw ConvergenceError("inverse power iteration did not reach the requested Collatz-Wielandt width", b.lower,
                         b.upper, cfg.max_iterations);
}

Eigenpair solve_right(const Matrix<double>& m, const SolverConfig& cfg, std::vector<double> start) {
  return cfg.method == SolverMethod::power ? power_right(m, cfg, std::move(start))
                                           : inverse_power_right(m, cfg, std::move(start));
}

std::vector<double> uniform(std::size_t d) { return std::vector<double>(d, 1.0); }

}  // namespace

Eigenpair power_eigenpair(const StructureMatrix& a, Side side, const SolverConfig& cfg) {
  cfg.validate();
  require_primitive(a);
  const auto& m = side == Side::right ? a.values() : a.values().transpose();
  return power_right(m, cfg, uniform(a.dim()));
}

Eigenpair inverse_power_eigenpair(const StructureMatrix& a, Side side, const SolverConfig& cfg) {
  cfg.validate();
  require_primitive(a);
  const auto& m = side == Side::right ? a.values() : a.values().transpose();
  return inverse_power_right(m, cfg, uniform(a.dim()));
}

double eigen_residual(const Matrix<double>& a, double rho, std::span<const double> u, std::span<const double> v) {
  auto ua = left_multiply(u, a);
  auto av = right_multiply(a, v);
  double left = 0.0, right = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    left = std::max(left, std::abs(ua[k] - rho * u[k]));
    right = std::max(right, std::abs(av[k] - rho * v[k]));
  }
  return std::max(left / (rho * max_abs(u)), right / (rho * max_abs(v)));
}

void normalize_triple(std::span<double> u, std::span<double> v) {
  const double d = static_cast<double>(v.size());
  const double vs = sum(v);
  for (double& x : v) x *= d / vs;
  double dot = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) dot += u[k] * v[k];
  for (double& x : u) x /= dot;
}

EigenTriple eigentriple(const StructureMatrix& a, const SolverConfig& cfg) {
  cfg.validate();
  require_primitive(a);
  const std::size_t d = a.dim();

  // The working matrix is a diagonal similarity D^{-1} A D of A; eigenvectors
  // map back through right_scale (v = D g) and left_scale (u = h D^{-1}).
  Matrix<double> work = a.values();
  std::vector<double> right_scale(d, 1.0);
  switch (cfg.preconditioning) {
    case Preconditioning::none:
      break;
    case Preconditioning::quasi_symmetrize: {
      auto qs = quasi_symmetrize(a);
      work = std::move(qs.a_hat);
      for (std::size_t k = 0; k < d; ++k) right_scale[k] = 1.0 / std::sqrt(qs.mu[k]);
      break;
    }
    case Preconditioning::smooth_with_guess: {
      std::vector<double> w = cfg.smoothing_guess;
      if (w.empty()) {
        w = uniform(d);
        for (int i = 0; i < 20; ++i) {
          w = right_multiply(a.values(), w);
          scale_to_unit_max(w);
        }
      }
      if (w.size() != d) throw DomainError("smoothing guess has the wrong length");
      work = smooth_transform<double>(a.values(), w);
      right_scale = w;
      break;
    }
  }

  auto right = solve_right(work, cfg, uniform(d));
  auto left = solve_right(work.transpose(), cfg, uniform(d));

  EigenTriple t;
  t.v.resize(d);
  t.u.resize(d);
  for (std::size_t k = 0; k < d; ++k) {
    t.v[k] = right.vec[k] * right_scale[k];
    t.u[k] = left.vec[k] / right_scale[k];
  }
  // Both intervals bracket rho, so the midpoint of their intersection keeps
  // every quotient of either vector within its own interval width.
  const double lo = std::max(right.final_bounds.lower, left.final_bounds.lower);
  const double hi = std::min(right.final_bounds.upper, left.final_bounds.upper);
  t.rho = lo <= hi ? 0.5 * (lo + hi) : 0.5 * (right.rho + left.rho);
  normalize_triple(t.u, t.v);
  t.residual = eigen_residual(a.values(), t.rho, t.u, t.v);

  if (t.residual > cfg.tolerance && cfg.preconditioning != Preconditioning::none) {
    // Rounding in the back-transformation; polish on A itself.
    auto r2 = solve_right(a.values(), cfg, t.v);
    auto l2 = solve_right(a.values().transpose(), cfg, t.u);
    t.v = r2.vec;
    t.u = l2.vec;
    const double lo2 = std::max(r2.final_bounds.lower, l2.final_bounds.lower);
    const double hi2 = std::min(r2.final_bounds.upper, l2.final_bounds.upper);
    t.rho = lo2 <= hi2 ? 0.5 * (lo2 + hi2) : 0.5 * (r2.rho + l2.rho);
    normalize_triple(t.u, t.v);
    t.residual = eigen_residual(a.values(), t.rho, t.u, t.v);
  }
  if (t.residual > cfg.tolerance)
    throw ConvergenceError("eigentriple residual above tolerance", t.rho - t.residual * t.rho,
                           t.rho + t.residual * t.rho, cfg.max_iterations);
  return t;
}

QuasiSymmetrization quasi_symmetrize(const StructureMatrix& a) {
  if (!is_irreducible(a)) throw StructuralError("quasi-symmetrization needs an irreducible matrix");
  const std::size_t d = a.dim();
  const auto& m = a.values();
  QuasiSymmetrization out;
  out.mu.assign(d, 1.0);
  if (d > 1) {
    // Q = A - diag(A 1). With mu_1 = 1, the remaining components solve
    // mu' Q[2.., 2..] = -Q[1, 2..].
    std::vector<double> row_sum(d, 0.0);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) row_sum[i] += m(i, j);
    auto q = [&](std::size_t i, std::size_t j) { return m(i, j) - (i == j ? row_sum[i] : 0.0); };
    Matrix<double> reduced(d - 1, d - 1);
    std::vector<double> rhs(d - 1);
    for (std::size_t i = 1; i < d; ++i) {
      rhs[i - 1] = -q(0, i);
      for (std::size_t j = 1; j < d; ++j) reduced(i - 1, j - 1) = q(i, j);
    }
    LuFactor<double> lu(std::move(reduced));
    if (lu.singular()) throw NumericError("generator null-space system is singular", {}, 0);
    auto tail = lu.solve_left(rhs);
    for (std::size_t i = 1; i < d; ++i) {
      if (!(tail[i - 1] > 0.0)) throw NumericError("quasi-symmetrizing measure lost positivity", tail, 0);
      out.mu[i] = tail[i - 1];
    }
  }
  std::vector<double> inv_sqrt(d);
  for (std::size_t k = 0; k < d; ++k) inv_sqrt[k] = 1.0 / std::sqrt(out.mu[k]);
  out.a_hat = diagonal_similarity<double>(m, inv_sqrt, inv_sqrt);
  return out;
}

bool is_symmetrizable(const Matrix<double>& a, std::span<const double> mu, double tolerance) {
  if (mu.size() != a.rows()) throw DomainError("measure length mismatch");
  for (double m : mu)
    if (!(m > 0.0)) throw DomainError("symmetrizing measure must be strictly positive");
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j) {
      const double lhs = mu[i] * a(i, j);
      const double rhs = mu[j] * a(j, i);
      if (std::abs(lhs - rhs) > tolerance * std::max(std::abs(lhs), std::abs(rhs))) return false;
    }
  return true;
}

bool is_symmetrizable(const Matrix<Rational>& a, std::span<const Rational> mu) {
  if (mu.size() != a.rows()) throw DomainError("measure length mismatch");
  for (const auto& m : mu)
    if (!(m > 0)) throw DomainError("symmetrizing measure must be strictly positive");
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j)
      if (mu[i] * a(i, j) != mu[j] * a(j, i)) return false;
  return true;
}

}  // namespace ioopt
