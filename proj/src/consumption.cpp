#include "ioopt/consumption.hpp"

#include <cmath>

#include "ioopt/errors.hpp"

namespace ioopt {

namespace {

void require_normal(double rho) {
  if (!(rho > 0.0)) throw DomainError("spectral radius must be positive");
  if (rho >= 1.0) throw ModelError("rho(A) >= 1: the economic system is abnormal and cannot sustain growth");
}

void require_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha < 1.0)) throw DomainError("consumption parameter alpha must lie in [0, 1)");
}

void require_delta(double delta, double rho) {
  require_normal(rho);
  if (!(delta > 0.0 && delta < max_growth_rate(rho)))
    throw DomainError("growth rate must lie in (0, min(1, 1/rho - 1))");
}

}  // namespace

double max_growth_rate(double rho) {
  require_normal(rho);
  return std::min(1.0, 1.0 / rho - 1.0);
}

ConsumptionPlan ConsumptionPlan::from_alpha(double alpha, double rho) {
  require_alpha(alpha);
  require_normal(rho);
  ConsumptionPlan p;
  p.alpha = alpha;
  p.gamma = alpha / (1.0 - alpha);
  p.rho_a = rho;
  p.rho_alpha = (1.0 - alpha) * rho + alpha;
  p.delta = 1.0 / p.rho_alpha - 1.0;
  return p;
}

ConsumptionPlan ConsumptionPlan::from_delta(double delta, double rho) {
  ConsumptionPlan p = from_alpha(alpha_from_delta(delta, rho), rho);
  p.delta = delta;
  p.gamma = gamma_from_delta(delta, rho);
  return p;
}

StructureMatrix chen_alpha_matrix(const StructureMatrix& a, double alpha) {
  require_alpha(alpha);
  Matrix<double> m = scaled(a.values(), 1.0 - alpha);
  for (std::size_t i = 0; i < a.dim(); ++i) m(i, i) += alpha;
  if (alpha == 0.0) return a;
  return a.with_values(m);
}

StructureMatrix chen_alpha_matrix(const StructureMatrix& a, const Rational& alpha) {
  if (!(alpha >= 0 && alpha < 1)) throw DomainError("consumption parameter alpha must lie in [0, 1)");
  Matrix<Rational> m = scaled(a.exact(), Rational(1 - alpha));
  for (std::size_t i = 0; i < a.dim(); ++i) m(i, i) += alpha;
  return StructureMatrix::from_exact(std::move(m), a.labels());
}

StructureMatrix hua_gamma_matrix(const StructureMatrix& a, double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw DomainError("consumption ratio gamma must be positive");
  Matrix<double> m = a.values();
  for (std::size_t i = 0; i < a.dim(); ++i) m(i, i) += gamma;
  return a.with_values(scaled(m, 1.0 / (1.0 + gamma)));
}

double hua_gamma_growth_rate(double gamma, double rho) {
  require_normal(rho);
  if (!(gamma > 0.0)) throw DomainError("consumption ratio gamma must be positive");
  return (1.0 - rho) / (gamma + rho);
}

InverseModel hua_inverse_model(const StructureMatrix& a, double alpha, double rho) {
  require_alpha(alpha);
  require_normal(rho);
  const std::size_t d = a.dim();
  LuFactor<double> lu(a.values());
  if (lu.singular()) throw ModelError("structure matrix is singular; the inverse model is undefined");
  InverseModel out{Matrix<double>(d, d), (1.0 - alpha) / rho + alpha - 1.0};
  std::vector<double> e(d, 0.0);
  for (std::size_t j = 0; j < d; ++j) {
    e.assign(d, 0.0);
    e[j] = 1.0;
    auto col = lu.solve(e);
    for (std::size_t i = 0; i < d; ++i) out.b(i, j) = (1.0 - alpha) * col[i] + (i == j ? alpha : 0.0);
  }
  return out;
}

TransitionChain transformed_alpha_chain(const TransitionChain& chain, double alpha, double rho_a) {
  require_alpha(alpha);
  require_normal(rho_a);
  const double rho_alpha = (1.0 - alpha) * rho_a + alpha;
  const double beta = alpha / rho_alpha;
  TransitionChain out = chain;
  out.p = scaled(chain.p, 1.0 - beta);
  for (std::size_t i = 0; i < chain.dim(); ++i) out.p(i, i) += beta;
  out.source_rho = rho_alpha;
  out.source.rho = rho_alpha;
  return out;
}

double delta_from_alpha(double alpha, double rho) {
  require_alpha(alpha);
  require_normal(rho);
  return 1.0 / ((1.0 - alpha) * rho + alpha) - 1.0;
}

double alpha_from_delta(double delta, double rho) {
  require_delta(delta, rho);
  return (1.0 / (1.0 + delta) - rho) / (1.0 - rho);
}

double gamma_from_delta(double delta, double rho) {
  require_delta(delta, rho);
  const double shrink = 1.0 / (1.0 + delta);
  return (shrink - rho) / (1.0 - shrink);
}

std::vector<double> available_consumption(std::span<const double> x_n, std::span<const double> x_next, double delta,
                                          double rho) {
  require_delta(delta, rho);
  if (x_n.size() != x_next.size()) throw DomainError("state vectors differ in length");
  const double coeff = (1.0 - (1.0 + delta) * rho) / delta;
  std::vector<double> xi(x_n.size());
  for (std::size_t k = 0; k < xi.size(); ++k) xi[k] = coeff * (x_next[k] - x_n[k]);
  return xi;
}

namespace {

// alpha x_n A_alpha^{-1} (I - A): the same quantity as gamma (x_{n+1} - x_n)
// without the cancellation that form suffers as alpha -> 1.
std::vector<double> consumption_at(const Matrix<double>& a, std::span<const double> x_n, double alpha) {
  const std::size_t d = a.rows();
  if (alpha == 0.0) return std::vector<double>(d, 0.0);
  Matrix<double> m = scaled(a, 1.0 - alpha);
  for (std::size_t i = 0; i < d; ++i) m(i, i) += alpha;
  LuFactor<double> lu(std::move(m));
  if (lu.singular()) throw ModelError("A_alpha is singular");
  auto next = lu.solve_left(x_n);
  auto next_a = left_multiply(next, a);
  std::vector<double> xi(d);
  for (std::size_t k = 0; k < d; ++k) xi[k] = alpha * (next[k] - next_a[k]);
  return xi;
}

}  // namespace

ConsumptionStep consumption_step(const StructureMatrix& a, std::span<const double> x_n, double alpha) {
  require_alpha(alpha);
  if (x_n.size() != a.dim()) throw DomainError("state vector length does not match matrix dimension");
  auto a_alpha = chen_alpha_matrix(a, alpha);
  LuFactor<double> lu(a_alpha.values());
  if (lu.singular()) throw ModelError("A_alpha is singular");
  ConsumptionStep s;
  s.next = lu.solve_left(x_n);
  s.consumption = consumption_at(a.values(), x_n, alpha);
  return s;
}

FeasibleAlpha max_feasible_alpha(std::span<const double> planned, std::span<const double> x_n,
                                 const StructureMatrix& a, double rho, double tolerance) {
  require_normal(rho);
  const std::size_t d = a.dim();
  if (planned.size() != d || x_n.size() != d) throw DomainError("vector length does not match matrix dimension");
  for (double p : planned)
    if (!(p >= 0.0)) throw DomainError("planned consumption must be nonnegative");

  auto covers = [&](const std::vector<double>& xi) {
    for (std::size_t k = 0; k < d; ++k)
      if (xi[k] < planned[k]) return false;
    return true;
  };
  auto slack = [&](const std::vector<double>& xi) { return 1e-12 * std::max(1.0, max_abs(xi)); };
  auto ordered = [&](const std::vector<double>& lo, const std::vector<double>& hi) {
    const double eps = slack(hi);
    for (std::size_t k = 0; k < d; ++k)
      if (lo[k] > hi[k] + eps) return false;
    return true;
  };

  FeasibleAlpha out;
  double lo = 0.0;
  double hi = 1.0 - 1e-12;
  auto xi_lo = consumption_at(a.values(), x_n, lo);
  auto xi_hi = consumption_at(a.values(), x_n, hi);
  if (covers(xi_lo)) {
    out.feasible = true;
    out.alpha = 0.0;
    out.delta = delta_from_alpha(0.0, rho);
    return out;
  }
  if (!covers(xi_hi)) return out;
  if (!ordered(xi_lo, xi_hi)) throw NumericError("available consumption is not increasing in alpha", xi_hi, 0);

  while (hi - lo > tolerance) {
    const double mid = 0.5 * (lo + hi);
    auto xi_mid = consumption_at(a.values(), x_n, mid);
    if (!ordered(xi_lo, xi_mid) || !ordered(xi_mid, xi_hi))
      throw NumericError("available consumption is not increasing in alpha near alpha = " + format_double(mid),
                         xi_mid, out.bisection_steps);
    if (covers(xi_mid)) {
      hi = mid;
      xi_hi = std::move(xi_mid);
    } else {
      lo = mid;
      xi_lo = std::move(xi_mid);
    }
    ++out.bisection_steps;
  }
  out.feasible = true;
  out.alpha = hi;
  out.delta = delta_from_alpha(hi, rho);
  return out;
}

}  // namespace ioopt
