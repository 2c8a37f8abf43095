#include "ioopt/structure_opt.hpp"

#include <cmath>

#include "ioopt/errors.hpp"

namespace ioopt {

EigenTriple OptimizationResult::triple() const {
  EigenTriple t;
  t.rho = rho;
  t.u = u_tilde;
  t.v = v_tilde;
  normalize_triple(t.u, t.v);
  t.residual = eigen_residual(a_tilde.values(), t.rho, t.u, t.v);
  return t;
}

OptimizationResult optimize_structure(const StructureMatrix& a_alpha, const EigenTriple& triple,
                                      std::span<const double> u_tilde) {
  const std::size_t d = a_alpha.dim();
  if (u_tilde.size() != d || triple.dim() != d) throw DomainError("target length does not match matrix dimension");
  for (double x : u_tilde)
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("target equilibrium must be strictly positive");

  OptimizationResult r{a_alpha, {u_tilde.begin(), u_tilde.end()}, std::vector<double>(d), std::vector<double>(d),
                       triple.rho};
  for (std::size_t k = 0; k < d; ++k) {
    r.w[k] = u_tilde[k] / triple.u[k];
    r.v_tilde[k] = triple.v[k] * triple.u[k] / u_tilde[k];
  }
  // A_tilde / rho = D_w^{-1} (A / rho) D_w; scaling back by rho keeps the
  // development rate of A_alpha.
  r.a_tilde = a_alpha.with_values(smooth_transform<double>(a_alpha.values(), r.w));
  return r;
}

namespace {

double max_difference(const Matrix<double>& a, const Matrix<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

}  // namespace

InvarianceCheck invariance_check(const StructureMatrix& a_alpha, const OptimizationResult& result,
                                 const EigenTriple& triple, double tolerance) {
  auto tilde_triple = result.triple();
  auto p = chen_transform(a_alpha, triple);
  auto p_tilde = chen_transform(result.a_tilde, tilde_triple);
  auto q = dual_chain(a_alpha, triple);
  auto q_tilde = dual_chain(result.a_tilde, tilde_triple);
  InvarianceCheck c;
  c.max_chain_difference = max_difference(p.p, p_tilde.p);
  c.max_dual_difference = max_difference(q.q, q_tilde.q);
  c.holds = c.max_chain_difference <= tolerance && c.max_dual_difference <= tolerance;
  return c;
}

SharedStability shared_stability_check(const StructureMatrix& a_alpha, const OptimizationResult& result,
                                       const EigenTriple& triple, std::span<const double> x0, int n_max) {
  const std::size_t d = a_alpha.dim();
  if (x0.size() != d) throw DomainError("initial vector length does not match matrix dimension");
  auto chain = chen_transform(a_alpha, triple);
  std::vector<double> x_tilde(d), mu0(d);
  for (std::size_t k = 0; k < d; ++k) {
    x_tilde[k] = x0[k] * result.w[k];
    mu0[k] = x0[k] * triple.v[k];
  }
  SharedStability s;
  s.a_space = collapse_report(iterate(a_alpha.values(), x0, n_max), {.rho = triple.rho});
  s.a_tilde_space = collapse_report(iterate(result.a_tilde.values(), x_tilde, n_max), {.rho = result.rho});
  s.p_space = collapse_report(iterate(chain.p, mu0, n_max, {.space = Space::p_space}), {.rho = 1.0});
  auto same = [](const StabilityReport& x, const StabilityReport& y) {
    return x.collapse_time == y.collapse_time && x.collapse_product == y.collapse_product;
  };
  s.agree = same(s.a_space, s.a_tilde_space) && same(s.a_space, s.p_space);
  return s;
}

}  // namespace ioopt
