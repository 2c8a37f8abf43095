// Structure matrix with a prescribed equilibrium.
//
// Given A_alpha with eigentriple (rho, u, v) and a target equilibrium
// u_tilde, the optimal matrix keeps the dual chain Q_u fixed:
//   A_tilde = D_w^{-1} A_alpha D_w,  w = u_tilde / u,
// so u_tilde and v_tilde = v u / u_tilde are its maximal eigenvectors and the
// transformed chain P is shared with A_alpha.
#pragma once

#include <span>
#include <vector>

#include "ioopt/stability.hpp"

namespace ioopt {

struct OptimizationResult {
  StructureMatrix a_tilde;  // rho(A_tilde) == rho(A_alpha)
  std::vector<double> u_tilde;
  std::vector<double> v_tilde;
  std::vector<double> w;
  double rho = 0.0;

  /// (rho, u_tilde, v_tilde) rescaled to sum(v) = d, u . v = 1.
  EigenTriple triple() const;
};

/// Throws DomainError for a non-positive target component.
OptimizationResult optimize_structure(const StructureMatrix& a_alpha, const EigenTriple& triple,
                                      std::span<const double> u_tilde);

struct InvarianceCheck {
  bool holds = false;
  double max_chain_difference = 0.0;  // max |P_tilde - P|
  double max_dual_difference = 0.0;   // max |Q_{u_tilde} - Q_u|
};

InvarianceCheck invariance_check(const StructureMatrix& a_alpha, const OptimizationResult& result,
                                 const EigenTriple& triple, double tolerance = 1e-10);

struct SharedStability {
  bool agree = false;
  StabilityReport a_space;
  StabilityReport a_tilde_space;
  StabilityReport p_space;
};

/// Iterates A_alpha from x0, A_tilde from x0 . w and P_alpha from x0 . v (all
/// float), and compares collapse time and product across the three.
SharedStability shared_stability_check(const StructureMatrix& a_alpha, const OptimizationResult& result,
                                       const EigenTriple& triple, std::span<const double> x0,
                                       int n_max = kDefaultHorizon);

}  // namespace ioopt
