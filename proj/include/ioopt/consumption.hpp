// Consumption-augmented structure matrices and the growth-rate algebra that
// ties a consumption parameter alpha to a growth rate delta.
//
// All rate conversions require rho(A) < 1; a structure matrix with
// rho >= 1 cannot sustain growth and is reported as a ModelError.
#pragma once

#include <optional>
#include <span>
#include <vector>

#include "ioopt/chen_transform.hpp"

namespace ioopt {

struct ConsumptionPlan {
  double alpha = 0.0;      // consumption parameter in [0, 1)
  double gamma = 0.0;      // alpha / (1 - alpha)
  double delta = 0.0;      // growth rate 1 / rho_alpha - 1
  double rho_a = 0.0;
  double rho_alpha = 0.0;  // (1 - alpha) rho + alpha

  static ConsumptionPlan from_alpha(double alpha, double rho);
  static ConsumptionPlan from_delta(double delta, double rho);
};

/// A_alpha = (1 - alpha) A + alpha I.
StructureMatrix chen_alpha_matrix(const StructureMatrix& a, double alpha);
/// Exact variant used when alpha is rational.
StructureMatrix chen_alpha_matrix(const StructureMatrix& a, const Rational& alpha);

/// A_gamma = (A + gamma I) / (1 + gamma).
StructureMatrix hua_gamma_matrix(const StructureMatrix& a, double gamma);
/// 1 / rho(A_gamma) - 1 = (1 - rho) / (gamma + rho).
double hua_gamma_growth_rate(double gamma, double rho);

struct InverseModel {
  Matrix<double> b;    // (1 - alpha) A^{-1} + alpha I
  double growth_rate;  // (1 - alpha) / rho + alpha - 1
};
/// Throws ModelError when A is singular.
InverseModel hua_inverse_model(const StructureMatrix& a, double alpha, double rho);

/// P_alpha = (1 - beta) P + beta I, beta = alpha / ((1 - alpha) rho_A + alpha).
TransitionChain transformed_alpha_chain(const TransitionChain& chain, double alpha, double rho_a);

double delta_from_alpha(double alpha, double rho);
double alpha_from_delta(double delta, double rho);
double gamma_from_delta(double delta, double rho);

/// Upper end of the admissible growth range: min(1, 1/rho - 1).
double max_growth_rate(double rho);

/// ((1 - (1 + delta) rho) / delta) (x_{n+1} - x_n).
std::vector<double> available_consumption(std::span<const double> x_n, std::span<const double> x_next, double delta,
                                          double rho);

/// Next state x_{n+1} solving x_n = x_{n+1} A_alpha, and the consumption
/// gamma_alpha (x_{n+1} - x_n) it leaves.
struct ConsumptionStep {
  std::vector<double> next;
  std::vector<double> consumption;
};
ConsumptionStep consumption_step(const StructureMatrix& a, std::span<const double> x_n, double alpha);

struct FeasibleAlpha {
  bool feasible = false;
  double alpha = 0.0;  // smallest alpha whose consumption covers the plan
  double delta = 0.0;  // growth rate at that alpha
  int bisection_steps = 0;
};

/// Infimum over alpha in (0, 1) of {consumption(alpha) >= planned componentwise}.
/// Infeasible plans return feasible = false. Throws NumericError if the
/// consumption fails to be monotone in alpha along the bisection.
FeasibleAlpha max_feasible_alpha(std::span<const double> planned, std::span<const double> x_n,
                                 const StructureMatrix& a, double rho, double tolerance = 1e-12);

}  // namespace ioopt
