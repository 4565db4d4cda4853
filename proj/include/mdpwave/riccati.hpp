#pragma once

// Closed-form solutions of the constant-coefficient Riccati equation
//   phi'(xi) = alpha + beta*phi + gamma*phi^2
// split into the seven classical cases.

#include "mdpwave/expr.hpp"

namespace mdpwave::riccati {

struct Coefficients {
  Coefficients(double alpha, double beta, double gamma)
      : alpha(alpha), beta(beta), gamma(gamma), delta(beta * beta - 4.0 * alpha * gamma) {}

  double alpha;
  double beta;
  double gamma;
  double delta;  // beta^2 - 4 alpha gamma
};

/// Case ids follow the usual table:
///   1  alpha = 0, beta != 0            exponential
///   2  alpha = beta = 0, gamma != 0    rational -1/(gamma xi)
///   3  gamma = 0, beta != 0            exponential
///   4  beta = 0, alpha*gamma != 0      tan / tanh
///   5  beta != 0, beta^2 = 4 alpha gamma
///   6  beta^2 < 4 alpha gamma          tan
///   7  beta^2 > 4 alpha gamma, gamma != 0   tanh
/// Checked in the order 2, 1, 3, 5, 4, 6, 7; the first match wins.
enum class Case : int { exp_alpha_zero = 1, rational = 2, exp_gamma_zero = 3, pure = 4, degenerate = 5, tan = 6, tanh = 7 };

struct Solution {
  Case id;
  Expr phi;  // in xi
  /// Vanishes exactly on the poles of phi; the constant 1 when phi is entire.
  Expr pole_guard;
};

/// Relative tolerance for the degenerate test |beta^2 - 4 alpha gamma|.
inline constexpr double kDegenerateTolerance = 1e-12;

bool is_degenerate(const Coefficients& c);

/// Throws Unclassifiable for (0,0,0) and for alpha != 0, beta = gamma = 0.
Case classify(const Coefficients& c);

Solution solve(const Coefficients& c);
inline Expr phi_expr(const Coefficients& c) { return solve(c).phi; }

/// phi' - (alpha + beta phi + gamma phi^2), as an expression in xi.
Expr residual(const Expr& phi, const Coefficients& c);

/// Evaluates |residual| / max(1, |phi'| + |alpha| + |beta phi| + |gamma phi^2|)
/// with phi and phi' compiled once.
class ResidualProbe {
 public:
  ResidualProbe(const Expr& phi, const Coefficients& c);
  double operator()(double xi) const;

 private:
  Coefficients c_;
  Evaluator phi_;
  Evaluator dphi_;
};

}  // namespace mdpwave::riccati
