#pragma once

// Single-exponential Cole-Hopf construction
//   u = B + A mu^2 / (2 (1 + cosh(mu x + lambda t + delta)))
// together with its six-equation algebraic system and the two solved branches.

#include <array>

#include "mdpwave/expr.hpp"

namespace mdpwave::cole_hopf {

struct Params {
  double A = 0.0;
  double B = 0.0;
  double mu = 0.0;
  double lambda = 0.0;
  double delta = 0.0;
};

/// Throws InvalidParams unless A, mu and lambda are nonzero and all fields are finite.
void check(const Params& p);

/// u(x, t). Throws InvalidParams.
Expr cole_hopf_u(const Params& p);

/// The six equations evaluated exactly as stated (1/2 and 3/4 differ by the
/// sign of every term after the first; 5 and 6 coincide).
std::array<double, 6> system_residuals(const Params& p, double b);

/// Coefficients of zeta^6 .. zeta^1 (zeta = exp of the phase) in the numerator
/// of the PDE residual after clearing (1 + zeta)^7 and the factor A mu^2.
std::array<double, 6> derived_system_residuals(const Params& p, double b);

enum class Branch { plus, minus };

/// S = 1 - b(b+2)(mu^4 - 1).
double discriminant(double b, double mu);

/// A = -6(b+2)/(b+1), B = (2mu^2 - 1 + b(mu^2 - 1) +- sqrt(S)) / (2(b+1)),
/// lambda = -mu (b + 1 -+ sqrt(S)) / 2. Throws ConstraintViolation.
Params branch_params(Branch branch, double b, double mu, double delta = 0.0);

}  // namespace mdpwave::cole_hopf
