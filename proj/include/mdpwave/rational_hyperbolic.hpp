#pragma once

// Rational-hyperbolic ansatz
//   U(xi) = (a0 + a1 sinh xi + a2 cosh xi) / (1 + c1 sinh xi + c2 cosh xi)
// and a collocation test that certifies U solves the traveling-wave ODE.

#include <optional>
#include <string_view>
#include <vector>

#include "mdpwave/expr.hpp"

namespace mdpwave::rh {

struct AnsatzParams {
  double lambda = 0.0;
  double a0 = 0.0;
  double a1 = 0.0;
  double a2 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
};

Expr rh_ansatz(const AnsatzParams& p);
Expr rh_denominator(const AnsatzParams& p);

/// Coefficient tuple of u3..u10. `free_value` is a2 for u7/u8 and c2 for
/// u9/u10 and is ignored otherwise. Throws ConstraintViolation, and
/// std::out_of_range for any other id.
AnsatzParams family_params(std::string_view id, double b, std::optional<double> free_value = std::nullopt);

/// Residual degree bound in zeta = exp(xi) after clearing denominator^5.
inline constexpr int kDegreeBound = 16;
inline constexpr double kCollocationTolerance = 1e-8;

struct CollocationResult {
  bool pass = false;
  std::vector<double> xi;
  /// |R D^5| / max(1, largest term of R D^5), one per sample.
  std::vector<double> scaled;
  double max_scaled = 0.0;
  int resamples = 0;
};

/// Evaluates the ODE residual of U times denominator^5 at kDegreeBound + 1
/// points equispaced in [-2, 2]. A sample that hits a pole (|denominator| <
/// 1e-9 or a domain error) shifts the whole set; after five shifts
/// SampleAtPole is thrown.
CollocationResult collocation_identity_check(const Expr& U, double b, double lambda,
                                             const Expr& denominator = Expr(1));
CollocationResult collocation_identity_check(const AnsatzParams& p, double b);

}  // namespace mdpwave::rh
