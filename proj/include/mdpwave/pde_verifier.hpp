#pragma once

// Residual operators for
//   u_t - u_xxt + (b+1) u^2 u_x - b u_x u_xx - u u_xxx = 0          (PDE)
//   (b+1) U' U^2 - U''' U - lambda U''' + lambda U' - b U' U'' = 0  (traveling-wave ODE, xi = x + lambda t)
// and grid verification with pole guards.

#include <array>
#include <cstddef>
#include <string>

#include "mdpwave/expr.hpp"

namespace mdpwave::pde {

/// The five signed terms whose sum is the residual.
using Terms = std::array<Expr, 5>;

Terms mdp_terms(const Expr& u, const Expr& b);
Expr mdp_residual(const Expr& u, const Expr& b);

Terms ode_terms(const Expr& U, const Expr& b, const Expr& lambda);
Expr ode_residual(const Expr& U, const Expr& b, const Expr& lambda);

inline constexpr double kDefaultTolerance = 1e-7;
inline constexpr double kDefaultFdTolerance = 1e-4;
inline constexpr double kDefaultFdStep = 1e-3;

struct GridSpec {
  double x0 = -10.0;
  double x1 = 10.0;
  std::size_t nx = 101;
  double t0 = 0.0;
  double t1 = 2.0;
  std::size_t nt = 11;
  double eps_den = 1e-3;

  /// Throws InvalidParams when the invariants (nx, nt >= 2, x0 < x1, t0 <= t1, eps_den > 0) fail.
  void validate() const;
  double x_at(std::size_t i) const { return lerp(x0, x1, i, nx); }
  double t_at(std::size_t j) const { return lerp(t0, t1, j, nt); }

 private:
  // Weighted endpoint form keeps symmetric grids symmetric and hits 0 exactly.
  static double lerp(double a, double b, std::size_t i, std::size_t n) {
    const auto k = static_cast<double>(i);
    const auto m = static_cast<double>(n - 1);
    return ((m - k) * a + k * b) / m;
  }
};

struct ResidualReport {
  double max_abs = 0.0;
  double max_scaled = 0.0;
  std::size_t points_evaluated = 0;
  std::size_t points_skipped = 0;
  /// Subset of points_skipped whose evaluation left the real domain
  /// although the guard did not flag them.
  std::size_t domain_errors = 0;
  double tolerance = kDefaultTolerance;
  bool pass = false;
  std::string method = "symbolic";
};

/// Scaled residual |R| / max(1, sum |term_i|) of five term values.
double scaled(const std::array<double, 5>& terms);

/// Evaluates the symbolic residual of `u(x, t)` at every grid point where
/// |guard| >= grid.eps_den. Throws AllPointsSkipped if nothing is evaluated.
ResidualReport verify_on_grid(const Expr& u, const Expr& b, const GridSpec& grid, double tol = kDefaultTolerance,
                              const Expr& guard = Expr(1), const ParamEnv& env = {});

/// Same sweep with every derivative replaced by fourth-order central
/// differences of step h; shares no code path with differentiate().
ResidualReport verify_on_grid_fd(const Expr& u, double b, const GridSpec& grid, double tol = kDefaultFdTolerance,
                                 const Expr& guard = Expr(1), double h = kDefaultFdStep, const ParamEnv& env = {});

}  // namespace mdpwave::pde
