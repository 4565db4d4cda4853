#include "mdpwave/pde_verifier.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "mdpwave/errors.hpp"

namespace mdpwave::pde {

Terms mdp_terms(const Expr& u, const Expr& b) {
  const Expr ux = differentiate(u, Var::x);
  const Expr uxx = differentiate(ux, Var::x);
  const Expr uxxx = differentiate(uxx, Var::x);
  const Expr ut = differentiate(u, Var::t);
  const Expr uxxt = differentiate(uxx, Var::t);
  return {ut, -uxxt, (b + 1) * square(u) * ux, -(b * ux * uxx), -(u * uxxx)};
}

Expr mdp_residual(const Expr& u, const Expr& b) {
  const Terms t = mdp_terms(u, b);
  return t[0] + t[1] + t[2] + t[3] + t[4];
}

Terms ode_terms(const Expr& U, const Expr& b, const Expr& lambda) {
  const Expr d1 = differentiate(U, Var::xi);
  const Expr d2 = differentiate(d1, Var::xi);
  const Expr d3 = differentiate(d2, Var::xi);
  return {(b + 1) * d1 * square(U), -(d3 * U), -(lambda * d3), lambda * d1, -(b * d1 * d2)};
}

Expr ode_residual(const Expr& U, const Expr& b, const Expr& lambda) {
  const Terms t = ode_terms(U, b, lambda);
  return t[0] + t[1] + t[2] + t[3] + t[4];
}

void GridSpec::validate() const {
  if (nx < 2 || nt < 2) throw InvalidParams("grid needs at least two points per axis");
  if (!(x0 < x1)) throw InvalidParams("grid requires x0 < x1");
  if (!(t0 <= t1)) throw InvalidParams("grid requires t0 <= t1");
  if (!(eps_den > 0.0)) throw InvalidParams("guard threshold must be positive");
}

double scaled(const std::array<double, 5>& terms) {
  double sum = 0.0;
  double mag = 0.0;
  for (double v : terms) {
    sum += v;
    mag += std::abs(v);
  }
  return std::abs(sum) / std::max(1.0, mag);
}

namespace {

/// Shared sweep; `terms_at` returns false when the point cannot be evaluated.
ResidualReport sweep(const GridSpec& grid, double tol, const Expr& guard, const ParamEnv& env,
                     const std::function<bool(double, double, std::array<double, 5>&)>& terms_at) {
  grid.validate();
  const Evaluator g(guard, env);
  ResidualReport rep;
  rep.tolerance = tol;
  std::array<double, 5> terms{};
  for (std::size_t j = 0; j < grid.nt; ++j) {
    const double t = grid.t_at(j);
    for (std::size_t i = 0; i < grid.nx; ++i) {
      const double x = grid.x_at(i);
      bool guarded = false;
      try {
        guarded = std::abs(g(Point::xt(x, t))) < grid.eps_den;
      } catch (const DomainError&) {
        guarded = true;
      }
      if (guarded) {
        ++rep.points_skipped;
        continue;
      }
      if (!terms_at(x, t, terms)) {
        ++rep.points_skipped;
        ++rep.domain_errors;
        continue;
      }
      double sum = 0.0;
      for (double v : terms) sum += v;
      rep.max_abs = std::max(rep.max_abs, std::abs(sum));
      rep.max_scaled = std::max(rep.max_scaled, scaled(terms));
      ++rep.points_evaluated;
    }
  }
  if (rep.points_evaluated == 0) throw AllPointsSkipped("every grid point fell in the guard zone");
  rep.pass = rep.max_scaled < tol;
  return rep;
}

}  // namespace

ResidualReport verify_on_grid(const Expr& u, const Expr& b, const GridSpec& grid, double tol, const Expr& guard,
                              const ParamEnv& env) {
  const double bv = evaluate(b, env);
  const Expr ux = differentiate(u, Var::x);
  const Expr uxx = differentiate(ux, Var::x);
  const Evaluator eu(u, env), eux(ux, env), euxx(uxx, env);
  const Evaluator euxxx(differentiate(uxx, Var::x), env);
  const Evaluator eut(differentiate(u, Var::t), env);
  const Evaluator euxxt(differentiate(uxx, Var::t), env);
  ResidualReport rep = sweep(grid, tol, guard, env, [&](double x, double t, std::array<double, 5>& out) {
    const Point p = Point::xt(x, t);
    try {
      const double v = eu(p), vx = eux(p), vxx = euxx(p);
      out = {eut(p), -euxxt(p), (bv + 1.0) * v * v * vx, -bv * vx * vxx, -v * euxxx(p)};
    } catch (const DomainError&) {
      return false;
    }
    return true;
  });
  rep.method = "symbolic";
  return rep;
}

ResidualReport verify_on_grid_fd(const Expr& u, double b, const GridSpec& grid, double tol, const Expr& guard,
                                 double h, const ParamEnv& env) {
  const Evaluator eu(u, env);
  auto f = [&](double x, double t) { return eu(Point::xt(x, t)); };
  // Fourth-order central stencils.
  auto d1x = [&](double x, double t) {
    return (f(x - 2 * h, t) - 8 * f(x - h, t) + 8 * f(x + h, t) - f(x + 2 * h, t)) / (12 * h);
  };
  auto d2x = [&](double x, double t) {
    return (-f(x - 2 * h, t) + 16 * f(x - h, t) - 30 * f(x, t) + 16 * f(x + h, t) - f(x + 2 * h, t)) / (12 * h * h);
  };
  auto d3x = [&](double x, double t) {
    return (f(x - 3 * h, t) - 8 * f(x - 2 * h, t) + 13 * f(x - h, t) - 13 * f(x + h, t) + 8 * f(x + 2 * h, t) -
            f(x + 3 * h, t)) /
           (8 * h * h * h);
  };
  auto d1t = [&](const std::function<double(double)>& g, double t) {
    return (g(t - 2 * h) - 8 * g(t - h) + 8 * g(t + h) - g(t + 2 * h)) / (12 * h);
  };
  ResidualReport rep = sweep(grid, tol, guard, env, [&](double x, double t, std::array<double, 5>& out) {
    try {
      const double v = f(x, t), vx = d1x(x, t), vxx = d2x(x, t), vxxx = d3x(x, t);
      const double vt = d1t([&](double s) { return f(x, s); }, t);
      const double vxxt = d1t([&](double s) { return d2x(x, s); }, t);
      out = {vt, -vxxt, (b + 1.0) * v * v * vx, -b * vx * vxx, -v * vxxx};
    } catch (const DomainError&) {
      return false;
    }
    return true;
  });
  rep.method = "finite-difference";
  return rep;
}

}  // namespace mdpwave::pde
