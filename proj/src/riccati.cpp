#include "mdpwave/riccati.hpp"

#include <algorithm>
#include <cmath>

#include "mdpwave/errors.hpp"

namespace mdpwave::riccati {

namespace {

const Expr& xi() {
  static const Expr v = Expr::variable(Var::xi);
  return v;
}

// |cos(u)| written with the available function set.
Expr abs_cos(const Expr& u) { return 1 / sqrt(1 + square(tan(u))); }

}  // namespace

bool is_degenerate(const Coefficients& c) {
  const double b2 = c.beta * c.beta;
  const double four_ag = 4.0 * c.alpha * c.gamma;
  return std::abs(b2 - four_ag) <= kDegenerateTolerance * std::max({1.0, b2, std::abs(four_ag)});
}

Case classify(const Coefficients& c) {
  const bool a0 = c.alpha == 0.0;
  const bool b0 = c.beta == 0.0;
  const bool g0 = c.gamma == 0.0;
  if (a0 && b0 && !g0) return Case::rational;
  if (a0 && !b0) return Case::exp_alpha_zero;
  if (g0 && !b0) return Case::exp_gamma_zero;
  if (!b0 && is_degenerate(c)) return Case::degenerate;
  if (b0 && !a0 && !g0) return Case::pure;
  if (c.delta < 0.0) return Case::tan;
  if (c.delta > 0.0 && !g0) return Case::tanh;
  throw Unclassifiable("Riccati coefficients (" + std::to_string(c.alpha) + ", " + std::to_string(c.beta) + ", " +
                       std::to_string(c.gamma) + ") fall outside the seven-case table");
}

Solution solve(const Coefficients& c) {
  const Case id = classify(c);
  const Expr alpha = Expr::from_double(c.alpha);
  const Expr beta = Expr::from_double(c.beta);
  const Expr gamma = Expr::from_double(c.gamma);
  switch (id) {
    case Case::exp_alpha_zero: {
      Expr den = -gamma + beta * exp(-beta * xi());
      return {id, beta / den, den};
    }
    case Case::rational: return {id, -1 / (gamma * xi()), xi()};
    case Case::exp_gamma_zero: return {id, (-alpha + beta * exp(beta * xi())) / beta, Expr(1)};
    case Case::pure: {
      // phi = (alpha/k) tan(k xi) with k = sqrt(alpha gamma) when alpha gamma > 0,
      // and (alpha/k) tanh(k xi) with k = sqrt(-alpha gamma) otherwise. The
      // prefactor carries the sign of alpha, which the residual requires.
      if (c.alpha * c.gamma > 0.0) {
        Expr k = sqrt(alpha * gamma);
        return {id, alpha / k * tan(k * xi()), abs_cos(k * xi())};
      }
      Expr k = sqrt(-(alpha * gamma));
      return {id, alpha / k * tanh(k * xi()), Expr(1)};
    }
    case Case::degenerate:
      return {id, -(2 * alpha * (beta * xi() + 2)) / (square(beta) * xi()), xi()};
    case Case::tan: {
      Expr w = sqrt(4 * alpha * gamma - square(beta));
      Expr arg = Rational(1, 2) * w * xi();
      return {id, (w * tan(arg) - beta) / (2 * gamma), abs_cos(arg)};
    }
    case Case::tanh: {
      Expr w = sqrt(square(beta) - 4 * alpha * gamma);
      // The right-hand side reduces to -w^2 sech^2 / (4 gamma), hence the leading minus.
      return {id, -(w * tanh(Rational(1, 2) * w * xi()) + beta) / (2 * gamma), Expr(1)};
    }
  }
  throw Unclassifiable("unreachable Riccati case");
}

Expr residual(const Expr& phi, const Coefficients& c) {
  const Expr alpha = Expr::from_double(c.alpha);
  const Expr beta = Expr::from_double(c.beta);
  const Expr gamma = Expr::from_double(c.gamma);
  return differentiate(phi, Var::xi) - (alpha + beta * phi + gamma * square(phi));
}

ResidualProbe::ResidualProbe(const Expr& phi, const Coefficients& c)
    : c_(c), phi_(phi), dphi_(differentiate(phi, Var::xi)) {}

double ResidualProbe::operator()(double at) const {
  const Point p = Point::at_xi(at);
  const double f = phi_(p);
  const double df = dphi_(p);
  const double rhs_b = c_.beta * f;
  const double rhs_g = c_.gamma * f * f;
  const double r = df - (c_.alpha + rhs_b + rhs_g);
  const double scale = std::max(1.0, std::abs(df) + std::abs(c_.alpha) + std::abs(rhs_b) + std::abs(rhs_g));
  return std::abs(r) / scale;
}

}  // namespace mdpwave::riccati
