#include "mdpwave/cole_hopf.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "mdpwave/errors.hpp"

namespace mdpwave::cole_hopf {

void check(const Params& p) {
  for (double v : {p.A, p.B, p.mu, p.lambda, p.delta})
    if (!std::isfinite(v)) throw InvalidParams("Cole-Hopf parameters must be finite");
  if (p.A == 0.0) throw InvalidParams("Cole-Hopf form requires A != 0");
  if (p.mu == 0.0) throw InvalidParams("Cole-Hopf form requires mu != 0");
  if (p.lambda == 0.0) throw InvalidParams("Cole-Hopf form requires lambda != 0");
}

Expr cole_hopf_u(const Params& p) {
  check(p);
  const Expr mu = Expr::from_double(p.mu);
  const Expr phase = mu * Expr::variable(Var::x) + Expr::from_double(p.lambda) * Expr::variable(Var::t) +
                     Expr::from_double(p.delta);
  return Expr::from_double(p.B) + Expr::from_double(p.A) * square(mu) / (2 * (1 + cosh(phase)));
}

std::array<double, 6> system_residuals(const Params& p, double b) {
  const double A = p.A, B = p.B, mu = p.mu, lam = p.lambda;
  const double mu2 = mu * mu, mu3 = mu2 * mu, mu5 = mu3 * mu2;
  const double e1 = B * mu3 + lam * mu2 - (b * B * B + B * B) * mu - lam;
  const double e2 = B * mu3 + lam * mu2 + (b * B * B + B * B) * mu + lam;
  const double e3 = (b * A + A) * mu5 - (2 * A * B + 2 * A * b * B + 9 * B) * mu3 - 9 * lam * mu2 -
                    (3 * b * B * B + 3 * B * B) * mu - 3 * lam;
  const double e4 = (b * A + A) * mu5 + (2 * A * B + 2 * A * b * B + 9 * B) * mu3 + 9 * lam * mu2 +
                    (3 * b * B * B + 3 * B * B) * mu + 3 * lam;
  const double e5 = (b * A * A + A * A + 5 * b * A + 11 * A) * mu5 + (2 * A * B + 2 * A * b * B + 10 * B) * mu3 +
                    10 * lam * mu2 + (2 * b * B * B + 2 * B * B) * mu + 2 * lam;
  return {e1, e2, e3, e4, e5, e5};
}

std::array<double, 6> derived_system_residuals(const Params& p, double b) {
  const auto e = system_residuals(p, b);
  return {e[0], e[2], -e[4], e[4], -e[2], -e[0]};
}

double discriminant(double b, double mu) { return 1.0 - b * (b + 2.0) * (std::pow(mu, 4) - 1.0); }

Params branch_params(Branch branch, double b, double mu, double delta) {
  std::vector<std::string> violations;
  if (b == -1.0) violations.emplace_back("b ≠ −1");
  if (b == -2.0) violations.emplace_back("b ≠ −2");
  if (mu == 0.0) violations.emplace_back("μ ≠ 0");
  const double S = discriminant(b, mu);
  if (!(S >= 0.0)) violations.emplace_back("discriminant S ≥ 0");
  if (!violations.empty()) throw ConstraintViolation(std::move(violations));
  const double r = branch == Branch::plus ? std::sqrt(S) : -std::sqrt(S);
  Params p;
  p.A = -6.0 * (b + 2.0) / (b + 1.0);
  p.mu = mu;
  p.B = (2.0 * mu * mu - 1.0 + b * (mu * mu - 1.0) + r) / (2.0 * (b + 1.0));
  p.lambda = -0.5 * mu * (b + 1.0 - r);
  p.delta = delta;
  return p;
}

}  // namespace mdpwave::cole_hopf
