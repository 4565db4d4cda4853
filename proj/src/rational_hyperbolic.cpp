#include "mdpwave/rational_hyperbolic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "mdpwave/errors.hpp"

namespace mdpwave::rh {

Expr rh_denominator(const AnsatzParams& p) {
  const Expr xi = Expr::variable(Var::xi);
  return 1 + Expr::from_double(p.c1) * sinh(xi) + Expr::from_double(p.c2) * cosh(xi);
}

Expr rh_ansatz(const AnsatzParams& p) {
  const Expr xi = Expr::variable(Var::xi);
  const Expr num = Expr::from_double(p.a0) + Expr::from_double(p.a1) * sinh(xi) + Expr::from_double(p.a2) * cosh(xi);
  return num / rh_denominator(p);
}

AnsatzParams family_params(std::string_view id, double b, std::optional<double> free_value) {
  static const std::vector<std::string_view> known{"u3", "u4", "u5", "u6", "u7", "u8", "u9", "u10"};
  if (std::find(known.begin(), known.end(), id) == known.end())
    throw std::out_of_range("no rational-hyperbolic tuple for '" + std::string(id) + "'");
  const bool needs_free = id == "u7" || id == "u8" || id == "u9" || id == "u10";
  std::vector<std::string> violations;
  if (b == -1.0) violations.emplace_back("b ≠ −1");
  if (b == -2.0) violations.emplace_back("b ≠ −2");
  if (needs_free && !free_value) violations.emplace_back(id == "u7" || id == "u8" ? "a2 given" : "c2 given");
  if (!violations.empty()) throw ConstraintViolation(std::move(violations));

  const double slow = -b / 2.0;
  const double fast = -b / 2.0 - 1.0;
  const double a0_slow = -(3.0 * b + 5.0) / (b + 1.0);
  const double a0_fast = -3.0 * (b + 2.0) / (b + 1.0);
  AnsatzParams p;
  if (id == "u3" || id == "u4") {
    const double s = id == "u3" ? 1.0 : -1.0;
    p = {slow, a0_slow, 0.0, s / (b + 1.0), 0.0, s};
  } else if (id == "u5" || id == "u6") {
    p = {fast, a0_fast, 0.0, 0.0, 0.0, id == "u6" ? 1.0 : -1.0};
  } else if (id == "u7" || id == "u8") {
    const double a2 = *free_value;
    const double rad = (b + 1.0) * (b + 1.0) * a2 * a2 - 1.0;
    if (!(rad >= 0.0)) throw ConstraintViolation({"(b+1)²a₂² ≥ 1"});
    const double q = (id == "u7" ? -1.0 : 1.0) * std::sqrt(rad);
    p = {slow, a0_slow, q / (b + 1.0), a2, q, a2 * (b + 1.0)};
  } else {
    const double c2 = *free_value;
    const double rad = c2 * c2 - 1.0;
    if (!(rad >= 0.0)) throw ConstraintViolation({"c₂² ≥ 1"});
    const double q = (id == "u9" ? 1.0 : -1.0) * std::sqrt(rad);
    p = {fast, a0_fast, 0.0, 0.0, q, c2};
  }
  return p;
}

CollocationResult collocation_identity_check(const Expr& U, double b, double lambda, const Expr& denominator) {
  const Expr d1 = differentiate(U, Var::xi);
  const Expr d2 = differentiate(d1, Var::xi);
  const Evaluator e0(U), e1(d1), e2(d2), e3(differentiate(d2, Var::xi)), ed(denominator);
  constexpr int n = kDegreeBound + 1;
  constexpr int max_shifts = 5;
  for (int shift = 0; shift <= max_shifts; ++shift) {
    CollocationResult res;
    res.resamples = shift;
    const double offset = 0.0137 * shift;
    bool hit_pole = false;
    for (int k = 0; k < n && !hit_pole; ++k) {
      const double xi = -2.0 + 4.0 * k / (n - 1) + offset;
      const Point p = Point::at_xi(xi);
      try {
        const double d = ed(p);
        if (std::abs(d) < 1e-9) {
          hit_pole = true;
          break;
        }
        const double u = e0(p), u1 = e1(p), u2 = e2(p), u3 = e3(p);
        const double w = std::pow(d, 5);
        const double terms[5] = {(b + 1.0) * u1 * u * u * w, -u3 * u * w, -lambda * u3 * w, lambda * u1 * w,
                                 -b * u1 * u2 * w};
        double sum = 0.0, scale = 1.0;
        for (double t : terms) {
          sum += t;
          scale = std::max(scale, std::abs(t));
        }
        res.xi.push_back(xi);
        res.scaled.push_back(std::abs(sum) / scale);
      } catch (const DomainError&) {
        hit_pole = true;
      }
    }
    if (hit_pole) continue;
    res.max_scaled = *std::max_element(res.scaled.begin(), res.scaled.end());
    res.pass = res.max_scaled < kCollocationTolerance;
    return res;
  }
  throw SampleAtPole("collocation samples hit a pole after " + std::to_string(max_shifts) + " shifts");
}

CollocationResult collocation_identity_check(const AnsatzParams& p, double b) {
  return collocation_identity_check(rh_ansatz(p), b, p.lambda, rh_denominator(p));
}

}  // namespace mdpwave::rh
