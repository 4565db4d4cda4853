#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "mdpwave/catalog.hpp"
#include "mdpwave/errors.hpp"
#include "mdpwave/pde_verifier.hpp"
#include "support.hpp"

using namespace mdpwave;

namespace {

std::vector<std::string> param_names(const std::string& id) {
  std::vector<std::string> out;
  for (const auto& p : catalog::get(id).params) out.push_back(p.name);
  return out;
}

bool has(const std::vector<std::string>& v, const std::string& s) { return std::find(v.begin(), v.end(), s) != v.end(); }

double at(const std::string& id, const ParamEnv& p, double x, double t) {
  return evaluate(catalog::build(id, p), {}, Point::xt(x, t));
}

}  // namespace

TEST_CASE("list") {
  const auto& all = catalog::list();
  CHECK(all.size() == 24);
  CHECK(param_names("u6") == std::vector<std::string>{"b"});
  CHECK(param_names("u20") == std::vector<std::string>{"b", "alpha", "beta", "gamma"});
  for (int k = 1; k <= 23; ++k) CHECK_NOTHROW(catalog::get("u" + std::to_string(k)));
  CHECK_NOTHROW(catalog::get("cole-hopf"));
  CHECK_THROWS_AS(catalog::get("u24"), std::out_of_range);
}

TEST_CASE("build oracles") {
  CHECK(at("u6", {{"b", 3}}, 0, 0) == doctest::Approx(-15.0 / 8.0));
  const ParamEnv first{{"b", 3}, {"alpha", 1}, {"beta", 2}, {"gamma", 1}};
  const Expr U11 = catalog::build_profile("u11", first);
  CHECK(evaluate(U11, {}, Point::at_xi(0)) == doctest::Approx(6.5));
  CHECK(at("u1", {{"b", 3}, {"mu", 1}}, 0, 0) == doctest::Approx(-13.0 / 8.0));
  CHECK(parameters_of(catalog::build("u20", {{"b", 3}, {"alpha", 0}, {"beta", 1}, {"gamma", -1}})).empty());
}

TEST_CASE("wave speed oracles") {
  CHECK(catalog::wave_speed("u6", {{"b", 3}}) == doctest::Approx(-2.5));
  CHECK(catalog::wave_speed("u3", {{"b", 3}}) == doctest::Approx(-1.5));
  for (double b : {-0.5, 1.0, 7.0})
    CHECK(catalog::wave_speed("u11", {{"b", b}, {"alpha", 1}, {"beta", 2}, {"gamma", 1}}) == doctest::Approx(-b - 1));
  // u(x, t) = U(x + lambda t): shifting x by -lambda dt reproduces u one step later.
  const ParamEnv p{{"b", 3}};
  CHECK(at("u6", p, 0.3 + 2.5 * 0.4, 0.4) == doctest::Approx(at("u6", p, 0.3, 0.0)));
}

TEST_CASE("validate oracles") {
  const auto v1 = catalog::validate("u1", {{"b", -1}, {"mu", 1}});
  CHECK(has(v1, "b ≠ −1"));
  const auto v2 = catalog::validate("u1", {{"b", 3}, {"mu", 2}});
  CHECK(v2 == std::vector<std::string>{"discriminant S ≥ 0"});
  CHECK(catalog::validate("u9", {{"b", 3}, {"c2", 2}}).empty());
  CHECK(has(catalog::validate("u9", {{"b", 3}, {"c2", 0.5}}), "c₂² ≥ 1"));
  CHECK(has(catalog::validate("u7", {{"b", 3}, {"a2", 0.1}}), "(b+1)²a₂² ≥ 1"));
  CHECK(has(catalog::validate("u14", {{"b", 3}, {"alpha", 1}, {"beta", 0}, {"gamma", -1}}), "αγ > 0"));
  CHECK(has(catalog::validate("u20", {{"b", 3}, {"alpha", 1}, {"beta", 1}, {"gamma", 1}}), "Δ > 0"));
  CHECK(has(catalog::validate("u6", {{"b", -2}}), "b ≠ −2"));
  CHECK(has(catalog::validate("u6", {}), "missing parameter 'b'"));
  CHECK(has(catalog::validate("u6", {{"b", 3}, {"mu", 1}}), "unknown parameter 'mu'"));
  CHECK(has(catalog::validate("cole-hopf", {{"b", 3}, {"A", 1}, {"B", 0}, {"mu", 1}, {"lambda", 1}}),
            "(A, B, λ) lies on a solved Cole-Hopf branch"));
}

TEST_CASE("build rejects inadmissible parameters with every violation") {
  try {
    catalog::build("u14", {{"b", -1}, {"alpha", 1}, {"beta", 1}, {"gamma", -1}});
    FAIL("expected ConstraintViolation");
  } catch (const ConstraintViolation& e) {
    CHECK(has(e.violations(), "b ≠ −1"));
    CHECK(has(e.violations(), "β = 0"));
    CHECK(has(e.violations(), "αγ > 0"));
  }
  CHECK_THROWS_AS(catalog::wave_speed("u1", {{"b", 3}, {"mu", 2}}), ConstraintViolation);
  CHECK_THROWS_AS(catalog::singular_denominator("u1", {{"b", 3}, {"mu", 2}}), ConstraintViolation);
}

TEST_CASE("singular denominator oracles") {
  const ParamEnv p{{"b", 3}};
  const Expr d5 = catalog::singular_denominator("u5", p);
  const double lambda5 = catalog::wave_speed("u5", p);
  CHECK(evaluate(d5, {}, Point::xt(-lambda5 * 0.6, 0.6)) == doctest::Approx(0.0));
  CHECK(evaluate(d5, {}, Point::xt(1, 0)) == doctest::Approx(1 - std::cosh(1.0)));

  const Expr d6 = catalog::singular_denominator("u6", p);
  for (double x : {-5.0, 0.0, 3.0}) CHECK(evaluate(d6, {}, Point::xt(x, 0)) >= 2.0);

  const ParamEnv q{{"b", 3}, {"alpha", 1}, {"beta", 2}, {"gamma", 1}};
  const Expr d11 = catalog::singular_denominator("u11", q);
  CHECK(evaluate(d11, {}, Point::xt(-1.0, 0)) == doctest::Approx(0.0));
  CHECK(evaluate(d11, {}, Point::xt(0.0, 0)) == doctest::Approx(4.0));

  CHECK(catalog::singular_denominator("u20", {{"b", 3}, {"alpha", 0}, {"beta", 1}, {"gamma", -1}}).is_one());
}

TEST_CASE("denominator zeros are the poles") {
  // Near a zero of the denominator |u| grows without bound.
  const ParamEnv p{{"b", 3}, {"alpha", 0.25}, {"beta", 0}, {"gamma", 0.25}};
  const Evaluator u(catalog::build("u14", p));
  const double lambda = catalog::wave_speed("u14", p);
  // sin(2 * 0.25 * xi) = 0 at xi = 2 pi.
  const double xi0 = 2.0 * M_PI;
  CHECK(std::abs(u(Point::xt(xi0 + 1e-4, 0.0))) > 1e6);
  CHECK(std::abs(evaluate(catalog::singular_denominator("u14", p), {}, Point::xt(xi0 - lambda * 0.0, 0.0))) < 1e-12);
}

TEST_CASE("phase speeds agree with wave_speed") {
  for (const auto& s : testing::catalog_samples()) {
    CAPTURE(s.family);
    const Expr u = catalog::build(s.family, s.params);
    const double lambda = catalog::wave_speed(s.family, s.params);
    for (double v : catalog::phase_speeds(u)) CHECK(v == doctest::Approx(lambda).epsilon(1e-9));
  }
}

TEST_CASE("extremum tracking recovers the wave speed") {
  // Minimum of the pole-free u6 moves with velocity -lambda.
  const ParamEnv p{{"b", 3}};
  const Evaluator u(catalog::build("u6", p));
  auto argmin = [&](double t) {
    double best_x = 0.0, best = 1e300;
    for (int i = 0; i <= 40000; ++i) {
      const double x = -10.0 + 20.0 * i / 40000.0;
      const double v = u(Point::xt(x, t));
      if (v < best) {
        best = v;
        best_x = x;
      }
    }
    return best_x;
  };
  const double velocity = (argmin(2.0) - argmin(0.0)) / 2.0;
  CHECK(-velocity == doctest::Approx(catalog::wave_speed("u6", p)).epsilon(1e-6));
}

TEST_CASE("defaults") {
  const auto& f = catalog::get("u1");
  const ParamEnv env = catalog::with_defaults(f, {{"b", 3}, {"mu", 1}});
  CHECK(env.at("delta") == 0.0);
  CHECK(at("u1", {{"b", 3}, {"mu", 1}, {"delta", 0.5}}, 0, 0) == doctest::Approx(at("u1", {{"b", 3}, {"mu", 1}}, 0.5, 0)));
}

TEST_CASE("cross-method identities") {
  auto agree = [](const std::string& l, const ParamEnv& lp, const std::string& r, const ParamEnv& rp) {
    const Evaluator a(catalog::build(l, lp)), b(catalog::build(r, rp));
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
      const Point p = Point::xt(-10.0 + 20.0 * std::fmod(0.5 + 0.7548776662466927 * (k + 1), 1.0),
                                2.0 * std::fmod(0.5 + 0.5698402909980532 * (k + 1), 1.0));
      worst = std::max(worst, std::abs(a(p) - b(p)));
    }
    return worst;
  };
  for (double b : {-0.5, 1.0, 3.0, 5.0}) {
    CAPTURE(b);
    CHECK(agree("u3", {{"b", b}}, "u1", {{"b", b}, {"mu", 1}}) < 1e-10);
    CHECK(agree("u6", {{"b", b}}, "u2", {{"b", b}, {"mu", 1}}) < 1e-10);
    for (const auto& t : {std::array<double, 3>{0, 1, -1}, {0.75, 2, 1}, {0.1, 0.6, 0.3}}) {
      const double delta = t[1] * t[1] - 4 * t[0] * t[2];
      const ParamEnv rp{{"b", b}, {"alpha", t[0]}, {"beta", t[1]}, {"gamma", t[2]}};
      CHECK(agree("u20", rp, "u2", {{"b", b}, {"mu", std::sqrt(delta)}}) < 1e-10);
      CHECK(agree("u21", rp, "u1", {{"b", b}, {"mu", std::sqrt(delta)}}) < 1e-10);
    }
  }
}

TEST_CASE("residual property on a few samples") {
  for (const char* id : {"u4", "u9", "u13", "u17", "u22"}) {
    for (const auto& s : testing::catalog_samples()) {
      if (s.family != id) continue;
      CAPTURE(s.family);
      const auto rep = pde::verify_on_grid(catalog::build(s.family, s.params), Expr::from_double(s.params.at("b")),
                                           pde::GridSpec{}, pde::kDefaultTolerance,
                                           catalog::singular_denominator(s.family, s.params));
      CHECK(rep.pass);
    }
  }
}
