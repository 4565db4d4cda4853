#include <doctest.h>

#include <cmath>

#include "mdpwave/catalog.hpp"
#include "mdpwave/cole_hopf.hpp"
#include "mdpwave/errors.hpp"
#include "mdpwave/pde_verifier.hpp"

using namespace mdpwave;
using cole_hopf::Branch;
using cole_hopf::Params;

namespace {
double u_at(const Params& p, double x, double t) { return evaluate(cole_hopf::cole_hopf_u(p), {}, Point::xt(x, t)); }
}  // namespace

TEST_CASE("profile oracles") {
  CHECK(u_at({2, 0, 1, 1, 0}, 0, 0) == doctest::Approx(0.5));
  // Decays to B away from the crest.
  CHECK(u_at({2, 0.75, 1, 1, 0}, 40, 0) == doctest::Approx(0.75));
  CHECK(u_at({2, 0.75, 1, 1, 0}, -40, 0) == doctest::Approx(0.75));
  // delta only shifts the phase.
  CHECK(u_at({2, 0, 1.5, 1, 0.3}, 0, 0) == doctest::Approx(u_at({2, 0, 1.5, 1, 0}, 0.2, 0)));
}

TEST_CASE("parameter checks") {
  CHECK_THROWS_AS(cole_hopf::check({0, 0, 1, 1, 0}), InvalidParams);
  CHECK_THROWS_AS(cole_hopf::check({1, 0, 0, 1, 0}), InvalidParams);
  CHECK_THROWS_AS(cole_hopf::check({1, 0, 1, 0, 0}), InvalidParams);
  CHECK_THROWS_AS(cole_hopf::check({1, NAN, 1, 1, 0}), InvalidParams);
  CHECK_NOTHROW(cole_hopf::check({1, 0, 1, 1, 0}));
}

TEST_CASE("branch oracles") {
  const Params plus = cole_hopf::branch_params(Branch::plus, 3, 1);
  CHECK(plus.A == doctest::Approx(-7.5));
  CHECK(plus.B == doctest::Approx(0.25));
  CHECK(plus.lambda == doctest::Approx(-1.5));
  const Params minus = cole_hopf::branch_params(Branch::minus, 3, 1);
  CHECK(minus.A == doctest::Approx(-7.5));
  CHECK(minus.B == doctest::Approx(0.0));
  CHECK(minus.lambda == doctest::Approx(-2.5));
  CHECK(cole_hopf::discriminant(3, 2) < 0);
  try {
    cole_hopf::branch_params(Branch::plus, 3, 2);
    FAIL("expected ConstraintViolation");
  } catch (const ConstraintViolation& e) {
    CHECK(e.violations() == std::vector<std::string>{"discriminant S ≥ 0"});
  }
  CHECK_THROWS_AS(cole_hopf::branch_params(Branch::plus, -1, 1), ConstraintViolation);
  CHECK_THROWS_AS(cole_hopf::branch_params(Branch::minus, -2, 1), ConstraintViolation);
  CHECK_THROWS_AS(cole_hopf::branch_params(Branch::minus, 3, 0), ConstraintViolation);
}

TEST_CASE("stated system at a solved branch") {
  // Only the first, third and fifth stated equations vanish on the branches;
  // the second and fourth carry a sign error in every term after the first.
  const Params p = cole_hopf::branch_params(Branch::plus, 3, 1);
  const auto r = cole_hopf::system_residuals(p, 3);
  CHECK(std::abs(r[0]) < 1e-12);
  CHECK(r[1] == doctest::Approx(-2.5));
  CHECK(std::abs(r[2]) < 1e-12);
  CHECK(r[3] == doctest::Approx(-60.0));
  CHECK(std::abs(r[4]) < 1e-12);
  CHECK(r[4] == r[5]);
}

TEST_CASE("derived system vanishes on both branches") {
  for (double b : {-0.5, 1.0, 3.0, 5.0})
    for (double mu : {0.5, 0.9, 1.0})
      for (Branch br : {Branch::plus, Branch::minus}) {
        CAPTURE(b);
        CAPTURE(mu);
        const auto r = cole_hopf::derived_system_residuals(cole_hopf::branch_params(br, b, mu), b);
        for (double v : r) CHECK(std::abs(v) < 1e-9);
      }
}

TEST_CASE("derived system matches the residual") {
  // Off the branch the derived system is nonzero and the PDE residual with it.
  const Params p{1, 1, 1, 1, 0};
  const auto r = cole_hopf::system_residuals(p, 3);
  CHECK(r[0] == doctest::Approx(-3.0));
  const auto d = cole_hopf::derived_system_residuals(p, 3);
  CHECK(d[0] == doctest::Approx(r[0]));
  CHECK(d[5] == doctest::Approx(-d[0]));
  CHECK(d[2] == doctest::Approx(-d[3]));
  CHECK(d[1] == doctest::Approx(-d[4]));
  CHECK_FALSE(pde::verify_on_grid(cole_hopf::cole_hopf_u(p), Expr(3), pde::GridSpec{}).pass);
}

TEST_CASE("branches solve the PDE") {
  for (double b : {-0.5, 1.0, 3.0, 5.0})
    for (Branch br : {Branch::plus, Branch::minus}) {
      CAPTURE(b);
      const auto rep = pde::verify_on_grid(cole_hopf::cole_hopf_u(cole_hopf::branch_params(br, b, 0.8)),
                                           Expr::from_double(b), pde::GridSpec{});
      CHECK(rep.pass);
      CHECK(rep.points_skipped == 0);
    }
}

TEST_CASE("minus branch at mu = 1 reproduces u6") {
  for (double b : {-0.5, 1.0, 3.0, 5.0}) {
    const Evaluator ch(cole_hopf::cole_hopf_u(cole_hopf::branch_params(Branch::minus, b, 1)));
    const Evaluator u6(catalog::build("u6", {{"b", b}}));
    for (double x : {-4.0, -0.3, 0.0, 2.5})
      for (double t : {0.0, 0.7}) CHECK(ch(Point::xt(x, t)) == doctest::Approx(u6(Point::xt(x, t))).epsilon(1e-12));
  }
}
