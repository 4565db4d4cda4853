#include "mdpwave/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mdpwave/errors.hpp"
#include "mdpwave/riccati.hpp"

namespace mdpwave::catalog {

std::string_view name_of(Method m) {
  switch (m) {
    case Method::cole_hopf: return "cole-hopf";
    case Method::rational_hyperbolic: return "rational-hyperbolic";
    case Method::tanh_coth: return "tanh-coth";
  }
  return "?";
}

namespace {

Expr P(const char* name) { return Expr::parameter(name); }
const Expr& xi() {
  static const Expr v = Expr::variable(Var::xi);
  return v;
}
const Rational half(1, 2);

double eval(const Expr& e, const ParamEnv& env) { return evaluate(e, env); }

Constraint nonzero(const char* param, std::string label) {
  std::string name = param;
  return {std::move(label), [name](const ParamEnv& env) { return env.at(name) != 0.0; }};
}

Constraint b_not(int value, std::string label) {
  return {std::move(label), [value](const ParamEnv& env) { return env.at("b") != static_cast<double>(value); }};
}

Constraint nonnegative(const Expr& e, std::string label) {
  return {std::move(label), [e](const ParamEnv& env) { return eval(e, env) >= 0.0; }};
}

Constraint positive(const Expr& e, std::string label) {
  return {std::move(label), [e](const ParamEnv& env) { return eval(e, env) > 0.0; }};
}

std::vector<Constraint> base_constraints() { return {b_not(-1, "b ≠ −1"), b_not(-2, "b ≠ −2")}; }

template <typename... More>
std::vector<Constraint> constraints(More&&... more) {
  std::vector<Constraint> c = base_constraints();
  (c.push_back(std::forward<More>(more)), ...);
  return c;
}

std::vector<ParamSpec> params(std::initializer_list<const char*> names) {
  std::vector<ParamSpec> out;
  for (const char* n : names) out.push_back({n, std::nullopt});
  return out;
}

// ---------------------------------------------------------------------------
// Cole-Hopf: u = B + A mu^2 / (2 (1 + cosh(mu x + lambda t + delta))).

Expr cole_hopf_discriminant() {
  const Expr b = P("b"), mu = P("mu");
  return 1 - b * (b + 2) * (pow(mu, 4) - 1);
}

SolutionFamily cole_hopf_family() {
  const Expr b = P("b"), A = P("A"), B = P("B"), mu = P("mu"), lambda = P("lambda"), delta = P("delta");
  SolutionFamily f;
  f.id = "cole-hopf";
  f.method = Method::cole_hopf;
  f.summary = "generic Cole-Hopf form B + A mu^2 / (2 (1 + cosh(mu x + lambda t + delta)))";
  f.params = params({"b", "A", "B", "mu", "lambda"});
  f.params.push_back({"delta", 0.0});
  Constraint on_branch{"(A, B, λ) lies on a solved Cole-Hopf branch", [](const ParamEnv& env) {
                         const double bv = env.at("b"), m = env.at("mu");
                         const double s = 1.0 - bv * (bv + 2.0) * (std::pow(m, 4) - 1.0);
                         if (s < 0.0) return false;
                         const double r = std::sqrt(s);
                         const double a = -6.0 * (bv + 2.0) / (bv + 1.0);
                         auto close = [](double x, double y) {
                           return std::abs(x - y) <= 1e-9 * std::max(1.0, std::abs(y));
                         };
                         for (double sign : {1.0, -1.0}) {
                           const double bb = (2 * m * m - 1 + bv * (m * m - 1) + sign * r) / (2 * (bv + 1));
                           const double lam = -0.5 * m * (bv + 1 - sign * r);
                           if (close(env.at("A"), a) && close(env.at("B"), bb) && close(env.at("lambda"), lam))
                             return true;
                         }
                         return false;
                       }};
  f.constraints = constraints(nonzero("A", "A ≠ 0"), nonzero("mu", "μ ≠ 0"), nonzero("lambda", "λ ≠ 0"),
                              nonnegative(cole_hopf_discriminant(), "discriminant S ≥ 0"), std::move(on_branch));
  const Expr phase = mu * xi() + delta;
  f.profile = B + A * square(mu) / (2 * (1 + cosh(phase)));
  f.speed = lambda / mu;
  f.denominator = 1 + cosh(phase);
  f.speed_formula = "lambda/mu";
  return f;
}

SolutionFamily cole_hopf_branch(const char* id, int sign) {
  const Expr b = P("b"), mu = P("mu"), delta = P("delta");
  const Expr S = cole_hopf_discriminant();
  const Expr root = Expr(sign) * sqrt(S);
  SolutionFamily f;
  f.id = id;
  f.method = Method::cole_hopf;
  f.summary = sign > 0 ? "Cole-Hopf branch with +sqrt(S), S = 1 - b(b+2)(mu^4 - 1)"
                       : "Cole-Hopf branch with -sqrt(S), S = 1 - b(b+2)(mu^4 - 1)";
  f.params = params({"b", "mu"});
  f.params.push_back({"delta", 0.0});
  f.constraints = constraints(nonzero("mu", "μ ≠ 0"), nonnegative(S, "discriminant S ≥ 0"));
  const Expr B = (2 * square(mu) - 1 + b * (square(mu) - 1) + root) / (2 * (b + 1));
  const Expr phase = mu * xi() + delta;
  f.profile = B - 6 * (b + 2) * square(mu) / (2 * (b + 1) * (1 + cosh(phase)));
  f.speed = Rational(-half) * (b + 1 - root);
  f.denominator = 1 + cosh(phase);
  f.speed_formula = sign > 0 ? "-(b + 1 - sqrt(S))/2" : "-(b + 1 + sqrt(S))/2";
  return f;
}

// ---------------------------------------------------------------------------
// Rational hyperbolic families, xi = x - (b/2) t or x - (1 + b/2) t.

SolutionFamily rh_family(const char* id, const char* summary, std::vector<ParamSpec> ps, Expr profile,
                         Expr denominator, bool slow, std::vector<Constraint> extra = {}) {
  const Expr b = P("b");
  SolutionFamily f;
  f.id = id;
  f.method = Method::rational_hyperbolic;
  f.summary = summary;
  f.params = std::move(ps);
  f.constraints = base_constraints();
  for (auto& c : extra) f.constraints.push_back(std::move(c));
  f.profile = std::move(profile);
  f.denominator = std::move(denominator);
  f.speed = slow ? -(Rational(half) * b) : -(1 + Rational(half) * b);
  f.speed_formula = slow ? "-b/2" : "-(1 + b/2)";
  return f;
}

std::vector<SolutionFamily> rational_hyperbolic_families() {
  const Expr b = P("b"), a2 = P("a2"), c2 = P("c2");
  const Expr ch = cosh(xi()), sh = sinh(xi());
  std::vector<SolutionFamily> out;
  out.push_back(rh_family("u3", "rational hyperbolic, lambda = -b/2, a2 = 1/(b+1), c2 = 1", params({"b"}),
                          -(3 * b + 5 - ch) / ((b + 1) * (1 + ch)), 1 + ch, true));
  out.push_back(rh_family("u4", "rational hyperbolic, lambda = -b/2, a2 = -1/(b+1), c2 = -1", params({"b"}),
                          -(3 * b + 5 + ch) / ((b + 1) * (1 - ch)), 1 - ch, true));
  out.push_back(rh_family("u5", "rational hyperbolic, lambda = -b/2 - 1, c2 = -1", params({"b"}),
                          -(3 * (b + 2)) / ((b + 1) * (1 - ch)), 1 - ch, false));
  out.push_back(rh_family("u6", "rational hyperbolic, lambda = -b/2 - 1, c2 = 1", params({"b"}),
                          -(3 * (b + 2)) / ((b + 1) * (1 + ch)), 1 + ch, false));

  const Expr q7 = sqrt(square(b + 1) * square(a2) - 1);
  auto radicand7 = [&] { return nonnegative(square(b + 1) * square(a2) - 1, "(b+1)²a₂² ≥ 1"); };
  {
    Expr den = 1 - q7 * sh + (b + 1) * a2 * ch;
    out.push_back(rh_family("u7", "rational hyperbolic, c1 = -sqrt((b+1)^2 a2^2 - 1), c2 = a2 (b+1)",
                            params({"b", "a2"}), (-3 * b - 5 + (b + 1) * ch * a2 - q7 * sh) / ((b + 1) * den), den,
                            true, {radicand7()}));
  }
  {
    Expr den = 1 + q7 * sh + (b + 1) * a2 * ch;
    out.push_back(rh_family("u8", "rational hyperbolic, c1 = +sqrt((b+1)^2 a2^2 - 1), c2 = a2 (b+1)",
                            params({"b", "a2"}), (-3 * b - 5 + (b + 1) * ch * a2 + q7 * sh) / ((b + 1) * den), den,
                            true, {radicand7()}));
  }
  const Expr q9 = sqrt(square(c2) - 1);
  auto radicand9 = [&] { return nonnegative(square(c2) - 1, "c₂² ≥ 1"); };
  {
    Expr den = 1 + q9 * sh + c2 * ch;
    out.push_back(rh_family("u9", "rational hyperbolic, c1 = +sqrt(c2^2 - 1)", params({"b", "c2"}),
                            -(3 * (b + 2)) / ((b + 1) * den), den, false, {radicand9()}));
  }
  {
    // Built from the coefficient tuple a0 = -3(b+2)/(b+1), c1 = -sqrt(c2^2 - 1).
    Expr den = 1 - q9 * sh + c2 * ch;
    out.push_back(rh_family("u10", "rational hyperbolic, c1 = -sqrt(c2^2 - 1)", params({"b", "c2"}),
                            -(3 * (b + 2)) / ((b + 1) * den), den, false, {radicand9()}));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Tanh-coth families over Riccati coefficients (alpha, beta, gamma).

SolutionFamily tc_family(const char* id, const char* summary, std::vector<Constraint> extra, Expr profile,
                         Expr denominator, Expr speed, const char* speed_formula) {
  SolutionFamily f;
  f.id = id;
  f.method = Method::tanh_coth;
  f.summary = summary;
  f.params = params({"b", "alpha", "beta", "gamma"});
  f.constraints = base_constraints();
  for (auto& c : extra) f.constraints.push_back(std::move(c));
  f.profile = std::move(profile);
  f.denominator = std::move(denominator);
  f.speed = std::move(speed);
  f.speed_formula = speed_formula;
  return f;
}

Constraint alpha_zero() {
  return {"α = 0", [](const ParamEnv& env) { return env.at("alpha") == 0.0; }};
}
Constraint beta_zero() {
  return {"β = 0", [](const ParamEnv& env) { return env.at("beta") == 0.0; }};
}
Constraint beta_nonzero() { return nonzero("beta", "β ≠ 0"); }

std::vector<SolutionFamily> tanh_coth_families() {
  const Expr b = P("b"), alpha = P("alpha"), beta = P("beta"), gamma = P("gamma");
  const Expr two_b1 = 2 * (b + 1);
  std::vector<SolutionFamily> out;

  {
    Constraint degenerate{"β² = 4αγ", [](const ParamEnv& env) {
                            return riccati::is_degenerate(
                                riccati::Coefficients(env.at("alpha"), env.at("beta"), env.at("gamma")));
                          }};
    const Expr den = square(beta * xi() + 2);
    out.push_back(tc_family("u11", "beta^2 = 4 alpha gamma: c1, c2 terms with the rational Riccati solution",
                            {beta_nonzero(), std::move(degenerate)},
                            6 * (b + 2) * square(beta) / ((b + 1) * den) - 1, den, -b - 1, "-b - 1"));
  }
  {
    const Expr S = 1 - b * (b + 2) * (pow(beta, 4) - 1);
    const Expr E = exp(-beta * xi()) * beta - gamma;
    for (int sign : {-1, 1}) {
      const Expr root = Expr(sign) * sqrt(S);
      out.push_back(tc_family(
          sign < 0 ? "u12" : "u13", "alpha = 0: a1, a2 terms with the exponential Riccati solution",
          {alpha_zero(), beta_nonzero(), nonnegative(S, "discriminant S ≥ 0")},
          ((b + 2) * square(beta) - b - 1 + root) / two_b1 +
              6 * (b + 2) * gamma * square(beta) / (b + 1) * (1 / E + gamma / square(E)),
          E, Rational(half) * (-b + root - 1), sign < 0 ? "(-b - sqrt(S) - 1)/2" : "(-b + sqrt(S) - 1)/2"));
    }
  }
  {
    const Expr k = alpha * gamma;
    const Expr rk = sqrt(k);
    const Expr S_csc = b * (b + 2) * (1 - 256 * square(k)) + 1;
    const Expr S_tan = b * (b + 2) * (1 - 16 * square(k)) + 1;
    const Expr theta = rk * xi();
    // sin(2 theta), sin(theta) and cos(theta) through tangent half-angle forms.
    const Expr t1 = tan(theta);
    const Expr sin2 = 2 * t1 / (1 + square(t1));
    const Expr th = tan(Rational(half) * theta);
    const Expr sin1 = 2 * th / (1 + square(th));
    const Expr cos1 = (1 - square(th)) / (1 + square(th));
    for (int sign : {-1, 1}) {
      const Expr root = Expr(sign) * sqrt(S_csc);
      out.push_back(tc_family(sign < 0 ? "u14" : "u15", "beta = 0, alpha gamma > 0: a2 and c2 terms (csc^2 form)",
                              {beta_zero(), positive(k, "αγ > 0"), nonnegative(S_csc, "discriminant S ≥ 0")},
                              (-(b + 1) - 16 * k * (b + 2) + root + 48 * k * (b + 2) * square(csc(2 * theta))) / two_b1,
                              sin2, Rational(half) * (-b + root - 1),
                              sign < 0 ? "(-b - sqrt(S) - 1)/2" : "(-b + sqrt(S) - 1)/2"));
    }
    struct Variant {
      const char* id;
      int sign;
      bool cot_form;
    };
    for (const Variant& v : {Variant{"u16", -1, true}, Variant{"u17", -1, false}, Variant{"u18", 1, true},
                             Variant{"u19", 1, false}}) {
      const Expr root = Expr(v.sign) * sqrt(S_tan);
      const Expr trig = v.cot_form ? cot(theta) : tan(theta);
      out.push_back(tc_family(v.id,
                              v.cot_form ? "beta = 0, alpha gamma > 0: c2 term (cot^2 form)"
                                         : "beta = 0, alpha gamma > 0: a2 term (tan^2 form)",
                              {beta_zero(), positive(k, "αγ > 0"), nonnegative(S_tan, "discriminant S ≥ 0")},
                              (-(b + 1) + 8 * k * (b + 2) + root + 12 * k * (b + 2) * square(trig)) / two_b1,
                              v.cot_form ? sin1 : cos1, Rational(half) * (-b + root - 1),
                              v.sign < 0 ? "(-b - sqrt(S) - 1)/2" : "(-b + sqrt(S) - 1)/2"));
    }
  }
  {
    const Expr D = square(beta) - 4 * alpha * gamma;
    const Expr S = 1 - b * (b + 2) * (square(D) - 1);
    const Expr T = sqrt(D) * tanh(Rational(half) * sqrt(D) * xi());
    auto extra = [&] {
      return std::vector<Constraint>{positive(D, "Δ > 0"), nonnegative(S, "discriminant S ≥ 0")};
    };
    for (int sign : {-1, 1}) {
      const Expr root = Expr(sign) * sqrt(S);
      out.push_back(tc_family(sign < 0 ? "u20" : "u21", "Delta > 0: a1, a2 terms with the tanh Riccati solution",
                              extra(),
                              -(2 * D * (b + 2) + b + 1 - root) / two_b1 +
                                  3 * (b + 2) * D / two_b1 * square(tanh(Rational(half) * sqrt(D) * xi())),
                              Expr(1), Rational(half) * (-b + root - 1),
                              sign < 0 ? "(-b - sqrt(S) - 1)/2" : "(-b + sqrt(S) - 1)/2"));
    }
    for (int sign : {1, -1}) {
      const Expr root = Expr(sign) * sqrt(S);
      const Expr den = square(beta + T);
      out.push_back(tc_family(sign > 0 ? "u22" : "u23", "Delta > 0: c1, c2 terms with the tanh Riccati solution",
                              extra(),
                              ((D + 12 * alpha * gamma) * (b + 2) - (b + 1) + root) / two_b1 -
                                  12 * (b + 2) * alpha * gamma * (square(beta) + T * beta - 2 * alpha * gamma) /
                                      ((b + 1) * den),
                              den, Rational(half) * (-b + root - 1),
                              sign < 0 ? "(-b - sqrt(S) - 1)/2" : "(-b + sqrt(S) - 1)/2"));
    }
  }
  return out;
}

std::vector<SolutionFamily> make_catalog() {
  std::vector<SolutionFamily> all;
  all.push_back(cole_hopf_family());
  all.push_back(cole_hopf_branch("u1", 1));
  all.push_back(cole_hopf_branch("u2", -1));
  for (auto& f : rational_hyperbolic_families()) all.push_back(std::move(f));
  for (auto& f : tanh_coth_families()) all.push_back(std::move(f));
  return all;
}

Expr traveling_frame(const Expr& profile_xi, const Expr& speed) {
  return substitute(profile_xi, Var::xi, Expr::variable(Var::x) + speed * Expr::variable(Var::t));
}

void require_admissible(std::string_view id, const ParamEnv& env) {
  auto violations = validate(id, env);
  if (!violations.empty()) throw ConstraintViolation(std::move(violations));
}

}  // namespace

const std::vector<SolutionFamily>& list() {
  static const std::vector<SolutionFamily> families = make_catalog();
  return families;
}

const SolutionFamily& get(std::string_view id) {
  for (const auto& f : list())
    if (f.id == id) return f;
  throw std::out_of_range("unknown solution family '" + std::string(id) + "'");
}

ParamEnv with_defaults(const SolutionFamily& f, const ParamEnv& given) {
  ParamEnv env = given;
  for (const auto& p : f.params)
    if (p.default_value && !env.count(p.name)) env[p.name] = *p.default_value;
  return env;
}

std::vector<std::string> validate(std::string_view id, const ParamEnv& given) {
  const SolutionFamily& f = get(id);
  const ParamEnv env = with_defaults(f, given);
  std::vector<std::string> out;
  for (const auto& [name, value] : env) {
    const bool known =
        std::any_of(f.params.begin(), f.params.end(), [&](const ParamSpec& p) { return p.name == name; });
    if (!known) out.push_back("unknown parameter '" + name + "'");
    else if (!std::isfinite(value)) out.push_back("parameter '" + name + "' must be finite");
  }
  for (const auto& p : f.params)
    if (!env.count(p.name)) out.push_back("missing parameter '" + p.name + "'");
  if (!out.empty()) return out;
  for (const auto& c : f.constraints) {
    bool ok = false;
    try {
      ok = c.holds(env);
    } catch (const Error&) {
      ok = false;
    }
    if (!ok) out.push_back(c.label);
  }
  return out;
}

Expr build_profile(std::string_view id, const ParamEnv& given) {
  const SolutionFamily& f = get(id);
  const ParamEnv env = with_defaults(f, given);
  require_admissible(id, env);
  return bind_parameters(f.profile, env);
}

double wave_speed(std::string_view id, const ParamEnv& given) {
  const SolutionFamily& f = get(id);
  const ParamEnv env = with_defaults(f, given);
  require_admissible(id, env);
  return evaluate(f.speed, env);
}

Expr build(std::string_view id, const ParamEnv& given) {
  const SolutionFamily& f = get(id);
  const ParamEnv env = with_defaults(f, given);
  require_admissible(id, env);
  const Expr speed = bind_parameters(f.speed, env);
  const Expr u = traveling_frame(bind_parameters(f.profile, env), speed);
  const double lambda = evaluate(speed);
  for (double s : phase_speeds(u)) {
    if (std::abs(s - lambda) > 1e-9 * std::max(1.0, std::abs(lambda)))
      throw std::logic_error("family " + f.id + ": phase speed " + std::to_string(s) +
                             " disagrees with wave speed " + std::to_string(lambda));
  }
  return u;
}

Expr singular_denominator(std::string_view id, const ParamEnv& given) {
  const SolutionFamily& f = get(id);
  const ParamEnv env = with_defaults(f, given);
  require_admissible(id, env);
  return traveling_frame(bind_parameters(f.denominator, env), bind_parameters(f.speed, env));
}

std::vector<double> phase_speeds(const Expr& u) {
  std::vector<double> speeds;
  for_each_node(u, [&](const Expr& e) {
    if (e.kind() != Kind::func) return;
    const Expr& arg = e.node().lhs;
    if (!depends_on(arg, Var::x) && !depends_on(arg, Var::t)) return;
    const Evaluator f(arg);
    const double f00 = f(Point::xt(0, 0));
    const double cx = f(Point::xt(1, 0)) - f00;
    const double ct = f(Point::xt(0, 1)) - f00;
    const double f11 = f(Point::xt(1, 1)) - f00;
    if (cx == 0.0 || std::abs(f11 - cx - ct) > 1e-9 * std::max({1.0, std::abs(cx), std::abs(ct)}))
      throw std::logic_error("phase argument is not affine in (x, t): " + to_prefix(arg));
    speeds.push_back(ct / cx);
  });
  return speeds;
}

}  // namespace mdpwave::catalog
