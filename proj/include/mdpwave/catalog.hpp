#pragma once

// Registry of closed-form traveling-wave solutions u(x, t) = U(x + lambda t)
// of the modified generalized Degasperis-Procesi equation.
//
// Every family is stored symbolically: a profile U(xi) and a wave speed
// lambda over named parameters. build() validates a parameter binding,
// substitutes the exact parameter values and expands xi = x + lambda t.
//
// Sign convention: internally xi = x + lambda t throughout. A display written
// as cosh(x - c t) therefore has lambda = -c.

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mdpwave/expr.hpp"

namespace mdpwave::catalog {

enum class Method { cole_hopf, rational_hyperbolic, tanh_coth };
std::string_view name_of(Method m);

struct ParamSpec {
  std::string name;
  std::optional<double> default_value;
};

struct Constraint {
  std::string label;
  std::function<bool(const ParamEnv&)> holds;
};

struct SolutionFamily {
  std::string id;
  Method method;
  std::string summary;
  std::vector<ParamSpec> params;
  std::vector<Constraint> constraints;
  Expr profile;      // U(xi)
  Expr speed;        // lambda
  Expr denominator;  // vanishes on the pole locus of U (in xi)
  std::string speed_formula;
};

/// All 24 families: the generic Cole-Hopf form followed by u1..u23.
const std::vector<SolutionFamily>& list();

/// Throws std::out_of_range for an unknown id.
const SolutionFamily& get(std::string_view id);

/// Fills declared defaults for parameters the caller left out.
ParamEnv with_defaults(const SolutionFamily& f, const ParamEnv& params);

/// Empty when admissible; otherwise one label per failed predicate
/// (unknown/missing parameters are reported the same way).
std::vector<std::string> validate(std::string_view id, const ParamEnv& params);

/// u(x, t) with every parameter bound. Throws ConstraintViolation.
Expr build(std::string_view id, const ParamEnv& params);

/// U(xi) with every parameter bound. Throws ConstraintViolation.
Expr build_profile(std::string_view id, const ParamEnv& params);

double wave_speed(std::string_view id, const ParamEnv& params);

/// Denominator expression in (x, t); its zeros are the poles of build().
Expr singular_denominator(std::string_view id, const ParamEnv& params);

/// Ratios (t-coefficient / x-coefficient) of every transcendental argument in
/// `u` that depends on x or t. Each argument must be affine in (x, t).
std::vector<double> phase_speeds(const Expr& u);

}  // namespace mdpwave::catalog
