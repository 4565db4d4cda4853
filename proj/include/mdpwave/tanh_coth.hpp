#pragma once

// Tanh-coth re-derivation: the order-2 Laurent ansatz in a Riccati function
// phi, the coefficient system of the traveling-wave ODE, exact checking of
// closed-form coefficient tuples and a multistart Gauss-Newton root finder.

#include <array>
#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mdpwave/multipoly.hpp"

namespace mdpwave::tanh_coth {

using poly::MultiPoly;
using poly::PhiLaurent;
using poly::Sym;

/// Nonnegative integer solutions of 3m+1 = 2m+1, 3m+1 = m+1, 2m+1 = m+3.
std::set<int> balance();

/// a0 + sum_{i<=m} (a_i phi^i + c_i phi^-i). Throws UnsupportedOrder for m > 2
/// and std::invalid_argument for m < 1.
PhiLaurent ansatz_laurent(int m);

/// (b+1) u' u^2 - u''' u - lambda u''' + lambda u' - b u' u'' as a Laurent series.
PhiLaurent ode_laurent(const PhiLaurent& u);

inline constexpr std::array<Sym, 6> kUnknowns{Sym::a0, Sym::a1, Sym::a2, Sym::c1, Sym::c2, Sym::lambda};
inline constexpr std::array<Sym, 4> kParameters{Sym::alpha, Sym::beta, Sym::gamma, Sym::b};

struct AlgebraicSystem {
  /// Series multiplied by phi^clearing_power before collecting.
  int clearing_power = 0;
  /// phi-power (after clearing) of each equation; ascending.
  std::vector<int> powers;
  std::vector<MultiPoly> equations;

  friend bool operator==(const AlgebraicSystem&, const AlgebraicSystem&) = default;
};

/// Only m = 2 is supported; asserts that the lowest power is -7 before clearing.
AlgebraicSystem generate_system(int m = 2);

/// Collects the ODE residual of an arbitrary ansatz, clearing by its lowest
/// negative power (no clearing when the series has none).
AlgebraicSystem generate_system_from(const PhiLaurent& u);

using ExactValues = poly::Assignment<Rational>;
using FloatValues = poly::Assignment<long double>;

/// Exact residual of every equation. Throws UnboundVariable.
std::vector<Rational> check_assignment(const AlgebraicSystem& s, const ExactValues& values);
std::vector<double> check_assignment(const AlgebraicSystem& s, const FloatValues& values);

enum class SolutionCase { first, second, third, fourth };
std::string_view name_of(SolutionCase c);
/// "first" .. "fourth"; throws std::invalid_argument otherwise.
SolutionCase case_from_name(std::string_view name);

/// Values of (a0, a1, a2, c1, c2, lambda) for one catalogued family.
template <typename T>
struct CaseTuple {
  std::string family;
  std::array<T, 6> unknowns;
};

/// Coefficient tuples of the families belonging to a case at the given
/// Riccati coefficients. Throws ConstraintViolation when the case condition
/// or a family discriminant fails (families with S < 0 are dropped when at
/// least one remains).
std::vector<CaseTuple<double>> case_tuples(SolutionCase c, double b, double alpha, double beta, double gamma);

/// Exact tuples for the families whose radicals are rational at these inputs;
/// the others are omitted. Throws ConstraintViolation as above.
std::vector<CaseTuple<Rational>> exact_case_tuples(SolutionCase c, const Rational& b, const Rational& alpha,
                                                   const Rational& beta, const Rational& gamma);

/// Fills the ten-symbol assignment from parameters plus a tuple.
ExactValues assignment(const Rational& b, const Rational& alpha, const Rational& beta, const Rational& gamma,
                       const std::array<Rational, 6>& unknowns);
FloatValues assignment(double b, double alpha, double beta, double gamma, const std::array<double, 6>& unknowns);

struct NewtonOptions {
  unsigned seeds = 400;
  std::uint64_t rng_seed = 7;
  double box = 20.0;
  unsigned max_iterations = 200;
  double tolerance = 1e-12;
  double dedup_distance = 1e-6;
  unsigned threads = 1;
};

struct Root {
  std::array<double, 6> unknowns;
  double residual = 0.0;  // infinity norm at the root
};

/// Damped Gauss-Newton from `seeds` uniform starts in [-box, box]^6 with the
/// four parameters fixed. Starts with a rank-deficient Jacobian are dropped.
/// Roots are deduplicated and sorted lexicographically; the result does not
/// depend on the thread count.
std::vector<Root> newton_solve(const AlgebraicSystem& s, const Rational& b, const Rational& alpha,
                               const Rational& beta, const Rational& gamma, const NewtonOptions& opts = {});

/// {"variables": [...], "clearing_power": k, "equations": [{"power": p,
/// "terms": [[[e0..e9], "num", "den"], ...]}, ...]}.
nlohmann::json to_json(const AlgebraicSystem& s);
/// Throws std::invalid_argument on malformed input.
AlgebraicSystem system_from_json(const nlohmann::json& j);

}  // namespace mdpwave::tanh_coth
