#pragma once

// Immutable symbolic expression trees.
//
// Nodes are shared and never mutated, so an Expr is a cheap handle that can be
// passed across threads freely. Construction applies only a fixed set of
// local canonicalizations (0*e -> 0, 1*e -> e, e+0 -> e, e^1 -> e, folding of
// constant-only arithmetic); there is deliberately no general simplifier.
// Correctness of derived expressions is judged numerically.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "mdpwave/rational.hpp"

namespace mdpwave {

enum class Var : std::uint8_t { x, t, xi };
enum class Fn : std::uint8_t { exp, sinh, cosh, tanh, tan, cot, csc, sqrt, log };
enum class Kind : std::uint8_t { constant, parameter, variable, add, sub, mul, div, neg, pow, func };

std::string_view name_of(Var v);
std::string_view name_of(Fn f);

struct Node;

class Expr {
 public:
  /// The constant 0.
  Expr();
  Expr(int value);              // NOLINT(google-explicit-constructor)
  Expr(const Rational& value);  // NOLINT(google-explicit-constructor)
  /// Empty handle; only used for the unused child slots of a Node.
  explicit Expr(std::nullptr_t) {}

  static Expr constant(const Rational& value);
  /// Exact dyadic rational of `value`; throws std::invalid_argument if not finite.
  static Expr from_double(double value);
  static Expr parameter(std::string name);
  static Expr variable(Var v);

  const Node& node() const { return *node_; }
  const Node* id() const { return node_.get(); }
  bool empty() const { return node_ == nullptr; }
  Kind kind() const;

  bool is_constant() const;
  bool is_constant(const Rational& value) const;
  bool is_zero() const { return is_constant(Rational(0)); }
  bool is_one() const { return is_constant(Rational(1)); }

  /// Structural equality.
  friend bool operator==(const Expr& a, const Expr& b);
  friend bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

 private:
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  friend Expr make_node(Node&& n);

  std::shared_ptr<const Node> node_;
};

struct Node {
  Kind kind = Kind::constant;
  Rational value;    // constant value, or the exponent of a pow node
  std::string name;  // parameter name
  Var var = Var::x;
  Fn fn = Fn::exp;
  Expr lhs{nullptr};  // sole operand of neg/pow/func
  Expr rhs{nullptr};
};

inline Kind Expr::kind() const { return node_->kind; }

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr pow(const Expr& base, const Rational& exponent);
inline Expr pow(const Expr& base, int exponent) { return pow(base, Rational(exponent)); }
inline Expr square(const Expr& e) { return pow(e, 2); }

Expr apply(Fn f, const Expr& arg);
inline Expr exp(const Expr& e) { return apply(Fn::exp, e); }
inline Expr sinh(const Expr& e) { return apply(Fn::sinh, e); }
inline Expr cosh(const Expr& e) { return apply(Fn::cosh, e); }
inline Expr tanh(const Expr& e) { return apply(Fn::tanh, e); }
inline Expr tan(const Expr& e) { return apply(Fn::tan, e); }
inline Expr cot(const Expr& e) { return apply(Fn::cot, e); }
inline Expr csc(const Expr& e) { return apply(Fn::csc, e); }
inline Expr sqrt(const Expr& e) { return apply(Fn::sqrt, e); }
inline Expr log(const Expr& e) { return apply(Fn::log, e); }

/// Parameter name -> value. Evaluation never invents defaults.
using ParamEnv = std::map<std::string, double, std::less<>>;

/// Variable bindings for one evaluation point.
struct Point {
  std::optional<double> x;
  std::optional<double> t;
  std::optional<double> xi;

  static Point xt(double x, double t) { return Point{x, t, std::nullopt}; }
  static Point at_xi(double xi) { return Point{std::nullopt, std::nullopt, xi}; }
  std::optional<double> get(Var v) const;
};

/// Compiles an expression DAG into a flat instruction tape with parameters
/// resolved up front. Shared subtrees are evaluated once per call.
class Evaluator {
 public:
  /// Throws UnboundSymbol if a parameter in `e` is missing from `env`.
  Evaluator(const Expr& e, const ParamEnv& env = {});

  /// Throws UnboundSymbol for a missing variable and DomainError when a node
  /// leaves the real domain or produces a non-finite value.
  double operator()(const Point& p) const;

  std::size_t size() const { return tape_.size(); }

 private:
  struct Instr {
    Kind kind;
    Fn fn;
    Var var;
    std::uint32_t a;
    std::uint32_t b;
    double value;  // constant / bound parameter / pow exponent
    bool integer_exponent;
    long exponent;
    const Node* node;
  };
  std::vector<Instr> tape_;
  std::vector<Expr> keep_alive_;
};

double evaluate(const Expr& e, const ParamEnv& env = {}, const Point& p = {});

/// Exact structural derivative; parameters are constants.
Expr differentiate(const Expr& e, Var v);
Expr nth_derivative(const Expr& e, Var v, unsigned n);

/// Capture-free replacement of a variable.
Expr substitute(const Expr& e, Var v, const Expr& replacement);

/// Replace every parameter present in `env` by its exact rational value.
Expr bind_parameters(const Expr& e, const ParamEnv& env);

bool depends_on(const Expr& e, Var v);
std::set<std::string> parameters_of(const Expr& e);

/// Number of distinct nodes in the DAG.
std::size_t dag_size(const Expr& e);

/// Prefix serialization for debugging, e.g. "(/ 1 (+ 1 (cosh xi)))".
std::string to_prefix(const Expr& e);
std::ostream& operator<<(std::ostream& os, const Expr& e);

/// Calls `visit` once per distinct node, children before parents.
template <typename F>
void for_each_node(const Expr& root, F&& visit);

}  // namespace mdpwave

#include "mdpwave/detail/expr_walk.hpp"
