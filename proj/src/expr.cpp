#include "mdpwave/expr.hpp"

#include <cmath>
#include <functional>
#include <sstream>
#include <unordered_map>

#include "mdpwave/errors.hpp"

namespace mdpwave {

std::string_view name_of(Var v) {
  switch (v) {
    case Var::x: return "x";
    case Var::t: return "t";
    case Var::xi: return "xi";
  }
  return "?";
}

std::string_view name_of(Fn f) {
  switch (f) {
    case Fn::exp: return "exp";
    case Fn::sinh: return "sinh";
    case Fn::cosh: return "cosh";
    case Fn::tanh: return "tanh";
    case Fn::tan: return "tan";
    case Fn::cot: return "cot";
    case Fn::csc: return "csc";
    case Fn::sqrt: return "sqrt";
    case Fn::log: return "log";
  }
  return "?";
}

std::optional<double> Point::get(Var v) const {
  switch (v) {
    case Var::x: return x;
    case Var::t: return t;
    case Var::xi: return xi;
  }
  return std::nullopt;
}

Expr make_node(Node&& n) { return Expr(std::make_shared<const Node>(std::move(n))); }

namespace {

Expr leaf_constant(const Rational& value) {
  Node n;
  n.kind = Kind::constant;
  n.value = value;
  return make_node(std::move(n));
}

const Expr& shared_zero() {
  static const Expr zero = leaf_constant(Rational(0));
  return zero;
}

const Expr& shared_one() {
  static const Expr one = leaf_constant(Rational(1));
  return one;
}

Expr binary(Kind kind, const Expr& a, const Expr& b) {
  Node n;
  n.kind = kind;
  n.lhs = a;
  n.rhs = b;
  return make_node(std::move(n));
}

bool is_integer(const Rational& q) { return q.get_den() == 1; }

}  // namespace

Expr::Expr() : Expr(shared_zero()) {}
Expr::Expr(int value) : Expr(constant(Rational(value))) {}
Expr::Expr(const Rational& value) : Expr(constant(value)) {}

Expr Expr::constant(const Rational& value) {
  if (value == 0) return shared_zero();
  if (value == 1) return shared_one();
  return leaf_constant(value);
}

Expr Expr::from_double(double value) { return constant(exact_rational(value)); }

Expr Expr::parameter(std::string name) {
  Node n;
  n.kind = Kind::parameter;
  n.name = std::move(name);
  return make_node(std::move(n));
}

Expr Expr::variable(Var v) {
  Node n;
  n.kind = Kind::variable;
  n.var = v;
  return make_node(std::move(n));
}

bool Expr::is_constant() const { return node_ && node_->kind == Kind::constant; }

bool Expr::is_constant(const Rational& value) const { return is_constant() && node_->value == value; }

bool operator==(const Expr& a, const Expr& b) {
  if (a.id() == b.id()) return true;
  if (a.empty() || b.empty()) return false;
  const Node& x = a.node();
  const Node& y = b.node();
  if (x.kind != y.kind) return false;
  switch (x.kind) {
    case Kind::constant: return x.value == y.value;
    case Kind::parameter: return x.name == y.name;
    case Kind::variable: return x.var == y.var;
    case Kind::neg: return x.lhs == y.lhs;
    case Kind::pow: return x.value == y.value && x.lhs == y.lhs;
    case Kind::func: return x.fn == y.fn && x.lhs == y.lhs;
    default: return x.lhs == y.lhs && x.rhs == y.rhs;
  }
}

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant()) return Expr::constant(a.node().value + b.node().value);
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  return binary(Kind::add, a, b);
}

Expr operator-(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant()) return Expr::constant(a.node().value - b.node().value);
  if (b.is_zero()) return a;
  if (a.is_zero()) return -b;
  return binary(Kind::sub, a, b);
}

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant()) return Expr::constant(a.node().value * b.node().value);
  if (a.is_zero() || b.is_zero()) return shared_zero();
  if (a.is_one()) return b;
  if (b.is_one()) return a;
  if (a.is_constant(Rational(-1))) return -b;
  if (b.is_constant(Rational(-1))) return -a;
  return binary(Kind::mul, a, b);
}

Expr operator/(const Expr& a, const Expr& b) {
  if (b.is_one()) return a;
  if (a.is_constant() && b.is_constant() && !b.is_zero())
    return Expr::constant(a.node().value / b.node().value);
  if (a.is_zero() && !b.is_zero()) return shared_zero();
  return binary(Kind::div, a, b);
}

Expr operator-(const Expr& a) {
  if (a.is_constant()) return Expr::constant(-a.node().value);
  if (a.kind() == Kind::neg) return a.node().lhs;
  Node n;
  n.kind = Kind::neg;
  n.lhs = a;
  return make_node(std::move(n));
}

Expr pow(const Expr& base, const Rational& exponent) {
  if (exponent == 1) return base;
  if (exponent == 0) return shared_one();
  if (base.is_constant() && is_integer(exponent)) {
    const Rational& v = base.node().value;
    if (v != 0 || exponent > 0) {
      const long e = exponent.get_num().get_si();
      mpz_class num, den;
      const unsigned long k = static_cast<unsigned long>(std::labs(e));
      mpz_pow_ui(num.get_mpz_t(), v.get_num().get_mpz_t(), k);
      mpz_pow_ui(den.get_mpz_t(), v.get_den().get_mpz_t(), k);
      Rational r = e > 0 ? Rational(num, den) : Rational(den, num);
      r.canonicalize();
      return Expr::constant(r);
    }
  }
  Node n;
  n.kind = Kind::pow;
  n.lhs = base;
  n.value = exponent;
  return make_node(std::move(n));
}

Expr apply(Fn f, const Expr& arg) {
  Node n;
  n.kind = Kind::func;
  n.fn = f;
  n.lhs = arg;
  return make_node(std::move(n));
}

// ---------------------------------------------------------------------------
// Printing

namespace {

void print(std::ostream& os, const Expr& e) {
  const Node& n = e.node();
  switch (n.kind) {
    case Kind::constant: os << n.value.get_str(); return;
    case Kind::parameter: os << n.name; return;
    case Kind::variable: os << name_of(n.var); return;
    case Kind::neg: os << "(- "; print(os, n.lhs); os << ')'; return;
    case Kind::pow: os << "(^ "; print(os, n.lhs); os << ' ' << n.value.get_str() << ')'; return;
    case Kind::func: os << '(' << name_of(n.fn) << ' '; print(os, n.lhs); os << ')'; return;
    default: break;
  }
  const char* op = n.kind == Kind::add ? "+" : n.kind == Kind::sub ? "-" : n.kind == Kind::mul ? "*" : "/";
  os << '(' << op << ' ';
  print(os, n.lhs);
  os << ' ';
  print(os, n.rhs);
  os << ')';
}

std::string short_prefix(const Node* node) {
  // Rewrap without taking ownership semantics beyond the call.
  std::ostringstream os;
  Node copy = *node;
  print(os, make_node(std::move(copy)));
  std::string s = os.str();
  if (s.size() > 200) s = s.substr(0, 197) + "...";
  return s;
}

}  // namespace

std::string to_prefix(const Expr& e) {
  std::ostringstream os;
  print(os, e);
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Expr& e) {
  print(os, e);
  return os;
}

// ---------------------------------------------------------------------------
// Evaluation

Evaluator::Evaluator(const Expr& e, const ParamEnv& env) {
  std::unordered_map<const Node*, std::uint32_t> index;
  for_each_node(e, [&](const Expr& sub) {
    const Node& n = sub.node();
    Instr ins{};
    ins.kind = n.kind;
    ins.fn = n.fn;
    ins.var = n.var;
    ins.node = sub.id();
    switch (n.kind) {
      case Kind::constant: ins.value = n.value.get_d(); break;
      case Kind::parameter: {
        auto it = env.find(n.name);
        if (it == env.end()) throw UnboundSymbol(n.name);
        ins.value = it->second;
        break;
      }
      case Kind::variable: break;
      case Kind::pow:
        ins.a = index.at(n.lhs.id());
        ins.value = n.value.get_d();
        ins.integer_exponent = is_integer(n.value);
        ins.exponent = ins.integer_exponent ? n.value.get_num().get_si() : 0;
        break;
      case Kind::neg:
      case Kind::func: ins.a = index.at(n.lhs.id()); break;
      default:
        ins.a = index.at(n.lhs.id());
        ins.b = index.at(n.rhs.id());
        break;
    }
    index.emplace(sub.id(), static_cast<std::uint32_t>(tape_.size()));
    tape_.push_back(ins);
    keep_alive_.push_back(sub);
  });
}

double Evaluator::operator()(const Point& p) const {
  std::vector<double> v(tape_.size());
  auto fail = [](const char* what, const Instr& ins) -> double {
    throw DomainError(what, short_prefix(ins.node));
  };
  for (std::size_t i = 0; i < tape_.size(); ++i) {
    const Instr& ins = tape_[i];
    double r = 0.0;
    switch (ins.kind) {
      case Kind::constant:
      case Kind::parameter: r = ins.value; break;
      case Kind::variable: {
        auto value = p.get(ins.var);
        if (!value) throw UnboundSymbol(std::string(name_of(ins.var)));
        r = *value;
        break;
      }
      case Kind::add: r = v[ins.a] + v[ins.b]; break;
      case Kind::sub: r = v[ins.a] - v[ins.b]; break;
      case Kind::mul: r = v[ins.a] * v[ins.b]; break;
      case Kind::div:
        if (v[ins.b] == 0.0) fail("division by zero", ins);
        r = v[ins.a] / v[ins.b];
        break;
      case Kind::neg: r = -v[ins.a]; break;
      case Kind::pow: {
        const double base = v[ins.a];
        if (base == 0.0 && ins.value < 0) fail("zero raised to a negative power", ins);
        if (!ins.integer_exponent && base < 0.0) fail("negative base with fractional exponent", ins);
        if (ins.integer_exponent && ins.exponent == 2)
          r = base * base;
        else
          r = std::pow(base, ins.value);
        break;
      }
      case Kind::func: {
        const double a = v[ins.a];
        switch (ins.fn) {
          case Fn::exp: r = std::exp(a); break;
          case Fn::sinh: r = std::sinh(a); break;
          case Fn::cosh: r = std::cosh(a); break;
          case Fn::tanh: r = std::tanh(a); break;
          case Fn::tan: r = std::tan(a); break;
          case Fn::cot: {
            const double s = std::sin(a);
            if (s == 0.0) fail("cot at a pole", ins);
            r = std::cos(a) / s;
            break;
          }
          case Fn::csc: {
            const double s = std::sin(a);
            if (s == 0.0) fail("csc at a pole", ins);
            r = 1.0 / s;
            break;
          }
          case Fn::sqrt:
            if (a < 0.0) fail("sqrt of a negative value", ins);
            r = std::sqrt(a);
            break;
          case Fn::log:
            if (a <= 0.0) fail("log of a nonpositive value", ins);
            r = std::log(a);
            break;
        }
        break;
      }
    }
    if (!std::isfinite(r)) fail("non-finite value", ins);
    v[i] = r;
  }
  return v.back();
}

double evaluate(const Expr& e, const ParamEnv& env, const Point& p) { return Evaluator(e, env)(p); }

// ---------------------------------------------------------------------------
// Structural transforms

namespace {

/// Rebuild a node with new children through the canonicalizing constructors.
Expr rebuild(const Node& n, const Expr& a, const Expr& b) {
  switch (n.kind) {
    case Kind::add: return a + b;
    case Kind::sub: return a - b;
    case Kind::mul: return a * b;
    case Kind::div: return a / b;
    case Kind::neg: return -a;
    case Kind::pow: return pow(a, n.value);
    case Kind::func: return apply(n.fn, a);
    default: break;
  }
  throw std::logic_error("rebuild on a leaf");
}

/// Bottom-up rewrite; `leaf` maps leaves, inner nodes are rebuilt only when a
/// child changed.
template <typename LeafMap>
Expr transform(const Expr& root, LeafMap&& leaf) {
  std::unordered_map<const Node*, Expr> done;
  for_each_node(root, [&](const Expr& e) {
    const Node& n = e.node();
    switch (n.kind) {
      case Kind::constant:
      case Kind::parameter:
      case Kind::variable: done.emplace(e.id(), leaf(e)); return;
      case Kind::neg:
      case Kind::pow:
      case Kind::func: {
        const Expr& a = done.at(n.lhs.id());
        done.emplace(e.id(), a.id() == n.lhs.id() ? e : rebuild(n, a, Expr(nullptr)));
        return;
      }
      default: {
        const Expr& a = done.at(n.lhs.id());
        const Expr& b = done.at(n.rhs.id());
        done.emplace(e.id(), a.id() == n.lhs.id() && b.id() == n.rhs.id() ? e : rebuild(n, a, b));
        return;
      }
    }
  });
  return done.at(root.id());
}

Expr derivative_of_function(const Expr& self, const Node& n) {
  const Expr& a = n.lhs;
  switch (n.fn) {
    case Fn::exp: return self;
    case Fn::sinh: return cosh(a);
    case Fn::cosh: return sinh(a);
    case Fn::tanh: return 1 - square(self);
    case Fn::tan: return 1 + square(self);
    case Fn::cot: return -(1 + square(self));
    case Fn::csc: return -(self * cot(a));
    case Fn::sqrt: return 1 / (2 * self);
    case Fn::log: return 1 / a;
  }
  throw std::logic_error("unknown function");
}

}  // namespace

Expr differentiate(const Expr& root, Var v) {
  std::unordered_map<const Node*, Expr> d;
  for_each_node(root, [&](const Expr& e) {
    const Node& n = e.node();
    Expr r;
    switch (n.kind) {
      case Kind::constant:
      case Kind::parameter: r = Expr(0); break;
      case Kind::variable: r = Expr(n.var == v ? 1 : 0); break;
      case Kind::add: r = d.at(n.lhs.id()) + d.at(n.rhs.id()); break;
      case Kind::sub: r = d.at(n.lhs.id()) - d.at(n.rhs.id()); break;
      case Kind::mul: r = d.at(n.lhs.id()) * n.rhs + n.lhs * d.at(n.rhs.id()); break;
      case Kind::div: {
        const Expr& da = d.at(n.lhs.id());
        const Expr& db = d.at(n.rhs.id());
        if (db.is_zero())
          r = da / n.rhs;
        else
          r = (da * n.rhs - n.lhs * db) / square(n.rhs);
        break;
      }
      case Kind::neg: r = -d.at(n.lhs.id()); break;
      case Kind::pow: r = Expr(n.value) * pow(n.lhs, n.value - 1) * d.at(n.lhs.id()); break;
      case Kind::func: {
        const Expr& da = d.at(n.lhs.id());
        r = da.is_zero() ? Expr(0) : derivative_of_function(e, n) * da;
        break;
      }
    }
    d.emplace(e.id(), std::move(r));
  });
  return d.at(root.id());
}

Expr nth_derivative(const Expr& e, Var v, unsigned n) {
  Expr r = e;
  for (unsigned i = 0; i < n; ++i) r = differentiate(r, v);
  return r;
}

Expr substitute(const Expr& e, Var v, const Expr& replacement) {
  return transform(e, [&](const Expr& leaf) {
    return leaf.kind() == Kind::variable && leaf.node().var == v ? replacement : leaf;
  });
}

Expr bind_parameters(const Expr& e, const ParamEnv& env) {
  return transform(e, [&](const Expr& leaf) {
    if (leaf.kind() != Kind::parameter) return leaf;
    auto it = env.find(leaf.node().name);
    return it == env.end() ? leaf : Expr::from_double(it->second);
  });
}

bool depends_on(const Expr& e, Var v) {
  bool found = false;
  for_each_node(e, [&](const Expr& sub) {
    if (sub.kind() == Kind::variable && sub.node().var == v) found = true;
  });
  return found;
}

std::set<std::string> parameters_of(const Expr& e) {
  std::set<std::string> names;
  for_each_node(e, [&](const Expr& sub) {
    if (sub.kind() == Kind::parameter) names.insert(sub.node().name);
  });
  return names;
}

std::size_t dag_size(const Expr& e) {
  std::size_t count = 0;
  for_each_node(e, [&](const Expr&) { ++count; });
  return count;
}

}  // namespace mdpwave
