#include "mdpwave/tanh_coth.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <thread>

#include "mdpwave/errors.hpp"
#include "mdpwave/riccati.hpp"

namespace mdpwave::tanh_coth {

std::set<int> balance() {
  // Each pair (p1 m + q1 = p2 m + q2) of leading exponents.
  struct Eq {
    int p1, q1, p2, q2;
  };
  std::set<int> out;
  for (const Eq& e : {Eq{3, 1, 2, 1}, Eq{3, 1, 1, 1}, Eq{2, 1, 1, 3}}) {
    const int num = e.q2 - e.q1;
    const int den = e.p1 - e.p2;
    if (den != 0 && num % den == 0 && num / den >= 0) out.insert(num / den);
  }
  return out;
}

PhiLaurent ansatz_laurent(int m) {
  if (m < 1) throw std::invalid_argument("ansatz order must be positive");
  if (m > 2) throw UnsupportedOrder("ansatz order " + std::to_string(m) + " exceeds the available coefficients");
  static constexpr Sym a[] = {Sym::a1, Sym::a2};
  static constexpr Sym c[] = {Sym::c1, Sym::c2};
  PhiLaurent u = PhiLaurent::term(0, MultiPoly::var(Sym::a0));
  for (int i = 1; i <= m; ++i) {
    u += PhiLaurent::term(i, MultiPoly::var(a[i - 1]));
    u += PhiLaurent::term(-i, MultiPoly::var(c[i - 1]));
  }
  return u;
}

PhiLaurent ode_laurent(const PhiLaurent& u) {
  const MultiPoly b = MultiPoly::var(Sym::b);
  const MultiPoly lambda = MultiPoly::var(Sym::lambda);
  const PhiLaurent u1 = phi_derivative(u);
  const PhiLaurent u2 = phi_derivative(u1);
  const PhiLaurent u3 = phi_derivative(u2);
  PhiLaurent r = (b + 1) * (u1 * u * u);
  r -= u3 * u;
  r -= lambda * u3;
  r += lambda * u1;
  r -= b * (u1 * u2);
  return r;
}

AlgebraicSystem generate_system_from(const PhiLaurent& u) {
  const PhiLaurent r = ode_laurent(u);
  AlgebraicSystem s;
  if (r.is_zero()) return s;
  s.clearing_power = std::max(0, -r.min_exponent());
  const PhiLaurent cleared = r.shifted(s.clearing_power);
  for (const auto& [k, p] : cleared.terms()) {
    s.powers.push_back(k);
    s.equations.push_back(p);
  }
  return s;
}

AlgebraicSystem generate_system(int m) {
  if (m != 2) throw UnsupportedOrder("only the order-2 ansatz is supported");
  const PhiLaurent u = ansatz_laurent(m);
  const int lowest = ode_laurent(u).min_exponent();
  // Both u' u^2 and u u''' bottom out at phi^(-3m-1).
  if (lowest != -3 * m - 1) throw std::logic_error("unexpected lowest phi power " + std::to_string(lowest));
  AlgebraicSystem s = generate_system_from(u);
  if (s.clearing_power != 7) throw std::logic_error("clearing power mismatch");
  return s;
}

std::vector<Rational> check_assignment(const AlgebraicSystem& s, const ExactValues& values) {
  std::vector<Rational> out;
  out.reserve(s.equations.size());
  for (const auto& e : s.equations) out.push_back(e.evaluate(values));
  return out;
}

std::vector<double> check_assignment(const AlgebraicSystem& s, const FloatValues& values) {
  std::vector<double> out;
  out.reserve(s.equations.size());
  for (const auto& e : s.equations) out.push_back(static_cast<double>(e.evaluate(values)));
  return out;
}

std::string_view name_of(SolutionCase c) {
  switch (c) {
    case SolutionCase::first: return "first";
    case SolutionCase::second: return "second";
    case SolutionCase::third: return "third";
    case SolutionCase::fourth: return "fourth";
  }
  return "?";
}

SolutionCase case_from_name(std::string_view name) {
  for (SolutionCase c : {SolutionCase::first, SolutionCase::second, SolutionCase::third, SolutionCase::fourth})
    if (name_of(c) == name) return c;
  throw std::invalid_argument("unknown case '" + std::string(name) + "' (expected first|second|third|fourth)");
}

namespace {

template <typename T>
struct Arith;

template <>
struct Arith<double> {
  static std::optional<double> root(double s) { return s >= 0.0 ? std::optional<double>(std::sqrt(s)) : std::nullopt; }
  static bool degenerate(double a, double b, double g) { return riccati::is_degenerate({a, b, g}); }
  static bool negative(double s) { return s < 0.0; }
};

template <>
struct Arith<Rational> {
  static std::optional<Rational> root(const Rational& s) { return s >= 0 ? exact_sqrt(s) : std::nullopt; }
  static bool degenerate(const Rational& a, const Rational& b, const Rational& g) { return b * b == 4 * a * g; }
  static bool negative(const Rational& s) { return s < 0; }
};

template <typename T>
std::vector<CaseTuple<T>> tuples(SolutionCase c, const T& b, const T& alpha, const T& beta, const T& gamma) {
  using A = Arith<T>;
  std::vector<std::string> violations;
  if (b == T(-1)) violations.emplace_back("b ≠ −1");
  if (b == T(-2)) violations.emplace_back("b ≠ −2");
  const T k = alpha * gamma;
  const T delta = beta * beta - 4 * k;
  switch (c) {
    case SolutionCase::first:
      if (beta == T(0)) violations.emplace_back("β ≠ 0");
      if (!A::degenerate(alpha, beta, gamma)) violations.emplace_back("β² = 4αγ");
      break;
    case SolutionCase::second:
      if (alpha != T(0)) violations.emplace_back("α = 0");
      if (beta == T(0)) violations.emplace_back("β ≠ 0");
      break;
    case SolutionCase::third:
      if (beta != T(0)) violations.emplace_back("β = 0");
      if (k == T(0)) violations.emplace_back("αγ ≠ 0");
      break;
    case SolutionCase::fourth:
      if (delta == T(0)) violations.emplace_back("Δ ≠ 0");
      break;
  }
  if (!violations.empty()) throw ConstraintViolation(std::move(violations));

  const T two_b1 = 2 * (b + 1);
  const T six = 6 * (b + 2) / (b + 1);
  std::vector<CaseTuple<T>> out;
  bool any_negative = false;
  auto with_root = [&](const T& S, const std::function<void(const T&)>& emit) {
    if (A::negative(S)) {
      any_negative = true;
      return;
    }
    if (auto r = A::root(S)) emit(*r);
  };
  switch (c) {
    case SolutionCase::first:
      out.push_back({"u11", {T(3 * (b + 2) * beta * beta / two_b1 - 1), T(0), T(0), T(six * alpha * beta),
                             T(six * alpha * alpha), T(-b - 1)}});
      break;
    case SolutionCase::second: {
      const T S = 1 - b * (b + 2) * (beta * beta * beta * beta - 1);
      with_root(S, [&](const T& r) {
        for (int s : {-1, 1}) {
          const T sr = s * r;
          out.push_back({s < 0 ? "u12" : "u13",
                         {T(((b + 2) * beta * beta - b - 1 + sr) / two_b1), T(six * beta * gamma),
                          T(six * gamma * gamma), T(0), T(0), T((-b + sr - 1) / 2)}});
        }
      });
      break;
    }
    case SolutionCase::third: {
      const T S_csc = b * (b + 2) * (1 - 256 * k * k) + 1;
      const T S_tan = b * (b + 2) * (1 - 16 * k * k) + 1;
      auto a0 = [&](const T& sr) { return T((8 * k * b - b + 16 * k + sr - 1) / two_b1); };
      with_root(S_csc, [&](const T& r) {
        for (int s : {-1, 1}) {
          const T sr = s * r;
          out.push_back({s < 0 ? "u14" : "u15",
                         {a0(sr), T(0), T(six * gamma * gamma), T(0), T(six * alpha * alpha), T((-b + sr - 1) / 2)}});
        }
      });
      with_root(S_tan, [&](const T& r) {
        for (int s : {-1, 1}) {
          const T sr = s * r;
          out.push_back({s < 0 ? "u16" : "u18", {a0(sr), T(0), T(0), T(0), T(six * alpha * alpha), T((-b + sr - 1) / 2)}});
          out.push_back({s < 0 ? "u17" : "u19", {a0(sr), T(0), T(six * gamma * gamma), T(0), T(0), T((-b + sr - 1) / 2)}});
        }
      });
      break;
    }
    case SolutionCase::fourth: {
      const T S = 1 - b * (b + 2) * (delta * delta - 1);
      with_root(S, [&](const T& r) {
        for (int s : {-1, 1}) {
          const T sr = s * r;
          const T a0 = (24 * k + 2 * delta + b * (12 * k + delta - 1) + sr - 1) / two_b1;
          const T lambda = (-b + sr - 1) / 2;
          out.push_back({s < 0 ? "u20" : "u21", {a0, T(six * beta * gamma), T(six * gamma * gamma), T(0), T(0), lambda}});
          out.push_back({s < 0 ? "u23" : "u22", {a0, T(0), T(0), T(six * alpha * beta), T(six * alpha * alpha), lambda}});
        }
      });
      break;
    }
  }
  if (out.empty() && any_negative) throw ConstraintViolation({"discriminant S ≥ 0"});
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    return std::make_pair(x.family.size(), x.family) < std::make_pair(y.family.size(), y.family);
  });
  return out;
}

}  // namespace

std::vector<CaseTuple<double>> case_tuples(SolutionCase c, double b, double alpha, double beta, double gamma) {
  for (double v : {b, alpha, beta, gamma})
    if (!std::isfinite(v)) throw InvalidParams("case parameters must be finite");
  return tuples<double>(c, b, alpha, beta, gamma);
}

std::vector<CaseTuple<Rational>> exact_case_tuples(SolutionCase c, const Rational& b, const Rational& alpha,
                                                   const Rational& beta, const Rational& gamma) {
  return tuples<Rational>(c, b, alpha, beta, gamma);
}

namespace {
template <typename T>
poly::Assignment<T> fill(const T& b, const T& alpha, const T& beta, const T& gamma, const std::array<T, 6>& u) {
  poly::Assignment<T> a;
  for (std::size_t i = 0; i < kUnknowns.size(); ++i) a[static_cast<std::size_t>(kUnknowns[i])] = u[i];
  a[static_cast<std::size_t>(Sym::alpha)] = alpha;
  a[static_cast<std::size_t>(Sym::beta)] = beta;
  a[static_cast<std::size_t>(Sym::gamma)] = gamma;
  a[static_cast<std::size_t>(Sym::b)] = b;
  return a;
}
}  // namespace

ExactValues assignment(const Rational& b, const Rational& alpha, const Rational& beta, const Rational& gamma,
                       const std::array<Rational, 6>& unknowns) {
  return fill(b, alpha, beta, gamma, unknowns);
}

FloatValues assignment(double b, double alpha, double beta, double gamma, const std::array<double, 6>& unknowns) {
  std::array<long double, 6> u;
  std::copy(unknowns.begin(), unknowns.end(), u.begin());
  return fill<long double>(b, alpha, beta, gamma, u);
}

// ---------------------------------------------------------------------------
// Newton multistart

namespace {

/// A polynomial in the six unknowns flattened for fast float evaluation.
class Compiled {
 public:
  explicit Compiled(const MultiPoly& p) {
    for (const auto& [e, c] : p.terms()) {
      Mono m;
      m.coefficient = static_cast<long double>(c.get_d());
      // Exact integer coefficients convert without loss via the numerator.
      if (c.get_den() == 1 && c.get_num().fits_slong_p()) m.coefficient = static_cast<long double>(c.get_num().get_si());
      for (std::size_t i = 0; i < kUnknowns.size(); ++i) m.exponents[i] = e[static_cast<std::size_t>(kUnknowns[i])];
      monos_.push_back(m);
    }
  }

  long double operator()(const std::array<long double, 6>& x) const {
    long double sum = 0.0L;
    for (const Mono& m : monos_) {
      long double v = m.coefficient;
      for (std::size_t i = 0; i < 6; ++i)
        for (unsigned k = 0; k < m.exponents[i]; ++k) v *= x[i];
      sum += v;
    }
    return sum;
  }

 private:
  struct Mono {
    long double coefficient;
    std::array<std::uint16_t, 6> exponents{};
  };
  std::vector<Mono> monos_;
};

struct Specialized {
  std::vector<Compiled> f;
  std::vector<std::array<Compiled, 6>> jac;
};

Specialized specialize(const AlgebraicSystem& s, const Rational& b, const Rational& alpha, const Rational& beta,
                       const Rational& gamma) {
  Specialized out;
  for (const auto& eq : s.equations) {
    MultiPoly p = eq.substitute(Sym::alpha, alpha).substitute(Sym::beta, beta).substitute(Sym::gamma, gamma);
    p = p.substitute(Sym::b, b);
    if (p.is_zero()) continue;
    out.f.emplace_back(p);
    out.jac.push_back({Compiled(p.derivative(kUnknowns[0])), Compiled(p.derivative(kUnknowns[1])),
                       Compiled(p.derivative(kUnknowns[2])), Compiled(p.derivative(kUnknowns[3])),
                       Compiled(p.derivative(kUnknowns[4])), Compiled(p.derivative(kUnknowns[5]))});
  }
  return out;
}

long double residual_norm(const Specialized& sys, const std::array<long double, 6>& x, Eigen::VectorXd* r) {
  long double n = 0.0L;
  for (std::size_t i = 0; i < sys.f.size(); ++i) {
    const long double v = sys.f[i](x);
    if (r) (*r)(static_cast<Eigen::Index>(i)) = static_cast<double>(v);
    n = std::max(n, std::fabs(v));
  }
  return n;
}

std::optional<Root> run_one(const Specialized& sys, std::array<long double, 6> x, const NewtonOptions& opts) {
  const auto m = static_cast<Eigen::Index>(sys.f.size());
  Eigen::VectorXd r(m);
  Eigen::MatrixXd J(m, 6);
  long double norm = residual_norm(sys, x, &r);
  for (unsigned it = 0; it < opts.max_iterations && norm >= opts.tolerance; ++it) {
    if (!std::isfinite(static_cast<double>(norm))) return std::nullopt;
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = 0; j < 6; ++j)
        J(i, j) = static_cast<double>(sys.jac[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)](x));
    const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(J);
    if (qr.rank() < 6) return std::nullopt;
    const Eigen::VectorXd step = qr.solve(-r);
    long double t = 1.0L;
    bool improved = false;
    for (int h = 0; h < 30; ++h) {
      std::array<long double, 6> trial;
      for (std::size_t j = 0; j < 6; ++j) trial[j] = x[j] + t * static_cast<long double>(step(static_cast<Eigen::Index>(j)));
      Eigen::VectorXd rt(m);
      const long double nt = residual_norm(sys, trial, &rt);
      if (nt < norm) {
        x = trial;
        r = rt;
        norm = nt;
        improved = true;
        break;
      }
      t /= 2;
    }
    if (!improved) return std::nullopt;
  }
  if (!(norm < opts.tolerance)) return std::nullopt;
  Root root;
  for (std::size_t j = 0; j < 6; ++j) root.unknowns[j] = static_cast<double>(x[j]);
  root.residual = static_cast<double>(norm);
  return root;
}

}  // namespace

std::vector<Root> newton_solve(const AlgebraicSystem& s, const Rational& b, const Rational& alpha,
                               const Rational& beta, const Rational& gamma, const NewtonOptions& opts) {
  const Specialized sys = specialize(s, b, alpha, beta, gamma);
  if (sys.f.empty()) return {};

  std::mt19937_64 rng(opts.rng_seed);
  std::uniform_real_distribution<double> dist(-opts.box, opts.box);
  std::vector<std::array<long double, 6>> starts(opts.seeds);
  for (auto& s0 : starts)
    for (auto& v : s0) v = dist(rng);

  std::vector<std::optional<Root>> found(starts.size());
  const unsigned workers = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(starts.size())));
  auto work = [&](unsigned w) {
    for (std::size_t i = w; i < starts.size(); i += workers) found[i] = run_one(sys, starts[i], opts);
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }

  std::vector<Root> roots;
  for (const auto& f : found) {
    if (!f) continue;
    const bool seen = std::any_of(roots.begin(), roots.end(), [&](const Root& q) {
      double d2 = 0.0;
      for (std::size_t j = 0; j < 6; ++j) d2 += (q.unknowns[j] - f->unknowns[j]) * (q.unknowns[j] - f->unknowns[j]);
      return std::sqrt(d2) < opts.dedup_distance;
    });
    if (!seen) roots.push_back(*f);
  }
  std::sort(roots.begin(), roots.end(), [](const Root& x, const Root& y) { return x.unknowns < y.unknowns; });
  return roots;
}

// ---------------------------------------------------------------------------
// JSON

nlohmann::json to_json(const AlgebraicSystem& s) {
  nlohmann::json vars = nlohmann::json::array();
  for (std::size_t i = 0; i < poly::kSymCount; ++i) vars.push_back(poly::name_of(static_cast<Sym>(i)));
  nlohmann::json eqs = nlohmann::json::array();
  for (std::size_t i = 0; i < s.equations.size(); ++i) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [e, c] : s.equations[i].terms())
      terms.push_back(nlohmann::json::array({e, c.get_num().get_str(), c.get_den().get_str()}));
    eqs.push_back({{"power", s.powers[i]}, {"terms", std::move(terms)}});
  }
  return {{"variables", std::move(vars)}, {"clearing_power", s.clearing_power}, {"equations", std::move(eqs)}};
}

AlgebraicSystem system_from_json(const nlohmann::json& j) {
  try {
    const auto& vars = j.at("variables");
    if (vars.size() != poly::kSymCount) throw std::invalid_argument("expected ten variables");
    for (std::size_t i = 0; i < poly::kSymCount; ++i)
      if (vars[i].get<std::string>() != poly::name_of(static_cast<Sym>(i)))
        throw std::invalid_argument("variable order mismatch at index " + std::to_string(i));
    AlgebraicSystem s;
    s.clearing_power = j.at("clearing_power").get<int>();
    for (const auto& eq : j.at("equations")) {
      s.powers.push_back(eq.at("power").get<int>());
      MultiPoly p;
      for (const auto& t : eq.at("terms")) {
        if (!t.is_array() || t.size() != 3) throw std::invalid_argument("term must be [exponents, num, den]");
        const auto e = t[0].get<poly::Exponents>();
        Rational c(mpz_class(t[1].get<std::string>()), mpz_class(t[2].get<std::string>()));
        if (c.get_den() == 0) throw std::invalid_argument("zero denominator");
        c.canonicalize();
        p += MultiPoly::monomial(e, c);
      }
      s.equations.push_back(std::move(p));
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed system JSON: ") + e.what());
  }
}

}  // namespace mdpwave::tanh_coth
