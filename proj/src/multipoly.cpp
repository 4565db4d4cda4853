#include "mdpwave/multipoly.hpp"

#include <sstream>
#include <stdexcept>

#include "mdpwave/errors.hpp"

namespace mdpwave::poly {

namespace {
constexpr std::array<std::string_view, kSymCount> kNames{"a0",    "a1",    "a2",   "c1",    "c2",
                                                        "lambda", "alpha", "beta", "gamma", "b"};
}

std::string_view name_of(Sym s) { return kNames[static_cast<std::size_t>(s)]; }

Sym sym_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kSymCount; ++i)
    if (kNames[i] == name) return static_cast<Sym>(i);
  throw std::invalid_argument("unknown polynomial variable '" + std::string(name) + "'");
}

MultiPoly::MultiPoly(const Rational& c) {
  if (c != 0) terms_.emplace(Exponents{}, c);
}

MultiPoly MultiPoly::var(Sym s) {
  Exponents e{};
  e[static_cast<std::size_t>(s)] = 1;
  return monomial(e, 1);
}

MultiPoly MultiPoly::monomial(const Exponents& e, const Rational& c) {
  MultiPoly p;
  p.add_term(e, c);
  return p;
}

void MultiPoly::add_term(const Exponents& e, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (inserted) return;
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

unsigned MultiPoly::degree_in(Sym s) const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max<unsigned>(d, e[static_cast<std::size_t>(s)]);
  return d;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

MultiPoly& MultiPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  MultiPoly out;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      Exponents e;
      for (std::size_t i = 0; i < kSymCount; ++i) e[i] = static_cast<std::uint16_t>(ea[i] + eb[i]);
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly out = *this;
  for (auto& [e, v] : out.terms_) v = -v;
  return out;
}

MultiPoly MultiPoly::derivative(Sym s) const {
  const auto i = static_cast<std::size_t>(s);
  MultiPoly out;
  for (const auto& [e, c] : terms_) {
    if (e[i] == 0) continue;
    Exponents d = e;
    --d[i];
    out.add_term(d, c * e[i]);
  }
  return out;
}

MultiPoly MultiPoly::substitute(Sym s, const Rational& v) const {
  const auto i = static_cast<std::size_t>(s);
  MultiPoly out;
  for (const auto& [e, c] : terms_) {
    Exponents r = e;
    r[i] = 0;
    Rational f = c;
    for (unsigned k = 0; k < e[i]; ++k) f *= v;
    out.add_term(r, f);
  }
  return out;
}

namespace {

template <typename T>
T eval_terms(const MultiPoly::Terms& terms, const Assignment<T>& at, T (*from)(const Rational&)) {
  T sum = 0;
  for (const auto& [e, c] : terms) {
    T m = from(c);
    for (std::size_t i = 0; i < kSymCount; ++i) {
      if (e[i] == 0) continue;
      if (!at[i]) throw UnboundVariable("polynomial variable '" + std::string(kNames[i]) + "' is unassigned");
      for (unsigned k = 0; k < e[i]; ++k) m *= *at[i];
    }
    sum += m;
  }
  return sum;
}

Rational rational_id(const Rational& q) { return q; }
long double to_long_double(const Rational& q) {
  // Two-step division keeps long double precision for large numerators.
  const mpz_class& n = q.get_num();
  const mpz_class& d = q.get_den();
  if (n.fits_slong_p() && d.fits_slong_p())
    return static_cast<long double>(n.get_si()) / static_cast<long double>(d.get_si());
  return static_cast<long double>(q.get_d());
}

}  // namespace

Rational MultiPoly::evaluate(const Assignment<Rational>& at) const { return eval_terms(terms_, at, &rational_id); }

long double MultiPoly::evaluate(const Assignment<long double>& at) const {
  return eval_terms(terms_, at, &to_long_double);
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << to_fraction_string(c);
    for (std::size_t i = 0; i < kSymCount; ++i) {
      if (e[i] == 0) continue;
      os << '*' << kNames[i];
      if (e[i] > 1) os << '^' << e[i];
    }
  }
  return os.str();
}

PhiLaurent PhiLaurent::term(int k, MultiPoly coefficient) {
  PhiLaurent L;
  L.add_term(k, coefficient);
  return L;
}

void PhiLaurent::add_term(int k, const MultiPoly& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(k, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

MultiPoly PhiLaurent::coefficient(int k) const {
  auto it = terms_.find(k);
  return it == terms_.end() ? MultiPoly{} : it->second;
}

int PhiLaurent::min_exponent() const {
  if (terms_.empty()) throw std::logic_error("min_exponent of the zero series");
  return terms_.begin()->first;
}

int PhiLaurent::max_exponent() const {
  if (terms_.empty()) throw std::logic_error("max_exponent of the zero series");
  return terms_.rbegin()->first;
}

PhiLaurent& PhiLaurent::operator+=(const PhiLaurent& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

PhiLaurent& PhiLaurent::operator-=(const PhiLaurent& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, -c);
  return *this;
}

PhiLaurent operator*(const PhiLaurent& a, const PhiLaurent& b) {
  PhiLaurent out;
  for (const auto& [ka, ca] : a.terms_)
    for (const auto& [kb, cb] : b.terms_) out.add_term(ka + kb, ca * cb);
  return out;
}

PhiLaurent operator*(const MultiPoly& c, const PhiLaurent& a) {
  PhiLaurent out;
  for (const auto& [k, p] : a.terms_) out.add_term(k, c * p);
  return out;
}

PhiLaurent PhiLaurent::shifted(int k) const {
  PhiLaurent out;
  for (const auto& [j, p] : terms_) out.terms_.emplace(j + k, p);
  return out;
}

PhiLaurent phi_derivative(const PhiLaurent& L) {
  const MultiPoly alpha = MultiPoly::var(Sym::alpha);
  const MultiPoly beta = MultiPoly::var(Sym::beta);
  const MultiPoly gamma = MultiPoly::var(Sym::gamma);
  PhiLaurent out;
  for (const auto& [k, p] : L.terms()) {
    if (k == 0) continue;
    const MultiPoly kp = p * Rational(k);
    out += PhiLaurent::term(k - 1, alpha * kp);
    out += PhiLaurent::term(k, beta * kp);
    out += PhiLaurent::term(k + 1, gamma * kp);
  }
  return out;
}

}  // namespace mdpwave::poly
