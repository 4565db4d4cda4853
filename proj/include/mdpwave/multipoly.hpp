#pragma once

// Exact multivariate polynomials over a fixed ten-symbol alphabet and
// Laurent series in phi with polynomial coefficients.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "mdpwave/rational.hpp"

namespace mdpwave::poly {

enum class Sym : std::uint8_t { a0, a1, a2, c1, c2, lambda, alpha, beta, gamma, b };
inline constexpr std::size_t kSymCount = 10;

std::string_view name_of(Sym s);
/// Throws std::invalid_argument for an unknown name.
Sym sym_from_name(std::string_view name);

using Exponents = std::array<std::uint16_t, kSymCount>;

/// Partial assignment of the ten symbols.
template <typename T>
using Assignment = std::array<std::optional<T>, kSymCount>;

class MultiPoly {
 public:
  using Terms = std::map<Exponents, Rational>;

  MultiPoly() = default;
  MultiPoly(const Rational& c);  // NOLINT(google-explicit-constructor)
  MultiPoly(int c) : MultiPoly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  static MultiPoly var(Sym s);
  static MultiPoly monomial(const Exponents& e, const Rational& c);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  unsigned degree_in(Sym s) const;
  bool involves(Sym s) const { return degree_in(s) > 0; }

  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const Rational& c);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
  MultiPoly operator-() const;
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) { return a.terms_ == b.terms_; }

  MultiPoly derivative(Sym s) const;
  /// Replaces `s` by the exact value `v`.
  MultiPoly substitute(Sym s, const Rational& v) const;

  /// Throws UnboundVariable if a symbol that occurs is unassigned.
  Rational evaluate(const Assignment<Rational>& at) const;
  long double evaluate(const Assignment<long double>& at) const;

  std::string to_string() const;

 private:
  void add_term(const Exponents& e, const Rational& c);
  Terms terms_;
};

/// Finite sum of p_k * phi^k, k possibly negative.
class PhiLaurent {
 public:
  using Terms = std::map<int, MultiPoly>;

  PhiLaurent() = default;
  static PhiLaurent term(int k, MultiPoly coefficient);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Zero polynomial when k is outside the support.
  MultiPoly coefficient(int k) const;
  int min_exponent() const;
  int max_exponent() const;

  PhiLaurent& operator+=(const PhiLaurent& o);
  PhiLaurent& operator-=(const PhiLaurent& o);
  friend PhiLaurent operator+(PhiLaurent a, const PhiLaurent& b) { return a += b; }
  friend PhiLaurent operator-(PhiLaurent a, const PhiLaurent& b) { return a -= b; }
  friend PhiLaurent operator*(const PhiLaurent& a, const PhiLaurent& b);
  friend PhiLaurent operator*(const MultiPoly& c, const PhiLaurent& a);
  friend bool operator==(const PhiLaurent& a, const PhiLaurent& b) { return a.terms_ == b.terms_; }

  /// Multiplies by phi^k.
  PhiLaurent shifted(int k) const;

 private:
  void add_term(int k, const MultiPoly& c);
  Terms terms_;
};

/// d/dxi under phi' = alpha + beta phi + gamma phi^2.
PhiLaurent phi_derivative(const PhiLaurent& L);

}  // namespace mdpwave::poly
