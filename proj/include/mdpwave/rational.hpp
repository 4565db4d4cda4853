#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace mdpwave {

/// Arbitrary-precision rational, always kept in canonical form.
using Rational = mpq_class;

/// "n/d" with an explicit denominator, e.g. "0/1", "-15/2".
std::string to_fraction_string(const Rational& q);

/// Accepts "n", "n/d", or a finite decimal literal such as "-0.75" or "1e-3".
/// Throws std::invalid_argument on anything else.
Rational parse_rational(std::string_view text);

/// Exact dyadic value of a finite double.
Rational exact_rational(double v);

/// Square root when both numerator and denominator are perfect squares.
std::optional<Rational> exact_sqrt(const Rational& q);

inline double to_double(const Rational& q) { return q.get_d(); }

}  // namespace mdpwave
