#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace smoothset {

using Integer = mpz_class;
using Rational = mpq_class;

inline std::string to_string(const Rational& q) { return q.get_str(); }
inline std::string to_string(const Integer& z) { return z.get_str(); }

// Accepts "p", "-p", "p/q"; throws ParameterError on anything else.
Rational parse_rational(std::string_view text);

Rational factorial(unsigned n);

}  // namespace smoothset
