#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace quiverhh {

using Rational = mpq_class;
using RationalVector = std::vector<Rational>;

/// "num/den" in lowest terms, or just "num" for integers.
inline std::string to_string(const Rational& value) { return value.get_str(); }

/// n/d in lowest terms. mpq_class(n, d) alone does not canonicalize.
inline Rational make_rational(long n, long d) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

inline bool is_zero(const Rational& value) { return sgn(value) == 0; }

inline bool is_zero(const RationalVector& v) {
  for (const auto& x : v)
    if (!is_zero(x)) return false;
  return true;
}

}  // namespace quiverhh
