#pragma once

#include <map>
#include <string>

#include "quiverhh/quiver.hpp"
#include "quiverhh/rational.hpp"

namespace quiverhh {

/// A finitely supported rational combination of paths of one quiver.
/// Zero coefficients are never stored, so equality is term-by-term.
class AlgebraElement {
 public:
  using Terms = std::map<Path, Rational>;

  explicit AlgebraElement(QuiverPtr quiver) : quiver_(std::move(quiver)) {}
  AlgebraElement(QuiverPtr quiver, const Path& p, Rational coeff = 1);

  static AlgebraElement identity(QuiverPtr quiver);

  const QuiverPtr& quiver_ptr() const { return quiver_; }
  const Quiver& quiver() const { return *quiver_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(const Path& p) const;

  /// Adds c * p, pruning the term if it cancels.
  void add_term(const Path& p, const Rational& c);

  AlgebraElement& operator+=(const AlgebraElement& other);
  AlgebraElement& operator-=(const AlgebraElement& other);
  AlgebraElement& operator*=(const Rational& scalar);

  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  friend AlgebraElement operator*(AlgebraElement a, const Rational& s) { return a *= s; }
  friend AlgebraElement operator*(const Rational& s, AlgebraElement a) { return a *= s; }
  friend AlgebraElement operator-(AlgebraElement a) { return a *= Rational(-1); }

  bool operator==(const AlgebraElement& other) const;

  std::string to_string() const;

 private:
  QuiverPtr quiver_;
  Terms terms_;
};

/// Bilinear extension of path concatenation. Throws QuiverMismatch.
AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);

/// ab - ba. Throws QuiverMismatch.
AlgebraElement commutator(const AlgebraElement& a, const AlgebraElement& b);

void require_same_quiver(const QuiverPtr& a, const QuiverPtr& b);

}  // namespace quiverhh
