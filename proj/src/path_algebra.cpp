#include "quiverhh/path_algebra.hpp"

#include "quiverhh/error.hpp"

namespace quiverhh {

void require_same_quiver(const QuiverPtr& a, const QuiverPtr& b) {
  if (a != b) throw Error(ErrorKind::QuiverMismatch, "operands belong to different quivers");
}

AlgebraElement::AlgebraElement(QuiverPtr quiver, const Path& p, Rational coeff)
    : quiver_(std::move(quiver)) {
  add_term(p, coeff);
}

AlgebraElement AlgebraElement::identity(QuiverPtr quiver) {
  AlgebraElement e(quiver);
  for (std::size_t v = 0; v < quiver->vertex_count(); ++v) e.add_term(Path::trivial(VertexId{v}), 1);
  return e;
}

Rational AlgebraElement::coefficient(const Path& p) const {
  auto it = terms_.find(p);
  return it == terms_.end() ? Rational(0) : it->second;
}

void AlgebraElement::add_term(const Path& p, const Rational& c) {
  if (quiverhh::is_zero(c)) return;
  auto [it, inserted] = terms_.try_emplace(p, c);
  if (inserted) return;
  it->second += c;
  if (quiverhh::is_zero(it->second)) terms_.erase(it);
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& other) {
  require_same_quiver(quiver_, other.quiver_);
  for (const auto& [p, c] : other.terms_) add_term(p, c);
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& other) {
  require_same_quiver(quiver_, other.quiver_);
  for (const auto& [p, c] : other.terms_) add_term(p, -c);
  return *this;
}

AlgebraElement& AlgebraElement::operator*=(const Rational& scalar) {
  if (quiverhh::is_zero(scalar)) {
    terms_.clear();
    return *this;
  }
  for (auto& [p, c] : terms_) c *= scalar;
  return *this;
}

bool AlgebraElement::operator==(const AlgebraElement& other) const {
  return quiver_ == other.quiver_ && terms_ == other.terms_;
}

std::string AlgebraElement::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [p, c] : terms_) {
    if (!out.empty()) out += " + ";
    if (c != 1) out += "(" + c.get_str() + ")*";
    out += label(*quiver_, p);
  }
  return out;
}

AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b) {
  require_same_quiver(a.quiver_ptr(), b.quiver_ptr());
  AlgebraElement out(a.quiver_ptr());
  for (const auto& [p, c] : a.terms())
    for (const auto& [r, d] : b.terms())
      if (auto pr = concat(p, r)) out.add_term(*pr, c * d);
  return out;
}

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) { return multiply(a, b); }

AlgebraElement commutator(const AlgebraElement& a, const AlgebraElement& b) {
  return multiply(a, b) - multiply(b, a);
}

}  // namespace quiverhh
