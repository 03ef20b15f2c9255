#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "quiverhh/derivations.hpp"
#include "quiverhh/embedding.hpp"
#include "quiverhh/path_algebra.hpp"
#include "quiverhh/quiver.hpp"
#include "quiverhh/quiver_file.hpp"

namespace testing {

using namespace quiverhh;

inline std::string fixture_path(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name + ".quiver"; }

inline QuiverFile fixture(const std::string& name) { return load_quiver_file(fixture_path(name)); }

// Acyclic connected fixtures carrying a rotation system.
inline const std::vector<std::string>& embedded_fixtures() {
  static const std::vector<std::string> names{"a2", "a3", "a4", "a5", "k2", "k3", "triangle", "grid2x2", "k4_torus"};
  return names;
}

inline const std::vector<std::string>& all_fixtures() {
  static const std::vector<std::string> names{"a2",   "a3",      "a4",       "a5",   "k2",   "k3",
                                              "triangle", "grid2x2", "k4_torus", "loop", "point"};
  return names;
}

inline Path arrow_path(const Quiver& q, const std::string& name) { return Path::arrow(q, *q.find_arrow(name)); }

inline Path path_of(const Quiver& q, const std::vector<std::string>& names) {
  std::vector<ArrowId> arrows;
  for (const auto& n : names) arrows.push_back(*q.find_arrow(n));
  return Path::make(q, q.tail(arrows.front()), arrows);
}

inline Path vertex_path(const Quiver& q, const std::string& name) { return Path::trivial(*q.find_vertex(name)); }

/// Random connected acyclic quiver: a random spanning tree plus extra arrows,
/// every arrow pointing from the smaller to the larger vertex index.
inline QuiverPtr random_quiver(std::mt19937& rng, std::size_t max_vertices = 5, std::size_t max_extra = 3) {
  std::uniform_int_distribution<std::size_t> nv(2, max_vertices), ne(0, max_extra);
  const std::size_t n = nv(rng);
  std::vector<std::string> vertices;
  for (std::size_t v = 0; v < n; ++v) vertices.push_back("v" + std::to_string(v));
  std::vector<ArrowSpec> arrows;
  auto add = [&](std::size_t a, std::size_t b) {
    if (a > b) std::swap(a, b);
    arrows.push_back(ArrowSpec{"p" + std::to_string(arrows.size() + 1), vertices[a], vertices[b]});
  };
  for (std::size_t v = 1; v < n; ++v) add(std::uniform_int_distribution<std::size_t>(0, v - 1)(rng), v);
  const std::size_t extra = ne(rng);
  for (std::size_t i = 0; i < extra; ++i) {
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::size_t a = pick(rng), b = pick(rng);
    if (a == b) b = (a + 1) % n;
    add(a, b);
  }
  return Quiver::create("random", vertices, arrows);
}

inline RotationSystem random_rotation(std::mt19937& rng, const Quiver& q) {
  std::vector<std::vector<Dart>> order(q.vertex_count());
  for (std::size_t k = 0; k < q.arrow_count(); ++k) {
    const ArrowId a{k};
    order[q.tail(a).index].push_back(Dart{a, DartEnd::Tail});
    order[q.head(a).index].push_back(Dart{a, DartEnd::Head});
  }
  for (auto& ring : order) std::shuffle(ring.begin(), ring.end(), rng);
  return RotationSystem(q, std::move(order));
}

/// Leibniz rule evaluated through algebra elements, independent of the
/// library's table-driven check.
inline bool naive_leibniz(const LinearOperator& op) {
  const PathBasis& basis = op.basis();
  const QuiverPtr& q = basis.quiver_ptr();
  for (const Path& x : basis.paths())
    for (const Path& y : basis.paths()) {
      const auto xy = concat(x, y);
      const AlgebraElement lhs = xy ? op.apply(*xy) : AlgebraElement(q);
      const AlgebraElement rhs = op.apply(x) * AlgebraElement(q, y) + AlgebraElement(q, x) * op.apply(y);
      if (!(lhs == rhs)) return false;
    }
  return true;
}

/// D_{r,s} by the recursion D(e_v) = 0, D(r p) = s p + r D(p),
/// D(a p) = a D(p) for a != r.
inline AlgebraElement d_rs_recursive(const QuiverPtr& q, ArrowId r, const Path& s, const Path& p) {
  if (p.is_trivial()) return AlgebraElement(q);
  const ArrowId first = p.arrows().front();
  const Path head = Path::arrow(*q, first);
  const Path rest = Path::make(*q, q->head(first), {p.arrows().begin() + 1, p.arrows().end()});
  AlgebraElement out = AlgebraElement(q, head) * d_rs_recursive(q, r, s, rest);
  if (first == r) out += AlgebraElement(q, s) * AlgebraElement(q, rest);
  return out;
}

inline std::size_t rank_of(const std::vector<LinearOperator>& ops, std::size_t width) {
  RationalMatrix m(0, width);
  for (const auto& op : ops) m.append_row(op.flatten());
  return rank(m);
}

}  // namespace testing
