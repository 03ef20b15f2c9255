#include "quiverhh/quiver.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "quiverhh/error.hpp"

namespace quiverhh {

QuiverPtr Quiver::create(std::string name, std::vector<std::string> vertices,
                         const std::vector<ArrowSpec>& arrows) {
  if (vertices.empty()) throw Error(ErrorKind::InvalidQuiver, "quiver has no vertices");
  std::shared_ptr<Quiver> q(new Quiver());
  q->name_ = std::move(name);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (vertices[i].empty()) throw Error(ErrorKind::InvalidQuiver, "empty vertex identifier");
    if (!q->vertex_index_.emplace(vertices[i], i).second)
      throw Error(ErrorKind::InvalidQuiver, "duplicate vertex '" + vertices[i] + "'");
  }
  q->vertices_ = std::move(vertices);
  for (std::size_t k = 0; k < arrows.size(); ++k) {
    const auto& spec = arrows[k];
    if (spec.name.empty()) throw Error(ErrorKind::InvalidQuiver, "empty arrow identifier");
    if (q->vertex_index_.count(spec.name) != 0)
      throw Error(ErrorKind::InvalidQuiver, "arrow '" + spec.name + "' clashes with a vertex name");
    if (!q->arrow_index_.emplace(spec.name, k).second)
      throw Error(ErrorKind::InvalidQuiver, "duplicate arrow '" + spec.name + "'");
    auto tail = q->find_vertex(spec.tail);
    auto head = q->find_vertex(spec.head);
    if (!tail)
      throw Error(ErrorKind::InvalidQuiver,
                  "arrow '" + spec.name + "' references unknown vertex '" + spec.tail + "'");
    if (!head)
      throw Error(ErrorKind::InvalidQuiver,
                  "arrow '" + spec.name + "' references unknown vertex '" + spec.head + "'");
    q->arrows_.push_back(Arrow{spec.name, *tail, *head});
  }
  return q;
}

std::optional<VertexId> Quiver::find_vertex(std::string_view name) const {
  auto it = vertex_index_.find(name);
  if (it == vertex_index_.end()) return std::nullopt;
  return VertexId{it->second};
}

std::optional<ArrowId> Quiver::find_arrow(std::string_view name) const {
  auto it = arrow_index_.find(name);
  if (it == arrow_index_.end()) return std::nullopt;
  return ArrowId{it->second};
}

std::vector<ArrowId> Quiver::outgoing(VertexId v) const {
  std::vector<ArrowId> out;
  for (std::size_t k = 0; k < arrows_.size(); ++k)
    if (arrows_[k].tail == v) out.push_back(ArrowId{k});
  return out;
}

std::vector<ArrowId> Quiver::incoming(VertexId v) const {
  std::vector<ArrowId> in;
  for (std::size_t k = 0; k < arrows_.size(); ++k)
    if (arrows_[k].head == v) in.push_back(ArrowId{k});
  return in;
}

// ---------------------------------------------------------------------------

Path Path::trivial(VertexId v) {
  Path p;
  p.tail_ = v;
  p.head_ = v;
  return p;
}

Path Path::make(const Quiver& q, VertexId base, std::vector<ArrowId> arrows) {
  if (base.index >= q.vertex_count()) throw Error(ErrorKind::InvalidQuiver, "vertex out of range");
  VertexId at = base;
  for (ArrowId a : arrows) {
    if (a.index >= q.arrow_count()) throw Error(ErrorKind::InvalidQuiver, "arrow out of range");
    if (q.tail(a) != at)
      throw Error(ErrorKind::InvalidQuiver, "arrow '" + q.arrow(a).name + "' does not compose");
    at = q.head(a);
  }
  Path p;
  p.tail_ = base;
  p.head_ = at;
  p.arrows_ = std::move(arrows);
  return p;
}

Path Path::arrow(const Quiver& q, ArrowId a) { return make(q, q.tail(a), {a}); }

std::strong_ordering Path::operator<=>(const Path& other) const {
  if (auto c = arrows_.size() <=> other.arrows_.size(); c != 0) return c;
  if (auto c = tail_ <=> other.tail_; c != 0) return c;
  return arrows_ <=> other.arrows_;
}

bool Path::operator==(const Path& other) const {
  return tail_ == other.tail_ && arrows_ == other.arrows_;
}

std::optional<Path> concat(const Path& p, const Path& r) {
  if (p.head() != r.tail()) return std::nullopt;
  Path out = p;
  out.head_ = r.head();
  out.arrows_.insert(out.arrows_.end(), r.arrows_.begin(), r.arrows_.end());
  return out;
}

bool is_parallel(const Path& p, const Path& r) {
  return p.tail() == r.tail() && p.head() == r.head();
}

std::optional<Path> strip_prefix(const Quiver& q, const Path& path, const Path& prefix) {
  if (prefix.tail() != path.tail() || prefix.length() > path.length()) return std::nullopt;
  if (!std::equal(prefix.arrows().begin(), prefix.arrows().end(), path.arrows().begin()))
    return std::nullopt;
  std::vector<ArrowId> rest(path.arrows().begin() + static_cast<std::ptrdiff_t>(prefix.length()),
                            path.arrows().end());
  return Path::make(q, prefix.head(), std::move(rest));
}

std::optional<Path> strip_suffix(const Quiver& q, const Path& path, const Path& suffix) {
  if (suffix.head() != path.head() || suffix.length() > path.length()) return std::nullopt;
  auto split = path.arrows().end() - static_cast<std::ptrdiff_t>(suffix.length());
  if (!std::equal(suffix.arrows().begin(), suffix.arrows().end(), split)) return std::nullopt;
  std::vector<ArrowId> rest(path.arrows().begin(), split);
  return Path::make(q, path.tail(), std::move(rest));
}

std::string label(const Quiver& q, const Path& p) {
  if (p.is_trivial()) return "e_" + q.vertex_name(p.tail());
  std::string out;
  for (ArrowId a : p.arrows()) out += q.arrow(a).name;
  return out;
}

bool is_acyclic(const Quiver& q) {
  // Kahn's algorithm; loops count as cycles since they never reach indegree 0.
  std::vector<std::size_t> indegree(q.vertex_count(), 0);
  for (std::size_t k = 0; k < q.arrow_count(); ++k) ++indegree[q.head(ArrowId{k}).index];
  std::vector<std::size_t> ready;
  for (std::size_t v = 0; v < q.vertex_count(); ++v)
    if (indegree[v] == 0) ready.push_back(v);
  std::size_t removed = 0;
  while (!ready.empty()) {
    std::size_t v = ready.back();
    ready.pop_back();
    ++removed;
    for (ArrowId a : q.outgoing(VertexId{v}))
      if (--indegree[q.head(a).index] == 0) ready.push_back(q.head(a).index);
  }
  return removed == q.vertex_count();
}

bool is_connected(const Quiver& q) {
  const std::size_t n = q.vertex_count();
  if (n == 0) return false;
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t k = 0; k < q.arrow_count(); ++k) {
    const auto& a = q.arrow(ArrowId{k});
    adj[a.tail.index].push_back(a.head.index);
    adj[a.head.index].push_back(a.tail.index);
  }
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t w : adj[v])
      if (!seen[w]) {
        seen[w] = true;
        ++count;
        stack.push_back(w);
      }
  }
  return count == n;
}

namespace {

void require_acyclic(const Quiver& q) {
  if (!is_acyclic(q))
    throw Error(ErrorKind::CyclicQuiver, "quiver '" + q.name() + "' has an oriented cycle");
}

}  // namespace

std::vector<Path> enumerate_paths(const Quiver& q) {
  require_acyclic(q);
  std::vector<Path> all;
  std::vector<Path> frontier;
  for (std::size_t v = 0; v < q.vertex_count(); ++v) frontier.push_back(Path::trivial(VertexId{v}));
  while (!frontier.empty()) {
    std::vector<Path> next;
    for (const Path& p : frontier)
      for (ArrowId a : q.outgoing(p.head())) next.push_back(*concat(p, Path::arrow(q, a)));
    all.insert(all.end(), frontier.begin(), frontier.end());
    frontier = std::move(next);
  }
  std::sort(all.begin(), all.end());
  return all;
}

std::vector<Path> acyclic_paths(const Quiver& q) {
  std::vector<Path> out;
  for (Path& p : enumerate_paths(q))
    if (p.head() != p.tail()) out.push_back(std::move(p));
  return out;
}

std::vector<Path> parallel_paths(const Quiver& q, const Path& p) {
  std::vector<Path> out;
  for (Path& r : enumerate_paths(q))
    if (is_parallel(p, r)) out.push_back(std::move(r));
  return out;
}

std::vector<AlmostCycle> almost_oriented_cycles(const Quiver& q) {
  const auto paths = enumerate_paths(q);
  std::vector<AlmostCycle> out;
  for (std::size_t k = 0; k < q.arrow_count(); ++k) {
    const Path arrow = Path::arrow(q, ArrowId{k});
    for (const Path& r : paths)
      if (is_parallel(arrow, r) && r != arrow) out.push_back(AlmostCycle{ArrowId{k}, r});
  }
  return out;
}

std::size_t longest_path_length(const Quiver& q) {
  const auto paths = enumerate_paths(q);
  return paths.back().length();
}

PathBasisPtr PathBasis::create(QuiverPtr quiver) {
  std::shared_ptr<PathBasis> basis(new PathBasis());
  basis->paths_ = enumerate_paths(*quiver);
  basis->quiver_ = std::move(quiver);
  for (std::size_t i = 0; i < basis->paths_.size(); ++i) basis->index_.emplace(basis->paths_[i], i);
  return basis;
}

std::size_t PathBasis::index_of(const Path& p) const {
  auto it = index_.find(p);
  if (it == index_.end()) throw Error(ErrorKind::QuiverMismatch, "path is not in this basis");
  return it->second;
}

std::optional<std::size_t> PathBasis::find(const Path& p) const {
  auto it = index_.find(p);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

}  // namespace quiverhh
