#pragma once

// Finite quivers, paths and the enumeration helpers the rest of the library
// builds on. Identifiers are strings only at the boundary; everything inside
// works with dense indices.

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace quiverhh {

struct VertexId {
  std::size_t index = 0;
  auto operator<=>(const VertexId&) const = default;
};

struct ArrowId {
  std::size_t index = 0;
  auto operator<=>(const ArrowId&) const = default;
};

struct Arrow {
  std::string name;
  VertexId tail;
  VertexId head;

  bool operator==(const Arrow&) const = default;
};

struct ArrowSpec {
  std::string name;
  std::string tail;
  std::string head;
};

class Quiver;
using QuiverPtr = std::shared_ptr<const Quiver>;

class Quiver {
 public:
  /// Validates uniqueness of names and arrow endpoints; throws InvalidQuiver.
  static QuiverPtr create(std::string name, std::vector<std::string> vertices,
                          const std::vector<ArrowSpec>& arrows);

  const std::string& name() const { return name_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t arrow_count() const { return arrows_.size(); }

  const std::string& vertex_name(VertexId v) const { return vertices_.at(v.index); }
  const Arrow& arrow(ArrowId a) const { return arrows_.at(a.index); }
  VertexId tail(ArrowId a) const { return arrow(a).tail; }
  VertexId head(ArrowId a) const { return arrow(a).head; }

  std::optional<VertexId> find_vertex(std::string_view name) const;
  std::optional<ArrowId> find_arrow(std::string_view name) const;

  std::vector<ArrowId> outgoing(VertexId v) const;
  std::vector<ArrowId> incoming(VertexId v) const;

  /// Same name, vertices and arrows in the same order.
  bool operator==(const Quiver& other) const {
    return name_ == other.name_ && vertices_ == other.vertices_ && arrows_ == other.arrows_;
  }

 private:
  Quiver() = default;

  std::string name_;
  std::vector<std::string> vertices_;
  std::vector<Arrow> arrows_;
  std::map<std::string, std::size_t, std::less<>> vertex_index_;
  std::map<std::string, std::size_t, std::less<>> arrow_index_;
};

/// A walk in the quiver. The trivial path at v has no arrows and tail == head == v.
class Path {
 public:
  /// Trivial path e_v.
  static Path trivial(VertexId v);
  /// Throws InvalidQuiver if the arrows are not composable or do not start at base.
  static Path make(const Quiver& q, VertexId base, std::vector<ArrowId> arrows);
  static Path arrow(const Quiver& q, ArrowId a);

  VertexId tail() const { return tail_; }
  VertexId head() const { return head_; }
  std::size_t length() const { return arrows_.size(); }
  bool is_trivial() const { return arrows_.empty(); }
  const std::vector<ArrowId>& arrows() const { return arrows_; }

  /// Canonical order: length, then tail index, then arrow indices.
  std::strong_ordering operator<=>(const Path& other) const;
  bool operator==(const Path& other) const;

 private:
  friend std::optional<Path> concat(const Path& p, const Path& r);

  VertexId tail_;
  VertexId head_;
  std::vector<ArrowId> arrows_;
};

/// Concatenation, or nullopt (the algebra's zero) when head(p) != tail(r).
std::optional<Path> concat(const Path& p, const Path& r);

bool is_parallel(const Path& p, const Path& r);

/// If path == prefix * rest, returns rest.
std::optional<Path> strip_prefix(const Quiver& q, const Path& path, const Path& prefix);
/// If path == rest * suffix, returns rest.
std::optional<Path> strip_suffix(const Quiver& q, const Path& path, const Path& suffix);

/// Arrow names joined without separator; "e_<vertex>" for a trivial path.
std::string label(const Quiver& q, const Path& p);

bool is_acyclic(const Quiver& q);
bool is_connected(const Quiver& q);

/// All paths of an acyclic quiver in canonical order. Throws CyclicQuiver.
std::vector<Path> enumerate_paths(const Quiver& q);
/// Paths with head != tail. Throws CyclicQuiver.
std::vector<Path> acyclic_paths(const Quiver& q);
/// Paths with the same tail and head as p, p included. Throws CyclicQuiver.
std::vector<Path> parallel_paths(const Quiver& q, const Path& p);

struct AlmostCycle {
  ArrowId arrow;
  Path path;
};

/// Pairs (arrow, r) with r parallel to the arrow and distinct from it.
std::vector<AlmostCycle> almost_oriented_cycles(const Quiver& q);

/// Number of arrows on a longest path; throws CyclicQuiver.
std::size_t longest_path_length(const Quiver& q);

/// Enumerated path basis of an acyclic quiver, shared by every matrix-level
/// object so column indices agree across the library.
class PathBasis;
using PathBasisPtr = std::shared_ptr<const PathBasis>;

class PathBasis {
 public:
  static PathBasisPtr create(QuiverPtr quiver);

  const Quiver& quiver() const { return *quiver_; }
  const QuiverPtr& quiver_ptr() const { return quiver_; }
  std::size_t size() const { return paths_.size(); }
  const std::vector<Path>& paths() const { return paths_; }
  const Path& path(std::size_t i) const { return paths_.at(i); }
  std::size_t index_of(const Path& p) const;
  std::optional<std::size_t> find(const Path& p) const;

 private:
  PathBasis() = default;

  QuiverPtr quiver_;
  std::vector<Path> paths_;
  std::map<Path, std::size_t> index_;
};

}  // namespace quiverhh
