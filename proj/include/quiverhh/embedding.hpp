#pragma once

// Rotation systems, face tracing and face derivations. A rotation system
// fixes an embedding of the underlying graph in an oriented surface; the
// faces are read off combinatorially from it.

#include <cstddef>
#include <vector>

#include "quiverhh/derivations.hpp"
#include "quiverhh/quiver.hpp"

namespace quiverhh {

enum class DartEnd { Tail = 0, Head = 1 };

struct Dart {
  ArrowId arrow;
  DartEnd end = DartEnd::Tail;

  /// 2 * arrow + (0 for the tail end, 1 for the head end).
  std::size_t index() const { return 2 * arrow.index + static_cast<std::size_t>(end); }
  static Dart from_index(std::size_t i) { return Dart{ArrowId{i / 2}, static_cast<DartEnd>(i % 2)}; }
  Dart twin() const { return Dart{arrow, end == DartEnd::Tail ? DartEnd::Head : DartEnd::Tail}; }

  auto operator<=>(const Dart&) const = default;
};

/// Cyclic (counterclockwise) order of darts around each vertex.
class RotationSystem {
 public:
  /// Throws InvalidRotation unless every dart appears exactly once, at the
  /// vertex it touches.
  RotationSystem(const Quiver& q, std::vector<std::vector<Dart>> order);

  /// Darts in arrow order at every vertex. Valid, but usually not the
  /// embedding anybody means.
  static RotationSystem arbitrary(const Quiver& q);

  std::size_t vertex_count() const { return order_.size(); }
  const std::vector<Dart>& at(VertexId v) const { return order_.at(v.index); }
  const std::vector<std::vector<Dart>>& order() const { return order_; }

  Dart successor(Dart d) const;
  Dart predecessor(Dart d) const;

  bool operator==(const RotationSystem&) const = default;

 private:
  std::vector<std::vector<Dart>> order_;
  std::vector<VertexId> vertex_of_;     // by dart index
  std::vector<std::size_t> position_;  // by dart index
};

enum class Direction { Forward, Backward };

struct FaceStep {
  ArrowId arrow;
  Direction direction;
};

struct FaceCycle {
  std::vector<FaceStep> boundary;
  std::vector<int> net;  // per arrow: +1 per Forward step, -1 per Backward step

  int coefficient(ArrowId a) const { return net.at(a.index); }
  bool contains(ArrowId a) const;
};

/// Which neighbour of the reversed dart continues a face walk. The two
/// conventions trace the same faces with opposite orientation.
enum class Handedness { Predecessor, Successor };

/// Faces of the embedding, ordered by smallest dart index. A graph with no
/// arrows has a single face with empty boundary. Throws Disconnected.
std::vector<FaceCycle> trace_faces(const Quiver& q, const RotationSystem& rot,
                                   Handedness handedness = Handedness::Predecessor);

/// |V| - |E| + |F| for the traced faces.
long euler_characteristic(const Quiver& q, const std::vector<FaceCycle>& faces);

/// (2 - |V| + |E| - |F|) / 2. Throws InvalidRotation, Disconnected.
std::size_t genus(const Quiver& q, const RotationSystem& rot);
std::size_t genus(const Quiver& q, const std::vector<FaceCycle>& faces);

/// Σ_arrows net(f, p) D_{p,p}. Throws CyclicQuiver through the basis.
LinearOperator face_derivation(const PathBasisPtr& basis, const FaceCycle& face);

}  // namespace quiverhh
