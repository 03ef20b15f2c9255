#include "quiverhh/embedding.hpp"

#include "quiverhh/error.hpp"

namespace quiverhh {

namespace {

constexpr std::size_t unset = static_cast<std::size_t>(-1);

std::string dart_name(const Quiver& q, Dart d) {
  return q.arrow(d.arrow).name + (d.end == DartEnd::Tail ? "+" : "-");
}

VertexId dart_vertex(const Quiver& q, Dart d) {
  return d.end == DartEnd::Tail ? q.tail(d.arrow) : q.head(d.arrow);
}

}  // namespace

RotationSystem::RotationSystem(const Quiver& q, std::vector<std::vector<Dart>> order)
    : order_(std::move(order)) {
  if (order_.size() != q.vertex_count())
    throw Error(ErrorKind::InvalidRotation, "rotation lists " + std::to_string(order_.size()) +
                                                " vertices, quiver has " + std::to_string(q.vertex_count()));
  const std::size_t darts = 2 * q.arrow_count();
  vertex_of_.assign(darts, VertexId{unset});
  position_.assign(darts, unset);
  for (std::size_t v = 0; v < order_.size(); ++v) {
    for (std::size_t i = 0; i < order_[v].size(); ++i) {
      const Dart d = order_[v][i];
      if (d.arrow.index >= q.arrow_count())
        throw Error(ErrorKind::InvalidRotation, "unknown arrow in rotation");
      if (position_[d.index()] != unset)
        throw Error(ErrorKind::InvalidRotation, "dart " + dart_name(q, d) + " listed twice");
      if (dart_vertex(q, d).index != v)
        throw Error(ErrorKind::InvalidRotation, "dart " + dart_name(q, d) + " listed at vertex " +
                                                    q.vertex_name(VertexId{v}) + " which it does not touch");
      vertex_of_[d.index()] = VertexId{v};
      position_[d.index()] = i;
    }
  }
  for (std::size_t i = 0; i < darts; ++i)
    if (position_[i] == unset)
      throw Error(ErrorKind::InvalidRotation, "dart " + dart_name(q, Dart::from_index(i)) + " missing");
}

RotationSystem RotationSystem::arbitrary(const Quiver& q) {
  std::vector<std::vector<Dart>> order(q.vertex_count());
  for (std::size_t k = 0; k < q.arrow_count(); ++k) {
    const ArrowId a{k};
    order[q.tail(a).index].push_back(Dart{a, DartEnd::Tail});
    order[q.head(a).index].push_back(Dart{a, DartEnd::Head});
  }
  return RotationSystem(q, std::move(order));
}

Dart RotationSystem::successor(Dart d) const {
  const auto& ring = order_[vertex_of_.at(d.index()).index];
  return ring[(position_[d.index()] + 1) % ring.size()];
}

Dart RotationSystem::predecessor(Dart d) const {
  const auto& ring = order_[vertex_of_.at(d.index()).index];
  return ring[(position_[d.index()] + ring.size() - 1) % ring.size()];
}

bool FaceCycle::contains(ArrowId a) const {
  for (const auto& step : boundary)
    if (step.arrow == a) return true;
  return false;
}

std::vector<FaceCycle> trace_faces(const Quiver& q, const RotationSystem& rot, Handedness handedness) {
  if (!is_connected(q)) throw Error(ErrorKind::Disconnected, "quiver is not connected");
  if (rot.vertex_count() != q.vertex_count())
    throw Error(ErrorKind::InvalidRotation, "rotation system belongs to a different quiver");
  const std::size_t darts = 2 * q.arrow_count();
  if (darts == 0) return {FaceCycle{{}, {}}};

  std::vector<bool> used(darts, false);
  std::vector<FaceCycle> faces;
  for (std::size_t start = 0; start < darts; ++start) {
    if (used[start]) continue;
    FaceCycle face;
    face.net.assign(q.arrow_count(), 0);
    Dart d = Dart::from_index(start);
    while (!used[d.index()]) {
      used[d.index()] = true;
      // Leaving along d: from the tail end means walking the arrow forward.
      const bool forward = d.end == DartEnd::Tail;
      face.boundary.push_back(FaceStep{d.arrow, forward ? Direction::Forward : Direction::Backward});
      face.net[d.arrow.index] += forward ? 1 : -1;
      const Dart arrived = d.twin();
      d = handedness == Handedness::Predecessor ? rot.predecessor(arrived) : rot.successor(arrived);
    }
    if (d.index() != start)
      throw Error(ErrorKind::InternalMismatch, "face walk did not close at its starting dart");
    faces.push_back(std::move(face));
  }
  return faces;
}

long euler_characteristic(const Quiver& q, const std::vector<FaceCycle>& faces) {
  return static_cast<long>(q.vertex_count()) - static_cast<long>(q.arrow_count()) +
         static_cast<long>(faces.size());
}

std::size_t genus(const Quiver& q, const std::vector<FaceCycle>& faces) {
  const long chi = euler_characteristic(q, faces);
  if (chi > 2 || (2 - chi) % 2 != 0)
    throw Error(ErrorKind::InternalMismatch, "Euler characteristic " + std::to_string(chi) +
                                                 " is not that of a closed oriented surface");
  return static_cast<std::size_t>((2 - chi) / 2);
}

std::size_t genus(const Quiver& q, const RotationSystem& rot) { return genus(q, trace_faces(q, rot)); }

LinearOperator face_derivation(const PathBasisPtr& basis, const FaceCycle& face) {
  const Quiver& q = basis->quiver();
  if (face.net.size() != q.arrow_count() && !face.boundary.empty())
    throw Error(ErrorKind::DimensionMismatch, "face belongs to a different quiver");
  LinearOperator out(basis);
  for (std::size_t k = 0; k < face.net.size(); ++k) {
    if (face.net[k] == 0) continue;
    const ArrowId a{k};
    out += d_rs(basis, a, Path::arrow(q, a)) * Rational(face.net[k]);
  }
  return out;
}

}  // namespace quiverhh
