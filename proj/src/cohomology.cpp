#include "quiverhh/cohomology.hpp"

#include <deque>

#include "quiverhh/error.hpp"

namespace quiverhh {

namespace {

void require_connected_acyclic(const Quiver& q) {
  if (!is_acyclic(q)) throw Error(ErrorKind::CyclicQuiver, "quiver " + q.name() + " has an oriented cycle");
  if (!is_connected(q)) throw Error(ErrorKind::Disconnected, "quiver " + q.name() + " is not connected");
}

bool columns_sum_to_zero(const RationalMatrix& m) {
  for (std::size_t c = 0; c < m.cols(); ++c) {
    Rational sum = 0;
    for (std::size_t r = 0; r < m.rows(); ++r) sum += m(r, c);
    if (!is_zero(sum)) return false;
  }
  return true;
}

RationalVector unit(std::size_t n, std::size_t i) {
  RationalVector v(n);
  v[i] = 1;
  return v;
}

// Derivation-basis coordinates of Σ_k w_k D_{p_k,p_k}.
RationalVector edge_coords(const DerivationBasis& derivations, const Quiver& q,
                           const RationalVector& weights) {
  RationalVector out(derivations.size());
  for (std::size_t k = 0; k < weights.size(); ++k) {
    if (is_zero(weights[k])) continue;
    const ArrowId a{k};
    out[*derivations.find_edge_pair(a, Path::arrow(q, a))] = weights[k];
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Relation matrices

RationalMatrix vertex_arrow_matrix(const Quiver& q) {
  require_connected_acyclic(q);
  RationalMatrix m(q.vertex_count(), q.arrow_count());
  for (std::size_t k = 0; k < q.arrow_count(); ++k) {
    const ArrowId a{k};
    m(q.tail(a).index, k) += 1;
    m(q.head(a).index, k) -= 1;
  }
  return m;
}

RationalMatrix cycle_arrow_matrix(const Quiver& q, const std::vector<FaceCycle>& faces) {
  RationalMatrix m(faces.size(), q.arrow_count());
  for (std::size_t j = 0; j < faces.size(); ++j)
    for (std::size_t k = 0; k < faces[j].net.size(); ++k) m(j, k) = faces[j].net[k];
  return m;
}

RationalMatrix connection_matrix(const Quiver& q, const std::vector<FaceCycle>& faces) {
  return vstack(vertex_arrow_matrix(q), cycle_arrow_matrix(q, faces));
}

RationalMatrix boundary_matrix(const Quiver& q, const std::vector<FaceCycle>& faces) {
  std::vector<std::vector<std::size_t>> occurrences(q.arrow_count());
  for (std::size_t j = 0; j < faces.size(); ++j)
    for (const auto& step : faces[j].boundary) occurrences[step.arrow.index].push_back(j);
  RationalMatrix m(faces.size(), faces.size());
  for (const auto& occ : occurrences) {
    if (occ.size() != 2)
      throw Error(ErrorKind::InternalMismatch, "arrow does not bound exactly two face sides");
    const std::size_t j = occ[0], r = occ[1];
    if (j == r) continue;
    m(j, j) += 1;
    m(r, r) += 1;
    m(j, r) -= 1;
    m(r, j) -= 1;
  }
  return m;
}

// ---------------------------------------------------------------------------
// Report

bool CombinatorialReport::all_hold() const { return failures().empty(); }

std::vector<std::string> CombinatorialReport::failures() const {
  std::vector<std::string> out;
  if (!cva_rank_ok) out.push_back("rank(Cva) != |V|-1");
  if (!cca_rank_ok) out.push_back("rank(Cca) != |F|-1");
  if (!bgamma_rank_ok) out.push_back("rank(Bgamma) != |F|-1");
  if (!disjoint) out.push_back("D_V and D_F intersect");
  if (!euler_holds) out.push_back("|E| - dim(D_V+D_F) != 2g");
  if (!face_sum_zero) out.push_back("face derivations do not sum to zero");
  if (!vertex_sum_zero) out.push_back("vertex derivations do not sum to zero");
  if (genus == 0 && !direct_sum) out.push_back("D_E != D_V + D_F on a sphere");
  return out;
}

CombinatorialReport combinatorial_report(const Quiver& q, const RotationSystem& rot) {
  require_connected_acyclic(q);
  const auto faces = trace_faces(q, rot);
  CombinatorialReport r;
  r.vertices = q.vertex_count();
  r.arrows = q.arrow_count();
  r.faces = faces.size();
  r.genus = genus(q, faces);

  r.cva = vertex_arrow_matrix(q);
  r.cca = cycle_arrow_matrix(q, faces);
  r.cgamma = vstack(r.cva, r.cca);
  r.bgamma = boundary_matrix(q, faces);
  r.rank_cva = rank(r.cva);
  r.rank_cca = rank(r.cca);
  r.rank_cgamma = rank(r.cgamma);
  r.rank_bgamma = rank(r.bgamma);

  r.dim_dv = r.rank_cva;
  r.dim_de = r.arrows;
  r.dim_df = r.rank_cca;
  r.dim_dv_plus_df = r.rank_cgamma;
  r.quotient_dim = r.dim_de - r.dim_dv_plus_df;

  r.cva_rank_ok = r.rank_cva + 1 == r.vertices;
  r.cca_rank_ok = r.rank_cca + 1 == r.faces;
  r.bgamma_rank_ok = r.rank_bgamma + 1 == r.faces;
  r.disjoint = subspace_intersection(r.cva, r.cca).empty();
  r.euler_holds = r.quotient_dim == 2 * r.genus;
  r.face_sum_zero = columns_sum_to_zero(r.cca);
  r.vertex_sum_zero = columns_sum_to_zero(r.cva);
  r.direct_sum = r.genus == 0 && r.quotient_dim == 0 && r.disjoint;
  return r;
}

// ---------------------------------------------------------------------------
// Dimensions

std::size_t path_count_dimension(const Quiver& q) {
  require_connected_acyclic(q);
  const std::size_t n = q.vertex_count();
  // Topological order, then path counts from every vertex.
  std::vector<std::size_t> indegree(n, 0);
  for (std::size_t k = 0; k < q.arrow_count(); ++k) ++indegree[q.head(ArrowId{k}).index];
  std::deque<std::size_t> ready;
  for (std::size_t v = 0; v < n; ++v)
    if (indegree[v] == 0) ready.push_back(v);
  std::vector<std::size_t> order;
  while (!ready.empty()) {
    const std::size_t v = ready.front();
    ready.pop_front();
    order.push_back(v);
    for (ArrowId a : q.outgoing(VertexId{v}))
      if (--indegree[q.head(a).index] == 0) ready.push_back(q.head(a).index);
  }
  std::vector<std::vector<std::size_t>> count(n, std::vector<std::size_t>(n, 0));
  for (std::size_t u = 0; u < n; ++u) {
    count[u][u] = 1;
    for (std::size_t v : order)
      for (ArrowId a : q.outgoing(VertexId{v})) count[u][q.head(a).index] += count[u][v];
  }
  std::size_t total = 0;
  for (std::size_t k = 0; k < q.arrow_count(); ++k) {
    const ArrowId a{k};
    total += count[q.tail(a).index][q.head(a).index];
  }
  return 1 + total - n;
}

std::size_t hh1_dimension(const Quiver& q, const RotationSystem& rot) {
  require_connected_acyclic(q);
  const auto faces = trace_faces(q, rot);
  return faces.size() + almost_oriented_cycles(q).size() - 1 + 2 * genus(q, faces);
}

// ---------------------------------------------------------------------------
// Basis

HH1Basis hh1_basis(const PathBasisPtr& basis, const RotationSystem& rot,
                   std::optional<std::size_t> dropped_face) {
  const Quiver& q = basis->quiver();
  require_connected_acyclic(q);
  HH1Basis out;
  out.faces = trace_faces(q, rot);
  out.genus = genus(q, out.faces);
  out.dropped_face = dropped_face.value_or(0);
  if (out.dropped_face >= out.faces.size())
    throw Error(ErrorKind::InvalidRotation, "outer face " + std::to_string(out.dropped_face) +
                                                " out of range; embedding has " +
                                                std::to_string(out.faces.size()) + " faces");
  out.derivations = DerivationBasis::canonical(basis);
  out.inner = row_basis(inner_subspace(out.derivations));
  const DerivationBasis& der = out.derivations;

  for (const auto& [r, s] : almost_oriented_cycles(q)) {
    const std::size_t slot = *der.find_edge_pair(r, s);
    out.reps.push_back(HH1Rep{RepKind::AlmostCycle, "AL(" + q.arrow(r).name + "," + label(q, s) + ")", r, s,
                              std::nullopt, der[slot].op, unit(der.size(), slot)});
  }
  for (std::size_t j = 0; j < out.faces.size(); ++j) {
    if (j == out.dropped_face) continue;
    RationalVector weights(q.arrow_count());
    for (std::size_t k = 0; k < q.arrow_count(); ++k) weights[k] = out.faces[j].net[k];
    out.reps.push_back(HH1Rep{RepKind::Face, "Face(" + std::to_string(j) + ")", std::nullopt, std::nullopt, j,
                              face_derivation(basis, out.faces[j]), edge_coords(der, q, weights)});
  }
  out.extra_edge_coords = quotient_complement(q.arrow_count(), connection_matrix(q, out.faces), {});
  if (out.extra_edge_coords.size() != 2 * out.genus)
    throw Error(ErrorKind::InternalRankMismatch,
                "edge quotient has dimension " + std::to_string(out.extra_edge_coords.size()) +
                    ", expected 2g = " + std::to_string(2 * out.genus));
  for (std::size_t k = 0; k < out.extra_edge_coords.size(); ++k) {
    RationalVector coords = edge_coords(der, q, out.extra_edge_coords[k]);
    LinearOperator op = der.combine(coords);
    out.reps.push_back(HH1Rep{RepKind::Extra, "Extra(" + std::to_string(k + 1) + ")", std::nullopt,
                              std::nullopt, std::nullopt, std::move(op), std::move(coords)});
  }

  SpanSolver solver(out.inner);
  std::size_t independent = 0;
  for (const auto& rep : out.reps) independent += solver.add_row(rep.coords) ? 1 : 0;
  const std::size_t expected = out.faces.size() + almost_oriented_cycles(q).size() - 1 + 2 * out.genus;
  if (independent != out.reps.size() || out.reps.size() != expected)
    throw Error(ErrorKind::InternalRankMismatch,
                std::to_string(independent) + " of " + std::to_string(out.reps.size()) +
                    " representatives independent modulo inner derivations, expected " +
                    std::to_string(expected));
  out.dimension = expected;
  return out;
}

CosetReducer::CosetReducer(const HH1Basis& basis)
    : solver_(basis.inner), inner_rows_(basis.inner.rows()) {
  for (const auto& rep : basis.reps) solver_.add_row(rep.coords);
}

RationalVector CosetReducer::reduce(const RationalVector& coords) const {
  auto combo = solver_.express(coords);
  if (!combo) throw Error(ErrorKind::InternalMismatch, "vector is not a derivation modulo the HH1 basis");
  return RationalVector(combo->begin() + static_cast<std::ptrdiff_t>(inner_rows_), combo->end());
}

// ---------------------------------------------------------------------------
// Structure

Rational eigenvalue_formula(const FaceCycle& face, ArrowId r, const Path& s) {
  Rational lambda = -face.coefficient(r);
  for (ArrowId x : s.arrows()) lambda += face.coefficient(x);
  return lambda;
}

Rational adjoint_eigenvalue(const PathBasisPtr& basis, const FaceCycle& face, ArrowId r, const Path& s) {
  const Quiver& q = basis->quiver();
  const Path arrow = Path::arrow(q, r);
  if (!is_parallel(arrow, s) || s == arrow)
    throw Error(ErrorKind::NotAlmostCycle,
                "(" + q.arrow(r).name + "," + label(q, s) + ") is not an almost oriented cycle");
  const Rational lambda = eigenvalue_formula(face, r, s);
  const LinearOperator drs = d_rs(basis, r, s);
  const LinearOperator residue = bracket(face_derivation(basis, face), drs) - drs * lambda;
  const DerivationBasis der = DerivationBasis::canonical(basis);
  const auto coords = der.try_coordinates(residue);
  const SpanSolver inner(row_basis(inner_subspace(der)));
  if (!coords || !inner.contains(*coords))
    throw Error(ErrorKind::InternalMismatch, "bracket with the face derivation is not " + lambda.get_str() +
                                                 " times D_{" + q.arrow(r).name + "," + label(q, s) +
                                                 "} modulo inner derivations");
  return lambda;
}

HH1Structure hh1_structure(const HH1Basis& basis) {
  const CosetReducer reducer(basis);
  const std::size_t m = basis.reps.size();
  HH1Structure out;
  out.planar = basis.genus == 0;
  out.table.assign(m, std::vector<RationalVector>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      out.table[i][j] = reducer.reduce(
          basis.derivations.coordinates(bracket(basis.reps[i].op, basis.reps[j].op)));

  out.faces_commute = true;
  out.faces_act_diagonally = true;
  out.almost_cycles_closed = true;
  for (std::size_t i = 0; i < m; ++i) {
    const HH1Rep& a = basis.reps[i];
    for (std::size_t j = 0; j < m; ++j) {
      const HH1Rep& b = basis.reps[j];
      const RationalVector& entry = out.table[i][j];
      if (a.kind == RepKind::Face && b.kind == RepKind::Face && !is_zero(entry)) out.faces_commute = false;
      if (a.kind == RepKind::AlmostCycle && b.kind == RepKind::AlmostCycle)
        for (std::size_t k = 0; k < m; ++k)
          if (basis.reps[k].kind != RepKind::AlmostCycle && !is_zero(entry[k])) out.almost_cycles_closed = false;
      if (a.kind == RepKind::Face && b.kind == RepKind::AlmostCycle) {
        const Rational lambda = eigenvalue_formula(basis.faces[*a.face], *b.arrow, *b.path);
        RationalVector expected(m);
        expected[j] = lambda;
        if (entry != expected) out.faces_act_diagonally = false;
        out.eigenpairs.push_back(Eigenpair{j, i, lambda});
      }
    }
  }
  if (out.planar && !(out.faces_commute && out.faces_act_diagonally))
    throw Error(ErrorKind::InternalMismatch, "face derivations do not act diagonally on a planar embedding");
  return out;
}

}  // namespace quiverhh
