#pragma once

// Relation matrices of an embedded acyclic quiver, the rank and Euler
// checks built on them, and HH¹ of the path algebra: dimension, a basis of
// coset representatives, and the bracket table modulo inner derivations.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "quiverhh/derivations.hpp"
#include "quiverhh/embedding.hpp"
#include "quiverhh/linalg.hpp"

namespace quiverhh {

/// Entry (i,k) is +1 if v_i is the tail of arrow k, -1 if it is the head.
/// Throws CyclicQuiver, Disconnected.
RationalMatrix vertex_arrow_matrix(const Quiver& q);
/// Row j is the net sign vector of face j.
RationalMatrix cycle_arrow_matrix(const Quiver& q, const std::vector<FaceCycle>& faces);
/// vertex_arrow_matrix stacked over cycle_arrow_matrix.
RationalMatrix connection_matrix(const Quiver& q, const std::vector<FaceCycle>& faces);
/// e_jj counts the arrows of face j that also bound another face; e_jr
/// (j != r) is minus the number of arrows shared by faces j and r.
RationalMatrix boundary_matrix(const Quiver& q, const std::vector<FaceCycle>& faces);

struct CombinatorialReport {
  std::size_t vertices = 0;
  std::size_t arrows = 0;
  std::size_t faces = 0;
  std::size_t genus = 0;

  std::size_t dim_dv = 0;
  std::size_t dim_de = 0;
  std::size_t dim_df = 0;
  std::size_t dim_dv_plus_df = 0;
  std::size_t quotient_dim = 0;  // dim D_E / (D_V + D_F)

  RationalMatrix cva, cca, cgamma, bgamma;
  std::size_t rank_cva = 0, rank_cca = 0, rank_cgamma = 0, rank_bgamma = 0;

  bool cva_rank_ok = false;     // rank C_va = |V| - 1
  bool cca_rank_ok = false;     // rank C_ca = |F| - 1
  bool bgamma_rank_ok = false;  // rank B_Γ = |F| - 1
  bool disjoint = false;        // D_V ∩ D_F = 0
  bool euler_holds = false;     // |E| - dim(D_V + D_F) = 2g
  bool face_sum_zero = false;   // Σ_f D_f = 0
  bool vertex_sum_zero = false; // Σ_v D_v = 0
  bool direct_sum = false;      // g = 0 and D_E = D_V ⊕ D_F

  bool all_hold() const;
  /// Names of the failed verdicts.
  std::vector<std::string> failures() const;
};

/// Throws CyclicQuiver, Disconnected, InvalidRotation.
CombinatorialReport combinatorial_report(const Quiver& q, const RotationSystem& rot);

/// 1 - |V| + Σ_α #paths t(α) → h(α). Throws CyclicQuiver, Disconnected.
std::size_t path_count_dimension(const Quiver& q);

/// |F| + |P_AL| - 1 + 2g. Throws CyclicQuiver, Disconnected, InvalidRotation.
std::size_t hh1_dimension(const Quiver& q, const RotationSystem& rot);

enum class RepKind { AlmostCycle, Face, Extra };

struct HH1Rep {
  RepKind kind;
  std::string label;         // AL(r,s), Face(i) or Extra(k)
  std::optional<ArrowId> arrow;
  std::optional<Path> path;
  std::optional<std::size_t> face;
  LinearOperator op;
  RationalVector coords;     // in the canonical derivation basis
};

struct HH1Basis {
  std::size_t dimension = 0;
  std::size_t genus = 0;
  std::size_t dropped_face = 0;
  std::vector<FaceCycle> faces;
  std::vector<HH1Rep> reps;
  DerivationBasis derivations;
  RationalMatrix inner;        // row basis of the inner subspace, derivation coordinates
  std::vector<RationalVector> extra_edge_coords;  // D_E coordinates of the Extra reps
};

/// Representatives are checked to be independent modulo inner derivations
/// and to number |F| + |P_AL| - 1 + 2g; throws InternalRankMismatch
/// otherwise. `dropped_face` defaults to face 0; out of range throws
/// InvalidRotation.
HH1Basis hh1_basis(const PathBasisPtr& basis, const RotationSystem& rot,
                   std::optional<std::size_t> dropped_face = std::nullopt);

/// Modulo-inner reduction against a fixed HH¹ basis.
class CosetReducer {
 public:
  explicit CosetReducer(const HH1Basis& basis);

  /// Coefficients on the representatives of the class of `coords` (given
  /// in derivation-basis coordinates). Throws InternalMismatch if the
  /// vector is not a derivation.
  RationalVector reduce(const RationalVector& coords) const;

 private:
  SpanSolver solver_;
  std::size_t inner_rows_;
};

/// -a_r + Σ_{x in s} a_x with a the net coefficients of the face; no check.
Rational eigenvalue_formula(const FaceCycle& face, ArrowId r, const Path& s);

/// The eigenvalue λ with [D_f, D_{r,s}] ≡ λ D_{r,s} modulo inner
/// derivations, verified on matrices. Throws NotAlmostCycle, and
/// InternalMismatch when the bracket is not λ D_{r,s} mod Inn.
Rational adjoint_eigenvalue(const PathBasisPtr& basis, const FaceCycle& face, ArrowId r, const Path& s);

struct Eigenpair {
  std::size_t almost_cycle;  // index into reps
  std::size_t face;          // index into reps
  Rational eigenvalue;       // [face, AL] ≡ eigenvalue · AL
};

struct HH1Structure {
  /// table[i][j] = coefficients of [rep_i, rep_j] on the representatives.
  std::vector<std::vector<RationalVector>> table;
  std::vector<Eigenpair> eigenpairs;
  bool planar = false;
  bool faces_commute = false;      // Face × Face ≡ 0
  bool faces_act_diagonally = false;  // AL × Face ≡ λ AL with λ from the formula
  bool almost_cycles_closed = false;  // AL × AL ⊂ span(AL)
};

/// Full bracket table. For a planar embedding the face relations are
/// enforced and throw InternalMismatch when violated; the closure of the
/// almost-cycle span is reported only.
HH1Structure hh1_structure(const HH1Basis& basis);

}  // namespace quiverhh
