#pragma once

// Linear operators on the path algebra of an acyclic quiver, the Leibniz
// test, and the two families that span all derivations: inner derivations
// D_s and the arrow-replacement operators D_{r,s}.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "quiverhh/linalg.hpp"
#include "quiverhh/path_algebra.hpp"
#include "quiverhh/quiver.hpp"

namespace quiverhh {

/// Square matrix over the canonical path basis; column j is the image of
/// basis path j.
class LinearOperator {
 public:
  explicit LinearOperator(PathBasisPtr basis);
  LinearOperator(PathBasisPtr basis, RationalMatrix matrix);

  static LinearOperator identity(PathBasisPtr basis);
  /// Builds the operator column by column from its action on basis paths.
  static LinearOperator from_action(PathBasisPtr basis,
                                    const std::function<AlgebraElement(const Path&)>& action);

  const PathBasis& basis() const { return *basis_; }
  const PathBasisPtr& basis_ptr() const { return basis_; }
  const RationalMatrix& matrix() const { return matrix_; }
  std::size_t dimension() const { return matrix_.rows(); }

  /// Image of basis path j as an algebra element.
  AlgebraElement image(std::size_t j) const;
  AlgebraElement apply(const AlgebraElement& a) const;
  AlgebraElement apply(const Path& p) const;

  bool is_zero() const { return matrix_.is_zero(); }

  /// Entries flattened row-major; used as coordinates in operator space.
  RationalVector flatten() const;

  LinearOperator& operator+=(const LinearOperator& other);
  LinearOperator& operator-=(const LinearOperator& other);
  LinearOperator& operator*=(const Rational& s);
  friend LinearOperator operator+(LinearOperator a, const LinearOperator& b) { return a += b; }
  friend LinearOperator operator-(LinearOperator a, const LinearOperator& b) { return a -= b; }
  friend LinearOperator operator*(LinearOperator a, const Rational& s) { return a *= s; }
  friend LinearOperator operator*(const Rational& s, LinearOperator a) { return a *= s; }

  bool operator==(const LinearOperator& other) const;

 private:
  PathBasisPtr basis_;
  RationalMatrix matrix_;
};

/// a ∘ b. Throws QuiverMismatch.
LinearOperator compose(const LinearOperator& a, const LinearOperator& b);
/// a∘b - b∘a. Throws QuiverMismatch.
LinearOperator bracket(const LinearOperator& a, const LinearOperator& b);

/// Leibniz rule on all pairs of basis paths.
bool is_derivation(const LinearOperator& op);

enum class ConditionKind {
  VertexSupport,  // D(v) supported on acyclic paths starting or ending at v
  PathRelation,   // c^{h(q)}_q + c^{t(q)}_q = 0
  PathSupport,    // non-parallel part of D(p) forced by the vertex coefficients
  ProductRule,    // parallel coefficients of p = p1 p2 from those of p1, p2
};

std::string_view to_string(ConditionKind kind);

struct ConditionViolation {
  ConditionKind kind;
  std::string witness;  // human-readable location, e.g. "p=p1 q=p1p2"
  Rational expected;
  Rational actual;
};

/// Structured coefficient test for derivations; empty iff is_derivation.
std::vector<ConditionViolation> check_coefficient_conditions(const LinearOperator& op);

/// b ↦ s b - b s.
LinearOperator inner_derivation(const PathBasisPtr& basis, const Path& s);
LinearOperator inner_derivation(const PathBasisPtr& basis, const AlgebraElement& a);

/// Sum over the occurrences of r in p of p with that occurrence replaced by
/// s. Works for any quiver, cyclic or not. Throws NotParallel.
AlgebraElement d_rs_apply(const QuiverPtr& quiver, ArrowId r, const Path& s, const Path& p);
/// Linear extension of d_rs_apply to an element.
AlgebraElement d_rs_apply(const QuiverPtr& quiver, ArrowId r, const Path& s, const AlgebraElement& a);

/// Matrix form of D_{r,s}. Throws NotParallel.
LinearOperator d_rs(const PathBasisPtr& basis, ArrowId r, const Path& s);
/// D_{r, Σ c_i q_i} = Σ_{q_i ∥ r} c_i D_{r,q_i}.
LinearOperator d_rs(const PathBasisPtr& basis, ArrowId r, const AlgebraElement& s);

enum class BasisKind { Inner, EdgePair };

struct BasisMember {
  BasisKind kind;
  std::optional<ArrowId> arrow;  // set for EdgePair
  Path path;                     // s in D_s or D_{r,s}
  std::string label;
  LinearOperator op;
};

/// Inner(s) for every acyclic path s in path order, then EdgePair(r,s) for
/// every arrow r and every s ∥ r, arrows in quiver order.
class DerivationBasis {
 public:
  static DerivationBasis canonical(const PathBasisPtr& basis);

  const PathBasisPtr& path_basis() const { return basis_; }
  const std::vector<BasisMember>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  const BasisMember& operator[](std::size_t i) const { return members_.at(i); }

  std::size_t inner_count() const { return inner_count_; }
  std::optional<std::size_t> find_inner(const Path& s) const;
  std::optional<std::size_t> find_edge_pair(ArrowId r, const Path& s) const;

  /// Coordinates of op in this basis. Throws InternalMismatch if op is not
  /// in the span (i.e. not a derivation).
  RationalVector coordinates(const LinearOperator& op) const;
  std::optional<RationalVector> try_coordinates(const LinearOperator& op) const;

  /// Operator with the given coordinates.
  LinearOperator combine(const RationalVector& coords) const;

 private:
  PathBasisPtr basis_;
  std::vector<BasisMember> members_;
  std::size_t inner_count_ = 0;
  std::shared_ptr<const SpanSolver> solver_;
};

DerivationBasis canonical_basis(const PathBasisPtr& basis);

/// Brute force: solves the Leibniz system in the n² matrix entries and
/// returns a kernel basis. Throws TooLarge when n exceeds max_paths.
std::vector<LinearOperator> derivation_space_oracle(const PathBasisPtr& basis,
                                                    std::size_t max_paths = 60);

/// Rows are the coordinates of D_p for every basis path p.
RationalMatrix inner_subspace(const DerivationBasis& basis);

/// Compares D_c with Σ_{t(p)=v} D_{p,cp} - Σ_{h(r)=v} D_{r,rc} on V ∪ E,
/// lazily, for an oriented cycle c of any quiver. Throws NotACycle.
bool verify_inner_expansion(const QuiverPtr& quiver, const Path& cycle);

/// Sign σ with [D_p, D_{r,s}] = σ D_{D_{r,s}(p)}; 0 when both sides vanish,
/// nullopt when neither sign works.
std::optional<int> inner_edge_bracket_sign(const PathBasisPtr& basis, const Path& p, ArrowId r,
                                           const Path& s);

/// Smallest k with g^k = 0 in the lower central series of span(ops)
/// (g^1 = span, g^{k+1} = [span, g^k]); nullopt if it stalls nonzero.
std::optional<std::size_t> nilpotency_depth(const std::vector<LinearOperator>& ops);

}  // namespace quiverhh
