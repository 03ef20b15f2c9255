#include "quiverhh/derivations.hpp"

#include <algorithm>

#include "quiverhh/error.hpp"

namespace quiverhh {

namespace {

void require_same_basis(const PathBasisPtr& a, const PathBasisPtr& b) {
  if (a != b) throw Error(ErrorKind::QuiverMismatch, "operators act on different path bases");
}

AlgebraElement element(const PathBasis& basis, const Path& p) {
  return AlgebraElement(basis.quiver_ptr(), p);
}

// product_table[i][j] = index of path_i * path_j, or npos when it vanishes
constexpr std::size_t npos = static_cast<std::size_t>(-1);

std::vector<std::vector<std::size_t>> product_table(const PathBasis& basis) {
  const std::size_t n = basis.size();
  std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n, npos));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (auto p = concat(basis.path(i), basis.path(j))) table[i][j] = basis.index_of(*p);
  return table;
}

}  // namespace

// ---------------------------------------------------------------------------
// LinearOperator

LinearOperator::LinearOperator(PathBasisPtr basis)
    : basis_(std::move(basis)), matrix_(basis_->size(), basis_->size()) {}

LinearOperator::LinearOperator(PathBasisPtr basis, RationalMatrix matrix)
    : basis_(std::move(basis)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != basis_->size() || matrix_.cols() != basis_->size())
    throw Error(ErrorKind::DimensionMismatch, "operator matrix does not match the path basis");
}

LinearOperator LinearOperator::identity(PathBasisPtr basis) {
  const std::size_t n = basis->size();
  return LinearOperator(std::move(basis), RationalMatrix::identity(n));
}

LinearOperator LinearOperator::from_action(PathBasisPtr basis,
                                           const std::function<AlgebraElement(const Path&)>& action) {
  LinearOperator op(basis);
  for (std::size_t j = 0; j < basis->size(); ++j) {
    const AlgebraElement img = action(basis->path(j));
    require_same_quiver(img.quiver_ptr(), basis->quiver_ptr());
    for (const auto& [p, c] : img.terms()) op.matrix_(basis->index_of(p), j) = c;
  }
  return op;
}

AlgebraElement LinearOperator::image(std::size_t j) const {
  AlgebraElement out(basis_->quiver_ptr());
  for (std::size_t i = 0; i < matrix_.rows(); ++i) out.add_term(basis_->path(i), matrix_(i, j));
  return out;
}

AlgebraElement LinearOperator::apply(const AlgebraElement& a) const {
  require_same_quiver(a.quiver_ptr(), basis_->quiver_ptr());
  AlgebraElement out(basis_->quiver_ptr());
  for (const auto& [p, c] : a.terms()) {
    const std::size_t j = basis_->index_of(p);
    for (std::size_t i = 0; i < matrix_.rows(); ++i)
      if (!quiverhh::is_zero(matrix_(i, j))) out.add_term(basis_->path(i), c * matrix_(i, j));
  }
  return out;
}

AlgebraElement LinearOperator::apply(const Path& p) const { return image(basis_->index_of(p)); }

RationalVector LinearOperator::flatten() const {
  RationalVector out;
  out.reserve(matrix_.rows() * matrix_.cols());
  for (std::size_t r = 0; r < matrix_.rows(); ++r)
    for (const auto& x : matrix_.row(r)) out.push_back(x);
  return out;
}

LinearOperator& LinearOperator::operator+=(const LinearOperator& other) {
  require_same_basis(basis_, other.basis_);
  matrix_ += other.matrix_;
  return *this;
}

LinearOperator& LinearOperator::operator-=(const LinearOperator& other) {
  require_same_basis(basis_, other.basis_);
  matrix_ -= other.matrix_;
  return *this;
}

LinearOperator& LinearOperator::operator*=(const Rational& s) {
  matrix_ *= s;
  return *this;
}

bool LinearOperator::operator==(const LinearOperator& other) const {
  return basis_ == other.basis_ && matrix_ == other.matrix_;
}

LinearOperator compose(const LinearOperator& a, const LinearOperator& b) {
  require_same_basis(a.basis_ptr(), b.basis_ptr());
  return LinearOperator(a.basis_ptr(), a.matrix() * b.matrix());
}

namespace {

// Nonzero entries of each row, as (column, value pointer).
std::vector<std::vector<std::pair<std::size_t, const Rational*>>> row_support(const RationalMatrix& m) {
  std::vector<std::vector<std::pair<std::size_t, const Rational*>>> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!is_zero(m(i, j))) out[i].emplace_back(j, &m(i, j));
  return out;
}

}  // namespace

LinearOperator bracket(const LinearOperator& a, const LinearOperator& b) {
  require_same_basis(a.basis_ptr(), b.basis_ptr());
  const RationalMatrix &ma = a.matrix(), &mb = b.matrix();
  const auto ra = row_support(ma), rb = row_support(mb);
  RationalMatrix out(ma.rows(), ma.cols());
  Rational t;
  // out = ab - ba, row by row over the sparse supports
  for (std::size_t i = 0; i < ma.rows(); ++i) {
    for (const auto& [k, aik] : ra[i])
      for (const auto& [j, bkj] : rb[k]) {
        mpq_mul(t.get_mpq_t(), aik->get_mpq_t(), bkj->get_mpq_t());
        mpq_add(out(i, j).get_mpq_t(), out(i, j).get_mpq_t(), t.get_mpq_t());
      }
    for (const auto& [k, bik] : rb[i])
      for (const auto& [j, akj] : ra[k]) {
        mpq_mul(t.get_mpq_t(), bik->get_mpq_t(), akj->get_mpq_t());
        mpq_sub(out(i, j).get_mpq_t(), out(i, j).get_mpq_t(), t.get_mpq_t());
      }
  }
  return LinearOperator(a.basis_ptr(), std::move(out));
}

// ---------------------------------------------------------------------------
// Leibniz test and the coefficient conditions

bool is_derivation(const LinearOperator& op) {
  const PathBasis& basis = op.basis();
  const std::size_t n = basis.size();
  const auto prod = product_table(basis);
  const RationalMatrix& m = op.matrix();
  // support[j] = rows q with a nonzero coefficient of path q in D(path j)
  std::vector<std::vector<std::size_t>> support(n);
  for (std::size_t q = 0; q < n; ++q)
    for (std::size_t j = 0; j < n; ++j)
      if (!quiverhh::is_zero(m(q, j))) support[j].push_back(q);

  RationalVector residue(n);
  std::vector<std::size_t> touched;
  auto add = [&](std::size_t i, const Rational& c) {
    residue[i] += c;
    touched.push_back(i);
  };
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (const std::size_t xy = prod[x][y]; xy != npos)
        for (std::size_t q : support[xy]) add(q, m(q, xy));
      for (std::size_t q : support[x])
        if (const std::size_t out = prod[q][y]; out != npos) add(out, -m(q, x));
      for (std::size_t q : support[y])
        if (const std::size_t out = prod[x][q]; out != npos) add(out, -m(q, y));
      bool zero = true;
      for (std::size_t i : touched) {
        zero = zero && quiverhh::is_zero(residue[i]);
        residue[i] = 0;
      }
      touched.clear();
      if (!zero) return false;
    }
  }
  return true;
}

std::string_view to_string(ConditionKind kind) {
  switch (kind) {
    case ConditionKind::VertexSupport: return "VertexSupport";
    case ConditionKind::PathRelation: return "PathRelation";
    case ConditionKind::PathSupport: return "PathSupport";
    case ConditionKind::ProductRule: return "ProductRule";
  }
  return "Unknown";
}

std::vector<ConditionViolation> check_coefficient_conditions(const LinearOperator& op) {
  const PathBasis& basis = op.basis();
  const Quiver& q = basis.quiver();
  const auto& paths = basis.paths();
  const std::size_t n = paths.size();
  // coeff(p, target) = coefficient of `target` in D(p)
  auto coeff = [&](const Path& p, const Path& target) -> const Rational& {
    return op.matrix()(basis.index_of(target), basis.index_of(p));
  };
  auto name = [&](const Path& p) { return label(q, p); };
  std::vector<ConditionViolation> out;
  auto report = [&](ConditionKind kind, std::string witness, Rational expected, Rational actual) {
    out.push_back(ConditionViolation{kind, std::move(witness), std::move(expected), std::move(actual)});
  };

  for (const Path& v : paths) {
    if (!v.is_trivial()) continue;
    for (const Path& target : paths) {
      const Rational& c = coeff(v, target);
      if (is_zero(c)) continue;
      const bool allowed = target.head() != target.tail() &&
                           (target.tail() == v.tail() || target.head() == v.tail());
      if (!allowed) report(ConditionKind::VertexSupport, "v=" + name(v) + " q=" + name(target), 0, c);
    }
  }

  for (const Path& target : paths) {
    if (target.head() == target.tail()) continue;
    const Rational sum = coeff(Path::trivial(target.head()), target) +
                         coeff(Path::trivial(target.tail()), target);
    if (!is_zero(sum)) report(ConditionKind::PathRelation, "q=" + name(target), 0, sum);
  }

  for (const Path& p : paths) {
    if (p.is_trivial()) continue;
    for (const Path& target : paths) {
      if (is_parallel(p, target)) continue;
      // Only q·p with q acyclic ending at t(p), or p·q with q acyclic
      // starting at h(p), may appear outside the parallel class.
      Rational expected = 0;
      if (auto pre = strip_suffix(q, target, p); pre && pre->head() != pre->tail())
        expected += coeff(Path::trivial(p.tail()), *pre);
      if (auto post = strip_prefix(q, target, p); post && post->head() != post->tail())
        expected += coeff(Path::trivial(p.head()), *post);
      const Rational& actual = coeff(p, target);
      if (actual != expected)
        report(ConditionKind::PathSupport, "p=" + name(p) + " q=" + name(target), expected, actual);
    }
  }

  for (const Path& p : paths) {
    for (std::size_t split = 1; split < p.length(); ++split) {
      const Path p1 = Path::make(q, p.tail(), {p.arrows().begin(), p.arrows().begin() + split});
      const Path p2 = Path::make(q, p1.head(), {p.arrows().begin() + split, p.arrows().end()});
      for (const Path& target : paths) {
        if (!is_parallel(p, target)) continue;
        Rational expected = 0;
        if (auto q1 = strip_suffix(q, target, p2)) expected += coeff(p1, *q1);
        if (auto q2 = strip_prefix(q, target, p1)) expected += coeff(p2, *q2);
        const Rational& actual = coeff(p, target);
        if (actual != expected)
          report(ConditionKind::ProductRule,
                 "p=" + name(p1) + "|" + name(p2) + " q=" + name(target), expected, actual);
      }
    }
  }
  (void)n;
  return out;
}

// ---------------------------------------------------------------------------
// Named derivations

LinearOperator inner_derivation(const PathBasisPtr& basis, const AlgebraElement& a) {
  require_same_quiver(a.quiver_ptr(), basis->quiver_ptr());
  return LinearOperator::from_action(basis, [&](const Path& b) {
    return commutator(a, element(*basis, b));
  });
}

LinearOperator inner_derivation(const PathBasisPtr& basis, const Path& s) {
  return inner_derivation(basis, element(*basis, s));
}

AlgebraElement d_rs_apply(const QuiverPtr& quiver, ArrowId r, const Path& s, const Path& p) {
  const Quiver& q = *quiver;
  if (!is_parallel(Path::arrow(q, r), s))
    throw Error(ErrorKind::NotParallel,
                "path " + label(q, s) + " is not parallel to arrow " + q.arrow(r).name);
  AlgebraElement out(quiver);
  const auto& arrows = p.arrows();
  for (std::size_t i = 0; i < arrows.size(); ++i) {
    if (arrows[i] != r) continue;
    std::vector<ArrowId> replaced(arrows.begin(), arrows.begin() + static_cast<std::ptrdiff_t>(i));
    replaced.insert(replaced.end(), s.arrows().begin(), s.arrows().end());
    replaced.insert(replaced.end(), arrows.begin() + static_cast<std::ptrdiff_t>(i) + 1, arrows.end());
    out.add_term(Path::make(q, p.tail(), std::move(replaced)), 1);
  }
  return out;
}

AlgebraElement d_rs_apply(const QuiverPtr& quiver, ArrowId r, const Path& s, const AlgebraElement& a) {
  AlgebraElement out(quiver);
  for (const auto& [p, c] : a.terms()) out += d_rs_apply(quiver, r, s, p) * c;
  return out;
}

LinearOperator d_rs(const PathBasisPtr& basis, ArrowId r, const Path& s) {
  // Validate even when the basis has no path containing r.
  d_rs_apply(basis->quiver_ptr(), r, s, Path::trivial(s.tail()));
  return LinearOperator::from_action(basis, [&](const Path& p) {
    return d_rs_apply(basis->quiver_ptr(), r, s, p);
  });
}

LinearOperator d_rs(const PathBasisPtr& basis, ArrowId r, const AlgebraElement& s) {
  const Path arrow = Path::arrow(basis->quiver(), r);
  LinearOperator out(basis);
  for (const auto& [p, c] : s.terms())
    if (is_parallel(arrow, p)) out += d_rs(basis, r, p) * c;
  return out;
}

// ---------------------------------------------------------------------------
// Canonical basis

DerivationBasis DerivationBasis::canonical(const PathBasisPtr& basis) {
  const Quiver& q = basis->quiver();
  DerivationBasis out;
  out.basis_ = basis;
  for (const Path& s : basis->paths()) {
    if (s.head() == s.tail()) continue;
    out.members_.push_back(BasisMember{BasisKind::Inner, std::nullopt, s,
                                       "Inner(" + label(q, s) + ")", inner_derivation(basis, s)});
  }
  out.inner_count_ = out.members_.size();
  for (std::size_t k = 0; k < q.arrow_count(); ++k) {
    const ArrowId r{k};
    const Path arrow = Path::arrow(q, r);
    for (const Path& s : basis->paths()) {
      if (!is_parallel(arrow, s)) continue;
      out.members_.push_back(BasisMember{BasisKind::EdgePair, r, s,
                                         "EdgePair(" + q.arrow(r).name + "," + label(q, s) + ")",
                                         d_rs(basis, r, s)});
    }
  }
  auto solver = std::make_shared<SpanSolver>(basis->size() * basis->size());
  for (const auto& m : out.members_) solver->add_row(m.op.flatten());
  out.solver_ = std::move(solver);
  return out;
}

DerivationBasis canonical_basis(const PathBasisPtr& basis) { return DerivationBasis::canonical(basis); }

std::optional<std::size_t> DerivationBasis::find_inner(const Path& s) const {
  for (std::size_t i = 0; i < inner_count_; ++i)
    if (members_[i].path == s) return i;
  return std::nullopt;
}

std::optional<std::size_t> DerivationBasis::find_edge_pair(ArrowId r, const Path& s) const {
  for (std::size_t i = inner_count_; i < members_.size(); ++i)
    if (members_[i].arrow == r && members_[i].path == s) return i;
  return std::nullopt;
}

std::optional<RationalVector> DerivationBasis::try_coordinates(const LinearOperator& op) const {
  require_same_basis(basis_, op.basis_ptr());
  return solver_->express(op.flatten());
}

RationalVector DerivationBasis::coordinates(const LinearOperator& op) const {
  auto coords = try_coordinates(op);
  if (!coords) throw Error(ErrorKind::InternalMismatch, "operator is not in the span of the canonical basis");
  return *coords;
}

LinearOperator DerivationBasis::combine(const RationalVector& coords) const {
  if (coords.size() != members_.size())
    throw Error(ErrorKind::DimensionMismatch, "coordinate vector has wrong length");
  LinearOperator out(basis_);
  for (std::size_t i = 0; i < coords.size(); ++i)
    if (!is_zero(coords[i])) out += members_[i].op * coords[i];
  return out;
}

// ---------------------------------------------------------------------------
// Brute-force derivation space

std::vector<LinearOperator> derivation_space_oracle(const PathBasisPtr& basis, std::size_t max_paths) {
  const std::size_t n = basis->size();
  if (n > max_paths)
    throw Error(ErrorKind::TooLarge, std::to_string(n) + " paths exceed the oracle cap of " +
                                         std::to_string(max_paths));
  const auto prod = product_table(*basis);
  // Unknown (q, j) = coefficient of path q in D(path j), flattened q*n + j.
  auto unknown = [n](std::size_t q, std::size_t j) { return q * n + j; };
  SparseEchelon system(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      // D(xy) - D(x) y - x D(y) = 0, one equation per output path.
      std::map<std::size_t, SparseEchelon::SparseRow> equations;
      if (const std::size_t xy = prod[x][y]; xy != npos)
        for (std::size_t q = 0; q < n; ++q) equations[q][unknown(q, xy)] += 1;
      for (std::size_t q = 0; q < n; ++q) {
        if (const std::size_t out = prod[q][y]; out != npos) equations[out][unknown(q, x)] -= 1;
        if (const std::size_t out = prod[x][q]; out != npos) equations[out][unknown(q, y)] -= 1;
      }
      for (auto& [q, row] : equations) system.add_row(std::move(row));
    }
  }
  std::vector<LinearOperator> out;
  for (const auto& v : system.kernel()) {
    RationalMatrix m(n, n);
    for (std::size_t q = 0; q < n; ++q)
      for (std::size_t j = 0; j < n; ++j) m(q, j) = v[unknown(q, j)];
    out.emplace_back(basis, std::move(m));
  }
  return out;
}

RationalMatrix inner_subspace(const DerivationBasis& basis) {
  const PathBasisPtr& paths = basis.path_basis();
  RationalMatrix rows(0, basis.size());
  for (const Path& p : paths->paths()) rows.append_row(basis.coordinates(inner_derivation(paths, p)));
  return rows;
}

// ---------------------------------------------------------------------------
// Lazy checks valid for cyclic quivers

bool verify_inner_expansion(const QuiverPtr& quiver, const Path& cycle) {
  const Quiver& q = *quiver;
  if (cycle.is_trivial() || cycle.head() != cycle.tail())
    throw Error(ErrorKind::NotACycle, "path " + label(q, cycle) + " is not an oriented cycle");
  const VertexId v0 = cycle.tail();
  const AlgebraElement c(quiver, cycle);

  std::vector<Path> generators;
  for (std::size_t v = 0; v < q.vertex_count(); ++v) generators.push_back(Path::trivial(VertexId{v}));
  for (std::size_t k = 0; k < q.arrow_count(); ++k) generators.push_back(Path::arrow(q, ArrowId{k}));

  for (const Path& g : generators) {
    const AlgebraElement lhs = commutator(c, AlgebraElement(quiver, g));
    AlgebraElement rhs(quiver);
    for (ArrowId p : q.outgoing(v0)) rhs += d_rs_apply(quiver, p, *concat(cycle, Path::arrow(q, p)), g);
    for (ArrowId r : q.incoming(v0)) rhs -= d_rs_apply(quiver, r, *concat(Path::arrow(q, r), cycle), g);
    if (!(lhs == rhs)) return false;
  }
  return true;
}

std::optional<int> inner_edge_bracket_sign(const PathBasisPtr& basis, const Path& p, ArrowId r,
                                           const Path& s) {
  const LinearOperator lhs = bracket(inner_derivation(basis, p), d_rs(basis, r, s));
  const LinearOperator rhs = inner_derivation(basis, d_rs_apply(basis->quiver_ptr(), r, s, p));
  if (lhs.is_zero() && rhs.is_zero()) return 0;
  if (lhs == rhs) return 1;
  if (lhs == rhs * Rational(-1)) return -1;
  return std::nullopt;
}

std::optional<std::size_t> nilpotency_depth(const std::vector<LinearOperator>& ops) {
  if (ops.empty()) return 1;
  const std::size_t n = ops.front().dimension();
  // Column-sparse form; flattened index of entry (i, j) is i * n + j.
  using Column = std::vector<std::pair<std::size_t, Rational>>;
  using Sparse = std::vector<Column>;
  auto from_operator = [&](const LinearOperator& op) {
    Sparse out(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (!quiverhh::is_zero(op.matrix()(i, j))) out[j].emplace_back(i, op.matrix()(i, j));
    return out;
  };
  auto from_row = [&](const SparseEchelon::SparseRow& row) {
    Sparse out(n);
    for (const auto& [k, v] : row) out[k % n].emplace_back(k / n, v);
    return out;
  };
  auto product_into = [&](SparseEchelon::SparseRow& acc, const Sparse& a, const Sparse& b, int sign) {
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& [k, bkj] : b[j])
        for (const auto& [i, aik] : a[k]) acc[i * n + j] += sign * aik * bkj;
  };

  std::vector<Sparse> generators;
  SparseEchelon current(n * n);
  for (const auto& op : ops) {
    generators.push_back(from_operator(op));
    SparseEchelon::SparseRow row;
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& [i, v] : generators.back()[j]) row[i * n + j] = v;
    current.add_row(std::move(row));
  }
  for (std::size_t depth = 1;; ++depth) {
    if (current.rank() == 0) return depth;
    SparseEchelon next(n * n);
    for (const auto& row : current.rows()) {
      const Sparse b = from_row(row);
      for (const auto& a : generators) {
        SparseEchelon::SparseRow acc;
        product_into(acc, a, b, 1);
        product_into(acc, b, a, -1);
        next.add_row(std::move(acc));
      }
    }
    if (next.rank() >= current.rank()) return std::nullopt;
    current = std::move(next);
  }
}

}  // namespace quiverhh
