#include "quiverhh/linalg.hpp"

#include <algorithm>
#include <utility>

#include "quiverhh/error.hpp"

namespace quiverhh {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorKind::DimensionMismatch, what);
}

// row_a -= factor * row_b over the column range [from, cols)
void axpy(std::span<Rational> target, const Rational& factor, std::span<const Rational> source,
          std::size_t from) {
  for (std::size_t c = from; c < target.size(); ++c)
    if (!is_zero(source[c])) target[c] -= factor * source[c];
}

}  // namespace

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::from_rows(const std::vector<RationalVector>& rows, std::size_t cols) {
  RationalMatrix m(0, cols);
  for (const auto& r : rows) m.append_row(r);
  return m;
}

RationalMatrix RationalMatrix::from_rows(const std::vector<RationalVector>& rows) {
  require(!rows.empty(), "cannot infer column count from zero rows");
  return from_rows(rows, rows.front().size());
}

RationalVector RationalMatrix::row_vector(std::size_t r) const {
  auto s = row(r);
  return RationalVector(s.begin(), s.end());
}

std::vector<RationalVector> RationalMatrix::row_vectors() const {
  std::vector<RationalVector> out;
  out.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out.push_back(row_vector(r));
  return out;
}

void RationalMatrix::append_row(std::span<const Rational> values) {
  require(values.size() == cols_, "row length does not match column count");
  data_.insert(data_.end(), values.begin(), values.end());
  ++rows_;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

bool RationalMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Rational& x) { return quiverhh::is_zero(x); });
}

RationalMatrix& RationalMatrix::operator+=(const RationalMatrix& other) {
  require(rows_ == other.rows_ && cols_ == other.cols_, "matrix sum with different shapes");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

RationalMatrix& RationalMatrix::operator-=(const RationalMatrix& other) {
  require(rows_ == other.rows_ && cols_ == other.cols_, "matrix difference with different shapes");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

RationalMatrix& RationalMatrix::operator*=(const Rational& s) {
  for (auto& x : data_) x *= s;
  return *this;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  require(a.cols() == b.rows(), "matrix product with incompatible shapes");
  RationalMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Rational& aik = a(i, k);
      if (is_zero(aik)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (!is_zero(b(k, j))) out(i, j) += aik * b(k, j);
    }
  return out;
}

RationalVector operator*(const RationalMatrix& a, const RationalVector& x) {
  require(a.cols() == x.size(), "matrix-vector product with incompatible shapes");
  RationalVector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k)
      if (!is_zero(a(i, k)) && !is_zero(x[k])) out[i] += a(i, k) * x[k];
  return out;
}

RationalMatrix vstack(const RationalMatrix& a, const RationalMatrix& b) {
  require(a.cols() == b.cols(), "vstack with different column counts");
  RationalMatrix out = a;
  for (std::size_t r = 0; r < b.rows(); ++r) out.append_row(b.row(r));
  return out;
}

RationalMatrix rref(RationalMatrix m, std::vector<std::size_t>* pivots) {
  if (pivots) pivots->clear();
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  auto row_span = [&](std::size_t r) { return std::span<Rational>(&m(r, 0), cols); };
  std::size_t lead = 0;
  for (std::size_t c = 0; c < cols && lead < rows; ++c) {
    std::size_t pick = lead;
    while (pick < rows && is_zero(m(pick, c))) ++pick;
    if (pick == rows) continue;
    if (pick != lead)
      for (std::size_t j = 0; j < cols; ++j) std::swap(m(pick, j), m(lead, j));
    const Rational inv = 1 / m(lead, c);
    for (std::size_t j = c; j < cols; ++j) m(lead, j) *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == lead || is_zero(m(r, c))) continue;
      const Rational factor = m(r, c);
      axpy(row_span(r), factor, row_span(lead), c);
    }
    if (pivots) pivots->push_back(c);
    ++lead;
  }
  return m;
}

std::size_t rank(const RationalMatrix& m) {
  std::vector<std::size_t> pivots;
  rref(m, &pivots);
  return pivots.size();
}

std::vector<RationalVector> kernel(const RationalMatrix& m) {
  std::vector<std::size_t> pivots;
  const RationalMatrix r = rref(m, &pivots);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t p : pivots) is_pivot[p] = true;
  std::vector<RationalVector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    RationalVector v(m.cols());
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

RationalMatrix row_basis(const RationalMatrix& m) {
  std::vector<std::size_t> pivots;
  const RationalMatrix r = rref(m, &pivots);
  RationalMatrix out(0, m.cols());
  for (std::size_t i = 0; i < pivots.size(); ++i) out.append_row(r.row(i));
  return out;
}

std::vector<RationalVector> subspace_intersection(const RationalMatrix& a, const RationalMatrix& b) {
  require(a.cols() == b.cols(), "subspace intersection with different ambient dimensions");
  const std::size_t n = a.cols();
  // Zassenhaus: rows (a | a) over (b | 0); after reduction the rows with a
  // zero left half carry a basis of the intersection in their right half.
  RationalMatrix block(0, 2 * n);
  RationalVector buf(2 * n);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < n; ++c) buf[c] = buf[n + c] = a(r, c);
    block.append_row(buf);
  }
  for (std::size_t r = 0; r < b.rows(); ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      buf[c] = b(r, c);
      buf[n + c] = 0;
    }
    block.append_row(buf);
  }
  std::vector<std::size_t> pivots;
  const RationalMatrix red = rref(block, &pivots);
  RationalMatrix found(0, n);
  for (std::size_t i = 0; i < pivots.size(); ++i)
    if (pivots[i] >= n) found.append_row(red.row(i).subspan(n));
  if (found.rows() == 0) return {};
  return row_basis(found).row_vectors();
}

std::vector<RationalVector> quotient_complement(std::size_t ambient_dim,
                                                const RationalMatrix& subspace_rows,
                                                const std::vector<RationalVector>& preferred) {
  require(subspace_rows.cols() == ambient_dim, "subspace rows do not match ambient dimension");
  SpanSolver span(ambient_dim);
  for (std::size_t r = 0; r < subspace_rows.rows(); ++r) span.add_row(subspace_rows.row(r));
  std::vector<RationalVector> kept;
  auto offer = [&](const RationalVector& v) {
    if (span.rank() == ambient_dim) return;
    require(v.size() == ambient_dim, "candidate vector has wrong length");
    if (span.add_row(v)) kept.push_back(v);
  };
  for (const auto& v : preferred) offer(v);
  for (std::size_t i = 0; i < ambient_dim; ++i) {
    RationalVector unit(ambient_dim);
    unit[i] = 1;
    offer(unit);
  }
  return kept;
}

// ---------------------------------------------------------------------------

bool SparseEchelon::add_row(SparseRow row) {
  // Pivot rows only have entries at or right of their pivot, so one
  // ascending sweep clears every pivot column of the incoming row. Map
  // insertions do not invalidate the sweep iterator.
  for (auto it = row.begin(); it != row.end();) {
    auto piv = is_zero(it->second) ? pivots_.end() : pivots_.find(it->first);
    if (piv != pivots_.end()) {
      const Rational factor = it->second;
      for (const auto& [c, v] : piv->second) row[c] -= factor * v;
    }
    if (is_zero(it->second))
      it = row.erase(it);
    else
      ++it;
  }
  if (row.empty()) return false;
  const std::size_t lead = row.begin()->first;
  const Rational inv = 1 / row.begin()->second;
  for (auto& [c, v] : row) v *= inv;
  pivots_.emplace(lead, std::move(row));
  return true;
}

std::vector<SparseEchelon::SparseRow> SparseEchelon::rows() const {
  std::vector<SparseRow> out;
  out.reserve(pivots_.size());
  for (const auto& [pivot, row] : pivots_) out.push_back(row);
  return out;
}

std::vector<RationalVector> SparseEchelon::kernel() const {
  std::vector<RationalVector> basis;
  for (std::size_t free = 0; free < cols_; ++free) {
    if (pivots_.count(free)) continue;
    RationalVector x(cols_);
    x[free] = 1;
    // Back-substitute in descending pivot order; every pivot row only
    // references larger columns, which are already determined.
    for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
      Rational acc = 0;
      for (const auto& [c, v] : it->second)
        if (c != it->first && !is_zero(x[c])) acc -= v * x[c];
      x[it->first] = acc;
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

// ---------------------------------------------------------------------------

SpanSolver::SpanSolver(const RationalMatrix& rows) : cols_(rows.cols()) {
  for (std::size_t r = 0; r < rows.rows(); ++r) add_row(rows.row(r));
}

void SpanSolver::reduce_with_combination(RationalVector& values, RationalVector& combination) const {
  for (const auto& e : echelon_) {
    if (is_zero(values[e.pivot])) continue;
    const Rational factor = values[e.pivot];
    axpy(values, factor, e.values, 0);
    for (std::size_t i = 0; i < e.combination.size(); ++i)
      if (!is_zero(e.combination[i])) combination[i] -= factor * e.combination[i];
  }
}

bool SpanSolver::add_row(std::span<const Rational> row) {
  require(row.size() == cols_, "span solver row has wrong length");
  RationalVector values(row.begin(), row.end());
  RationalVector combination(added_ + 1);
  combination[added_] = 1;
  ++added_;
  reduce_with_combination(values, combination);
  auto lead = std::find_if(values.begin(), values.end(), [](const Rational& x) { return !is_zero(x); });
  if (lead == values.end()) return false;
  const std::size_t pivot = static_cast<std::size_t>(lead - values.begin());
  const Rational inv = 1 / values[pivot];
  for (auto& x : values) x *= inv;
  for (auto& x : combination) x *= inv;
  // Keep the echelon fully reduced so `reduce` yields canonical residues.
  for (auto& e : echelon_) {
    if (is_zero(e.values[pivot])) continue;
    const Rational factor = e.values[pivot];
    axpy(e.values, factor, values, 0);
    e.combination.resize(added_);
    for (std::size_t i = 0; i < combination.size(); ++i)
      if (!is_zero(combination[i])) e.combination[i] -= factor * combination[i];
  }
  echelon_.push_back(EchelonRow{pivot, std::move(values), std::move(combination)});
  return true;
}

RationalVector SpanSolver::reduce(std::span<const Rational> target) const {
  require(target.size() == cols_, "span solver target has wrong length");
  RationalVector values(target.begin(), target.end());
  RationalVector combination(added_);
  reduce_with_combination(values, combination);
  return values;
}

std::optional<RationalVector> SpanSolver::express(std::span<const Rational> target) const {
  require(target.size() == cols_, "span solver target has wrong length");
  RationalVector values(target.begin(), target.end());
  RationalVector combination(added_);
  reduce_with_combination(values, combination);
  if (!is_zero(values)) return std::nullopt;
  for (auto& x : combination) x = -x;
  return combination;
}

bool SpanSolver::contains(std::span<const Rational> target) const { return is_zero(reduce(target)); }

}  // namespace quiverhh
