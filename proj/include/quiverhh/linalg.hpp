#pragma once

// Exact dense linear algebra over the rationals. Everything here is
// deterministic: echelon forms are fully reduced with leading entry 1, so
// bases returned by these functions are canonical.

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "quiverhh/rational.hpp"

namespace quiverhh {

class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static RationalMatrix identity(std::size_t n);
  /// Every row must have `cols` entries. Throws DimensionMismatch.
  static RationalMatrix from_rows(const std::vector<RationalVector>& rows, std::size_t cols);
  static RationalMatrix from_rows(const std::vector<RationalVector>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Rational> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  RationalVector row_vector(std::size_t r) const;
  std::vector<RationalVector> row_vectors() const;
  void append_row(std::span<const Rational> values);

  RationalMatrix transpose() const;
  bool is_zero() const;

  bool operator==(const RationalMatrix& other) const = default;

  RationalMatrix& operator+=(const RationalMatrix& other);
  RationalMatrix& operator-=(const RationalMatrix& other);
  RationalMatrix& operator*=(const Rational& s);
  friend RationalMatrix operator+(RationalMatrix a, const RationalMatrix& b) { return a += b; }
  friend RationalMatrix operator-(RationalMatrix a, const RationalMatrix& b) { return a -= b; }
  friend RationalMatrix operator*(RationalMatrix a, const Rational& s) { return a *= s; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  RationalVector data_;
};

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
RationalVector operator*(const RationalMatrix& a, const RationalVector& x);

/// Stacks b under a. Throws DimensionMismatch.
RationalMatrix vstack(const RationalMatrix& a, const RationalMatrix& b);

/// Reduced row echelon form; pivot columns are written to `pivots` if given.
RationalMatrix rref(RationalMatrix m, std::vector<std::size_t>* pivots = nullptr);

std::size_t rank(const RationalMatrix& m);

/// Kernel basis: one vector per free column, with that free entry 1 and
/// the other free entries 0.
std::vector<RationalVector> kernel(const RationalMatrix& m);

/// Nonzero rows of the reduced echelon form.
RationalMatrix row_basis(const RationalMatrix& m);

/// Basis of rowspace(a) ∩ rowspace(b), in reduced echelon form. Empty when
/// the spaces are disjoint. Throws DimensionMismatch.
std::vector<RationalVector> subspace_intersection(const RationalMatrix& a, const RationalMatrix& b);

/// Greedy completion: scans `preferred` and then the standard unit vectors,
/// keeping each vector that raises the rank of subspace + kept, until the
/// whole space is spanned. Throws DimensionMismatch.
std::vector<RationalVector> quotient_complement(std::size_t ambient_dim,
                                                const RationalMatrix& subspace_rows,
                                                const std::vector<RationalVector>& preferred);

/// Incremental row echelon over sparse rows. Used for large homogeneous
/// systems whose equations each touch a handful of unknowns.
class SparseEchelon {
 public:
  using SparseRow = std::map<std::size_t, Rational>;

  explicit SparseEchelon(std::size_t cols) : cols_(cols) {}

  /// Reduces the row against the current pivots and keeps it if nonzero.
  /// Returns true if the rank grew.
  bool add_row(SparseRow row);

  std::size_t cols() const { return cols_; }
  std::size_t rank() const { return pivots_.size(); }

  /// The stored rows, a basis of the span, in pivot order.
  std::vector<SparseRow> rows() const;

  /// Kernel basis with the same normalization as `kernel`.
  std::vector<RationalVector> kernel() const;

 private:
  std::size_t cols_;
  // pivot column -> row whose leading entry (value 1) is at that column
  std::map<std::size_t, SparseRow> pivots_;
};

/// Expresses vectors as combinations of a fixed list of rows. Rows that are
/// dependent on earlier rows receive coefficient 0.
class SpanSolver {
 public:
  explicit SpanSolver(std::size_t cols) : cols_(cols) {}
  explicit SpanSolver(const RationalMatrix& rows);

  /// Returns true if the row was independent of the rows added before it.
  bool add_row(std::span<const Rational> row);

  std::size_t rows_added() const { return added_; }
  std::size_t rank() const { return echelon_.size(); }
  std::size_t cols() const { return cols_; }

  /// Coefficients c (one per added row) with sum c_i row_i == target, or
  /// nullopt when target is outside the span.
  std::optional<RationalVector> express(std::span<const Rational> target) const;

  /// target minus its projection along the echelon pivots: the canonical
  /// representative of target modulo the span.
  RationalVector reduce(std::span<const Rational> target) const;

  bool contains(std::span<const Rational> target) const;

 private:
  struct EchelonRow {
    std::size_t pivot;
    RationalVector values;        // leading entry 1 at pivot, zero at other pivots
    RationalVector combination;   // in terms of the added rows
  };

  void reduce_with_combination(RationalVector& values, RationalVector& combination) const;

  std::size_t cols_;
  std::size_t added_ = 0;
  std::vector<EchelonRow> echelon_;
};

}  // namespace quiverhh
