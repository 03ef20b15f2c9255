#include <doctest.h>

#include <random>

#include "quiverhh/error.hpp"
#include "quiverhh/linalg.hpp"

using namespace quiverhh;

namespace {

RationalMatrix M(std::vector<RationalVector> rows) { return RationalMatrix::from_rows(rows); }

RationalMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols) {
  std::uniform_int_distribution<int> entry(-2, 2), sparse(0, 2);
  RationalMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      if (sparse(rng) == 0) m(r, c) = make_rational(entry(rng), 1 + sparse(rng));
  return m;
}

// Low-rank matrices exercise the dependent cases.
RationalMatrix random_low_rank(std::mt19937& rng, std::size_t rows, std::size_t cols, std::size_t r) {
  const auto left = random_matrix(rng, rows, r);
  const auto right = random_matrix(rng, r, cols);
  return left * right;
}

}  // namespace

TEST_CASE("rank examples") {
  CHECK(rank(RationalMatrix(3, 3)) == 0);
  CHECK(rank(M({{2, -2}, {-2, 2}})) == 1);
  CHECK(rank(M({{1}, {-1}})) == 1);
  CHECK(rank(RationalMatrix::identity(4)) == 4);
  CHECK(rank(RationalMatrix(0, 5)) == 0);
}

TEST_CASE("kernel examples") {
  CHECK(kernel(RationalMatrix::identity(3)).empty());
  CHECK(kernel(M({{1, 1}})) == std::vector<RationalVector>{{-1, 1}});
  CHECK(kernel(M({{2, -2}, {-2, 2}})) == std::vector<RationalVector>{{1, 1}});
}

TEST_CASE("rref is reduced and idempotent") {
  std::vector<std::size_t> pivots;
  const auto r = rref(M({{0, 2, 4}, {1, 1, 1}, {1, 2, 3}}), &pivots);
  CHECK(r == M({{1, 0, -1}, {0, 1, 2}, {0, 0, 0}}));
  CHECK(pivots == std::vector<std::size_t>{0, 1});
  CHECK(rref(r) == r);
}

TEST_CASE("subspace intersection examples") {
  CHECK(subspace_intersection(M({{1, 0}}), M({{1, 0}})) == std::vector<RationalVector>{{1, 0}});
  CHECK(subspace_intersection(M({{1, 0}}), M({{0, 1}})).empty());
  CHECK(subspace_intersection(M({{1, 1, 0}, {0, 1, 1}}), M({{1, 2, 1}, {1, 0, 0}})) ==
        std::vector<RationalVector>{{1, 2, 1}});
  CHECK_THROWS_AS(subspace_intersection(M({{1, 0}}), M({{1, 0, 0}})), Error);
}

TEST_CASE("quotient complement examples") {
  CHECK(quotient_complement(2, RationalMatrix::identity(2), {}).empty());
  CHECK(quotient_complement(2, RationalMatrix(0, 2), {{1, 0}, {0, 1}}) ==
        std::vector<RationalVector>{{1, 0}, {0, 1}});
  // Preferred candidates win over unit vectors; dependent ones are skipped.
  CHECK(quotient_complement(3, M({{1, 1, 0}}), {{2, 2, 0}, {0, 1, 1}}) ==
        std::vector<RationalVector>{{0, 1, 1}, {1, 0, 0}});
  CHECK_THROWS_AS(quotient_complement(3, M({{1, 1}}), {}), Error);
}

TEST_CASE("span solver expresses and reduces") {
  SpanSolver s(3);
  CHECK(s.add_row(RationalVector{1, 1, 0}));
  CHECK_FALSE(s.add_row(RationalVector{2, 2, 0}));
  CHECK(s.add_row(RationalVector{0, 1, 1}));
  CHECK(s.rank() == 2);
  CHECK(s.rows_added() == 3);
  const auto c = s.express(RationalVector{1, 3, 2});
  REQUIRE(c.has_value());
  CHECK(*c == RationalVector{1, 0, 2});
  CHECK_FALSE(s.express(RationalVector{0, 0, 1}).has_value());
  CHECK(s.contains(RationalVector{1, 0, -1}));
  CHECK(s.reduce(RationalVector{1, 3, 2}) == RationalVector{0, 0, 0});
  CHECK_FALSE(is_zero(s.reduce(RationalVector{0, 0, 1})));
}

TEST_CASE("rank is transpose invariant") {
  std::mt19937 rng(11);
  for (int i = 0; i < 60; ++i) {
    std::uniform_int_distribution<std::size_t> dim(1, 7), low(0, 4);
    const std::size_t rows = dim(rng), cols = dim(rng), r = low(rng) + 1;
    const auto m = random_low_rank(rng, rows, cols, r);
    CHECK(rank(m) == rank(m.transpose()));
  }
}

TEST_CASE("kernel vectors are annihilated and count cols - rank") {
  std::mt19937 rng(12);
  for (int i = 0; i < 60; ++i) {
    std::uniform_int_distribution<std::size_t> dim(1, 7), low(1, 4);
    const std::size_t rows = dim(rng), cols = dim(rng), r = low(rng);
    const auto m = random_low_rank(rng, rows, cols, r);
    const auto ker = kernel(m);
    CHECK(ker.size() + rank(m) == m.cols());
    for (const auto& v : ker) CHECK(is_zero(m * v));
  }
}

TEST_CASE("Grassmann identity for sums and intersections") {
  std::mt19937 rng(13);
  for (int i = 0; i < 60; ++i) {
    std::uniform_int_distribution<std::size_t> rows(1, 4), cols(2, 6);
    const std::size_t n = cols(rng);
    const std::size_t ra = rows(rng), rb = rows(rng);
    const auto a = random_low_rank(rng, ra, n, 2);
    const auto b = random_low_rank(rng, rb, n, 3);
    const auto meet = subspace_intersection(a, b);
    CHECK(rank(a) + rank(b) == rank(vstack(a, b)) + meet.size());
    SpanSolver sa(a), sb(b);
    for (const auto& v : meet) {
      CHECK(sa.contains(v));
      CHECK(sb.contains(v));
    }
  }
}

TEST_CASE("quotient complement completes the space") {
  std::mt19937 rng(14);
  for (int i = 0; i < 40; ++i) {
    std::uniform_int_distribution<std::size_t> rows(0, 4), cols(1, 6);
    const std::size_t n = cols(rng);
    const std::size_t rs = rows(rng);
    const auto sub = random_low_rank(rng, rs, n, 2);
    const auto extra = quotient_complement(n, sub, {});
    CHECK(extra.size() == n - rank(sub));
    CHECK(rank(vstack(sub, RationalMatrix::from_rows(extra, n))) == n);
  }
}

TEST_CASE("sparse echelon agrees with dense elimination") {
  std::mt19937 rng(15);
  for (int i = 0; i < 40; ++i) {
    std::uniform_int_distribution<std::size_t> dim(1, 8);
    const std::size_t rows = dim(rng), cols = dim(rng);
    const auto m = random_low_rank(rng, rows, cols, 3);
    SparseEchelon s(m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
      SparseEchelon::SparseRow row;
      for (std::size_t c = 0; c < m.cols(); ++c)
        if (!is_zero(m(r, c))) row[c] = m(r, c);
      s.add_row(row);
    }
    CHECK(s.rank() == rank(m));
    CHECK(s.kernel() == kernel(m));
    CHECK(s.rows().size() == s.rank());
  }
}

TEST_CASE("repeated computations are identical") {
  std::mt19937 a(16), b(16);
  const auto ma = random_low_rank(a, 6, 6, 3), mb = random_low_rank(b, 6, 6, 3);
  CHECK(rref(ma) == rref(mb));
  CHECK(kernel(ma) == kernel(mb));
}
