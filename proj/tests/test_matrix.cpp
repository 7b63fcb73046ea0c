#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "zipring/matrix.hpp"

using namespace zipring;

namespace {

// Independent rank oracle: Bareiss fraction-free elimination over Integer.
// Shares no code with ExactMatrix::row_reduce or the sparse routines.
long bareiss_rank(std::vector<std::vector<Integer>> m) {
  size_t rows = m.size();
  if (rows == 0) return 0;
  size_t cols = m[0].size();
  Integer prev = 1;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t piv = r;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[r], m[piv]);
    for (size_t i = r + 1; i < rows; ++i) {
      for (size_t j = c + 1; j < cols; ++j)
        m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) / prev;
      m[i][c] = 0;
    }
    prev = m[r][c];
    ++r;
  }
  return static_cast<long>(r);
}

// Clears denominators row by row so the Bareiss oracle can run on integers;
// row scaling does not change the rank.
std::vector<std::vector<Integer>> scaled_rows(const ExactMatrix& m) {
  std::vector<std::vector<Integer>> out(m.rows(), std::vector<Integer>(m.cols()));
  for (size_t i = 0; i < m.rows(); ++i) {
    Integer lcm = 1;
    for (size_t j = 0; j < m.cols(); ++j) {
      Integer den = m.at(i, j).get_den();
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
    }
    for (size_t j = 0; j < m.cols(); ++j) {
      Rational v = m.at(i, j) * Rational(lcm);
      REQUIRE(v.get_den() == 1);
      out[i][j] = v.get_num();
    }
  }
  return out;
}

ExactMatrix random_matrix(std::mt19937& rng, size_t rows, size_t cols) {
  std::uniform_int_distribution<int> num(-6, 6);
  std::uniform_int_distribution<int> den(1, 4);
  std::uniform_int_distribution<int> sparse(0, 3);
  ExactMatrix m(rows, cols);
  for (size_t i = 0; i < rows; ++i)
    for (size_t j = 0; j < cols; ++j)
      if (sparse(rng) != 0) m.at(i, j) = make_rational(num(rng), den(rng));
  return m;
}

std::vector<SparseRow> to_sparse(const ExactMatrix& m) {
  std::vector<SparseRow> rows(m.rows());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j)
      if (m.at(i, j) != 0) rows[i].emplace_back(j, m.at(i, j));
  return rows;
}

ExactMatrix from_rref_map(const std::map<size_t, SparseRow>& rref, size_t cols) {
  ExactMatrix m(rref.size(), cols);
  size_t i = 0;
  for (const auto& [piv, row] : rref) {
    for (const auto& [j, v] : row) m.at(i, j) = v;
    ++i;
  }
  return m;
}

}  // namespace

TEST_CASE("rank agrees with the fraction-free oracle") {
  std::mt19937 rng(20240811);
  for (int trial = 0; trial < 60; ++trial) {
    size_t rows = 1 + trial % 8, cols = 1 + (trial * 7) % 10;
    ExactMatrix m = random_matrix(rng, rows, cols);
    long expect = bareiss_rank(scaled_rows(m));
    CHECK(static_cast<long>(m.rank()) == expect);
    CHECK(sparse_rank(to_sparse(m)) == expect);
  }
}

TEST_CASE("rank handles dependent rows") {
  ExactMatrix m(3, 3);
  m.at(0, 0) = 1;
  m.at(0, 2) = Rational(1, 2);
  for (size_t j = 0; j < 3; ++j) m.at(1, j) = m.at(0, j) * Rational(-3);
  m.at(2, 1) = 2;
  CHECK(m.rank() == 2);
  CHECK(bareiss_rank(scaled_rows(m)) == 2);
  CHECK(sparse_rank(to_sparse(m)) == 2);
}

TEST_CASE("row_reduce produces a reduced echelon form") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    ExactMatrix m = random_matrix(rng, 2 + trial % 6, 2 + (trial * 3) % 7);
    ExactMatrix r = m;
    auto pivots = r.row_reduce();
    CHECK(pivots.size() == m.rank());
    for (size_t k = 0; k < pivots.size(); ++k) {
      CHECK(r.at(k, pivots[k]) == 1);
      for (size_t i = 0; i < r.rows(); ++i)
        if (i != k) CHECK(r.at(i, pivots[k]) == 0);
      if (k > 0) CHECK(pivots[k - 1] < pivots[k]);
    }
    // Idempotent.
    ExactMatrix again = r;
    auto pivots2 = again.row_reduce();
    CHECK(pivots2 == pivots);
    CHECK(again == r);
    // Same row space as the input, hence the same reduced form.
    ExactMatrix stacked(m.rows() + r.rows(), m.cols());
    for (size_t i = 0; i < m.rows(); ++i)
      for (size_t j = 0; j < m.cols(); ++j) stacked.at(i, j) = m.at(i, j);
    for (size_t i = 0; i < r.rows(); ++i)
      for (size_t j = 0; j < m.cols(); ++j) stacked.at(m.rows() + i, j) = r.at(i, j);
    CHECK(stacked.rank() == pivots.size());
  }
}

TEST_CASE("sparse_rref matches the dense reduction") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    ExactMatrix m = random_matrix(rng, 2 + trial % 7, 2 + (trial * 5) % 9);
    auto rref = sparse_rref(to_sparse(m));

    ExactMatrix dense = m;
    auto pivots = dense.row_reduce();
    REQUIRE(rref.size() == pivots.size());

    ExactMatrix rebuilt = from_rref_map(rref, m.cols());
    size_t k = 0;
    for (const auto& [piv, row] : rref) {
      CHECK(piv == pivots[k]);
      REQUIRE(!row.empty());
      CHECK(row.front().first == piv);
      CHECK(row.front().second == 1);
      for (const auto& [j, v] : row) {
        CHECK(v != 0);
        CHECK(rebuilt.at(k, j) == dense.at(k, j));
      }
      for (size_t j = 0; j < m.cols(); ++j) CHECK(rebuilt.at(k, j) == dense.at(k, j));
      ++k;
    }
  }
}

TEST_CASE("sparse_axpy is dense addition") {
  std::mt19937 rng(4242);
  for (int trial = 0; trial < 50; ++trial) {
    ExactMatrix m = random_matrix(rng, 2, 8);
    auto rows = to_sparse(m);
    Rational c = make_rational(trial - 25, 1 + trial % 3);
    SparseRow sum = sparse_axpy(rows[0], c, rows[1]);
    for (size_t k = 1; k < sum.size(); ++k) CHECK(sum[k - 1].first < sum[k].first);
    std::vector<Rational> dense(8);
    for (size_t j = 0; j < 8; ++j) dense[j] = m.at(0, j) + c * m.at(1, j);
    std::vector<Rational> got(8);
    for (const auto& [j, v] : sum) {
      CHECK(v != 0);
      got[j] = v;
    }
    CHECK(got == dense);
  }
}

TEST_CASE("matrix product transposes contravariantly") {
  std::mt19937 rng(5);
  ExactMatrix a = random_matrix(rng, 4, 6);
  ExactMatrix b = random_matrix(rng, 6, 3);
  CHECK((a * b).transposed() == b.transposed() * a.transposed());
  CHECK(ExactMatrix::identity(4) * a == a);
}
