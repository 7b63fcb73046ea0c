#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "zipring/rational.hpp"

namespace zipring {

// Dense matrix over Rational.  Sized for per-degree slices of graded rings
// (hundreds of rows/columns), not for general sparse linear algebra.
class ExactMatrix {
 public:
  ExactMatrix(size_t rows, size_t cols);
  static ExactMatrix identity(size_t n);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }

  Rational& at(size_t i, size_t j) { return a_[i * cols_ + j]; }
  const Rational& at(size_t i, size_t j) const { return a_[i * cols_ + j]; }

  ExactMatrix transposed() const;
  ExactMatrix operator*(const ExactMatrix& rhs) const;
  friend bool operator==(const ExactMatrix& a, const ExactMatrix& b);

  // In-place reduction to reduced row echelon form (pivots 1, pivot columns
  // cleared, zero rows at the bottom).  Returns pivot column indices in
  // increasing order.
  std::vector<size_t> row_reduce();

  size_t rank() const;

 private:
  size_t rows_, cols_;
  std::vector<Rational> a_;
};

// Sparse row: (column, nonzero value) pairs sorted by column.
using SparseRow = std::vector<std::pair<size_t, Rational>>;

// a + c*b of two sorted sparse rows, dropping cancellations.
SparseRow sparse_axpy(const SparseRow& a, const Rational& c, const SparseRow& b);

// Rank by forward elimination only.  Rows with few entries are processed
// first to limit fill-in; the input is consumed.
long sparse_rank(std::vector<SparseRow> rows);

// Fully reduced form of the row space: leading coefficient 1, all other
// entries supported on non-pivot columns.  Keyed by pivot column.
std::map<size_t, SparseRow> sparse_rref(std::vector<SparseRow> rows);

}  // namespace zipring
