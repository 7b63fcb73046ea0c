#include "zipring/matrix.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace zipring {

ExactMatrix::ExactMatrix(size_t rows, size_t cols)
    : rows_(rows), cols_(cols), a_(rows * cols) {}

ExactMatrix ExactMatrix::identity(size_t n) {
  ExactMatrix m(n, n);
  for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

ExactMatrix ExactMatrix::transposed() const {
  ExactMatrix t(cols_, rows_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

ExactMatrix ExactMatrix::operator*(const ExactMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("matrix shape mismatch");
  ExactMatrix out(rows_, rhs.cols_);
  Rational t;
  for (size_t i = 0; i < rows_; ++i)
    for (size_t k = 0; k < cols_; ++k) {
      const Rational& aik = at(i, k);
      if (aik == 0) continue;
      for (size_t j = 0; j < rhs.cols_; ++j) {
        if (rhs.at(k, j) == 0) continue;
        t = aik * rhs.at(k, j);
        out.at(i, j) += t;
      }
    }
  return out;
}

bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
}

std::vector<size_t> ExactMatrix::row_reduce() {
  std::vector<size_t> pivots;
  size_t r = 0;
  Rational f, t;
  for (size_t c = 0; c < cols_ && r < rows_; ++c) {
    size_t pr = r;
    while (pr < rows_ && at(pr, c) == 0) ++pr;
    if (pr == rows_) continue;
    if (pr != r)
      for (size_t j = c; j < cols_; ++j) std::swap(at(pr, j), at(r, j));
    if (at(r, c) != 1) {
      f = at(r, c);
      at(r, c) = 1;
      for (size_t j = c + 1; j < cols_; ++j)
        if (at(r, j) != 0) at(r, j) /= f;
    }
    for (size_t i = 0; i < rows_; ++i) {
      if (i == r || at(i, c) == 0) continue;
      f = at(i, c);
      at(i, c) = 0;
      for (size_t j = c + 1; j < cols_; ++j) {
        if (at(r, j) == 0) continue;
        t = f * at(r, j);
        at(i, j) -= t;
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

size_t ExactMatrix::rank() const {
  ExactMatrix copy = *this;
  return copy.row_reduce().size();
}

SparseRow sparse_axpy(const SparseRow& a, const Rational& c, const SparseRow& b) {
  SparseRow out;
  out.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  Rational t;
  while (i < a.size() && j < b.size()) {
    if (a[i].first < b[j].first) {
      out.push_back(a[i++]);
    } else if (a[i].first > b[j].first) {
      t = c * b[j].second;
      if (t != 0) out.emplace_back(b[j].first, t);
      ++j;
    } else {
      t = c * b[j].second;
      t += a[i].second;
      if (t != 0) out.emplace_back(a[i].first, t);
      ++i;
      ++j;
    }
  }
  while (i < a.size()) out.push_back(a[i++]);
  while (j < b.size()) {
    t = c * b[j].second;
    if (t != 0) out.emplace_back(b[j].first, t);
    ++j;
  }
  return out;
}

namespace {

// Reduce `row` against the pivots, adopting it as a new pivot when a fresh
// leading column survives.  Returns true in that case.
bool eliminate_into(std::map<size_t, SparseRow>& pivots, SparseRow row) {
  while (!row.empty()) {
    auto it = pivots.find(row.front().first);
    if (it == pivots.end()) {
      Rational lead = row.front().second;
      if (lead != 1)
        for (auto& [col, v] : row) v /= lead;
      pivots.emplace(row.front().first, std::move(row));
      return true;
    }
    Rational c = -row.front().second;
    row = sparse_axpy(row, c, it->second);
  }
  return false;
}

}  // namespace

long sparse_rank(std::vector<SparseRow> rows) {
  std::sort(rows.begin(), rows.end(),
            [](const SparseRow& a, const SparseRow& b) { return a.size() < b.size(); });
  std::map<size_t, SparseRow> pivots;
  long rank = 0;
  for (auto& row : rows)
    if (eliminate_into(pivots, std::move(row))) ++rank;
  return rank;
}

std::map<size_t, SparseRow> sparse_rref(std::vector<SparseRow> rows) {
  std::sort(rows.begin(), rows.end(),
            [](const SparseRow& a, const SparseRow& b) { return a.size() < b.size(); });
  std::map<size_t, SparseRow> pivots;
  for (auto& row : rows) eliminate_into(pivots, std::move(row));
  // Back substitution, deepest pivot first, so every row consulted is
  // already fully reduced.
  for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
    SparseRow& row = it->second;
    for (size_t k = 1; k < row.size();) {
      auto hit = pivots.find(row[k].first);
      if (hit == pivots.end()) {
        ++k;
        continue;
      }
      Rational c = -row[k].second;
      row = sparse_axpy(row, c, hit->second);
      // the eliminated column vanished; rescan from the same index
    }
  }
  return pivots;
}

}  // namespace zipring
