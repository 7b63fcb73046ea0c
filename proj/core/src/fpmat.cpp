#include "zipring/fpmat.hpp"

#include <limits>
#include <sstream>
#include <stdexcept>

namespace zipring {

bool is_small_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

long mod_inverse(long a, long p) {
  a %= p;
  if (a < 0) a += p;
  if (a == 0) throw std::domain_error("no inverse of zero");
  // Extended Euclid on (a, p).
  long r0 = a, r1 = p, s0 = 1, s1 = 0;
  while (r1 != 0) {
    long q = r0 / r1;
    long r2 = r0 - q * r1;
    long s2 = s0 - q * s1;
    r0 = r1;
    r1 = r2;
    s0 = s1;
    s1 = s2;
  }
  if (r0 != 1) throw std::domain_error("not invertible mod p");
  return s0 < 0 ? s0 + p : s0;
}

FpMat::FpMat(size_t rows, size_t cols, long p) : rows_(rows), cols_(cols), p_(p) {
  if (p < 2) throw std::invalid_argument("modulus must be at least 2");
  data_.assign(rows * cols, 0);
}

FpMat FpMat::identity(size_t n, long p) {
  FpMat m(n, n, p);
  for (size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1;
  return m;
}

FpMat FpMat::from_rows(const std::vector<std::vector<long>>& rows, long p) {
  size_t r = rows.size();
  size_t c = r == 0 ? 0 : rows[0].size();
  FpMat m(r, c, p);
  for (size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw std::invalid_argument("ragged rows");
    for (size_t j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
  }
  return m;
}

void FpMat::set(size_t i, size_t j, long v) {
  v %= p_;
  if (v < 0) v += p_;
  data_[i * cols_ + j] = v;
}

FpMat FpMat::transposed() const {
  FpMat t(cols_, rows_, p_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) t.data_[j * rows_ + i] = data_[i * cols_ + j];
  return t;
}

FpMat FpMat::row(size_t i) const {
  FpMat r(1, cols_, p_);
  for (size_t j = 0; j < cols_; ++j) r.data_[j] = data_[i * cols_ + j];
  return r;
}

FpMat operator*(const FpMat& a, const FpMat& b) {
  if (a.cols_ != b.rows_ || a.p_ != b.p_) throw std::invalid_argument("shape mismatch");
  FpMat c(a.rows_, b.cols_, a.p_);
  for (size_t i = 0; i < a.rows_; ++i)
    for (size_t k = 0; k < a.cols_; ++k) {
      long aik = a.data_[i * a.cols_ + k];
      if (aik == 0) continue;
      for (size_t j = 0; j < b.cols_; ++j) {
        long v = c.data_[i * c.cols_ + j] + aik * b.data_[k * b.cols_ + j];
        c.data_[i * c.cols_ + j] = v % a.p_;
      }
    }
  return c;
}

std::vector<size_t> FpMat::row_reduce() {
  std::vector<size_t> pivots;
  size_t r = 0;
  for (size_t col = 0; col < cols_ && r < rows_; ++col) {
    size_t sel = r;
    while (sel < rows_ && data_[sel * cols_ + col] == 0) ++sel;
    if (sel == rows_) continue;
    if (sel != r)
      for (size_t j = 0; j < cols_; ++j) std::swap(data_[sel * cols_ + j], data_[r * cols_ + j]);
    long inv = mod_inverse(data_[r * cols_ + col], p_);
    if (inv != 1)
      for (size_t j = col; j < cols_; ++j)
        data_[r * cols_ + j] = data_[r * cols_ + j] * inv % p_;
    for (size_t i = 0; i < rows_; ++i) {
      if (i == r) continue;
      long f = data_[i * cols_ + col];
      if (f == 0) continue;
      for (size_t j = col; j < cols_; ++j) {
        long v = data_[i * cols_ + j] - f * data_[r * cols_ + j];
        v %= p_;
        if (v < 0) v += p_;
        data_[i * cols_ + j] = v;
      }
    }
    pivots.push_back(col);
    ++r;
  }
  return pivots;
}

long FpMat::rank() const {
  FpMat c = *this;
  return static_cast<long>(c.row_reduce().size());
}

bool FpMat::is_invertible() const { return rows_ == cols_ && rank() == static_cast<long>(rows_); }

FpMat FpMat::inverse() const {
  if (rows_ != cols_) throw std::domain_error("not square");
  FpMat aug(rows_, 2 * cols_, p_);
  for (size_t i = 0; i < rows_; ++i) {
    for (size_t j = 0; j < cols_; ++j) aug.data_[i * aug.cols_ + j] = data_[i * cols_ + j];
    aug.data_[i * aug.cols_ + cols_ + i] = 1;
  }
  auto pivots = aug.row_reduce();
  if (pivots.size() != rows_ || (rows_ > 0 && pivots.back() != cols_ - 1))
    throw std::domain_error("singular matrix");
  FpMat inv(rows_, cols_, p_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) inv.data_[i * cols_ + j] = aug.data_[i * aug.cols_ + cols_ + j];
  return inv;
}

FpMat FpMat::pow(unsigned long e) const {
  if (rows_ != cols_) throw std::domain_error("not square");
  FpMat result = identity(rows_, p_);
  FpMat base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

uint64_t FpMat::encode() const {
  uint64_t key = 0;
  uint64_t up = static_cast<uint64_t>(p_);
  for (long v : data_) {
    if (key > (std::numeric_limits<uint64_t>::max() - static_cast<uint64_t>(v)) / up)
      throw std::overflow_error("matrix does not fit in a 64-bit key");
    key = key * up + static_cast<uint64_t>(v);
  }
  return key;
}

FpMat FpMat::decode(uint64_t key, size_t rows, size_t cols, long p) {
  FpMat m(rows, cols, p);
  uint64_t up = static_cast<uint64_t>(p);
  for (size_t i = rows * cols; i-- > 0;) {
    m.data_[i] = static_cast<long>(key % up);
    key /= up;
  }
  if (key != 0) throw std::invalid_argument("key out of range for shape");
  return m;
}

std::string FpMat::to_string() const {
  std::ostringstream out;
  for (size_t i = 0; i < rows_; ++i) {
    if (i > 0) out << "; ";
    for (size_t j = 0; j < cols_; ++j) {
      if (j > 0) out << ' ';
      out << at(i, j);
    }
  }
  return out.str();
}

FpMat row_basis(FpMat m) {
  auto pivots = m.row_reduce();
  FpMat b(pivots.size(), m.cols(), m.p());
  for (size_t i = 0; i < pivots.size(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) b.set(i, j, m.at(i, j));
  return b;
}

FpMat vstack(const FpMat& a, const FpMat& b) {
  if (a.cols() != b.cols() || a.p() != b.p()) throw std::invalid_argument("shape mismatch");
  FpMat s(a.rows() + b.rows(), a.cols(), a.p());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) s.set(i, j, a.at(i, j));
  for (size_t i = 0; i < b.rows(); ++i)
    for (size_t j = 0; j < b.cols(); ++j) s.set(a.rows() + i, j, b.at(i, j));
  return s;
}

FpMat right_kernel(const FpMat& m) {
  FpMat r = m;
  auto pivots = r.row_reduce();
  std::vector<size_t> free_cols;
  {
    size_t pi = 0;
    for (size_t j = 0; j < m.cols(); ++j) {
      if (pi < pivots.size() && pivots[pi] == j)
        ++pi;
      else
        free_cols.push_back(j);
    }
  }
  FpMat k(m.cols(), free_cols.size(), m.p());
  for (size_t fc = 0; fc < free_cols.size(); ++fc) {
    size_t j = free_cols[fc];
    k.set(j, fc, 1);
    // Pivot variable values solving rref * c = 0 with c_j = 1.
    for (size_t i = 0; i < pivots.size(); ++i) k.set(pivots[i], fc, -r.at(i, j));
  }
  return k;
}

FpMat kernel(const FpMat& m) {
  // {x : x m = 0} as rows: transpose the right kernel of m^T.
  return row_basis(right_kernel(m.transposed()).transposed());
}

FpMat map_image(const FpMat& sub, const FpMat& f) { return row_basis(sub * f); }

FpMat map_preimage(const FpMat& sub, const FpMat& f) {
  // x f lies in the row space of sub exactly when (x f) k = 0 for k spanning
  // the right kernel of a basis of that row space.
  FpMat k = right_kernel(row_basis(sub));
  return kernel(f * k);
}

FpMat symplectic_form(int g, long p) {
  FpMat j(2 * static_cast<size_t>(g), 2 * static_cast<size_t>(g), p);
  for (int i = 0; i < g; ++i) {
    j.set(static_cast<size_t>(i), static_cast<size_t>(g + i), 1);
    j.set(static_cast<size_t>(g + i), static_cast<size_t>(i), -1);
  }
  return j;
}

FpMat perp(const FpMat& sub, const FpMat& form) {
  // y is orthogonal to the row space iff y (sub J)^T = 0.
  return kernel((sub * form).transposed());
}

long dim_sum(const FpMat& a, const FpMat& b) { return vstack(a, b).rank(); }

long dim_intersection(const FpMat& a, const FpMat& b) {
  return a.rank() + b.rank() - dim_sum(a, b);
}

bool subspace_contains(const FpMat& space, const FpMat& sub) {
  return dim_sum(space, sub) == space.rank();
}

bool subspace_equal(const FpMat& a, const FpMat& b) {
  return row_basis(a) == row_basis(b);
}

}  // namespace zipring
