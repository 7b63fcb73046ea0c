#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace zipring {

bool is_small_prime(long p);

// Dense matrix over the prime field F_p, entries stored in [0, p).
// Convention used throughout: vectors are rows, linear maps act on the
// right (y = x * M), and a subspace is the row space of a matrix.
class FpMat {
 public:
  FpMat(size_t rows, size_t cols, long p);
  static FpMat identity(size_t n, long p);
  static FpMat from_rows(const std::vector<std::vector<long>>& rows, long p);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  long p() const { return p_; }

  long at(size_t i, size_t j) const { return data_[i * cols_ + j]; }
  // Reduces v mod p, so negative values are accepted.
  void set(size_t i, size_t j, long v);

  FpMat transposed() const;
  FpMat row(size_t i) const;

  friend FpMat operator*(const FpMat& a, const FpMat& b);
  friend bool operator==(const FpMat&, const FpMat&) = default;

  // In-place reduced row echelon form; returns the pivot columns (ascending).
  std::vector<size_t> row_reduce();
  long rank() const;
  FpMat inverse() const;  // throws std::domain_error when singular
  bool is_invertible() const;
  FpMat pow(unsigned long e) const;

  // Base-p integer key, row-major, first entry most significant.  Throws
  // std::overflow_error when p^(rows*cols) does not fit in 64 bits.
  uint64_t encode() const;
  static FpMat decode(uint64_t key, size_t rows, size_t cols, long p);

  // "0 1; 1 0"
  std::string to_string() const;

 private:
  size_t rows_ = 0;
  size_t cols_ = 0;
  long p_ = 2;
  std::vector<long> data_;
};

long mod_inverse(long a, long p);

// Subspace helpers.  The canonical basis of a row space is its reduced row
// echelon form with zero rows dropped, so two matrices span the same
// subspace exactly when their canonical bases are equal.  A 0 x n matrix is
// the zero subspace.
FpMat row_basis(FpMat m);
FpMat vstack(const FpMat& a, const FpMat& b);
// {x : x m = 0}, canonical basis.
FpMat kernel(const FpMat& m);
// Columns span {c : m c = 0}.
FpMat right_kernel(const FpMat& m);
// row space of (sub * f), canonical basis.
FpMat map_image(const FpMat& sub, const FpMat& f);
// {x : x f in rowspace(sub)}, canonical basis.
FpMat map_preimage(const FpMat& sub, const FpMat& f);

// Gram matrix J of the standard alternating form <x,y> = x J y^T in the
// basis e_1..e_g, f_1..f_g: blocks [[0, I], [-I, 0]].
FpMat symplectic_form(int g, long p);
// {y : x J y^T = 0 for all x in the row space}, canonical basis.
FpMat perp(const FpMat& sub, const FpMat& form);

long dim_sum(const FpMat& a, const FpMat& b);
long dim_intersection(const FpMat& a, const FpMat& b);
bool subspace_contains(const FpMat& space, const FpMat& sub);
bool subspace_equal(const FpMat& a, const FpMat& b);

}  // namespace zipring
