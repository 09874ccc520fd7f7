#pragma once

#include <cstddef>
#include <vector>

#include <gmpxx.h>

namespace confsink {

/// Exact-integer sparse matrix in coordinate form. Entries are sorted by (column, row), with no
/// duplicates and no stored zeros.
class SparseIntMatrix {
 public:
  struct Entry {
    std::size_t row;
    std::size_t col;
    mpz_class value;
  };

  SparseIntMatrix() = default;
  SparseIntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

  /// Sums duplicate coordinates and drops zeros.
  static SparseIntMatrix from_triplets(std::size_t rows, std::size_t cols, std::vector<Entry> triplets);
  static SparseIntMatrix identity(std::size_t n);
  static SparseIntMatrix from_dense(const std::vector<std::vector<mpz_class>>& dense);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t nonzeros() const noexcept { return entries_.size(); }
  const std::vector<Entry>& entries() const noexcept { return entries_; }

  std::vector<std::vector<mpz_class>> to_dense() const;
  /// Columns of `other` appended on the right; row counts must match.
  SparseIntMatrix hconcat(const SparseIntMatrix& other) const;
  SparseIntMatrix multiply(const SparseIntMatrix& rhs) const;
  bool is_zero() const noexcept { return entries_.empty(); }

  friend bool operator==(const SparseIntMatrix& a, const SparseIntMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Entry> entries_;
};

/// Exact rank over the rationals by fraction-free sparse elimination with a Markowitz-style
/// pivot order.
std::size_t rank_over_rationals(const SparseIntMatrix& m);

/// Nonzero invariant factors d1 | d2 | ... | dr (all positive, r = rank).
std::vector<mpz_class> smith_normal_form(const SparseIntMatrix& m);

/// Invariant factors greater than one.
std::vector<mpz_class> torsion_coefficients(const SparseIntMatrix& m);

}  // namespace confsink
