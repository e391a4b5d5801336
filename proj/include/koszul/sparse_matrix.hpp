#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "koszul/field.hpp"

namespace koszul {

// Sparse vector: (index, nonzero value) pairs sorted by index.
using SparseVector = std::vector<std::pair<std::uint32_t, Scalar>>;

// Exact sparse matrix in compressed-column form. Entries are unique per
// (row, col), in range, and never zero.
class SparseMatrix {
 public:
  struct Entry {
    std::uint32_t row;
    std::uint32_t col;
    Scalar value;
  };

  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols);

  // Validates range and uniqueness (DimensionError); zero values are dropped.
  static SparseMatrix from_triplets(std::size_t rows, std::size_t cols,
                                    std::vector<Entry> entries);
  // Like from_triplets, but duplicate positions are summed.
  static SparseMatrix accumulate(std::size_t rows, std::size_t cols,
                                 std::vector<Entry> entries);
  static SparseMatrix identity(std::size_t n);
  static SparseMatrix from_columns(std::size_t rows,
                                   const std::vector<SparseVector>& columns);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nnz() const { return values_.size(); }
  bool is_zero() const { return values_.empty(); }

  // Entries sorted by (col, row).
  std::vector<Entry> entries() const;
  Scalar at(std::size_t row, std::size_t col) const;
  SparseVector column(std::size_t col) const;

  // Raw CSC access for tight loops.
  std::size_t col_begin(std::size_t col) const { return col_ptr_[col]; }
  std::size_t col_end(std::size_t col) const { return col_ptr_[col + 1]; }
  std::uint32_t row_index(std::size_t k) const { return row_idx_[k]; }
  const Scalar& value(std::size_t k) const { return values_[k]; }

  SparseMatrix transpose() const;
  SparseMatrix scaled(const Scalar& factor) const;
  SparseMatrix select_columns(const std::vector<std::size_t>& which) const;

  // Representatives reduced into the field (used before exact comparisons).
  SparseMatrix reduced(const FieldSpec& field) const;

  friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b);
  friend SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b);
  friend SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b);
  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b);

  // [a | b] and [a ; b].
  static SparseMatrix hstack(const SparseMatrix& a, const SparseMatrix& b);
  static SparseMatrix vstack(const SparseMatrix& a, const SparseMatrix& b);

  SparseVector apply(const SparseVector& x) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> col_ptr_{0};
  std::vector<std::uint32_t> row_idx_;
  std::vector<Scalar> values_;
};

// Equality as matrices over `field` (entries compared after reduction).
bool equal_in(const SparseMatrix& a, const SparseMatrix& b,
              const FieldSpec& field);

}  // namespace koszul
