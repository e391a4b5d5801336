#include "koszul/sparse_matrix.hpp"

#include <algorithm>
#include <string>

#include "koszul/errors.hpp"

namespace koszul {

namespace {

void sort_entries(std::vector<SparseMatrix::Entry>& entries) {
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    return a.col != b.col ? a.col < b.col : a.row < b.row;
  });
}

}  // namespace

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), col_ptr_(cols + 1, 0) {}

SparseMatrix SparseMatrix::from_triplets(std::size_t rows, std::size_t cols,
                                         std::vector<Entry> entries) {
  sort_entries(entries);
  SparseMatrix m(rows, cols);
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const Entry& e = entries[k];
    if (e.row >= rows || e.col >= cols) {
      throw DimensionError("entry (" + std::to_string(e.row) + ", " +
                           std::to_string(e.col) + ") out of range for " +
                           std::to_string(rows) + "x" + std::to_string(cols));
    }
    if (k > 0 && entries[k - 1].row == e.row && entries[k - 1].col == e.col) {
      throw DimensionError("duplicate entry at (" + std::to_string(e.row) +
                           ", " + std::to_string(e.col) + ")");
    }
    if (e.value == 0) continue;
    m.row_idx_.push_back(e.row);
    m.values_.push_back(e.value);
    ++m.col_ptr_[e.col + 1];
  }
  for (std::size_t c = 0; c < cols; ++c) m.col_ptr_[c + 1] += m.col_ptr_[c];
  return m;
}

SparseMatrix SparseMatrix::accumulate(std::size_t rows, std::size_t cols,
                                      std::vector<Entry> entries) {
  sort_entries(entries);
  std::vector<Entry> merged;
  merged.reserve(entries.size());
  for (auto& e : entries) {
    if (!merged.empty() && merged.back().row == e.row &&
        merged.back().col == e.col) {
      merged.back().value += e.value;
    } else {
      merged.push_back(std::move(e));
    }
  }
  return from_triplets(rows, cols, std::move(merged));
}

SparseMatrix SparseMatrix::identity(std::size_t n) {
  SparseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m.row_idx_.push_back(static_cast<std::uint32_t>(i));
    m.values_.emplace_back(1);
    m.col_ptr_[i + 1] = i + 1;
  }
  return m;
}

SparseMatrix SparseMatrix::from_columns(std::size_t rows,
                                        const std::vector<SparseVector>& columns) {
  SparseMatrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    for (const auto& [r, v] : columns[c]) {
      if (r >= rows) throw DimensionError("column entry out of range");
      if (v == 0) continue;
      m.row_idx_.push_back(r);
      m.values_.push_back(v);
    }
    m.col_ptr_[c + 1] = m.values_.size();
  }
  return m;
}

std::vector<SparseMatrix::Entry> SparseMatrix::entries() const {
  std::vector<Entry> out;
  out.reserve(values_.size());
  for (std::size_t c = 0; c < cols_; ++c) {
    for (std::size_t k = col_ptr_[c]; k < col_ptr_[c + 1]; ++k) {
      out.push_back({row_idx_[k], static_cast<std::uint32_t>(c), values_[k]});
    }
  }
  return out;
}

Scalar SparseMatrix::at(std::size_t row, std::size_t col) const {
  if (row >= rows_ || col >= cols_) throw DimensionError("index out of range");
  auto first = row_idx_.begin() + static_cast<std::ptrdiff_t>(col_ptr_[col]);
  auto last = row_idx_.begin() + static_cast<std::ptrdiff_t>(col_ptr_[col + 1]);
  auto it = std::lower_bound(first, last, static_cast<std::uint32_t>(row));
  if (it == last || *it != row) return Scalar(0);
  return values_[static_cast<std::size_t>(it - row_idx_.begin())];
}

SparseVector SparseMatrix::column(std::size_t col) const {
  SparseVector v;
  v.reserve(col_ptr_[col + 1] - col_ptr_[col]);
  for (std::size_t k = col_ptr_[col]; k < col_ptr_[col + 1]; ++k) {
    v.emplace_back(row_idx_[k], values_[k]);
  }
  return v;
}

SparseMatrix SparseMatrix::transpose() const {
  SparseMatrix t(cols_, rows_);
  std::vector<std::size_t> count(rows_ + 1, 0);
  for (auto r : row_idx_) ++count[r + 1];
  for (std::size_t r = 0; r < rows_; ++r) count[r + 1] += count[r];
  t.col_ptr_ = count;
  t.row_idx_.resize(values_.size());
  t.values_.resize(values_.size());
  for (std::size_t c = 0; c < cols_; ++c) {
    for (std::size_t k = col_ptr_[c]; k < col_ptr_[c + 1]; ++k) {
      std::size_t dst = count[row_idx_[k]]++;
      t.row_idx_[dst] = static_cast<std::uint32_t>(c);
      t.values_[dst] = values_[k];
    }
  }
  return t;
}

SparseMatrix SparseMatrix::scaled(const Scalar& factor) const {
  if (factor == 0) return SparseMatrix(rows_, cols_);
  SparseMatrix m = *this;
  for (auto& v : m.values_) v *= factor;
  return m;
}

SparseMatrix SparseMatrix::select_columns(const std::vector<std::size_t>& which) const {
  std::vector<SparseVector> cols;
  cols.reserve(which.size());
  for (auto c : which) {
    if (c >= cols_) throw DimensionError("column selection out of range");
    cols.push_back(column(c));
  }
  return from_columns(rows_, cols);
}

SparseMatrix SparseMatrix::reduced(const FieldSpec& field) const {
  if (!field.is_prime()) return *this;
  std::vector<Entry> es = entries();
  for (auto& e : es) e.value = reduce(e.value, field);
  return from_triplets(rows_, cols_, std::move(es));
}

SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols_ != b.rows_) {
    throw DimensionError("matrix product shape mismatch: " +
                         std::to_string(a.rows_) + "x" + std::to_string(a.cols_) +
                         " times " + std::to_string(b.rows_) + "x" +
                         std::to_string(b.cols_));
  }
  SparseMatrix out(a.rows_, b.cols_);
  std::vector<Scalar> acc(a.rows_);
  std::vector<char> touched(a.rows_, 0);
  std::vector<std::uint32_t> pattern;
  for (std::size_t j = 0; j < b.cols_; ++j) {
    pattern.clear();
    for (std::size_t kb = b.col_ptr_[j]; kb < b.col_ptr_[j + 1]; ++kb) {
      const std::size_t k = b.row_idx_[kb];
      const Scalar& bv = b.values_[kb];
      for (std::size_t ka = a.col_ptr_[k]; ka < a.col_ptr_[k + 1]; ++ka) {
        const std::uint32_t r = a.row_idx_[ka];
        if (!touched[r]) {
          touched[r] = 1;
          pattern.push_back(r);
          acc[r] = a.values_[ka] * bv;
        } else {
          acc[r] += a.values_[ka] * bv;
        }
      }
    }
    std::sort(pattern.begin(), pattern.end());
    for (auto r : pattern) {
      touched[r] = 0;
      if (acc[r] != 0) {
        out.row_idx_.push_back(r);
        out.values_.push_back(acc[r]);
      }
    }
    out.col_ptr_[j + 1] = out.values_.size();
  }
  return out;
}

namespace {

SparseMatrix combine(const SparseMatrix& a, const SparseMatrix& b, int sign) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("matrix sum shape mismatch");
  }
  std::vector<SparseMatrix::Entry> es = a.entries();
  for (auto& e : b.entries()) {
    es.push_back({e.row, e.col, sign > 0 ? e.value : Scalar(-e.value)});
  }
  return SparseMatrix::accumulate(a.rows(), a.cols(), std::move(es));
}

}  // namespace

SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b) {
  return combine(a, b, 1);
}

SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b) {
  return combine(a, b, -1);
}

bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.col_ptr_ == b.col_ptr_ &&
         a.row_idx_ == b.row_idx_ && a.values_ == b.values_;
}

SparseMatrix SparseMatrix::hstack(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.rows_ != b.rows_) throw DimensionError("hstack row mismatch");
  SparseMatrix m = a;
  m.cols_ = a.cols_ + b.cols_;
  const std::size_t base = a.values_.size();
  m.row_idx_.insert(m.row_idx_.end(), b.row_idx_.begin(), b.row_idx_.end());
  m.values_.insert(m.values_.end(), b.values_.begin(), b.values_.end());
  for (std::size_t c = 0; c < b.cols_; ++c) m.col_ptr_.push_back(base + b.col_ptr_[c + 1]);
  return m;
}

SparseMatrix SparseMatrix::vstack(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols_ != b.cols_) throw DimensionError("vstack column mismatch");
  std::vector<Entry> es = a.entries();
  for (auto& e : b.entries()) {
    es.push_back({static_cast<std::uint32_t>(e.row + a.rows_), e.col, e.value});
  }
  return from_triplets(a.rows_ + b.rows_, a.cols_, std::move(es));
}

SparseVector SparseMatrix::apply(const SparseVector& x) const {
  std::vector<Entry> es;
  for (const auto& [c, xv] : x) {
    if (c >= cols_) throw DimensionError("vector index out of range");
    for (std::size_t k = col_ptr_[c]; k < col_ptr_[c + 1]; ++k) {
      es.push_back({row_idx_[k], 0, values_[k] * xv});
    }
  }
  return accumulate(rows_, 1, std::move(es)).column(0);
}

bool equal_in(const SparseMatrix& a, const SparseMatrix& b,
              const FieldSpec& field) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return (a - b).reduced(field).is_zero();
}

}  // namespace koszul
