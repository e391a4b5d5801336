#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "koszul/field.hpp"
#include "koszul/sparse_matrix.hpp"

namespace koszul {

// A subspace of k^ambient_dim, spanned by the (independent) columns of basis.
struct Subspace {
  std::size_t ambient_dim = 0;
  SparseMatrix basis;

  std::size_t dim() const { return basis.cols(); }

  static Subspace full(std::size_t n);
  static Subspace zero(std::size_t n);
};

// Rank over the field. Over Q this uses fraction-free integer elimination;
// over F_p it works with residues.
std::size_t rank(const SparseMatrix& m, const FieldSpec& field);

Subspace kernel_basis(const SparseMatrix& m, const FieldSpec& field);

// Spanned by the columns of m at the pivot positions of its elimination.
Subspace image_basis(const SparseMatrix& m, const FieldSpec& field);

// Intersection of a nonempty list of subspaces of the same ambient space.
Subspace intersect(std::span<const Subspace> subspaces, const FieldSpec& field);

// Basis of U + W (independent columns of [U | W]).
Subspace sum(const Subspace& u, const Subspace& w, const FieldSpec& field);

bool contains(const Subspace& space, const SparseMatrix& vectors,
              const FieldSpec& field);

// dim(ambient) − dim(sub); throws ContainmentError if sub ⊄ ambient.
std::size_t quotient_dim(const Subspace& ambient, const Subspace& sub,
                         const FieldSpec& field);

// Incremental row echelon basis with optional coordinate tracking.
//
// Vectors are inserted one at a time; a vector that is dependent on the
// current span is rejected. Reduction of a query vector returns its
// remainder modulo the span (zero at every pivot position) and, when
// tracking is on, the coefficients expressing (query − remainder) in terms of
// the accepted vectors, in insertion order.
class SpanSolver {
 public:
  enum class Pivot { lowest, highest };

  SpanSolver(std::size_t ambient_dim, FieldSpec field,
             Pivot pivot = Pivot::lowest, bool track_coordinates = false);
  ~SpanSolver();
  SpanSolver(SpanSolver&&) noexcept;
  SpanSolver& operator=(SpanSolver&&) noexcept;

  // Returns true if v was independent (and is now part of the span).
  bool insert(const SparseVector& v);
  std::size_t rank() const;
  std::size_t ambient_dim() const { return ambient_dim_; }

  bool in_span(const SparseVector& v) const;
  SparseVector remainder(const SparseVector& v) const;

  // Coordinates of v with respect to the accepted vectors; nullopt if v is
  // outside the span. Requires coordinate tracking.
  std::optional<SparseVector> coordinates(const SparseVector& v) const;

  // Pivot positions of the accepted vectors, in insertion order.
  std::vector<std::uint32_t> pivots() const;

  // Echelon basis (unit pivots), in insertion order. With `reduced`, each
  // vector is also zero at every other pivot.
  std::vector<SparseVector> basis(bool reduced = true) const;

  struct Impl;

 private:
  std::size_t ambient_dim_;
  std::unique_ptr<Impl> impl_;
};

}  // namespace koszul
