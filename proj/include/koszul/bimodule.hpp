#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "koszul/field.hpp"
#include "koszul/sparse_matrix.hpp"

namespace koszul {

// A basis label is a word of atoms; tensor products concatenate words.
using Label = std::vector<std::string>;

// Atoms joined by "⊗"; the empty word prints as "1".
std::string label_string(const Label& label);

// The split commutative semisimple ring k^S.
class BaseRing {
 public:
  BaseRing(std::vector<std::string> idempotents, FieldSpec field);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<std::uint32_t> index_of(const std::string& name) const;
  const FieldSpec& field() const { return field_; }

  bool operator==(const BaseRing& other) const {
    return names_ == other.names_ && field_ == other.field_;
  }

 private:
  std::vector<std::string> names_;
  std::map<std::string, std::uint32_t> index_;
  FieldSpec field_;
};

using Base = std::shared_ptr<const BaseRing>;

Base make_base(std::vector<std::string> idempotents, FieldSpec field);

// Same object or equal contents.
bool same_base(const Base& a, const Base& b);

using BlockKey = std::pair<std::uint32_t, std::uint32_t>;

// An R-bimodule given by its S×S blocks e_s V e_t, each with an ordered list
// of basis labels. The global basis lists blocks in row-major (s, t) order.
// Labels are sorted within a block and unique per block. Cheap to copy.
class Bimodule {
 public:
  Bimodule() = default;

  static Bimodule from_blocks(Base base, std::map<BlockKey, std::vector<Label>> blocks);
  static Bimodule zero(Base base);
  // R itself: block (s, s) spanned by the empty word.
  static Bimodule regular(Base base);

  const Base& base() const;
  std::size_t dim() const;
  std::size_t block_dim(std::uint32_t s, std::uint32_t t) const;
  std::size_t block_offset(std::uint32_t s, std::uint32_t t) const;
  const std::vector<Label>& block_labels(std::uint32_t s, std::uint32_t t) const;
  const Label& label(std::size_t i) const;
  BlockKey block_of(std::size_t i) const;

  std::optional<std::uint32_t> locate(std::uint32_t s, std::uint32_t t,
                                      const Label& label) const;
  // Throws DimensionError if absent.
  std::uint32_t index(std::uint32_t s, std::uint32_t t, const Label& label) const;

  // Nonzero blocks in row-major order.
  std::vector<BlockKey> nonzero_blocks() const;

  friend bool operator==(const Bimodule& a, const Bimodule& b);

  struct Impl;

 private:
  std::shared_ptr<const Impl> impl_;
  explicit Bimodule(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
};

// An R-bilinear map, stored as one matrix in the global bases; entries only
// connect basis vectors of equal blocks.
class BimoduleMap {
 public:
  BimoduleMap() = default;
  // Validates shape and block compatibility (DimensionError).
  BimoduleMap(Bimodule source, Bimodule target, SparseMatrix matrix);

  static BimoduleMap zero(Bimodule source, Bimodule target);
  static BimoduleMap identity(Bimodule v);

  const Bimodule& source() const { return source_; }
  const Bimodule& target() const { return target_; }
  const SparseMatrix& matrix() const { return matrix_; }
  const FieldSpec& field() const { return source_.base()->field(); }

  SparseMatrix block(std::uint32_t s, std::uint32_t t) const;
  // Computed block by block.
  std::size_t rank() const;
  bool is_zero() const;

  SparseVector apply(const SparseVector& x) const { return matrix_.apply(x); }
  BimoduleMap scaled(const Scalar& c) const;

  // g * f = g ∘ f.
  friend BimoduleMap operator*(const BimoduleMap& g, const BimoduleMap& f);
  friend BimoduleMap operator+(const BimoduleMap& a, const BimoduleMap& b);
  friend BimoduleMap operator-(const BimoduleMap& a, const BimoduleMap& b);

 private:
  Bimodule source_;
  Bimodule target_;
  SparseMatrix matrix_;
};

// Equal source, target and matrix over the base field.
bool equal_in(const BimoduleMap& a, const BimoduleMap& b);

// Collects matrix entries (summing repeats) for a map between fixed bimodules.
class MapBuilder {
 public:
  MapBuilder(Bimodule source, Bimodule target);
  void add(std::uint32_t target_index, std::uint32_t source_index, const Scalar& value);
  BimoduleMap build();

 private:
  Bimodule source_;
  Bimodule target_;
  std::vector<SparseMatrix::Entry> entries_;
};

// (V⊗W)_{s,u} = ⊕_t V_{s,t}⊗W_{t,u}, labels concatenated.
Bimodule tensor(const Bimodule& v, const Bimodule& w);
Bimodule tensor_power(const Bimodule& v, std::size_t n);

// Position of v_i⊗w_j inside vw = tensor(v, w); nullopt if the middle
// idempotents differ.
std::optional<std::uint32_t> tensor_index(const Bimodule& v, const Bimodule& w,
                                          const Bimodule& vw, std::size_t i,
                                          std::size_t j);

BimoduleMap tensor_map(const BimoduleMap& f, const BimoduleMap& g);
// f_1 ⊗ f_2 ⊗ … ⊗ f_k (left to right); an empty list gives id_R.
BimoduleMap tensor_maps(const Base& base, const std::vector<BimoduleMap>& fs);

// Tagged direct sum: labels become [tag] + label. embed[k][i] is the index of
// basis vector i of summand k.
struct DirectSum {
  Bimodule sum;
  std::vector<std::vector<std::uint32_t>> embed;
};
DirectSum direct_sum(const Base& base,
                     const std::vector<std::pair<std::string, Bimodule>>& summands);

// Maps out of one source, stacked into the tagged direct sum of their targets.
BimoduleMap stack_maps(const std::vector<std::pair<std::string, BimoduleMap>>& maps);
// Maps into one target, joined on the tagged direct sum of their sources.
BimoduleMap join_maps(const std::vector<std::pair<std::string, BimoduleMap>>& maps);

// A sub-bimodule presented by a basis of block-homogeneous vectors of the
// ambient space in reduced echelon form; each basis vector is labeled by the
// ambient label at its pivot.
struct SubBimodule {
  Bimodule space;
  BimoduleMap inclusion;  // space → ambient

  const Bimodule& ambient() const { return inclusion.target(); }
  std::size_t dim() const { return space.dim(); }
};

enum class PivotOrder { lowest, highest };

// Span of the given ambient vectors; each must lie in a single block.
SubBimodule span_in(const Bimodule& ambient, const std::vector<SparseVector>& vectors,
                    PivotOrder order = PivotOrder::lowest);
SubBimodule whole(const Bimodule& ambient);
SubBimodule kernel(const BimoduleMap& f);
SubBimodule image(const BimoduleMap& f);
// Nonempty list, common ambient.
SubBimodule intersect(const std::vector<SubBimodule>& subs);
bool contains(const SubBimodule& sub, const SparseVector& v);

// ambient / sub, realized on the ambient basis vectors that are not pivots of
// sub in highest-pivot echelon form ("normal" vectors, labels kept).
struct Quotient {
  Bimodule space;
  BimoduleMap projection;  // ambient → space
  BimoduleMap section;     // space → ambient, normal vectors
};
Quotient quotient(const SubBimodule& sub);

// Homology at one spot of a complex: cycles Z ⊇ boundaries B in the same
// ambient space. Classes are represented by cycles extending a basis of B;
// the projection vanishes on B and on a fixed complement of Z, so on cycles
// it computes classes and it is a chain map to the homology.
struct HomologyClasses {
  Bimodule space;
  BimoduleMap representatives;  // space → ambient
  BimoduleMap projection;       // ambient → space
};
HomologyClasses homology_classes(const SubBimodule& cycles, const SubBimodule& boundaries);

// Coordinates of v (an ambient vector) in the basis of sub; nullopt if v is
// not in sub.
std::optional<SparseVector> coordinates_in(const SubBimodule& sub, const SparseVector& v);

// g with inj ∘ g = f, for an injective inj with the same target as f;
// InternalError if f does not factor.
BimoduleMap factor_through(const BimoduleMap& f, const BimoduleMap& inj);

// Label of the dual basis vector: atoms "e_…" ↔ "f_…", otherwise a leading
// "*" is added or removed. Involutive.
std::string dual_atom(const std::string& atom);
Label dual_label(const Label& label);

// ^*V: the dual of V_{s,t} sits in block (s,t) (commutative base).
Bimodule left_dual(const Bimodule& v);
// V^*: same block data; pairs via the right-hand formulas.
Bimodule right_dual(const Bimodule& v);

// φ: ^*V⊗^*W → ^*(V⊗W), φ(α⊗β)(v⊗w) = α(vβ(w)), and its inverse ψ.
struct DualTensorIso {
  BimoduleMap phi;
  BimoduleMap psi;
};
DualTensorIso dual_tensor_iso(const Bimodule& v, const Bimodule& w);
// φ_r(α⊗β)(v⊗w) = β(α(v)w) on V^*⊗W^* → (V⊗W)^*, and its inverse.
DualTensorIso dual_tensor_iso_right(const Bimodule& v, const Bimodule& w);

// Transpose of f: V → W as a map ^*W → ^*V.
BimoduleMap dual_map(const BimoduleMap& f);

}  // namespace koszul
