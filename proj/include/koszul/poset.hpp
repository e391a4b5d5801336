#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "koszul/field.hpp"
#include "koszul/graded.hpp"

namespace koszul {

struct Interval {
  std::uint32_t lower;
  std::uint32_t upper;
  std::size_t length;
};

// A finite poset given by its covers, validated to be graded: inside every
// closed interval all maximal chains have the same length.
class GradedPoset {
 public:
  GradedPoset() = default;
  // InputError on duplicate labels, unknown labels, repeated covers, cycles
  // or a non-graded interval.
  static GradedPoset from_covers(std::vector<std::string> elements,
                                 const std::vector<std::pair<std::string, std::string>>& covers);

  std::size_t size() const { return elements_.size(); }
  const std::string& element(std::size_t i) const { return elements_.at(i); }
  const std::vector<std::string>& elements() const { return elements_; }
  std::optional<std::uint32_t> index_of(const std::string& label) const;
  // Covers as (lower, upper) index pairs, sorted.
  const std::vector<std::pair<std::uint32_t, std::uint32_t>>& covers() const { return covers_; }

  bool leq(std::uint32_t x, std::uint32_t y) const { return length_[x][y] >= 0; }
  // l([x,y]), or nullopt if x ≰ y.
  std::optional<std::size_t> length(std::uint32_t x, std::uint32_t y) const;
  // Maximal interval length L.
  std::size_t max_length() const { return max_length_; }
  // ℐ_p, ordered by (lower, upper).
  std::vector<Interval> intervals(std::size_t p) const;
  // z with x < z < y.
  std::vector<std::uint32_t> open_interval(std::uint32_t x, std::uint32_t y) const;

 private:
  std::vector<std::string> elements_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> covers_;
  std::vector<std::vector<int>> length_;  // -1 when incomparable
  std::size_t max_length_ = 0;
};

// JSON document {"elements": [...], "covers": [[lower, upper], ...]}.
GradedPoset parse_poset(const std::string& document);
GradedPoset load_poset(const std::string& path);
std::string poset_to_json(const GradedPoset& p);

// Basis atom of e_{x,y}.
std::string incidence_atom(const GradedPoset& p, std::uint32_t x, std::uint32_t y);
Base poset_base(const GradedPoset& p, const FieldSpec& field);

// 𝕜^a[P]: A^p spanned by e_{x,y} with l([x,y]) = p, e_{x,y}e_{y,u} = e_{x,u}.
GradedRing incidence_ring(const GradedPoset& p, const FieldSpec& field);
// 𝕜^c[P]: Δ(e_{x,y}) = Σ_z e_{x,z}⊗e_{z,y}.
GradedCoring incidence_coring(const GradedPoset& p, const FieldSpec& field);
// T(V)/I_P with V = span of the covers and I_P generated by the ζ_{x,y}.
GradedRing zeta_ring(const GradedPoset& p, const FieldSpec& field);

// Labels are prefixed "1:" / "2:" when the two sets intersect.
GradedPoset disjoint_union(const GradedPoset& p, const GradedPoset& q);

// Canonical form: invariant under relabeling, equal iff isomorphic.
std::string canonical_form(const GradedPoset& p);

// All graded posets with min..max elements and max_length ≤ the bound, up to
// isomorphism; elements are labeled "0", "1", … in canonical order. Ordered
// by (size, canonical form).
std::vector<GradedPoset> enumerate_corpus(std::size_t min_elements, std::size_t max_elements,
                                          std::size_t max_length = SIZE_MAX);

}  // namespace koszul
