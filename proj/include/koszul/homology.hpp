#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "koszul/bimodule.hpp"
#include "koszul/graded.hpp"

namespace koszul {

using Parts = std::vector<std::size_t>;

// 𝒫_n(m): compositions of m into n positive parts, lexicographic.
std::vector<Parts> partitions(std::size_t n, std::size_t m);

enum class Direction { chain, cochain };

// One summand of a bar-type space: the tensor product indexed by `parts`.
struct Summand {
  Parts parts;
  Bimodule piece;
};

// A bounded complex of bimodules. spaces[k] sits in degree low + k. Chain
// differentials lower the degree, cochain differentials raise it; maps[k]
// joins degrees low + k and low + k + 1. d∘d = 0 is checked on construction.
class ComplexSlice {
 public:
  ComplexSlice(Base base, Direction direction, std::size_t weight, int low,
               std::vector<Bimodule> spaces, std::vector<BimoduleMap> maps);

  Direction direction() const { return direction_; }
  std::size_t weight() const { return weight_; }
  int low() const { return low_; }
  int high() const { return low_ + static_cast<int>(spaces_.size()) - 1; }

  // Zero outside [low, high].
  const Bimodule& space(int n) const;
  // The differential leaving / entering degree n.
  BimoduleMap outgoing(int n) const;
  BimoduleMap incoming(int n) const;

  std::size_t homology_dim(int n) const;
  // Indexed by degree − low.
  std::vector<std::size_t> homology_dims() const;
  long euler_characteristic() const;
  long homology_euler_characteristic() const;

  HomologyClasses homology(int n) const;

  // Direct-sum bookkeeping of bar/cobar spaces (empty otherwise): the
  // summands of degree n and the ambient index of their basis vectors.
  std::vector<std::vector<Summand>> summands;
  std::vector<std::vector<std::vector<std::uint32_t>>> embed;

 private:
  Base base_;
  Direction direction_;
  std::size_t weight_;
  int low_;
  std::vector<Bimodule> spaces_;
  std::vector<BimoduleMap> maps_;
  Bimodule zero_;
};

// Ω_•(A, m): degree n is ⊕_{𝒎∈𝒫_n(m)} A^𝒎 (zero summands dropped), with
// d_n = Σ (−1)^{i−1} id⊗μ⊗id. Degrees 0..m.
ComplexSlice bar_complex_ring(const GradedRing& a, std::size_t m);
// Ω^•(C, m) with d^n = Σ (−1)^{i−1} id⊗Δ_+⊗id.
ComplexSlice cobar_complex_coring(const GradedCoring& c, std::size_t m);

// Exact Betti table; entries listed for every 0 ≤ n ≤ n_max, 0 ≤ m ≤ m_max.
struct BettiTable {
  enum class Kind { tor, ext };
  Kind kind = Kind::tor;
  std::size_t n_max = 0;
  std::size_t m_max = 0;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> entries;

  std::size_t at(std::size_t n, std::size_t m) const;
  // Rows n, columns m.
  std::string to_csv() const;
};

// Weights are independent; `jobs` > 1 computes them on worker threads.
BettiTable tor_table(const GradedRing& a, std::size_t n_max, std::size_t m_max,
                     unsigned jobs = 1);
BettiTable ext_table(const GradedCoring& c, std::size_t n_max, std::size_t m_max,
                     unsigned jobs = 1);

// Default weight bound for tables: 2L.
std::size_t default_weight_bound(std::size_t top_degree);

// Bar homology T(A) with class representatives, computed on demand.
class BarHomology {
 public:
  explicit BarHomology(GradedRing a);
  const GradedRing& ring() const { return a_; }
  const ComplexSlice& slice(std::size_t m);
  const HomologyClasses& classes(std::size_t n, std::size_t m);
  std::size_t dim(std::size_t n, std::size_t m) { return classes(n, m).space.dim(); }

  // Induced deconcatenation T_{p+q,m} → ⊕_{m_1} T_{p,m_1}⊗T_{q,m−m_1}, the
  // target tagged by m_1.
  BimoduleMap coring_component(std::size_t p, std::size_t q, std::size_t m);
  // Dimension of the primitive classes in T_{n,m}, n ≥ 1.
  std::size_t primitive_dim(std::size_t n, std::size_t m);

 private:
  GradedRing a_;
  std::map<std::size_t, ComplexSlice> slices_;
  std::map<std::pair<std::size_t, std::size_t>, HomologyClasses> classes_;
};

// Cobar cohomology E(C) with cocycle representatives.
class CobarCohomology {
 public:
  explicit CobarCohomology(GradedCoring c);
  const GradedCoring& coring() const { return c_; }
  const ComplexSlice& slice(std::size_t m);
  const HomologyClasses& classes(std::size_t n, std::size_t m);
  std::size_t dim(std::size_t n, std::size_t m) { return classes(n, m).space.dim(); }

  // Induced concatenation E^{n,m}⊗E^{n',m'} → E^{n+n',m+m'}. Checks that
  // products of cocycles are cocycles and that coboundaries multiply to
  // coboundaries.
  BimoduleMap ring_component(std::size_t n, std::size_t m, std::size_t n2, std::size_t m2);
  // rank of ⊕_{m_1+m_2=m} E^{1,m_1}⊗E^{n,m_2} → E^{n+1,m}.
  bool generated_in_degree_one(std::size_t n, std::size_t m);

 private:
  GradedCoring c_;
  std::map<std::size_t, ComplexSlice> slices_;
  std::map<std::pair<std::size_t, std::size_t>, HomologyClasses> classes_;
};

// Precondition check shared by the quadraticity tests.
void require_strongly_graded(const GradedRing& a);
void require_strongly_graded(const GradedCoring& c);

struct DegreeCheck {
  bool holds = true;
  std::optional<std::size_t> failing_degree;
};

// T_{2,m} = 0 for 3 ≤ m ≤ m_max (default 2L). PreconditionError unless
// strongly graded.
DegreeCheck quadratic_via_tor(const GradedRing& a, std::optional<std::size_t> m_max = {});
DegreeCheck quadratic_via_ext(const GradedCoring& c, std::optional<std::size_t> m_max = {});

// ⟨A¹, Ker μ^{1,1}⟩ → A bijective, degree by degree up to the support of the
// tensor powers of A¹.
DegreeCheck is_quadratic_direct(const GradedRing& a);
// C → {C_1, Im Δ_{1,1}} bijective.
DegreeCheck is_quadratic_coring_direct(const GradedCoring& c);

struct SequenceCheck {
  std::size_t left = 0, middle = 0, right = 0;
  bool holds() const { return middle == left + right; }
};

// 0 → T_{2,m}(A) → T_{2,m}(A/A^{≥m}) → A^m → 0, by dimensions.
SequenceCheck verify_tor2_sequence(const GradedRing& a, std::size_t m);
// 0 → C_m → E^{2,m}(C_{<m}) → E^{2,m}(C) → 0, by dimensions.
SequenceCheck verify_ext2_sequence(const GradedCoring& c, std::size_t m);

// α_m: (A¹)^{(m)} → Ω_2(A, m), x ↦ {μ_𝒎(x)}_{𝒎∈𝒫_2(m)}.
BimoduleMap alpha_map(const GradedRing& a, const ComplexSlice& bar, std::size_t m);

}  // namespace koszul
