#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "koszul/graded.hpp"
#include "koszul/homology.hpp"

namespace koszul {

// A connected graded ring and coring joined by θ: C_1 → A^1, invertible, with
// μ^{1,1}∘(θ⊗θ)∘Δ_{1,1} = 0. Both conditions are checked on construction
// (InternalError).
struct AlmostKoszulPair {
  AlmostKoszulPair(GradedRing ring, GradedCoring coring, BimoduleMap theta);

  GradedRing ring;
  GradedCoring coring;
  BimoduleMap theta;
};

// The identification of two bimodules with the same blocks and labels.
BimoduleMap relabel_identity(const Bimodule& from, const Bimodule& to);

// (A, A^!) with θ = id; PreconditionError unless A is strongly graded.
AlmostKoszulPair make_pair_shriek_ring(const GradedRing& a);
// (C^!, C) with θ = id; PreconditionError unless C is strongly graded.
AlmostKoszulPair make_pair_shriek_coring(const GradedCoring& c);

// K^l_•(A, C, m): chain complex with K^l_n = A^{m−n}⊗C_n, d(a⊗c) =
// Σ a θ(c_{1,1})⊗c_{2,n−1}, and K^l_{−1} = R in weight 0.
ComplexSlice koszul_complex_left(const AlmostKoszulPair& pair, std::size_t m);
// K^•_r(A, C, m): cochain complex with K^n_r = A^n⊗C_{m−n}, same formula,
// and K^{−1}_r = R in weight 0.
ComplexSlice koszul_complex_right(const AlmostKoszulPair& pair, std::size_t m);
// K^•_r of the opposite pair: C_{m−n}⊗A^n with d(c⊗a) = Σ c_{1,p−1}⊗θ(c_{2,1})a.
ComplexSlice koszul_complex_opposite(const AlmostKoszulPair& pair, std::size_t m);

struct Exactness {
  bool exact = true;
  std::vector<std::size_t> homology_dims;  // indexed by degree − low
};
Exactness is_exact(const ComplexSlice& slice);

// Both tensor factors vanish above their tops, so every slice of weight
// above top(A) + top(C) is zero.
std::size_t pair_weight_bound(const AlmostKoszulPair& pair);

// φ^A_n: A^!_n → T_n(A) bijective, tested on cycle representatives against
// dim T_n = Σ_{m ≤ bound} T_{n,m}.
bool phi_shriek_ring_check(BarHomology& bar, std::size_t n, std::size_t bound);
bool phi_shriek_ring_check(const GradedRing& a, std::size_t n);
// φ_C^n: E^n(C) → C^!_n, x_1⊗…⊗x_n ↦ x_1⋯x_n, bijective.
bool phi_shriek_coring_check(CobarCohomology& cobar, std::size_t n, std::size_t bound);
bool phi_shriek_coring_check(const GradedCoring& c, std::size_t n);

struct CriterionResult {
  std::string id;
  // Votes must all agree; other entries are consistency checks.
  bool vote = true;
  bool pass = false;
  std::string evidence;
};

struct KoszulVerdict {
  bool verdict = false;
  std::size_t m_bound_used = 0;
  // False when the shriek partner hit the degree cap: then the verdict only
  // covers weights up to m_bound_used.
  bool sound = true;
  // First weight with a non-exact Koszul complex slice.
  std::optional<std::size_t> witness_weight;
  std::vector<CriterionResult> criteria;

  const CriterionResult& criterion(const std::string& id) const;
  // {verdict, m_bound_used, sound, witness_weight, criteria: [{id, vote, pass, evidence}]}
  std::string to_json() const;
};

struct DecideOptions {
  // Overrides the weight bound top(A) + top(A^!) (only for reporting: a
  // smaller bound marks the verdict unsound).
  std::optional<std::size_t> m_max;
  unsigned jobs = 1;
};

// Votes: pair_exactness, phi, primitives, tor_diagonal;
// consistency: quadratic (Koszul implies quadratic). Disagreement throws
// InternalError. PreconditionError unless strongly graded.
KoszulVerdict decide_koszul_ring(const GradedRing& a, const DecideOptions& options = {});
// Votes: pair_exactness, phi, ext_strongly_graded, ext_diagonal;
// consistency: quadratic.
KoszulVerdict decide_koszul_coring(const GradedCoring& c, const DecideOptions& options = {});

// Exactness of every K^l slice of the pair up to its weight bound.
bool pair_is_koszul(const AlmostKoszulPair& pair, unsigned jobs = 1);

// (A×B, C⊕D) with θ componentwise; InputError on shared idempotent names.
AlmostKoszulPair pair_product(const AlmostKoszulPair& p, const AlmostKoszulPair& q);

}  // namespace koszul
