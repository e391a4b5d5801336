#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "koszul/bimodule.hpp"

namespace koszul {

using Degrees = std::pair<std::size_t, std::size_t>;

// Connected graded R-ring with components A^0 = R, A^1, …, A^top. Only the
// products μ^{p,q} with p, q ≥ 1 and p + q ≤ top are stored; products with a
// degree-0 factor are the canonical identifications.
class GradedRing {
 public:
  GradedRing() = default;
  // Validates connectedness, shapes and associativity (InternalError /
  // DimensionError). `truncated` records that nonzero components above top
  // were discarded.
  GradedRing(Base base, std::vector<Bimodule> components,
             std::map<Degrees, BimoduleMap> mult, bool truncated = false);

  const Base& base() const { return base_; }
  std::size_t top_degree() const { return components_.size() - 1; }
  bool truncated() const { return truncated_; }
  // Zero bimodule above top.
  const Bimodule& component(std::size_t n) const;
  std::size_t dim(std::size_t n) const { return component(n).dim(); }
  // Atoms per label in degree n; DimensionError if not uniform.
  std::size_t label_width(std::size_t n) const;

  // μ^{p,q}: A^p⊗A^q → A^{p+q}, for any p, q.
  BimoduleMap mu(std::size_t p, std::size_t q) const;
  // μ_𝒎: A^{m_1}⊗…⊗A^{m_k} → A^{|𝒎|}.
  BimoduleMap mu_parts(const std::vector<std::size_t>& parts) const;
  // μ_n: (A^1)^{(n)} → A^n.
  BimoduleMap mu_n(std::size_t n) const;

  // Exhaustive associativity check for p + q + r ≤ top.
  void validate() const;

  // Components 0..top (top ≤ top_degree()).
  GradedRing truncate(std::size_t top) const;

 private:
  Base base_;
  std::vector<Bimodule> components_;
  std::map<Degrees, BimoduleMap> mult_;
  Bimodule zero_;
  bool truncated_ = false;
};

// Connected graded R-coring C_0 = R, C_1, …, C_top with Δ_{p,q}, p, q ≥ 1.
class GradedCoring {
 public:
  GradedCoring() = default;
  GradedCoring(Base base, std::vector<Bimodule> components,
               std::map<Degrees, BimoduleMap> comult, bool truncated = false);

  const Base& base() const { return base_; }
  std::size_t top_degree() const { return components_.size() - 1; }
  bool truncated() const { return truncated_; }
  const Bimodule& component(std::size_t n) const;
  std::size_t dim(std::size_t n) const { return component(n).dim(); }
  std::size_t label_width(std::size_t n) const;

  // Δ_{p,q}: C_{p+q} → C_p⊗C_q, for any p, q.
  BimoduleMap delta(std::size_t p, std::size_t q) const;
  // Δ_𝒎: C_{|𝒎|} → C_{m_1}⊗…⊗C_{m_k}.
  BimoduleMap delta_parts(const std::vector<std::size_t>& parts) const;
  // Δ^n: C_n → C_1^{(n)}.
  BimoduleMap delta_n(std::size_t n) const;

  void validate() const;
  GradedCoring truncate(std::size_t top) const;

 private:
  Base base_;
  std::vector<Bimodule> components_;
  std::map<Degrees, BimoduleMap> comult_;
  Bimodule zero_;
  bool truncated_ = false;
};

struct StrongGrading {
  bool holds = true;
  std::optional<std::size_t> failing_degree;
  // A vector of A^n outside the image of μ_n, or a nonzero element of Ker Δ^n.
  SparseVector witness;
};

StrongGrading is_strongly_graded_ring(const GradedRing& a);
StrongGrading is_strongly_graded_coring(const GradedCoring& c);

// n ↦ dim of primitives in C_n (kernel of ⊕_{p+q=n} Δ_{p,q}), n = 1..top.
std::map<std::size_t, std::size_t> primitive_dims(const GradedCoring& c);
// n ↦ dim (QA)_n = dim A^n − rank ⊕_{p+q=n} μ^{p,q}, n = 1..top.
std::map<std::size_t, std::size_t> indecomposable_dims(const GradedRing& a);

// A sub-bimodule W ⊆ V⊗V.
struct QuadraticData {
  Bimodule v;
  SubBimodule w;
};

// ⟨V, W⟩_n = V^{(n)} / ⟨W⟩^n for n ≤ top, on the normal monomials.
GradedRing quadratic_ring_of(const QuadraticData& data, std::size_t top);
// {V, W}_n = ⋂_p V^{(p-1)}⊗W⊗V^{(n-p-1)} for n ≤ top.
GradedCoring quadratic_coring_of(const QuadraticData& data, std::size_t top);

// The ideal component ⟨W⟩^n ⊆ V^{(n)}, and the quotient realizing ⟨V,W⟩_n.
SubBimodule ideal_component(const QuadraticData& data, std::size_t n);
// The sub-bimodule {V,W}_n ⊆ V^{(n)}.
SubBimodule coideal_component(const QuadraticData& data, std::size_t n);

// Largest n ≤ cap with V^{(n)} ≠ 0; `reached_cap` if V^{(cap+1)} ≠ 0 too.
std::size_t tensor_support(const Bimodule& v, std::size_t cap, bool* reached_cap = nullptr);

inline constexpr std::size_t kDefaultShriekCap = 16;

// A^! = {A^1, Ker μ^{1,1}} and C^! = ⟨C_1, Im Δ_{1,1}⟩; the top degree is the
// support of the degree-1 tensor powers, capped (truncated flag set).
GradedCoring shriek_of_ring(const GradedRing& a, std::size_t cap = kDefaultShriekCap);
GradedRing shriek_of_coring(const GradedCoring& c, std::size_t cap = kDefaultShriekCap);

// Products over the union of the idempotent sets (which must be disjoint).
GradedRing direct_product(const GradedRing& a, const GradedRing& b);
GradedCoring direct_sum_corings(const GradedCoring& c, const GradedCoring& d);

// Rebases a bimodule / map onto a larger base; idempotent s goes to index[s].
Bimodule rebase(const Bimodule& v, const Base& base, const std::vector<std::uint32_t>& index);
BimoduleMap rebase(const BimoduleMap& f, const Base& base,
                   const std::vector<std::uint32_t>& index);

// Structure constants compared degreewise (same bases, labels and maps).
bool same_structure(const GradedRing& a, const GradedRing& b);
bool same_structure(const GradedCoring& c, const GradedCoring& d);

}  // namespace koszul
