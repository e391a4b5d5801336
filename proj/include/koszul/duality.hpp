#pragma once

#include <functional>

#include "koszul/graded.hpp"
#include "koszul/koszul.hpp"
#include "koszul/poset.hpp"

namespace koszul {

// Degreewise duals over the same k^S (blocks are not transposed: with R
// commutative, the dual of V_{s,t} sits in block (s,t)). Dual basis labels
// come from dual_label, so e_{x,y} becomes f_{x,y}.

// ^*gr A: Δ_{p,q} = ψ∘(μ^{p,q})^T; φ∘Δ_{p,q} = (μ^{p,q})^T is asserted.
GradedCoring graded_left_dual_of_ring(const GradedRing& a);
// ^*gr C with the convolution product μ^{p,q} = (Δ_{p,q})^T∘φ.
GradedRing graded_left_dual_of_coring(const GradedCoring& c);
// A^{*gr} and C^{*gr}, through the right-hand pairing φ_r(α⊗β)(v⊗w) = β(α(v)w).
GradedCoring graded_right_dual_of_ring(const GradedRing& a);
GradedRing graded_right_dual_of_coring(const GradedCoring& c);

// (^*gr C, ^*gr A) with θ^T; the compatibility is re-checked by the pair
// constructor.
AlmostKoszulPair dual_pair(const AlmostKoszulPair& pair);

// (^*gr A)^{*gr} ≅ A and (^*gr C)^{*gr} ≅ C by structure constants under the
// evaluation relabeling.
bool double_dual_check(const GradedRing& a);
bool double_dual_check(const GradedCoring& c);

using Relabel = std::function<Label(const Label&)>;

// χ_n: basis vector with label l ↦ basis vector with label relabel(l), in the
// same block; true iff every χ_n is a bijection compatible with the
// (co)multiplications.
bool isomorphic_under(const GradedRing& a, const GradedRing& b, const Relabel& relabel);
bool isomorphic_under(const GradedCoring& c, const GradedCoring& d, const Relabel& relabel);

// χ_P: 𝕜^a[P] ≅ ^*gr 𝕜^c[P] (e_{x,y} ↦ f_{x,y}) and 𝕜^c[P] ≅ ^*gr 𝕜^a[P].
bool incidence_duality_check(const GradedPoset& p, const FieldSpec& field);

}  // namespace koszul
