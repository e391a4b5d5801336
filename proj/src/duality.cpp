#include "koszul/duality.hpp"

#include <algorithm>

#include "koszul/errors.hpp"

namespace koszul {

namespace {

enum class Side { left, right };

DualTensorIso iso(const Bimodule& v, const Bimodule& w, Side side) {
  return side == Side::left ? dual_tensor_iso(v, w) : dual_tensor_iso_right(v, w);
}

Bimodule dual_of(const Bimodule& v, Side side) {
  return side == Side::left ? left_dual(v) : right_dual(v);
}

GradedCoring dual_of_ring(const GradedRing& a, Side side) {
  std::vector<Bimodule> comps;
  for (std::size_t n = 0; n <= a.top_degree(); ++n) comps.push_back(dual_of(a.component(n), side));
  std::map<Degrees, BimoduleMap> comult;
  for (std::size_t p = 1; p <= a.top_degree(); ++p) {
    for (std::size_t q = 1; p + q <= a.top_degree(); ++q) {
      const BimoduleMap mu_t = dual_map(a.mu(p, q));
      const DualTensorIso t = iso(a.component(p), a.component(q), side);
      BimoduleMap delta = t.psi * mu_t;
      if (!equal_in(t.phi * delta, mu_t)) {
        throw InternalError("dual coring: φ∘Δ differs from the transpose of μ");
      }
      comult.emplace(Degrees{p, q}, std::move(delta));
    }
  }
  return GradedCoring(a.base(), std::move(comps), std::move(comult), a.truncated());
}

GradedRing dual_of_coring(const GradedCoring& c, Side side) {
  std::vector<Bimodule> comps;
  for (std::size_t n = 0; n <= c.top_degree(); ++n) comps.push_back(dual_of(c.component(n), side));
  std::map<Degrees, BimoduleMap> mult;
  for (std::size_t p = 1; p <= c.top_degree(); ++p) {
    for (std::size_t q = 1; p + q <= c.top_degree(); ++q) {
      const DualTensorIso t = iso(c.component(p), c.component(q), side);
      mult.emplace(Degrees{p, q}, dual_map(c.delta(p, q)) * t.phi);
    }
  }
  return GradedRing(c.base(), std::move(comps), std::move(mult), c.truncated());
}

// χ_n, or nullopt if some relabeled basis vector is missing or dims differ.
std::optional<BimoduleMap> relabeling(const Bimodule& from, const Bimodule& to,
                                      const Relabel& relabel) {
  if (from.dim() != to.dim()) return std::nullopt;
  MapBuilder b(from, to);
  for (std::uint32_t i = 0; i < from.dim(); ++i) {
    const auto [s, t] = from.block_of(i);
    const auto j = to.locate(s, t, relabel(from.label(i)));
    if (!j) return std::nullopt;
    b.add(*j, i, Scalar(1));
  }
  BimoduleMap chi = b.build();
  if (chi.rank() != from.dim()) return std::nullopt;
  return chi;
}

template <class Structure>
std::optional<std::vector<BimoduleMap>> relabelings(const Structure& a, const Structure& b,
                                                    const Relabel& relabel) {
  if (!same_base(a.base(), b.base())) return std::nullopt;
  std::vector<BimoduleMap> chi;
  const std::size_t top = std::max(a.top_degree(), b.top_degree());
  for (std::size_t n = 0; n <= top; ++n) {
    auto c = relabeling(a.component(n), b.component(n), relabel);
    if (!c) return std::nullopt;
    chi.push_back(std::move(*c));
  }
  return chi;
}

}  // namespace

GradedCoring graded_left_dual_of_ring(const GradedRing& a) { return dual_of_ring(a, Side::left); }
GradedRing graded_left_dual_of_coring(const GradedCoring& c) { return dual_of_coring(c, Side::left); }
GradedCoring graded_right_dual_of_ring(const GradedRing& a) { return dual_of_ring(a, Side::right); }
GradedRing graded_right_dual_of_coring(const GradedCoring& c) {
  return dual_of_coring(c, Side::right);
}

AlmostKoszulPair dual_pair(const AlmostKoszulPair& pair) {
  GradedRing ring = graded_left_dual_of_coring(pair.coring);
  GradedCoring coring = graded_left_dual_of_ring(pair.ring);
  BimoduleMap theta = dual_map(pair.theta);
  return AlmostKoszulPair(std::move(ring), std::move(coring), std::move(theta));
}

bool isomorphic_under(const GradedRing& a, const GradedRing& b, const Relabel& relabel) {
  const auto chi = relabelings(a, b, relabel);
  if (!chi) return false;
  const std::size_t top = chi->size() - 1;
  for (std::size_t p = 1; p <= top; ++p) {
    for (std::size_t q = 1; p + q <= top; ++q) {
      if (!equal_in((*chi)[p + q] * a.mu(p, q), b.mu(p, q) * tensor_map((*chi)[p], (*chi)[q])))
        return false;
    }
  }
  return true;
}

bool isomorphic_under(const GradedCoring& c, const GradedCoring& d, const Relabel& relabel) {
  const auto chi = relabelings(c, d, relabel);
  if (!chi) return false;
  const std::size_t top = chi->size() - 1;
  for (std::size_t p = 1; p <= top; ++p) {
    for (std::size_t q = 1; p + q <= top; ++q) {
      if (!equal_in(tensor_map((*chi)[p], (*chi)[q]) * c.delta(p, q), d.delta(p, q) * (*chi)[p + q]))
        return false;
    }
  }
  return true;
}

bool double_dual_check(const GradedRing& a) {
  const GradedRing back = graded_right_dual_of_coring(graded_left_dual_of_ring(a));
  return isomorphic_under(a, back, [](const Label& l) { return l; });
}

bool double_dual_check(const GradedCoring& c) {
  const GradedCoring back = graded_right_dual_of_ring(graded_left_dual_of_coring(c));
  return isomorphic_under(c, back, [](const Label& l) { return l; });
}

bool incidence_duality_check(const GradedPoset& p, const FieldSpec& field) {
  const GradedRing a = incidence_ring(p, field);
  const GradedCoring c = incidence_coring(p, field);
  return isomorphic_under(a, graded_left_dual_of_coring(c), dual_label) &&
         isomorphic_under(c, graded_left_dual_of_ring(a), dual_label);
}

}  // namespace koszul
