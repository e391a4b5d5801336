#include "koszul/koszul.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "koszul/errors.hpp"

namespace koszul {

AlmostKoszulPair::AlmostKoszulPair(GradedRing r, GradedCoring c, BimoduleMap t)
    : ring(std::move(r)), coring(std::move(c)), theta(std::move(t)) {
  if (!same_base(ring.base(), coring.base())) throw DimensionError("pair: ring and coring bases differ");
  if (!(theta.source() == coring.component(1)) || !(theta.target() == ring.component(1))) {
    throw DimensionError("pair: θ must map C_1 to A^1");
  }
  if (theta.rank() != coring.dim(1) || coring.dim(1) != ring.dim(1)) {
    throw InternalError("pair: θ is not invertible");
  }
  const BimoduleMap composite = ring.mu(1, 1) * tensor_map(theta, theta) * coring.delta(1, 1);
  if (!composite.is_zero()) throw InternalError("pair: μ^{1,1}∘(θ⊗θ)∘Δ_{1,1} ≠ 0");
}

BimoduleMap relabel_identity(const Bimodule& from, const Bimodule& to) {
  if (from.dim() != to.dim()) throw DimensionError("relabel: dimensions differ");
  MapBuilder b(from, to);
  for (std::uint32_t i = 0; i < from.dim(); ++i) {
    const auto [s, t] = from.block_of(i);
    b.add(to.index(s, t, from.label(i)), i, Scalar(1));
  }
  return b.build();
}

AlmostKoszulPair make_pair_shriek_ring(const GradedRing& a) {
  require_strongly_graded(a);
  GradedCoring c = shriek_of_ring(a);
  BimoduleMap theta = relabel_identity(c.component(1), a.component(1));
  return AlmostKoszulPair(a, std::move(c), std::move(theta));
}

AlmostKoszulPair make_pair_shriek_coring(const GradedCoring& c) {
  require_strongly_graded(c);
  GradedRing a = shriek_of_coring(c);
  BimoduleMap theta = relabel_identity(c.component(1), a.component(1));
  return AlmostKoszulPair(std::move(a), c, std::move(theta));
}

// ---------------------------------------------------------------------------

namespace {

// A^p⊗C_q → A^{p+1}⊗C_{q−1}, a⊗c ↦ Σ aθ(c_{1,1})⊗c_{2,q−1}.
BimoduleMap theta_step(const AlmostKoszulPair& pr, std::size_t p, std::size_t q) {
  const Base& base = pr.ring.base();
  const BimoduleMap ida = BimoduleMap::identity(pr.ring.component(p));
  const BimoduleMap idc = BimoduleMap::identity(pr.coring.component(q - 1));
  const BimoduleMap split = tensor_map(ida, pr.coring.delta(1, q - 1));
  const BimoduleMap moved = tensor_maps(base, {ida, pr.theta, idc});
  const BimoduleMap mult = tensor_map(pr.ring.mu(p, 1), idc);
  return mult * moved * split;
}

// C_q⊗A^p → C_{q−1}⊗A^{p+1}, c⊗a ↦ Σ c_{1,q−1}⊗θ(c_{2,1})a.
BimoduleMap theta_step_opposite(const AlmostKoszulPair& pr, std::size_t q, std::size_t p) {
  const Base& base = pr.ring.base();
  const BimoduleMap ida = BimoduleMap::identity(pr.ring.component(p));
  const BimoduleMap idc = BimoduleMap::identity(pr.coring.component(q - 1));
  const BimoduleMap split = tensor_map(pr.coring.delta(q - 1, 1), ida);
  const BimoduleMap moved = tensor_maps(base, {idc, pr.theta, ida});
  const BimoduleMap mult = tensor_map(idc, pr.ring.mu(1, p));
  return mult * moved * split;
}

// 0 → R → R⊗R → 0 (or its chain mirror): the augmentation in weight 0.
ComplexSlice weight_zero(const AlmostKoszulPair& pr, Direction dir) {
  const Base& base = pr.ring.base();
  const Bimodule r = Bimodule::regular(base);
  const Bimodule rr = tensor(pr.ring.component(0), pr.coring.component(0));
  const BimoduleMap aug = dir == Direction::chain ? relabel_identity(rr, r) : relabel_identity(r, rr);
  return ComplexSlice(base, dir, 0, -1, {r, rr}, {aug});
}

}  // namespace

ComplexSlice koszul_complex_left(const AlmostKoszulPair& pr, std::size_t m) {
  if (m == 0) return weight_zero(pr, Direction::chain);
  std::vector<Bimodule> spaces;
  for (std::size_t n = 0; n <= m; ++n) {
    spaces.push_back(tensor(pr.ring.component(m - n), pr.coring.component(n)));
  }
  std::vector<BimoduleMap> maps;
  for (std::size_t n = 1; n <= m; ++n) maps.push_back(theta_step(pr, m - n, n));
  return ComplexSlice(pr.ring.base(), Direction::chain, m, 0, std::move(spaces), std::move(maps));
}

ComplexSlice koszul_complex_right(const AlmostKoszulPair& pr, std::size_t m) {
  if (m == 0) return weight_zero(pr, Direction::cochain);
  std::vector<Bimodule> spaces;
  for (std::size_t n = 0; n <= m; ++n) {
    spaces.push_back(tensor(pr.ring.component(n), pr.coring.component(m - n)));
  }
  std::vector<BimoduleMap> maps;
  for (std::size_t n = 0; n < m; ++n) maps.push_back(theta_step(pr, n, m - n));
  return ComplexSlice(pr.ring.base(), Direction::cochain, m, 0, std::move(spaces), std::move(maps));
}

ComplexSlice koszul_complex_opposite(const AlmostKoszulPair& pr, std::size_t m) {
  if (m == 0) return weight_zero(pr, Direction::cochain);
  std::vector<Bimodule> spaces;
  for (std::size_t n = 0; n <= m; ++n) {
    spaces.push_back(tensor(pr.coring.component(m - n), pr.ring.component(n)));
  }
  std::vector<BimoduleMap> maps;
  for (std::size_t n = 0; n < m; ++n) maps.push_back(theta_step_opposite(pr, m - n, n));
  return ComplexSlice(pr.ring.base(), Direction::cochain, m, 0, std::move(spaces), std::move(maps));
}

Exactness is_exact(const ComplexSlice& slice) {
  Exactness e;
  e.homology_dims = slice.homology_dims();
  e.exact = std::all_of(e.homology_dims.begin(), e.homology_dims.end(),
                        [](std::size_t d) { return d == 0; });
  if (slice.euler_characteristic() != slice.homology_euler_characteristic()) {
    throw InternalError("Euler characteristic mismatch in weight " + std::to_string(slice.weight()));
  }
  return e;
}

std::size_t pair_weight_bound(const AlmostKoszulPair& pr) {
  return pr.ring.top_degree() + pr.coring.top_degree();
}

// ---------------------------------------------------------------------------

namespace {

// Index of the summand [1, …, 1] of degree n, if present.
std::optional<std::size_t> ones_summand(const ComplexSlice& s, std::size_t n) {
  if (n >= s.summands.size()) return std::nullopt;
  const auto& sums = s.summands[n];
  for (std::size_t k = 0; k < sums.size(); ++k) {
    if (std::all_of(sums[k].parts.begin(), sums[k].parts.end(), [](std::size_t p) { return p == 1; }))
      return k;
  }
  return std::nullopt;
}

// (V)^{(n)} → degree n of the slice of weight n, or its transpose.
BimoduleMap ones_embedding(const ComplexSlice& s, std::size_t n, const Bimodule& power,
                           bool restrict) {
  const Bimodule& space = s.space(static_cast<int>(n));
  MapBuilder b(restrict ? space : power, restrict ? power : space);
  if (const auto k = ones_summand(s, n)) {
    if (!(s.summands[n][*k].piece == power)) throw InternalError("φ: unexpected summand shape");
    const auto& emb = s.embed[n][*k];
    for (std::uint32_t i = 0; i < power.dim(); ++i) {
      if (restrict) b.add(i, emb[i], Scalar(1));
      else b.add(emb[i], i, Scalar(1));
    }
  }
  return b.build();
}

}  // namespace

bool phi_shriek_ring_check(BarHomology& bar, std::size_t n, std::size_t bound) {
  const GradedRing& a = bar.ring();
  std::size_t total = 0;
  for (std::size_t m = n; m <= bound; ++m) total += bar.dim(n, m);
  if (n == 0) return total == a.dim(0);
  const QuadraticData data{a.component(1), kernel(a.mu(1, 1))};
  const SubBimodule shriek = coideal_component(data, n);
  const ComplexSlice& s = bar.slice(n);
  const BimoduleMap in = ones_embedding(s, n, shriek.ambient(), false) * shriek.inclusion;
  if (!(s.outgoing(static_cast<int>(n)) * in).is_zero()) {
    throw InternalError("φ^A: an element of A^!_" + std::to_string(n) + " is not a cycle");
  }
  const std::size_t rank = (bar.classes(n, n).projection * in).rank();
  return rank == shriek.dim() && rank == total;
}

bool phi_shriek_ring_check(const GradedRing& a, std::size_t n) {
  BarHomology bar(a);
  return phi_shriek_ring_check(bar, n, std::max(n, default_weight_bound(a.top_degree())));
}

bool phi_shriek_coring_check(CobarCohomology& cobar, std::size_t n, std::size_t bound) {
  const GradedCoring& c = cobar.coring();
  std::size_t total = 0;
  for (std::size_t m = n; m <= bound; ++m) total += cobar.dim(n, m);
  if (n == 0) return total == c.dim(0);
  const QuadraticData data{c.component(1), image(c.delta(1, 1))};
  const Quotient shriek = quotient(ideal_component(data, n));
  const ComplexSlice& s = cobar.slice(n);
  const BimoduleMap out =
      shriek.projection * ones_embedding(s, n, shriek.projection.source(), true);
  if (!(out * s.incoming(static_cast<int>(n))).is_zero()) {
    throw InternalError("φ_C: a coboundary survives in C^!_" + std::to_string(n));
  }
  const std::size_t rank = (out * cobar.classes(n, n).representatives).rank();
  return rank == shriek.space.dim() && rank == total;
}

bool phi_shriek_coring_check(const GradedCoring& c, std::size_t n) {
  CobarCohomology cobar(c);
  return phi_shriek_coring_check(cobar, n, std::max(n, default_weight_bound(c.top_degree())));
}

// ---------------------------------------------------------------------------

const CriterionResult& KoszulVerdict::criterion(const std::string& id) const {
  for (const auto& c : criteria)
    if (c.id == id) return c;
  throw DimensionError("verdict has no criterion " + id);
}

std::string KoszulVerdict::to_json() const {
  nlohmann::json j;
  j["verdict"] = verdict;
  j["m_bound_used"] = m_bound_used;
  j["sound"] = sound;
  j["witness_weight"] = witness_weight ? nlohmann::json(*witness_weight) : nlohmann::json(nullptr);
  j["criteria"] = nlohmann::json::array();
  for (const auto& c : criteria) {
    j["criteria"].push_back({{"id", c.id}, {"vote", c.vote}, {"pass", c.pass}, {"evidence", c.evidence}});
  }
  return j.dump();
}

namespace {

// Runs task(i) for i in [first, last] on up to `jobs` threads.
void parallel_for(std::size_t first, std::size_t last, unsigned jobs,
                  const std::function<void(std::size_t)>& task) {
  if (first > last) return;
  const std::size_t count = last - first + 1;
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(count)));
  if (jobs == 1) {
    for (std::size_t i = first; i <= last; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{first};
  std::vector<std::exception_ptr> errors(jobs);
  std::vector<std::thread> pool;
  for (unsigned j = 0; j < jobs; ++j) {
    pool.emplace_back([&, j] {
      try {
        for (std::size_t i; (i = next++) <= last;) task(i);
      } catch (...) {
        errors[j] = std::current_exception();
        next = last + 1;
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

std::string dims_string(const std::vector<std::size_t>& dims, int low) {
  std::ostringstream out;
  bool first = true;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (dims[k] == 0) continue;
    out << (first ? "" : ", ") << "H_" << low + static_cast<int>(k) << " = " << dims[k];
    first = false;
  }
  return out.str();
}

using SliceBuilder = std::function<ComplexSlice(std::size_t)>;

// Exactness of the slices 1..bound; evidence names the first failure.
CriterionResult exactness_vote(const SliceBuilder& build, std::size_t bound, unsigned jobs,
                               const std::string& name, std::optional<std::size_t>& witness) {
  std::vector<Exactness> results(bound + 1);
  parallel_for(1, bound, jobs, [&](std::size_t m) { results[m] = is_exact(build(m)); });
  CriterionResult r{"pair_exactness", true, true, ""};
  for (std::size_t m = 1; m <= bound; ++m) {
    if (results[m].exact) continue;
    r.pass = false;
    witness = m;
    r.evidence = name + "(" + std::to_string(m) + ") not exact: " + dims_string(results[m].homology_dims, 0);
    return r;
  }
  r.evidence = name + "(m) exact for 1 ≤ m ≤ " + std::to_string(bound);
  return r;
}

CriterionResult diagonal_vote(const BettiTable& t, const std::string& id, const std::string& sym) {
  CriterionResult r{id, true, true, ""};
  for (std::size_t m = 0; m <= t.m_max; ++m) {
    for (std::size_t n = 0; n <= std::min(m, t.n_max); ++n) {
      if (n == m || t.at(n, m) == 0) continue;
      r.pass = false;
      r.evidence = sym + "_{" + std::to_string(n) + "," + std::to_string(m) + "} = " +
                   std::to_string(t.at(n, m));
      return r;
    }
  }
  r.evidence = "diagonal for m ≤ " + std::to_string(t.m_max);
  return r;
}

void settle(KoszulVerdict& v, bool quadratic, const std::string& quadratic_evidence) {
  std::vector<const CriterionResult*> votes;
  for (const auto& c : v.criteria)
    if (c.vote) votes.push_back(&c);
  v.verdict = votes.front()->pass;
  for (const auto* c : votes) {
    if (c->pass != v.verdict) {
      std::string msg = "criteria disagree:";
      for (const auto* d : votes) msg += " " + d->id + "=" + (d->pass ? "true" : "false");
      throw InternalError(msg);
    }
  }
  if (v.verdict && !quadratic) throw InternalError("a Koszul structure is not quadratic");
  v.criteria.push_back({"quadratic", false, quadratic, quadratic_evidence});
}

void check_vanishing(const ComplexSlice& s) {
  for (int n = s.low(); n <= s.high(); ++n) {
    if (s.space(n).dim() != 0) {
      throw InternalError("Koszul slice of weight " + std::to_string(s.weight()) +
                          " is nonzero beyond the weight bound");
    }
  }
}

}  // namespace

KoszulVerdict decide_koszul_ring(const GradedRing& a, const DecideOptions& options) {
  const AlmostKoszulPair pair = make_pair_shriek_ring(a);
  const std::size_t natural = pair_weight_bound(pair);
  const std::size_t bound = options.m_max.value_or(natural);
  KoszulVerdict v;
  v.m_bound_used = bound;
  v.sound = !pair.coring.truncated() && bound >= natural;
  if (!pair.coring.truncated()) check_vanishing(koszul_complex_left(pair, natural + 1));

  v.criteria.push_back(exactness_vote([&](std::size_t m) { return koszul_complex_left(pair, m); },
                                      bound, options.jobs, "K^l", v.witness_weight));

  BarHomology bar(a);
  CriterionResult phi{"phi", true, true, "φ^A_n bijective for n ≤ " + std::to_string(bound)};
  for (std::size_t n = 1; n <= bound; ++n) {
    if (phi_shriek_ring_check(bar, n, bound)) continue;
    phi.pass = false;
    phi.evidence = "φ^A_" + std::to_string(n) + " not bijective";
    break;
  }
  v.criteria.push_back(phi);

  CriterionResult prim{"primitives", true, true, "primitives only in T_1 for m ≤ " + std::to_string(bound)};
  for (std::size_t m = 2; m <= bound && prim.pass; ++m) {
    for (std::size_t n = 2; n <= m; ++n) {
      const std::size_t d = bar.primitive_dim(n, m);
      if (d == 0) continue;
      prim.pass = false;
      prim.evidence = std::to_string(d) + " primitive classes in T_{" + std::to_string(n) + "," +
                      std::to_string(m) + "}";
      break;
    }
  }
  v.criteria.push_back(prim);

  v.criteria.push_back(diagonal_vote(tor_table(a, bound, bound, options.jobs), "tor_diagonal", "T"));

  const DegreeCheck q = is_quadratic_direct(a);
  settle(v, q.holds,
         q.holds ? "quadratic" : "not quadratic in degree " + std::to_string(*q.failing_degree));
  return v;
}

KoszulVerdict decide_koszul_coring(const GradedCoring& c, const DecideOptions& options) {
  const AlmostKoszulPair pair = make_pair_shriek_coring(c);
  const std::size_t natural = pair_weight_bound(pair);
  const std::size_t bound = options.m_max.value_or(natural);
  KoszulVerdict v;
  v.m_bound_used = bound;
  v.sound = !pair.ring.truncated() && bound >= natural;
  if (!pair.ring.truncated()) check_vanishing(koszul_complex_right(pair, natural + 1));

  v.criteria.push_back(exactness_vote([&](std::size_t m) { return koszul_complex_right(pair, m); },
                                      bound, options.jobs, "K_r", v.witness_weight));

  CobarCohomology cobar(c);
  CriterionResult phi{"phi", true, true, "φ_C^n bijective for n ≤ " + std::to_string(bound)};
  for (std::size_t n = 1; n <= bound; ++n) {
    if (phi_shriek_coring_check(cobar, n, bound)) continue;
    phi.pass = false;
    phi.evidence = "φ_C^" + std::to_string(n) + " not bijective";
    break;
  }
  v.criteria.push_back(phi);

  CriterionResult gen{"ext_strongly_graded", true, true,
                      "E^1·E^n = E^{n+1} for m ≤ " + std::to_string(bound)};
  for (std::size_t m = 2; m <= bound && gen.pass; ++m) {
    for (std::size_t n = 1; n + 1 <= m; ++n) {
      if (cobar.generated_in_degree_one(n, m)) continue;
      gen.pass = false;
      gen.evidence = "E^{" + std::to_string(n + 1) + "," + std::to_string(m) +
                     "} not generated by E^1";
      break;
    }
  }
  v.criteria.push_back(gen);

  v.criteria.push_back(diagonal_vote(ext_table(c, bound, bound, options.jobs), "ext_diagonal", "E"));

  const DegreeCheck q = is_quadratic_coring_direct(c);
  settle(v, q.holds,
         q.holds ? "quadratic" : "not quadratic in degree " + std::to_string(*q.failing_degree));
  return v;
}

bool pair_is_koszul(const AlmostKoszulPair& pair, unsigned jobs) {
  std::optional<std::size_t> witness;
  return exactness_vote([&](std::size_t m) { return koszul_complex_left(pair, m); },
                        pair_weight_bound(pair), jobs, "K^l", witness)
      .pass;
}

// ---------------------------------------------------------------------------

namespace {

// Position of v's idempotents inside the product base.
std::vector<std::uint32_t> base_index(const Base& from, const Base& to) {
  std::vector<std::uint32_t> out;
  for (const auto& name : from->names()) {
    const auto i = to->index_of(name);
    if (!i) throw InternalError("product: idempotent " + name + " missing");
    out.push_back(*i);
  }
  return out;
}

// Copies the entries of f (between components of one factor) into a map
// between the corresponding product components.
void copy_map(MapBuilder& b, const BimoduleMap& f, const std::vector<std::uint32_t>& index,
              const Bimodule& source, const Bimodule& target) {
  for (const auto& e : f.matrix().entries()) {
    const auto [s, t] = f.source().block_of(e.col);
    const auto [u, w] = f.target().block_of(e.row);
    b.add(target.index(index[u], index[w], f.target().label(e.row)),
          source.index(index[s], index[t], f.source().label(e.col)), e.value);
  }
}

}  // namespace

AlmostKoszulPair pair_product(const AlmostKoszulPair& p, const AlmostKoszulPair& q) {
  GradedRing ring = direct_product(p.ring, q.ring);
  GradedCoring coring = direct_sum_corings(p.coring, q.coring);
  const Bimodule& c1 = coring.component(1);
  const Bimodule& a1 = ring.component(1);
  MapBuilder b(c1, a1);
  copy_map(b, p.theta, base_index(p.ring.base(), ring.base()), c1, a1);
  copy_map(b, q.theta, base_index(q.ring.base(), ring.base()), c1, a1);
  BimoduleMap theta = b.build();
  return AlmostKoszulPair(std::move(ring), std::move(coring), std::move(theta));
}

}  // namespace koszul
