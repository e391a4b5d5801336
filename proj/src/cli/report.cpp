#include <atomic>
#include <exception>
#include <thread>

#include "koszul/cli.hpp"
#include "koszul/duality.hpp"
#include "koszul/errors.hpp"
#include "koszul/homology.hpp"
#include "koszul/koszul.hpp"

namespace koszul::cli {

using nlohmann::json;

namespace {

json verdict_json(const KoszulVerdict& v) { return json::parse(v.to_json()); }

json nullable(const std::optional<std::size_t>& x) { return x ? json(*x) : json(nullptr); }

std::vector<std::size_t> dims_of(const GradedRing& a) {
  std::vector<std::size_t> out;
  for (std::size_t n = 0; n <= a.top_degree(); ++n) out.push_back(a.dim(n));
  while (out.size() > 1 && out.back() == 0) out.pop_back();
  return out;
}

std::vector<std::size_t> dims_of(const GradedCoring& c) {
  std::vector<std::size_t> out;
  for (std::size_t n = 0; n <= c.top_degree(); ++n) out.push_back(c.dim(n));
  while (out.size() > 1 && out.back() == 0) out.pop_back();
  return out;
}

json word_json(const Label& label) {
  json w = json::array();
  for (const auto& a : label) w.push_back(a);
  return w;
}

std::string scalar_string(const Scalar& x) { return x.get_str(); }

}  // namespace

json check_result(const GradedPoset& p, const RunConfig& config) {
  const GradedRing a = incidence_ring(p, config.field);
  const GradedCoring c = incidence_coring(p, config.field);
  const DecideOptions options{config.m_max_override, config.parallelism};
  const KoszulVerdict ring = decide_koszul_ring(a, options);
  const KoszulVerdict coring = decide_koszul_coring(c, options);
  if (ring.verdict != coring.verdict) {
    throw InternalError("ring and coring verdicts disagree");
  }

  const AlmostKoszulPair pair = make_pair_shriek_ring(a);
  const AlmostKoszulPair dual = dual_pair(pair);
  const bool dual_koszul = pair_is_koszul(dual, config.parallelism);
  if (ring.sound && dual_koszul != ring.verdict) {
    throw InternalError("the dual pair disagrees with the verdict");
  }

  json duality;
  duality["dual_of_ring_is_incidence_coring"] =
      isomorphic_under(graded_left_dual_of_ring(a), c, dual_label);
  duality["dual_of_coring_is_incidence_ring"] =
      isomorphic_under(graded_left_dual_of_coring(c), a, dual_label);
  duality["double_dual_ring"] = double_dual_check(a);
  duality["double_dual_coring"] = double_dual_check(c);
  duality["dual_pair_almost_koszul"] = true;  // the pair constructor checked it
  duality["dual_pair_koszul"] = dual_koszul;

  json r;
  r["koszul"] = ring.verdict;
  r["sound"] = ring.sound && coring.sound;
  r["m_bound_used"] = ring.m_bound_used;
  r["witness_weight"] = nullable(ring.witness_weight);
  r["ring"] = verdict_json(ring);
  r["coring"] = verdict_json(coring);
  r["duality"] = duality;
  return r;
}

json betti_result(const GradedPoset& p, bool coring_side, const RunConfig& config) {
  const std::size_t natural = default_weight_bound(p.max_length());
  const std::size_t bound = config.m_max_override.value_or(natural);
  const BettiTable t = coring_side
                           ? ext_table(incidence_coring(p, config.field), bound, bound, config.parallelism)
                           : tor_table(incidence_ring(p, config.field), bound, bound, config.parallelism);
  json rows = json::array();
  bool diagonal = true;
  for (std::size_t n = 0; n <= t.n_max; ++n) {
    json row = json::array();
    for (std::size_t m = 0; m <= t.m_max; ++m) {
      row.push_back(t.at(n, m));
      diagonal &= n == m || t.at(n, m) == 0;
    }
    rows.push_back(row);
  }
  json r;
  r["side"] = coring_side ? "coring" : "ring";
  r["kind"] = coring_side ? "ext" : "tor";
  r["n_max"] = t.n_max;
  r["m_max"] = t.m_max;
  r["rows"] = rows;
  r["diagonal"] = diagonal;
  r["sound"] = bound >= natural;
  return r;
}

json shriek_result(const GradedPoset& p, const RunConfig& config) {
  const GradedRing a = incidence_ring(p, config.field);
  const GradedCoring c = incidence_coring(p, config.field);
  json gens = json::array();
  for (const auto& iv : p.intervals(2)) {
    json terms = json::array();
    for (auto z : p.open_interval(iv.lower, iv.upper)) {
      terms.push_back({{"coefficient", "1"},
                       {"word", {incidence_atom(p, iv.lower, z), incidence_atom(p, z, iv.upper)}}});
    }
    gens.push_back({{"interval", {p.element(iv.lower), p.element(iv.upper)}}, {"terms", terms}});
  }

  // Ker μ^{1,1}, the degree-2 part of A^!.
  const SubBimodule rel = kernel(a.mu(1, 1));
  json relations = json::array();
  const SparseMatrix& inc = rel.inclusion.matrix();
  for (std::size_t k = 0; k < rel.dim(); ++k) {
    json terms = json::array();
    for (const auto& [i, x] : inc.column(k)) {
      terms.push_back({{"coefficient", scalar_string(x)}, {"word", word_json(rel.ambient().label(i))}});
    }
    relations.push_back(terms);
  }

  const GradedRing zeta = zeta_ring(p, config.field);
  json r;
  r["generators"] = gens;
  r["shriek_coring_relations"] = relations;
  r["shriek_coring_dims"] = dims_of(shriek_of_ring(a));
  r["zeta_ring_dims"] = dims_of(zeta);
  r["zeta_ring_is_shriek_of_coring"] = same_structure(zeta, shriek_of_coring(c));
  return r;
}

json dual_result(const GradedPoset& p, const RunConfig& config) {
  const GradedRing a = incidence_ring(p, config.field);
  const GradedCoring c = incidence_coring(p, config.field);
  const AlmostKoszulPair pair = make_pair_shriek_ring(a);
  const AlmostKoszulPair dual = dual_pair(pair);
  const bool koszul = pair_is_koszul(pair, config.parallelism);
  const bool dual_koszul = pair_is_koszul(dual, config.parallelism);
  json r;
  r["dual_of_ring_is_incidence_coring"] = isomorphic_under(graded_left_dual_of_ring(a), c, dual_label);
  r["dual_of_coring_is_incidence_ring"] = isomorphic_under(graded_left_dual_of_coring(c), a, dual_label);
  r["right_dual_of_ring_is_incidence_coring"] =
      isomorphic_under(graded_right_dual_of_ring(a), c, dual_label);
  r["double_dual_ring"] = double_dual_check(a);
  r["double_dual_coring"] = double_dual_check(c);
  r["dual_pair_almost_koszul"] = true;
  r["pair_koszul"] = koszul;
  r["dual_pair_koszul"] = dual_koszul;
  if (koszul != dual_koszul) throw InternalError("the dual pair disagrees with the pair");
  return r;
}

json corpus_result(std::size_t min_elements, std::size_t max_elements, const RunConfig& config) {
  const std::vector<GradedPoset> corpus = enumerate_corpus(min_elements, max_elements);
  std::vector<json> rows(corpus.size());
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(std::max(1u, config.parallelism));
  auto work = [&](std::size_t slot) {
    try {
      for (std::size_t i; (i = next++) < corpus.size();) {
        const GradedPoset& p = corpus[i];
        json row;
        row["poset"] = json::parse(poset_to_json(p));
        row["canonical_form"] = canonical_form(p);
        row["elements"] = p.size();
        row["max_length"] = p.max_length();
        try {
          const DecideOptions options{config.m_max_override, 1};
          const KoszulVerdict ring = decide_koszul_ring(incidence_ring(p, config.field), options);
          const KoszulVerdict coring = decide_koszul_coring(incidence_coring(p, config.field), options);
          row["koszul"] = ring.verdict;
          row["witness_weight"] = nullable(ring.witness_weight);
          row["criteria_agree"] = ring.verdict == coring.verdict;
          if (ring.verdict != coring.verdict) row["error"] = "ring and coring verdicts disagree";
        } catch (const InternalError& e) {
          row["koszul"] = nullptr;
          row["witness_weight"] = nullptr;
          row["criteria_agree"] = false;
          row["error"] = e.what();
        }
        rows[i] = std::move(row);
      }
    } catch (...) {
      errors[slot] = std::current_exception();
      next = corpus.size();
    }
  };
  const unsigned jobs = std::max(1u, config.parallelism);
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(work, j);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::size_t koszul = 0, disagreements = 0;
  for (const auto& row : rows) {
    if (!row["criteria_agree"].get<bool>()) ++disagreements;
    else if (row["koszul"].get<bool>()) ++koszul;
  }
  json r;
  r["posets"] = rows;
  r["summary"] = {{"count", rows.size()},
                  {"koszul", koszul},
                  {"not_koszul", rows.size() - koszul - disagreements},
                  {"disagreements", disagreements},
                  {"agreement_percent", rows.empty() ? 100 : 100 * (rows.size() - disagreements) / rows.size()}};
  return r;
}

}  // namespace koszul::cli
