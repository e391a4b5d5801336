// Prints one PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "koszul/duality.hpp"
#include "koszul/errors.hpp"
#include "koszul/homology.hpp"
#include "koszul/koszul.hpp"
#include "koszul/poset.hpp"
#include "poset_oracle.hpp"

using namespace koszul;

namespace {

using Clock = std::chrono::steady_clock;
const FieldSpec Q = FieldSpec::rationals();

// Collects failed expectations for one criterion.
struct Report {
  std::vector<std::string> failures;
  std::string detail;
  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

GradedPoset from_edges(std::size_t n, const std::vector<std::pair<int, int>>& edges,
                       const std::string& prefix = "") {
  std::vector<std::string> el;
  for (std::size_t i = 0; i < n; ++i) el.push_back(prefix + std::to_string(i));
  std::vector<std::pair<std::string, std::string>> cov;
  for (auto [a, b] : edges) cov.emplace_back(el[a], el[b]);
  return GradedPoset::from_covers(el, cov);
}

GradedPoset diamond() {
  return GradedPoset::from_covers({"0", "a", "b", "1"}, {{"0", "a"}, {"0", "b"}, {"a", "1"}, {"b", "1"}});
}

GradedPoset p_bad() {
  return GradedPoset::from_covers({"0", "a", "b", "c", "d", "1"},
                                  {{"0", "a"}, {"0", "b"}, {"a", "c"}, {"b", "d"}, {"c", "1"}, {"d", "1"}});
}

GradedPoset chain(std::size_t length) {
  std::vector<std::pair<int, int>> e;
  for (std::size_t i = 0; i < length; ++i) e.emplace_back(i, i + 1);
  return from_edges(length + 1, e);
}

GradedPoset antichain(std::size_t n) { return from_edges(n, {}); }

GradedPoset prefixed(const GradedPoset& p, const std::string& prefix) {
  std::vector<std::pair<int, int>> e;
  for (auto [a, b] : p.covers()) e.emplace_back(a, b);
  return from_edges(p.size(), e, prefix);
}

// Random graded poset: a rank function plus covers between adjacent ranks.
// With `planted`, ranks and covers start from two disjoint 2-chains between a
// bottom and a top, so a disconnected open interval of length 3 is likely to
// survive (non-Koszul posets are under 1% of the uniform population).
GradedPoset random_graded(std::mt19937_64& rng, std::size_t n, bool planted) {
  const int top = planted || std::bernoulli_distribution(0.75)(rng) ? 3 : 2;
  std::vector<int> rank(n);
  std::set<std::pair<int, int>> e;
  std::size_t first_free = 0;
  if (planted) {
    rank = {0, 1, 1, 2, 2, 3};
    rank.resize(n);
    e = {{0, 1}, {0, 2}, {1, 3}, {2, 4}, {3, 5}, {4, 5}};
    first_free = 6;
  }
  for (std::size_t i = first_free; i < n; ++i) rank[i] = std::uniform_int_distribution<int>(0, top)(rng);
  std::bernoulli_distribution edge(planted ? 0.25 : 0.6);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (rank[b] == rank[a] + 1 && edge(rng)) e.emplace(a, b);
  return from_edges(n, {e.begin(), e.end()});
}

bool slices_exact(const AlmostKoszulPair& pair, std::size_t m_max) {
  for (std::size_t m = 1; m <= m_max; ++m)
    if (!is_exact(koszul_complex_left(pair, m)).exact) return false;
  return true;
}

bool tor_diagonal_oracle(const GradedPoset& p) {
  const std::size_t bound = 2 * p.max_length();
  for (std::size_t m = 0; m <= bound; ++m)
    for (std::size_t n = 0; n <= m; ++n)
      if (n != m && oracle::tor_dim(p, n, m) != 0) return false;
  return true;
}

bool balanced(const ComplexSlice& s) {
  for (int n = s.low() + 1; n < s.high(); ++n)
    if (!(s.outgoing(n) * s.incoming(n)).is_zero()) return false;
  return s.euler_characteristic() == s.homology_euler_characteristic();
}

Report criterion1() {
  Report r;
  const GradedPoset d = diamond();
  const auto start = Clock::now();
  const KoszulVerdict v = decide_koszul_ring(incidence_ring(d, Q));
  const double ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  r.expect(v.verdict && v.sound, "diamond decided Koszul");
  const BettiTable t = tor_table(incidence_ring(d, Q), 4, 4);
  r.expect(t.at(0, 0) == 4 && t.at(1, 1) == 4 && t.at(2, 2) == 1, "diagonal (4,4,1)");
  for (std::size_t n = 0; n <= 4; ++n)
    for (std::size_t m = 0; m <= 4; ++m)
      if (n != m) r.expect(t.at(n, m) == 0, "T off the diagonal vanishes");
  r.expect(slices_exact(make_pair_shriek_ring(incidence_ring(d, Q)), 4), "K slices m=1..4 exact");
  r.expect(ms < 1000, "decision under 1 s");
  std::ostringstream out;
  out << "decision " << static_cast<long>(ms) << " ms";
  r.detail = out.str();
  return r;
}

Report criterion2() {
  Report r;
  const GradedRing a = incidence_ring(p_bad(), Q);
  const DegreeCheck q = is_quadratic_direct(a);
  r.expect(!q.holds && q.failing_degree == 3, "not quadratic, failing in degree 3");
  const SubBimodule ker3 = kernel(a.mu_n(3));
  r.expect(ker3.dim() == 1, "Ker μ_3 has dimension 1");
  const SubBimodule k = kernel(a.mu(1, 1));
  const BimoduleMap idv = BimoduleMap::identity(a.component(1));
  const SubBimodule gen3 = image(join_maps({{"l", tensor_map(k.inclusion, idv)}, {"r", tensor_map(idv, k.inclusion)}}));
  r.expect(gen3.dim() == 0, "⟨K⟩³ = 0");
  r.expect(tor_table(a, 6, 6).at(2, 3) == 1, "T_{2,3} = 1");
  const KoszulVerdict v = decide_koszul_ring(a);
  r.expect(!v.verdict && v.witness_weight == 3, "not Koszul, witness weight 3");
  r.detail = "witness weight " + (v.witness_weight ? std::to_string(*v.witness_weight) : std::string("none"));
  return r;
}

Report criterion3() {
  Report r;
  for (std::size_t k = 1; k <= 5; ++k) {
    const GradedRing c = incidence_ring(chain(k), Q);
    r.expect(decide_koszul_ring(c).verdict, "chain of length " + std::to_string(k) + " Koszul");
    r.expect(decide_koszul_ring(incidence_ring(antichain(k), Q)).verdict,
             "antichain of size " + std::to_string(k) + " Koszul");
    const BettiTable t = tor_table(c, 2 * k, 2 * k);
    for (std::size_t n = 2; n <= 2 * k; ++n)
      for (std::size_t m = 0; m <= 2 * k; ++m)
        r.expect(t.at(n, m) == 0, "chain T_{n,m} = 0 for n ≥ 2");
  }
  r.detail = "chains L=1..5, antichains 1..5";
  return r;
}

Report criterion4() {
  Report r;
  const auto start = Clock::now();
  std::vector<GradedPoset> sample = enumerate_corpus(1, 5);
  const std::size_t exhaustive = sample.size();
  std::mt19937_64 rng(20261018);
  std::set<std::string> seen;
  for (std::size_t draw = 0; seen.size() < 120; ++draw) {
    GradedPoset p = random_graded(rng, 6 + rng() % 2, draw % 3 == 0);
    if (seen.insert(canonical_form(p)).second) sample.push_back(std::move(p));
  }
  std::size_t koszul = 0;
  for (const GradedPoset& p : sample) {
    try {
      const KoszulVerdict ring = decide_koszul_ring(incidence_ring(p, Q));
      const KoszulVerdict coring = decide_koszul_coring(incidence_coring(p, Q));
      r.expect(ring.verdict == coring.verdict, "ring and coring agree on " + canonical_form(p));
      r.expect(ring.verdict == tor_diagonal_oracle(p), "dense oracle agrees on " + canonical_form(p));
      koszul += ring.verdict;
    } catch (const InternalError& e) {
      r.expect(false, std::string("criteria disagree: ") + e.what());
    }
  }
  const double s = std::chrono::duration<double>(Clock::now() - start).count();
  r.expect(s < 600, "under 10 min");
  std::ostringstream out;
  out << exhaustive << " exhaustive + " << seen.size() << " random, " << sample.size() - koszul
      << " not Koszul";
  r.detail = out.str();
  return r;
}

Report criterion5() {
  Report r;
  std::vector<GradedPoset> sample = enumerate_corpus(1, 5);
  sample.push_back(p_bad());
  for (const GradedPoset& p : sample) {
    const GradedRing a = incidence_ring(p, Q);
    const GradedCoring c = incidence_coring(p, Q);
    const std::string name = canonical_form(p);
    r.expect(decide_koszul_ring(a).verdict == decide_koszul_coring(c).verdict, "verdicts agree on " + name);
    r.expect(isomorphic_under(graded_left_dual_of_ring(a), c, dual_label), "χ on " + name);
    r.expect(isomorphic_under(graded_left_dual_of_coring(c), a, dual_label), "dual χ on " + name);
    const AlmostKoszulPair pair = make_pair_shriek_ring(a);
    try {
      const AlmostKoszulPair dual = dual_pair(pair);
      r.expect(pair_is_koszul(dual) == pair_is_koszul(pair), "dual pair Koszulity on " + name);
    } catch (const std::exception& e) {
      r.expect(false, std::string("dual pair not almost-Koszul: ") + e.what());
    }
    r.expect(double_dual_check(a) && double_dual_check(c), "double dual on " + name);
  }
  r.detail = std::to_string(sample.size()) + " posets";
  return r;
}

Report criterion6() {
  Report r;
  const std::vector<GradedPoset> corpus = enumerate_corpus(1, 6);
  for (const GradedPoset& p : corpus) {
    const GradedRing a = incidence_ring(p, Q);
    const GradedCoring c = incidence_coring(p, Q);
    r.expect(quadratic_via_tor(a).holds == is_quadratic_direct(a).holds, "ring quadraticity on " + canonical_form(p));
    r.expect(quadratic_via_ext(c).holds == is_quadratic_coring_direct(c).holds,
             "coring quadraticity on " + canonical_form(p));
  }
  std::mt19937_64 rng(6);
  for (int k = 0; k < 20; ++k) {
    const GradedPoset& p = corpus[rng() % corpus.size()];
    const GradedRing a = incidence_ring(p, Q);
    const GradedCoring c = incidence_coring(p, Q);
    for (std::size_t m = 2; m <= 2 * p.max_length(); ++m) {
      r.expect(verify_tor2_sequence(a, m).holds(), "Tor₂ sequence at m=" + std::to_string(m));
      r.expect(verify_ext2_sequence(c, m).holds(), "Ext² sequence at m=" + std::to_string(m));
    }
  }
  r.detail = std::to_string(corpus.size()) + " posets, 20 sequence samples";
  return r;
}

Report criterion7() {
  Report r;
  std::mt19937_64 rng(7);
  const std::vector<GradedPoset> corpus = enumerate_corpus(1, 6);
  std::size_t mixed = 0;
  for (int k = 0; k < 10; ++k) {
    const GradedPoset p = prefixed(corpus[rng() % corpus.size()], "p");
    const GradedPoset q = prefixed(k % 3 == 0 ? p_bad() : corpus[rng() % corpus.size()], "q");
    const AlmostKoszulPair pp = make_pair_shriek_ring(incidence_ring(p, Q));
    const AlmostKoszulPair pq = make_pair_shriek_ring(incidence_ring(q, Q));
    const bool kp = pair_is_koszul(pp), kq = pair_is_koszul(pq);
    mixed += kp != kq;
    r.expect(pair_is_koszul(pair_product(pp, pq)) == (kp && kq), "product of pair " + std::to_string(k));
  }
  r.detail = "10 pairs, " + std::to_string(mixed) + " with one non-Koszul factor";
  return r;
}

Report criterion8() {
  Report r;
  std::vector<GradedPoset> sample = enumerate_corpus(1, 5);
  sample.push_back(p_bad());
  std::size_t slices = 0;
  for (const GradedPoset& p : sample) {
    const GradedRing a = incidence_ring(p, Q);
    const GradedCoring c = incidence_coring(p, Q);
    const AlmostKoszulPair pair = make_pair_shriek_ring(a);
    const AlmostKoszulPair cpair = make_pair_shriek_coring(c);
    for (std::size_t m = 0; m <= 2 * p.max_length(); ++m) {
      for (const ComplexSlice& s :
           {bar_complex_ring(a, m), cobar_complex_coring(c, m), koszul_complex_left(pair, m),
            koszul_complex_right(pair, m), koszul_complex_opposite(pair, m), koszul_complex_left(cpair, m)}) {
        ++slices;
        r.expect(balanced(s), "d∘d = 0 and Euler balance on " + canonical_form(p));
      }
    }
  }
  r.detail = std::to_string(slices) + " slices";
  return r;
}

Report criterion9() {
  Report r;
  std::size_t koszul = 0;
  for (const GradedPoset& p : enumerate_corpus(1, 6)) {
    if (!decide_koszul_ring(incidence_ring(p, Q)).verdict) continue;
    ++koszul;
    r.expect(decide_koszul_ring(zeta_ring(p, Q)).verdict, "zeta ring Koszul on " + canonical_form(p));
  }
  r.detail = std::to_string(koszul) + " Koszul posets";
  return r;
}

}  // namespace

int main() {
  const std::vector<std::function<Report()>> criteria = {criterion1, criterion2, criterion3,
                                                         criterion4, criterion5, criterion6,
                                                         criterion7, criterion8, criterion9};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = Clock::now();
    Report r;
    try {
      r = criteria[i]();
    } catch (const std::exception& e) {
      r.failures.push_back(std::string("exception: ") + e.what());
    }
    const double s = std::chrono::duration<double>(Clock::now() - start).count();
    const bool pass = r.failures.empty();
    failed += !pass;
    std::cout << "criterion " << i + 1 << ": " << (pass ? "PASS" : "FAIL") << "  (" << r.detail
              << (r.detail.empty() ? "" : ", ") << std::fixed;
    std::cout.precision(2);
    std::cout << s << " s)\n";
    for (std::size_t k = 0; k < r.failures.size() && k < 5; ++k) std::cout << "    " << r.failures[k] << "\n";
    if (r.failures.size() > 5) std::cout << "    … " << r.failures.size() - 5 << " more\n";
  }
  return failed ? 1 : 0;
}
