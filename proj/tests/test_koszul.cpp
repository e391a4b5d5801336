#include <random>

#include <nlohmann/json.hpp>

#include "doctest.h"
#include "fixtures.hpp"
#include "koszul/errors.hpp"
#include "koszul/koszul.hpp"
#include "koszul/poset.hpp"
#include "koszul_oracle.hpp"

using namespace koszul;

namespace {

const FieldSpec Q = FieldSpec::rationals();

AlmostKoszulPair ring_pair(const GradedPoset& p) { return make_pair_shriek_ring(incidence_ring(p, Q)); }
AlmostKoszulPair coring_pair(const GradedPoset& p) {
  return make_pair_shriek_coring(incidence_coring(p, Q));
}

bool all_exact(const AlmostKoszulPair& pair, ComplexSlice (*build)(const AlmostKoszulPair&, std::size_t)) {
  for (std::size_t m = 1; m <= pair_weight_bound(pair); ++m)
    if (!is_exact(build(pair, m)).exact) return false;
  return true;
}

}  // namespace

TEST_CASE("shriek pairs") {
  const AlmostKoszulPair d = ring_pair(fixtures::diamond());
  CHECK(d.coring.dim(2) == 1);
  CHECK(d.coring.top_degree() == 2);

  const AlmostKoszulPair a = ring_pair(fixtures::antichain(3));
  CHECK(a.ring.top_degree() == 0);
  CHECK(a.coring.top_degree() == 0);

  const AlmostKoszulPair c = ring_pair(fixtures::chain(3));
  CHECK(c.coring.dim(1) == 3);
  for (std::size_t n = 2; n <= c.coring.top_degree() + 1; ++n) CHECK(c.coring.dim(n) == 0);

  const AlmostKoszulPair dc = coring_pair(fixtures::diamond());
  CHECK(dc.ring.dim(2) == 1);
  CHECK(coring_pair(fixtures::antichain(3)).ring.top_degree() == 0);
  const AlmostKoszulPair cc = coring_pair(fixtures::chain(3));
  CHECK(cc.ring.dim(1) == 3);
  for (std::size_t n = 2; n <= cc.ring.top_degree() + 1; ++n) CHECK(cc.ring.dim(n) == 0);
}

TEST_CASE("pair validation") {
  const GradedRing a = incidence_ring(fixtures::diamond(), Q);
  const GradedCoring c = incidence_coring(fixtures::diamond(), Q);
  // The incidence coring is not annihilated by μ^{1,1}(θ⊗θ).
  CHECK_THROWS_AS(AlmostKoszulPair(a, c, relabel_identity(c.component(1), a.component(1))),
                  InternalError);
  const GradedCoring s = shriek_of_ring(a);
  CHECK_THROWS_AS(AlmostKoszulPair(a, s, BimoduleMap::zero(s.component(1), a.component(1))),
                  InternalError);
  const Base base = make_base({"x", "y", "z"}, Q);
  const GradedRing flat(base,
                        {Bimodule::regular(base), Bimodule::zero(base),
                         Bimodule::from_blocks(base, {{{0, 2}, {{"r"}}}})},
                        {});
  CHECK_THROWS_AS(make_pair_shriek_ring(flat), PreconditionError);
  CHECK_THROWS_AS(decide_koszul_ring(flat), PreconditionError);
}

TEST_CASE("koszul complex examples") {
  const AlmostKoszulPair d = ring_pair(fixtures::diamond());
  const ComplexSlice zero = koszul_complex_left(d, 0);
  CHECK(zero.low() == -1);
  CHECK(zero.space(-1).dim() == 4);
  CHECK(is_exact(zero).exact);

  const ComplexSlice two = koszul_complex_left(d, 2);
  CHECK(two.space(2).block_dim(0, 3) == 1);
  CHECK(two.space(0).block_dim(0, 3) == 1);
  CHECK(two.space(1).block_dim(0, 3) == 2);
  CHECK(is_exact(two).exact);
  for (std::size_t m = 1; m <= 4; ++m) CHECK(is_exact(koszul_complex_left(d, m)).exact);

  const AlmostKoszulPair b = ring_pair(fixtures::p_bad());
  CHECK(is_exact(koszul_complex_left(b, 2)).exact);
  const Exactness three = is_exact(koszul_complex_left(b, 3));
  CHECK_FALSE(three.exact);

  const AlmostKoszulPair dc = coring_pair(fixtures::diamond());
  CHECK(is_exact(koszul_complex_right(dc, 0)).exact);
  CHECK(koszul_complex_right(dc, 0).low() == -1);
  for (std::size_t m = 1; m <= 4; ++m) CHECK(is_exact(koszul_complex_right(dc, m)).exact);
  CHECK_FALSE(is_exact(koszul_complex_right(coring_pair(fixtures::p_bad()), 3)).exact);
}

TEST_CASE("exactness of trivial complexes") {
  const Base base = make_base({"x"}, Q);
  const ComplexSlice empty(base, Direction::chain, 0, 0, {Bimodule::zero(base)}, {});
  CHECK(is_exact(empty).exact);
  const ComplexSlice lone(base, Direction::chain, 0, 0, {Bimodule::regular(base)}, {});
  const Exactness e = is_exact(lone);
  CHECK_FALSE(e.exact);
  CHECK(e.homology_dims == std::vector<std::size_t>{1});
}

TEST_CASE("koszul complexes agree with the chain oracle") {
  for (const auto& p : enumerate_corpus(1, 6)) {
    const AlmostKoszulPair pair = ring_pair(p);
    for (std::size_t m = 1; m <= pair_weight_bound(pair); ++m) {
      const ComplexSlice s = koszul_complex_left(pair, m);
      for (std::size_t n = 0; n <= m; ++n) {
        CHECK(s.homology_dim(static_cast<int>(n)) == oracle::koszul_homology(p, n, m));
      }
    }
  }
}

TEST_CASE("slices vanish beyond the weight bound") {
  for (const auto& p : enumerate_corpus(1, 5)) {
    const AlmostKoszulPair pair = ring_pair(p);
    CHECK(pair_weight_bound(pair) == 2 * p.max_length());
    const ComplexSlice s = koszul_complex_left(pair, pair_weight_bound(pair) + 1);
    for (int n = s.low(); n <= s.high(); ++n) CHECK(s.space(n).dim() == 0);
  }
}

TEST_CASE("six complexes are exact together") {
  for (const auto& p : enumerate_corpus(1, 6)) {
    for (const AlmostKoszulPair& pair : {ring_pair(p), coring_pair(p)}) {
      const bool left = all_exact(pair, koszul_complex_left);
      CHECK(all_exact(pair, koszul_complex_right) == left);
      CHECK(all_exact(pair, koszul_complex_opposite) == left);
    }
  }
}

TEST_CASE("canonical maps") {
  const GradedRing d = incidence_ring(fixtures::diamond(), Q);
  const GradedRing b = incidence_ring(fixtures::p_bad(), Q);
  CHECK(phi_shriek_ring_check(d, 1));
  CHECK(phi_shriek_ring_check(d, 2));
  CHECK(phi_shriek_ring_check(b, 1));
  // φ^A_2 hits T_{2,2} but misses T_{2,3}.
  CHECK_FALSE(phi_shriek_ring_check(b, 2));

  const GradedCoring dc = incidence_coring(fixtures::diamond(), Q);
  const GradedCoring bc = incidence_coring(fixtures::p_bad(), Q);
  CHECK(phi_shriek_coring_check(dc, 1));
  CHECK(phi_shriek_coring_check(dc, 2));
  CHECK(phi_shriek_coring_check(bc, 1));
  CHECK_FALSE(phi_shriek_coring_check(bc, 2));
}

TEST_CASE("decisions on the examples") {
  const KoszulVerdict d = decide_koszul_ring(incidence_ring(fixtures::diamond(), Q));
  CHECK(d.verdict);
  CHECK(d.sound);
  CHECK(d.m_bound_used == 4);
  CHECK_FALSE(d.witness_weight.has_value());

  const KoszulVerdict b = decide_koszul_ring(incidence_ring(fixtures::p_bad(), Q));
  CHECK_FALSE(b.verdict);
  CHECK(b.witness_weight == 3u);
  CHECK(b.criterion("tor_diagonal").evidence == "T_{2,3} = 1");
  CHECK_FALSE(b.criterion("quadratic").pass);

  for (std::size_t l = 1; l <= 5; ++l) {
    CHECK(decide_koszul_ring(incidence_ring(fixtures::chain(l), Q)).verdict);
    CHECK(decide_koszul_coring(incidence_coring(fixtures::chain(l), Q)).verdict);
  }
  for (std::size_t n = 1; n <= 5; ++n) {
    CHECK(decide_koszul_ring(incidence_ring(fixtures::antichain(n), Q)).verdict);
    CHECK(decide_koszul_coring(incidence_coring(fixtures::antichain(n), Q)).verdict);
  }

  CHECK(decide_koszul_coring(incidence_coring(fixtures::diamond(), Q)).verdict);
  const KoszulVerdict bc = decide_koszul_coring(incidence_coring(fixtures::p_bad(), Q));
  CHECK_FALSE(bc.verdict);
  CHECK(bc.witness_weight == 3u);

  const KoszulVerdict parallel =
      decide_koszul_ring(incidence_ring(fixtures::p_bad(), Q), DecideOptions{std::nullopt, 4});
  CHECK(parallel.to_json() == b.to_json());
}

TEST_CASE("verdict json") {
  const KoszulVerdict b = decide_koszul_ring(incidence_ring(fixtures::p_bad(), Q));
  const auto j = nlohmann::json::parse(b.to_json());
  CHECK(j["verdict"] == false);
  CHECK(j["m_bound_used"] == 6);
  CHECK(j["witness_weight"] == 3);
  REQUIRE(j["criteria"].is_array());
  CHECK(j["criteria"].size() == 5);
  for (const auto& c : j["criteria"]) {
    CHECK(c.contains("id"));
    CHECK(c.contains("pass"));
    CHECK(c.contains("evidence"));
  }
  const KoszulVerdict capped =
      decide_koszul_ring(incidence_ring(fixtures::diamond(), Q), DecideOptions{2, 1});
  CHECK_FALSE(capped.sound);
  CHECK(capped.m_bound_used == 2);
}

TEST_CASE("criteria agree on the corpus") {
  std::size_t koszul = 0, total = 0;
  for (const auto& p : enumerate_corpus(1, 6)) {
    const KoszulVerdict r = decide_koszul_ring(incidence_ring(p, Q));
    const KoszulVerdict c = decide_koszul_coring(incidence_coring(p, Q));
    CHECK(r.verdict == c.verdict);
    CHECK(r.witness_weight == c.witness_weight);
    koszul += r.verdict;
    ++total;
    if (r.verdict) CHECK(decide_koszul_ring(zeta_ring(p, Q)).verdict);
  }
  CHECK(koszul > 0);
  CHECK(koszul < total);
}

TEST_CASE("products of pairs") {
  const AlmostKoszulPair d = ring_pair(fixtures::diamond());
  const AlmostKoszulPair b = ring_pair(fixtures::p_bad());
  const GradedPoset chain2 = GradedPoset::from_covers({"u", "v", "w"}, {{"u", "v"}, {"v", "w"}});
  const AlmostKoszulPair c = ring_pair(chain2);
  CHECK(pair_is_koszul(pair_product(d, c)));

  const GradedPoset other = GradedPoset::from_covers(
      {"p", "q", "r", "s", "t", "u"}, {{"p", "q"}, {"p", "r"}, {"q", "s"}, {"r", "t"}, {"s", "u"}, {"t", "u"}});
  const AlmostKoszulPair bad = ring_pair(other);
  CHECK_FALSE(pair_is_koszul(bad));
  CHECK_FALSE(pair_is_koszul(pair_product(d, bad)));
  CHECK_THROWS_AS(pair_product(d, b), InputError);

  const AlmostKoszulPair unit = ring_pair(GradedPoset::from_covers({"solo"}, {}));
  const AlmostKoszulPair with_unit = pair_product(unit, d);
  CHECK(with_unit.ring.dim(1) == d.ring.dim(1));
  CHECK(with_unit.coring.dim(2) == d.coring.dim(2));
  CHECK(pair_is_koszul(with_unit));

  std::mt19937_64 rng(11);
  const auto corpus = enumerate_corpus(1, 4);
  for (int k = 0; k < 10; ++k) {
    const GradedPoset& p = corpus[rng() % corpus.size()];
    const GradedPoset& q = corpus[rng() % corpus.size()];
    const GradedPoset u = disjoint_union(p, q);
    const bool vp = decide_koszul_ring(incidence_ring(p, Q)).verdict;
    const bool vq = decide_koszul_ring(incidence_ring(q, Q)).verdict;
    CHECK(decide_koszul_ring(incidence_ring(u, Q)).verdict == (vp && vq));
  }
}

TEST_CASE("decisions over a prime field") {
  const FieldSpec f = FieldSpec::prime_field(2);
  CHECK(decide_koszul_ring(incidence_ring(fixtures::diamond(), f)).verdict);
  CHECK_FALSE(decide_koszul_ring(incidence_ring(fixtures::p_bad(), f)).verdict);
}
