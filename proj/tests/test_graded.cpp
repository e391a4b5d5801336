#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "koszul/errors.hpp"
#include "koszul/graded.hpp"
#include "koszul/poset.hpp"

using namespace koszul;

namespace {

const FieldSpec Q = FieldSpec::rationals();

std::uint32_t at(const GradedPoset& p, const std::string& x) { return *p.index_of(x); }

// x → y → z with C_1 = {p, q}, C_2 = {r, s} in block (x, z).
Base xyz() { return make_base({"x", "y", "z"}, Q); }
Bimodule gen1(const Base& b) { return Bimodule::from_blocks(b, {{{0, 1}, {{"p"}}}, {{1, 2}, {{"q"}}}}); }
Bimodule gen2(const Base& b) { return Bimodule::from_blocks(b, {{{0, 2}, {{"r", "r"}, {"s", "s"}}}}); }

// Components as given, every product zero.
GradedRing zero_product_ring(const Base& b, std::vector<Bimodule> comps) {
  comps.insert(comps.begin(), Bimodule::regular(b));
  return GradedRing(b, comps, {});
}

GradedPoset random_corpus_poset(std::mt19937_64& rng, const std::vector<GradedPoset>& corpus) {
  return corpus[rng() % corpus.size()];
}

// A random sub-bimodule of V⊗V spanned by block-homogeneous vectors.
SubBimodule random_relations(std::mt19937_64& rng, const Bimodule& vv) {
  std::vector<SparseVector> gens;
  for (auto [s, t] : vv.nonzero_blocks()) {
    const std::size_t off = vv.block_offset(s, t), d = vv.block_dim(s, t);
    const std::size_t count = rng() % (d + 1);
    for (std::size_t k = 0; k < count; ++k) {
      SparseVector v;
      for (std::size_t i = 0; i < d; ++i) {
        const int c = int(rng() % 5) - 2;
        if (c) v.emplace_back(static_cast<std::uint32_t>(off + i), Scalar(c));
      }
      if (!v.empty()) gens.push_back(v);
    }
  }
  return span_in(vv, gens);
}

}  // namespace

TEST_CASE("strong grading of rings") {
  CHECK(is_strongly_graded_ring(incidence_ring(fixtures::antichain(3), Q)).holds);
  CHECK(is_strongly_graded_ring(incidence_ring(fixtures::diamond(), Q)).holds);
  CHECK(is_strongly_graded_ring(incidence_ring(fixtures::p_bad(), Q)).holds);

  const Base b = xyz();
  const GradedRing gap = zero_product_ring(b, {Bimodule::zero(b), gen2(b)});
  const StrongGrading sg = is_strongly_graded_ring(gap);
  CHECK_FALSE(sg.holds);
  CHECK(sg.failing_degree == 2u);
  CHECK_FALSE(sg.witness.empty());
}

TEST_CASE("strong grading of corings") {
  CHECK(is_strongly_graded_coring(incidence_coring(fixtures::diamond(), Q)).holds);
  CHECK(is_strongly_graded_coring(incidence_coring(fixtures::p_bad(), Q)).holds);
  const Base b = xyz();
  CHECK(is_strongly_graded_coring(GradedCoring(b, {Bimodule::regular(b)}, {})).holds);

  const GradedCoring flat(b, {Bimodule::regular(b), gen1(b), gen2(b)}, {});
  const StrongGrading sg = is_strongly_graded_coring(flat);
  CHECK_FALSE(sg.holds);
  CHECK(sg.failing_degree == 2u);
  CHECK(primitive_dims(flat).at(2) == 2);
}

TEST_CASE("primitives and indecomposables") {
  const auto pc = primitive_dims(incidence_coring(fixtures::diamond(), Q));
  CHECK(pc.at(1) == 4);
  CHECK(pc.at(2) == 0);

  const auto qa = indecomposable_dims(incidence_ring(fixtures::chain(2), Q));
  CHECK(qa.at(1) == 2);
  CHECK(qa.at(2) == 0);

  const Base b = xyz();
  const Bimodule v = gen1(b);
  const GradedRing tensor_ring =
      quadratic_ring_of({v, span_in(tensor(v, v), {})}, 2);
  CHECK(tensor_ring.dim(2) == 1);
  CHECK(indecomposable_dims(tensor_ring).at(2) == 0);

  const GradedRing flat = zero_product_ring(b, {v, gen2(b)});
  CHECK(indecomposable_dims(flat).at(2) == 2);
}

TEST_CASE("associativity is enforced") {
  const Base b = xyz();
  const Bimodule v = gen1(b);
  const Bimodule a2 = Bimodule::from_blocks(b, {{{0, 2}, {{"r", "r"}}}});
  // A wrong shape is rejected.
  CHECK_THROWS_AS(GradedRing(b, {Bimodule::regular(b), v, a2},
                             {{{1, 1}, BimoduleMap::zero(v, a2)}}),
                  DimensionError);
  CHECK_THROWS_AS(GradedRing(b, {Bimodule::zero(b)}, {}), InternalError);
}

TEST_CASE("quadratic ring examples") {
  const GradedPoset d = fixtures::diamond();
  const GradedCoring c = incidence_coring(d, Q);
  const Bimodule v = c.component(1);
  const Bimodule vv = tensor(v, v);

  const GradedRing free = quadratic_ring_of({v, span_in(vv, {})}, 2);
  CHECK(free.dim(2) == 2);
  CHECK(free.component(2).block_dim(at(d, "0"), at(d, "1")) == 2);

  const GradedRing none = quadratic_ring_of({v, whole(vv)}, 2);
  CHECK(none.dim(2) == 0);

  const GradedRing diamond = quadratic_ring_of({v, image(c.delta(1, 1))}, 2);
  CHECK(diamond.dim(2) == 1);
  CHECK(diamond.component(2).block_dim(at(d, "0"), at(d, "1")) == 1);
}

TEST_CASE("quadratic coring examples") {
  const GradedPoset d = fixtures::diamond();
  const GradedRing a = incidence_ring(d, Q);
  const Bimodule v = a.component(1);
  const Bimodule vv = tensor(v, v);

  CHECK(quadratic_coring_of({v, whole(vv)}, 2).dim(2) == 2);
  CHECK(quadratic_coring_of({v, span_in(vv, {})}, 2).dim(2) == 0);

  const GradedCoring k = quadratic_coring_of({v, kernel(a.mu(1, 1))}, 3);
  CHECK(k.dim(2) == 1);
  CHECK(k.dim(3) == 0);
}

TEST_CASE("shriek coring examples") {
  CHECK(shriek_of_ring(incidence_ring(fixtures::chain(2), Q)).dim(2) == 0);
  CHECK(shriek_of_ring(incidence_ring(fixtures::chain(2), Q)).dim(1) == 2);

  const GradedPoset d = fixtures::diamond();
  const GradedCoring s = shriek_of_ring(incidence_ring(d, Q));
  REQUIRE(s.dim(2) == 1);
  // Spanned by e_{0,a}⊗e_{a,1} − e_{0,b}⊗e_{b,1}.
  const Bimodule v = s.component(1);
  const Bimodule vv = tensor(v, v);
  const auto col = s.delta(1, 1).matrix().column(0);
  REQUIRE(col.size() == 2);
  const auto i = vv.index(at(d, "0"), at(d, "1"), {"e_{0,a}", "e_{a,1}"});
  const auto j = vv.index(at(d, "0"), at(d, "1"), {"e_{0,b}", "e_{b,1}"});
  CHECK(col[0].first == i);
  CHECK(col[1].first == j);
  CHECK(col[0].second == -col[1].second);

  const GradedCoring anti = shriek_of_ring(incidence_ring(fixtures::antichain(3), Q));
  CHECK(anti.top_degree() == 0);
  CHECK(anti.dim(0) == 3);
  CHECK_FALSE(anti.truncated());
}

TEST_CASE("shriek ring examples") {
  const GradedRing d = shriek_of_coring(incidence_coring(fixtures::diamond(), Q));
  CHECK(d.dim(2) == 1);

  const Base b = xyz();
  const GradedCoring flat(b, {Bimodule::regular(b), gen1(b)}, {});
  const GradedRing t = shriek_of_coring(flat);
  CHECK(t.top_degree() == 2);
  CHECK(t.dim(2) == 1);
  CHECK(same_structure(t, quadratic_ring_of({gen1(b), span_in(tensor(gen1(b), gen1(b)), {})}, 2)));

  CHECK(shriek_of_coring(incidence_coring(fixtures::antichain(2), Q)).top_degree() == 0);
}

TEST_CASE("shriek cap marks truncation") {
  // A loop at one idempotent has nonzero tensor powers in every degree.
  const Base b = make_base({"x"}, Q);
  const Bimodule loop = Bimodule::from_blocks(b, {{{0, 0}, {{"t"}}}});
  bool capped = false;
  CHECK(tensor_support(loop, 4, &capped) == 4);
  CHECK(capped);
  const GradedRing a = quadratic_ring_of({loop, span_in(tensor(loop, loop), {})}, 3);
  const GradedCoring s = shriek_of_ring(a, 4);
  CHECK(s.truncated());
  CHECK(s.top_degree() == 4);
}

TEST_CASE("products") {
  const GradedRing a = incidence_ring(fixtures::diamond(), Q);
  const GradedRing r = incidence_ring(GradedPoset::from_covers({"z"}, {}), Q);
  const GradedRing ar = direct_product(a, r);
  CHECK(ar.base()->size() == 5);
  CHECK(ar.dim(0) == 5);
  CHECK(ar.dim(1) == 4);
  CHECK(ar.dim(2) == 1);

  const GradedPoset c2 = GradedPoset::from_covers({"p", "q", "r"}, {{"p", "q"}, {"q", "r"}});
  const GradedRing ab = direct_product(a, incidence_ring(c2, Q));
  CHECK(ab.dim(1) == 6);
  CHECK(ab.dim(2) == 2);

  CHECK_THROWS_AS(direct_product(a, a), InputError);

  for (const auto& [p, q] : {std::pair{fixtures::antichain(2), fixtures::diamond()},
                             std::pair{fixtures::diamond(), c2},
                             std::pair{c2, fixtures::p_bad()}}) {
    const GradedPoset u = disjoint_union(p, q);
    CHECK(same_structure(incidence_ring(u, Q),
                         direct_product(incidence_ring(p, Q), incidence_ring(q, Q))));
    CHECK(same_structure(incidence_coring(u, Q),
                         direct_sum_corings(incidence_coring(p, Q), incidence_coring(q, Q))));
  }
}

TEST_CASE("indecomposables detect strong grading") {
  std::mt19937_64 rng(7);
  const auto corpus = enumerate_corpus(1, 5);
  const Base b = xyz();
  for (int trial = 0; trial < 40; ++trial) {
    const GradedPoset p = random_corpus_poset(rng, corpus);
    GradedRing a = incidence_ring(p, Q);
    GradedCoring c = incidence_coring(p, Q);
    if (trial % 2) {
      // Cross with a ring whose products vanish, which is strongly graded
      // only when its degree-2 part is zero.
      std::vector<Bimodule> comps{gen1(b)};
      if (rng() % 3) comps.push_back(gen2(b));
      a = direct_product(a, zero_product_ring(b, comps));
      std::vector<Bimodule> ccomps{Bimodule::regular(b)};
      ccomps.insert(ccomps.end(), comps.begin(), comps.end());
      c = direct_sum_corings(c, GradedCoring(b, ccomps, {}));
    }
    const auto qa = indecomposable_dims(a);
    bool qa_zero = true;
    for (auto [n, d] : qa) qa_zero &= n < 2 || d == 0;
    CHECK(qa_zero == is_strongly_graded_ring(a).holds);

    const auto pc = primitive_dims(c);
    bool pc_zero = true;
    for (auto [n, d] : pc) pc_zero &= n < 2 || d == 0;
    CHECK(pc_zero == is_strongly_graded_coring(c).holds);
  }
}

TEST_CASE("quadratic constructions: dimension identities") {
  std::mt19937_64 rng(11);
  const auto corpus = enumerate_corpus(2, 6);
  for (int trial = 0; trial < 40; ++trial) {
    const GradedPoset p = random_corpus_poset(rng, corpus);
    const Bimodule v = incidence_ring(p, Q).component(1);
    const Bimodule vv = tensor(v, v);
    const QuadraticData data{v, random_relations(rng, vv)};
    const std::size_t top = std::max<std::size_t>(p.max_length(), 2);
    const GradedRing a = quadratic_ring_of(data, top);
    // Building the coring checks that deconcatenation lands inside.
    const GradedCoring c = quadratic_coring_of(data, top);
    for (std::size_t n = 2; n <= top; ++n) {
      const Bimodule vn = tensor_power(v, n);
      const SubBimodule ideal = ideal_component(data, n);
      CHECK(a.dim(n) + ideal.dim() == vn.dim());
      for (auto [s, t] : vn.nonzero_blocks()) {
        CHECK(a.component(n).block_dim(s, t) + ideal.space.block_dim(s, t) == vn.block_dim(s, t));
      }
      CHECK(c.component(n) == coideal_component(data, n).space);
      CHECK(coideal_component(data, n).ambient() == vn);
    }
  }
}

TEST_CASE("incidence structures are strongly graded on the corpus") {
  for (const auto& p : enumerate_corpus(1, 5)) {
    CHECK(is_strongly_graded_ring(incidence_ring(p, Q)).holds);
    CHECK(is_strongly_graded_coring(incidence_coring(p, Q)).holds);
  }
}
