#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "koszul/errors.hpp"
#include "koszul/homology.hpp"
#include "poset_oracle.hpp"

using namespace koszul;

namespace {

const FieldSpec Q = FieldSpec::rationals();

void check_slice(const ComplexSlice& s) {
  CHECK(s.euler_characteristic() == s.homology_euler_characteristic());
}

}  // namespace

TEST_CASE("partitions") {
  CHECK(partitions(1, 4) == std::vector<Parts>{{4}});
  CHECK(partitions(2, 3) == std::vector<Parts>{{1, 2}, {2, 1}});
  CHECK(partitions(3, 3) == std::vector<Parts>{{1, 1, 1}});
  CHECK(partitions(3, 2).empty());
  CHECK(partitions(0, 0).size() == 1);
  CHECK(partitions(3, 7).size() == 15);  // C(6, 2)
}

TEST_CASE("bar complex examples") {
  const GradedRing d = incidence_ring(fixtures::diamond(), Q);
  const ComplexSlice one = bar_complex_ring(d, 1);
  CHECK(one.homology_dim(1) == 4);

  const ComplexSlice two = bar_complex_ring(d, 2);
  CHECK(two.space(2).dim() == 2);
  CHECK(two.space(1).dim() == 1);
  CHECK(two.homology_dim(1) == 0);
  CHECK(two.homology_dim(2) == 1);
  check_slice(two);

  const GradedRing b = incidence_ring(fixtures::p_bad(), Q);
  CHECK(bar_complex_ring(b, 3).homology_dim(2) == 1);

  const ComplexSlice zero = bar_complex_ring(d, 0);
  CHECK(zero.homology_dim(0) == 4);
}

TEST_CASE("cobar complex examples") {
  const GradedCoring d = incidence_coring(fixtures::diamond(), Q);
  CHECK(cobar_complex_coring(d, 1).homology_dim(1) == 4);
  const ComplexSlice two = cobar_complex_coring(d, 2);
  CHECK(two.homology_dim(1) == 0);
  CHECK(two.homology_dim(2) == 1);
  check_slice(two);

  const BettiTable e = ext_table(incidence_coring(fixtures::antichain(3), Q), 3, 3);
  for (std::size_t m = 1; m <= 3; ++m)
    for (std::size_t n = 0; n <= 3; ++n) CHECK(e.at(n, m) == 0);
  CHECK(e.at(0, 0) == 3);
}

TEST_CASE("tor tables") {
  const BettiTable c = tor_table(incidence_ring(fixtures::chain(3), Q), 4, 6);
  CHECK(c.at(0, 0) == 4);
  CHECK(c.at(1, 1) == 3);
  for (std::size_t n = 2; n <= 4; ++n)
    for (std::size_t m = 0; m <= 6; ++m) CHECK(c.at(n, m) == 0);

  const BettiTable d = tor_table(incidence_ring(fixtures::diamond(), Q), 4, 4);
  for (std::size_t n = 0; n <= 4; ++n) {
    for (std::size_t m = 0; m <= 4; ++m) {
      const std::size_t expect = n == m ? std::vector<std::size_t>{4, 4, 1, 0, 0}[n] : 0;
      CHECK(d.at(n, m) == expect);
    }
  }
  CHECK(d.to_csv().rfind("n\\m,0,1,2,3,4\n0,4,0,0,0,0\n1,0,4,0,0,0\n2,0,0,1,0,0\n", 0) == 0);

  const BettiTable b = tor_table(incidence_ring(fixtures::p_bad(), Q), 3, 6, 3);
  CHECK(b.at(2, 3) == 1);
  CHECK(b.at(3, 3) == 0);
}

TEST_CASE("tables agree with the chain oracle") {
  for (const auto& p : enumerate_corpus(1, 6)) {
    const std::size_t bound = default_weight_bound(p.max_length());
    const BettiTable t = tor_table(incidence_ring(p, Q), bound, bound);
    const BettiTable e = ext_table(incidence_coring(p, Q), bound, bound);
    for (std::size_t m = 0; m <= bound; ++m) {
      for (std::size_t n = 0; n <= m; ++n) {
        CHECK(t.at(n, m) == oracle::tor_dim(p, n, m));
        CHECK(e.at(n, m) == oracle::ext_dim(p, n, m));
      }
    }
  }
}

TEST_CASE("tables over F_p") {
  const FieldSpec f = FieldSpec::prime_field(3);
  const BettiTable t = tor_table(incidence_ring(fixtures::p_bad(), f), 3, 6);
  const BettiTable q = tor_table(incidence_ring(fixtures::p_bad(), Q), 3, 6);
  CHECK(t.entries == q.entries);
}

TEST_CASE("cohomology products") {
  CobarCohomology d(incidence_coring(fixtures::diamond(), Q));
  const BimoduleMap unit = d.ring_component(0, 0, 1, 1);
  CHECK(unit.rank() == d.dim(1, 1));
  const BimoduleMap sq = d.ring_component(1, 1, 1, 1);
  CHECK(sq.rank() == 1);
  CHECK(d.dim(2, 2) == 1);
  CHECK(d.generated_in_degree_one(1, 2));

  CobarCohomology b(incidence_coring(fixtures::p_bad(), Q));
  CHECK(b.dim(2, 3) == 1);
  CHECK(b.dim(1, 2) == 0);
  CHECK(b.ring_component(1, 1, 1, 2).rank() == 0);
  CHECK_FALSE(b.generated_in_degree_one(1, 3));
}

TEST_CASE("primitive classes of the bar homology") {
  BarHomology d(incidence_ring(fixtures::diamond(), Q));
  CHECK(d.primitive_dim(1, 1) == 4);
  CHECK(d.primitive_dim(2, 2) == 0);
  CHECK(d.coring_component(1, 1, 2).rank() == 1);

  BarHomology b(incidence_ring(fixtures::p_bad(), Q));
  CHECK(b.dim(2, 3) == 1);
  CHECK(b.primitive_dim(2, 3) == 1);
  CHECK(b.primitive_dim(2, 2) == 0);
}

TEST_CASE("quadraticity") {
  const GradedRing d = incidence_ring(fixtures::diamond(), Q);
  const GradedRing b = incidence_ring(fixtures::p_bad(), Q);
  CHECK(quadratic_via_tor(d).holds);
  const DegreeCheck bt = quadratic_via_tor(b);
  CHECK_FALSE(bt.holds);
  CHECK(bt.failing_degree == 3u);
  CHECK(quadratic_via_tor(incidence_ring(fixtures::chain(4), Q)).holds);

  CHECK(is_quadratic_direct(d).holds);
  const DegreeCheck bd = is_quadratic_direct(b);
  CHECK_FALSE(bd.holds);
  CHECK(bd.failing_degree == 3u);
  CHECK(is_quadratic_direct(incidence_ring(fixtures::antichain(2), Q)).holds);
  // Ker μ_3 has dimension 1 while the ideal generated in degree 3 is zero.
  const QuadraticData data{b.component(1), kernel(b.mu(1, 1))};
  CHECK(ideal_component(data, 3).dim() == 0);
  CHECK(kernel(b.mu_n(3)).dim() == 1);

  CHECK(is_quadratic_coring_direct(incidence_coring(fixtures::diamond(), Q)).holds);
  CHECK_FALSE(is_quadratic_coring_direct(incidence_coring(fixtures::p_bad(), Q)).holds);
  CHECK_FALSE(quadratic_via_ext(incidence_coring(fixtures::p_bad(), Q)).holds);

  const Base base = make_base({"x", "y", "z"}, Q);
  const GradedRing flat(base,
                        {Bimodule::regular(base), Bimodule::zero(base),
                         Bimodule::from_blocks(base, {{{0, 2}, {{"r"}}}})},
                        {});
  CHECK_THROWS_AS(quadratic_via_tor(flat), PreconditionError);
}

TEST_CASE("quadraticity tests agree on the corpus") {
  for (const auto& p : enumerate_corpus(1, 6)) {
    const GradedRing a = incidence_ring(p, Q);
    const GradedCoring c = incidence_coring(p, Q);
    CHECK(quadratic_via_tor(a).holds == is_quadratic_direct(a).holds);
    CHECK(quadratic_via_ext(c).holds == is_quadratic_coring_direct(c).holds);
  }
}

TEST_CASE("exact sequences in degree two") {
  const GradedRing d = incidence_ring(fixtures::diamond(), Q);
  const SequenceCheck s = verify_tor2_sequence(d, 2);
  CHECK(s.left == 1);
  CHECK(s.right == 1);
  CHECK(s.middle == 2);

  const SequenceCheck beyond = verify_tor2_sequence(d, 4);
  CHECK(beyond.right == 0);
  CHECK(beyond.holds());

  const SequenceCheck b = verify_tor2_sequence(incidence_ring(fixtures::p_bad(), Q), 3);
  CHECK(b.left == 1);
  CHECK(b.right == 1);
  CHECK(b.middle == 2);

  std::mt19937_64 rng(5);
  const auto corpus = enumerate_corpus(2, 6);
  for (int k = 0; k < 20; ++k) {
    const GradedPoset& p = corpus[rng() % corpus.size()];
    const GradedRing a = incidence_ring(p, Q);
    const GradedCoring c = incidence_coring(p, Q);
    for (std::size_t m = 2; m <= 2 * p.max_length(); ++m) {
      CHECK(verify_tor2_sequence(a, m).holds());
      CHECK(verify_ext2_sequence(c, m).holds());
    }
  }
}

TEST_CASE("alpha maps cycles and boundaries") {
  for (const auto& p : enumerate_corpus(3, 6)) {
    const GradedRing a = incidence_ring(p, Q);
    const QuadraticData data{a.component(1), kernel(a.mu(1, 1))};
    for (std::size_t m = 2; m <= p.max_length(); ++m) {
      const ComplexSlice bar = bar_complex_ring(a, m);
      const BimoduleMap alpha = alpha_map(a, bar, m);
      CHECK((bar.outgoing(2) * alpha * kernel(a.mu_n(m)).inclusion).is_zero());
      // In weight 2 there are no 3-chains, so the relations themselves are
      // classes; the boundary property starts in weight 3.
      if (m < 3) continue;
      const SubBimodule boundaries = image(bar.incoming(2));
      const BimoduleMap gen = alpha * ideal_component(data, m).inclusion;
      for (std::size_t c = 0; c < gen.matrix().cols(); ++c) {
        CHECK(contains(boundaries, gen.matrix().column(c)));
      }
    }
  }
}

TEST_CASE("complex validation") {
  const Base base = make_base({"x"}, Q);
  const Bimodule k = Bimodule::regular(base);
  // 0 → k → 0 has a lone class.
  const ComplexSlice lone(base, Direction::chain, 0, 0, {k}, {});
  CHECK(lone.homology_dims() == std::vector<std::size_t>{1});
  const BimoduleMap id = BimoduleMap::identity(k);
  CHECK_THROWS_AS(ComplexSlice(base, Direction::chain, 0, 0, {k, k, k}, {id, id}), InternalError);
  const ComplexSlice exact(base, Direction::cochain, 0, -1, {k, k}, {id});
  CHECK(exact.homology_dims() == std::vector<std::size_t>{0, 0});
  CHECK(exact.homology_dim(5) == 0);
}
