#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "koszul/errors.hpp"
#include "koszul/poset.hpp"

using namespace koszul;

namespace {

const FieldSpec Q = FieldSpec::rationals();

std::uint32_t at(const GradedPoset& p, const std::string& x) { return *p.index_of(x); }

std::vector<std::size_t> dims(const GradedRing& a) {
  std::vector<std::size_t> out;
  for (std::size_t n = 0; n <= a.top_degree(); ++n) out.push_back(a.dim(n));
  return out;
}

}  // namespace

TEST_CASE("parse examples") {
  const GradedPoset one = parse_poset(R"({"elements": ["x"], "covers": []})");
  CHECK(one.size() == 1);
  CHECK(one.max_length() == 0);

  const GradedPoset d = parse_poset(
      R"({"elements": ["0","a","b","1"], "covers": [["0","a"],["0","b"],["a","1"],["b","1"]]})");
  CHECK(d.size() == 4);
  CHECK(d.max_length() == 2);
  CHECK(d.length(at(d, "0"), at(d, "1")) == 2u);
  CHECK_FALSE(d.length(at(d, "a"), at(d, "b")).has_value());

  try {
    parse_poset(R"({"elements": ["0","a","b"], "covers": [["0","a"],["a","b"],["0","b"]]})");
    FAIL("non-graded poset accepted");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("[0,b]") != std::string::npos);
  }
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_poset("{"), InputError);
  CHECK_THROWS_AS(parse_poset(R"({"covers": []})"), InputError);
  CHECK_THROWS_AS(parse_poset(R"({"elements": ["x","x"]})"), InputError);
  CHECK_THROWS_AS(parse_poset(R"({"elements": ["x"], "covers": [["x","y"]]})"), InputError);
  CHECK_THROWS_AS(parse_poset(R"({"elements": ["x","y"], "covers": [["x","y"],["y","x"]]})"),
                  InputError);
  CHECK_THROWS_AS(parse_poset(R"({"elements": ["x","y"], "covers": [["x","y"],["x","y"]]})"),
                  InputError);
  CHECK_THROWS_AS(parse_poset(R"({"elements": ["x"], "covers": [["x"]]})"), InputError);
  CHECK_THROWS_AS(load_poset("/nonexistent/poset.json"), InputError);
}

TEST_CASE("json round trip") {
  const GradedPoset p = fixtures::p_bad();
  const GradedPoset q = parse_poset(poset_to_json(p));
  CHECK(q.elements() == p.elements());
  CHECK(q.covers() == p.covers());
}

TEST_CASE("incidence ring dimensions") {
  CHECK(dims(incidence_ring(fixtures::antichain(3), Q)) == std::vector<std::size_t>{3});
  CHECK(dims(incidence_ring(fixtures::diamond(), Q)) == std::vector<std::size_t>{4, 4, 1});
  CHECK(dims(incidence_ring(fixtures::p_bad(), Q)) == std::vector<std::size_t>{6, 6, 4, 1});
}

TEST_CASE("incidence coring comultiplication") {
  const GradedPoset d = fixtures::diamond();
  const GradedCoring c = incidence_coring(d, Q);
  const Bimodule vv = tensor(c.component(1), c.component(1));
  const auto col = c.delta(1, 1).matrix().column(0);
  REQUIRE(col.size() == 2);
  CHECK(col[0].first == vv.index(at(d, "0"), at(d, "1"), {"e_{0,a}", "e_{a,1}"}));
  CHECK(col[1].first == vv.index(at(d, "0"), at(d, "1"), {"e_{0,b}", "e_{b,1}"}));
  CHECK(col[0].second == 1);
  CHECK(col[1].second == 1);

  CHECK(incidence_coring(fixtures::antichain(2), Q).top_degree() == 0);

  const GradedPoset ch = fixtures::chain(2);
  const GradedCoring cc = incidence_coring(ch, Q);
  const auto one = cc.delta(1, 1).matrix().column(0);
  REQUIRE(one.size() == 1);
  CHECK(one[0].first == tensor(cc.component(1), cc.component(1))
                            .index(0, 2, {"e_{0,1}", "e_{1,2}"}));
}

TEST_CASE("zeta ring") {
  CHECK(zeta_ring(fixtures::diamond(), Q).dim(2) == 1);
  CHECK(zeta_ring(fixtures::chain(3), Q).dim(2) == 0);
  CHECK(zeta_ring(fixtures::antichain(2), Q).top_degree() == 0);
  for (const auto& p : enumerate_corpus(1, 6)) {
    CHECK(same_structure(zeta_ring(p, Q), shriek_of_coring(incidence_coring(p, Q))));
  }
}

TEST_CASE("shriek coring of an incidence ring in degree 2") {
  for (const auto& p : enumerate_corpus(3, 6)) {
    const GradedCoring s = shriek_of_ring(incidence_ring(p, Q));
    for (const auto& iv : p.intervals(2)) {
      CHECK(s.component(2).block_dim(iv.lower, iv.upper) + 1 ==
            p.open_interval(iv.lower, iv.upper).size());
    }
  }
}

TEST_CASE("ring and coring dimensions agree") {
  for (const auto& p : enumerate_corpus(1, 6)) {
    const GradedRing a = incidence_ring(p, Q);
    const GradedCoring c = incidence_coring(p, Q);
    REQUIRE(a.top_degree() == c.top_degree());
    for (std::size_t n = 0; n <= a.top_degree(); ++n) CHECK(a.dim(n) == c.dim(n));
  }
}

TEST_CASE("disjoint union") {
  const GradedPoset u = disjoint_union(fixtures::antichain(1), fixtures::diamond());
  CHECK(u.size() == 5);
  CHECK(u.max_length() == 2);
  const GradedPoset clash = disjoint_union(fixtures::diamond(), fixtures::chain(1));
  CHECK(clash.size() == 6);
  CHECK(clash.index_of("1:0").has_value());
  CHECK(clash.index_of("2:1").has_value());
  const GradedPoset self = disjoint_union(fixtures::diamond(), fixtures::diamond());
  CHECK(canonical_form(self) != canonical_form(fixtures::diamond()));
  CHECK(incidence_ring(self, Q).dim(1) == 8);
}

TEST_CASE("corpus counts") {
  CHECK(enumerate_corpus(1, 1).size() == 1);
  CHECK(enumerate_corpus(2, 2).size() == 2);
  CHECK(enumerate_corpus(3, 3).size() == 5);
  CHECK(enumerate_corpus(4, 4).size() == 16);
  CHECK(enumerate_corpus(5, 5).size() == 62);

  std::set<std::string> forms;
  bool has_diamond = false;
  const std::string diamond = canonical_form(fixtures::diamond());
  for (const auto& p : enumerate_corpus(4, 4)) {
    forms.insert(canonical_form(p));
    has_diamond |= canonical_form(p) == diamond;
  }
  CHECK(forms.size() == 16);
  CHECK(has_diamond);

  for (const auto& p : enumerate_corpus(1, 6, 1)) CHECK(p.max_length() <= 1);
}

TEST_CASE("canonical form is a relabeling invariant") {
  const GradedPoset a = GradedPoset::from_covers({"p", "q", "r", "s"},
                                                 {{"r", "s"}, {"r", "q"}, {"q", "p"}, {"s", "p"}});
  CHECK(canonical_form(a) == canonical_form(fixtures::diamond()));
  CHECK(canonical_form(fixtures::chain(3)) != canonical_form(fixtures::diamond()));
  // Same element count and length, different shapes.
  const GradedPoset v = GradedPoset::from_covers({"0", "a", "b"}, {{"0", "a"}, {"0", "b"}});
  const GradedPoset w = GradedPoset::from_covers({"a", "b", "1"}, {{"a", "1"}, {"b", "1"}});
  CHECK(canonical_form(v) != canonical_form(w));
}
