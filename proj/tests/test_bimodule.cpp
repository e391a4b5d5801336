#include <random>

#include "doctest.h"
#include "koszul/bimodule.hpp"
#include "koszul/errors.hpp"

using namespace koszul;

namespace {

Base diamond_base() { return make_base({"0", "a", "b", "1"}, FieldSpec::rationals()); }

// Degree-1 part of the diamond incidence ring, built by hand.
Bimodule diamond_a1(const Base& base) {
  return Bimodule::from_blocks(base, {{{0, 1}, {{"e_0,a"}}},
                                      {{0, 2}, {{"e_0,b"}}},
                                      {{1, 3}, {{"e_a,1"}}},
                                      {{2, 3}, {{"e_b,1"}}}});
}

Bimodule random_bimodule(std::mt19937_64& rng, const Base& base, const std::string& prefix,
                         std::size_t max_total) {
  std::map<BlockKey, std::vector<Label>> blocks;
  const auto n = static_cast<std::uint32_t>(base->size());
  std::size_t total = rng() % (max_total + 1);
  for (std::size_t k = 0; k < total; ++k) {
    BlockKey b{static_cast<std::uint32_t>(rng() % n), static_cast<std::uint32_t>(rng() % n)};
    blocks[b].push_back({prefix + std::to_string(k)});
  }
  return Bimodule::from_blocks(base, blocks);
}

BimoduleMap random_map(std::mt19937_64& rng, const Bimodule& v, const Bimodule& w) {
  MapBuilder b(v, w);
  for (std::uint32_t i = 0; i < v.dim(); ++i)
    for (std::uint32_t j = 0; j < w.dim(); ++j)
      if (v.block_of(i) == w.block_of(j) && rng() % 2) b.add(j, i, Scalar(int(rng() % 5) - 2));
  return b.build();
}

}  // namespace

TEST_CASE("tensor examples") {
  auto base = make_base({"0", "a", "b", "1"}, FieldSpec::rationals());
  auto v = Bimodule::from_blocks(base, {{{0, 1}, {{"v"}}}});
  auto w = Bimodule::from_blocks(base, {{{1, 3}, {{"w"}}}});
  auto vw = tensor(v, w);
  CHECK(vw.dim() == 1);
  CHECK(vw.block_dim(0, 3) == 1);
  auto w2 = Bimodule::from_blocks(base, {{{2, 3}, {{"w"}}}});
  CHECK(tensor(v, w2).dim() == 0);

  auto a1 = diamond_a1(base);
  auto aa = tensor(a1, a1);
  CHECK(aa.dim() == 2);
  CHECK(aa.block_dim(0, 3) == 2);
  CHECK(aa.block_labels(0, 3) == std::vector<Label>{{"e_0,a", "e_a,1"}, {"e_0,b", "e_b,1"}});
}

TEST_CASE("tensor powers") {
  auto base = diamond_base();
  auto a1 = diamond_a1(base);
  auto r = tensor_power(a1, 0);
  CHECK(r == Bimodule::regular(base));
  for (std::uint32_t s = 0; s < 4; ++s) CHECK(r.block_dim(s, s) == 1);
  CHECK(tensor_power(a1, 1) == a1);
  auto p2 = tensor_power(a1, 2);
  CHECK(p2.dim() == 2);
  CHECK(p2.block_dim(0, 3) == 2);
  CHECK(tensor_power(a1, 3).dim() == 0);
}

TEST_CASE("tensor maps") {
  auto base = diamond_base();
  auto a1 = diamond_a1(base);
  auto id = BimoduleMap::identity(a1);
  CHECK(equal_in(tensor_map(id, id), BimoduleMap::identity(tensor(a1, a1))));
  auto z = BimoduleMap::zero(a1, a1);
  CHECK(tensor_map(id, z).is_zero());
  // μ^{1,1} ⊗ id on the diamond lives on an empty space.
  auto a2 = Bimodule::from_blocks(base, {{{0, 3}, {{"e_0,1"}}}});
  MapBuilder mb(tensor(a1, a1), a2);
  mb.add(0, 0, Scalar(1));
  mb.add(0, 1, Scalar(1));
  auto mu = mb.build();
  CHECK(mu.rank() == 1);
  auto m3 = tensor_map(mu, id);
  CHECK(m3.source().dim() == 0);
  CHECK(m3.is_zero());
  CHECK_THROWS_AS(BimoduleMap(a1, a2, SparseMatrix::from_triplets(1, 4, {{0, 0, Scalar(1)}})),
                  DimensionError);
}

TEST_CASE("tensor with R is the identity") {
  auto base = diamond_base();
  auto a1 = diamond_a1(base);
  auto r = Bimodule::regular(base);
  CHECK(tensor(r, a1) == a1);
  CHECK(tensor(a1, r) == a1);
  auto f = BimoduleMap::identity(a1).scaled(3);
  CHECK(equal_in(tensor_map(BimoduleMap::identity(r), f), f));
}

TEST_CASE("duals") {
  auto base = diamond_base();
  auto r = Bimodule::regular(base);
  CHECK(left_dual(r) == r);
  CHECK(left_dual(Bimodule::zero(base)).dim() == 0);
  auto a1 = diamond_a1(base);
  auto d = left_dual(a1);
  CHECK(d.block_labels(0, 1) == std::vector<Label>{{"f_0,a"}});
  CHECK(left_dual(d) == a1);
  CHECK(right_dual(right_dual(a1)) == a1);

  auto iso = dual_tensor_iso(a1, a1);
  CHECK(iso.phi.block(0, 3).rows() == 2);
  CHECK(iso.phi.block(0, 3).cols() == 2);
  CHECK(iso.phi.rank() == 2);
  CHECK(equal_in(iso.psi * iso.phi, BimoduleMap::identity(iso.phi.source())));
  CHECK(equal_in(iso.phi * iso.psi, BimoduleMap::identity(iso.phi.target())));
  auto rr = dual_tensor_iso(r, r);
  CHECK(equal_in(rr.phi, BimoduleMap::identity(r)));
}

TEST_CASE("property: associativity and φ/ψ inverses on random bimodules") {
  std::mt19937_64 rng(42);
  auto base = make_base({"p", "q", "r"}, FieldSpec::rationals());
  for (int trial = 0; trial < 60; ++trial) {
    auto u = random_bimodule(rng, base, "u", 4);
    auto v = random_bimodule(rng, base, "v", 4);
    auto w = random_bimodule(rng, base, "w", 4);
    CHECK(tensor(tensor(u, v), w) == tensor(u, tensor(v, w)));
    if (u.dim() + v.dim() <= 12) {
      auto iso = dual_tensor_iso(u, v);
      CHECK(equal_in(iso.psi * iso.phi, BimoduleMap::identity(iso.phi.source())));
      CHECK(equal_in(iso.phi * iso.psi, BimoduleMap::identity(iso.phi.target())));
      auto isr = dual_tensor_iso_right(u, v);
      CHECK(equal_in(isr.psi * isr.phi, BimoduleMap::identity(isr.phi.source())));
    }
    auto f = random_map(rng, u, u), g = random_map(rng, v, v);
    auto f2 = random_map(rng, u, u), g2 = random_map(rng, v, v);
    CHECK(equal_in(tensor_map(f, g) * tensor_map(f2, g2), tensor_map(f * f2, g * g2)));
    CHECK(equal_in(dual_map(f * f2), dual_map(f2) * dual_map(f)));
  }
}

TEST_CASE("sub-bimodules") {
  auto base = diamond_base();
  auto a1 = diamond_a1(base);
  auto aa = tensor(a1, a1);
  auto a2 = Bimodule::from_blocks(base, {{{0, 3}, {{"e_0,1"}}}});
  MapBuilder mb(aa, a2);
  mb.add(0, 0, Scalar(1));
  mb.add(0, 1, Scalar(1));
  auto mu = mb.build();
  auto k = kernel(mu);
  REQUIRE(k.dim() == 1);
  CHECK(k.inclusion.matrix().at(0, 0) == 1);
  CHECK(k.inclusion.matrix().at(1, 0) == -1);
  auto im = image(mu);
  CHECK(im.dim() == 1);
  auto q = quotient(k);
  CHECK(q.space.dim() == 1);
  CHECK((q.projection * k.inclusion).is_zero());
  CHECK(equal_in(q.projection * q.section, BimoduleMap::identity(q.space)));
  CHECK(intersect({k, whole(aa)}).dim() == 1);
  CHECK(intersect({k, image(BimoduleMap::identity(aa))}).dim() == 1);
  CHECK(contains(k, {{0, Scalar(2)}, {1, Scalar(-2)}}));
  CHECK_FALSE(contains(k, {{0, Scalar(1)}}));
  CHECK_THROWS_AS(span_in(a1, {{{0, Scalar(1)}, {3, Scalar(1)}}}), DimensionError);
  auto st = stack_maps({{"x", mu}, {"y", mu}});
  CHECK(st.target().dim() == 2);
  CHECK(st.rank() == 1);
}
