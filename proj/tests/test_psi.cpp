#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "pmult/catalog.hpp"
#include "pmult/psi.hpp"

using namespace pmult;

namespace {

Elem random_elem(const PcGroup& G, std::mt19937& rng) {
  std::uniform_int_distribution<long long> pick(0, G.order() - 1);
  return G.unrank(pick(rng));
}

// random element of Z(G) gamma_2(G)
Elem random_central(const PcGroup& G, const PsiContext& ctx, std::mt19937& rng) {
  const Subgroup& g2 = ctx.series[1];
  std::uniform_int_distribution<size_t> zi(0, ctx.Z.ranks.size() - 1);
  std::uniform_int_distribution<size_t> gi(0, g2.ranks.size() - 1);
  return G.mul(G.unrank(ctx.Z.ranks[zi(rng)]), G.unrank(g2.ranks[gi(rng)]));
}

}  // namespace

TEST_CASE("psi2 on the exponent-3 extraspecial group") {
  PcGroup G = PcGroup::build(build_extraspecial(3, true));
  PsiContext ctx = PsiContext::build(G);
  CHECK(ctx.delta == 2);
  CHECK(ctx.cls == 2);
  Elem a = G.gen(0), b = G.gen(1);
  // the cyclic sum cancels on every tuple from a 2-dimensional source
  CHECK(psi2_eval(ctx, a, b, a).zero());
  CHECK(psi2_eval(ctx, a, b, b).zero());
  CHECK(psi_image_order_exp(ctx, 2) == 0);
}

TEST_CASE("psi2 is nontrivial when the source has rank 3") {
  PcGroup G = PcGroup::build(build_G3(3));
  PsiContext ctx = PsiContext::build(G);
  CHECK(ctx.delta == 3);
  Elem a1 = G.gen(0), a2 = G.gen(1), a3 = G.gen(2);
  CHECK(!psi2_eval(ctx, a1, a2, a3).zero());
  CHECK(psi_image_order_exp(ctx, 2) >= 1);
}

TEST_CASE("psi2 agrees with the general evaluator") {
  for (const auto* name : {"E3", "G3", "W3"}) {
    PcGroup G = PcGroup::build(catalog_find(name)->build());
    PsiContext ctx = PsiContext::build(G);
    std::mt19937 rng(17);
    for (int t = 0; t < 40; ++t) {
      Elem x1 = random_elem(G, rng), x2 = random_elem(G, rng), x3 = random_elem(G, rng);
      CHECK(psi2_eval(ctx, x1, x2, x3).val == psi_eval(ctx, 2, {x1, x2, x3}).val);
    }
  }
}

TEST_CASE("general evaluator matches the hand-coded i=3 form") {
  for (const auto* name : {"W3", "G4", "MC35"}) {
    PcGroup G = PcGroup::build(catalog_find(name)->build());
    PsiContext ctx = PsiContext::build(G);
    REQUIRE(ctx.cls >= 3);
    std::mt19937 rng(29);
    for (int t = 0; t < 100; ++t) {
      std::vector<Elem> xs;
      for (int j = 0; j < 4; ++j) xs.push_back(random_elem(G, rng));
      CHECK(psi_eval(ctx, 3, xs).val == psi3_eval_direct(ctx, xs).val);
    }
  }
}

TEST_CASE("general evaluator matches the hand-coded i=4 form") {
  PcGroup G = PcGroup::build(catalog_find("MC35")->build());
  PsiContext ctx = PsiContext::build(G);
  REQUIRE(ctx.cls == 4);
  std::mt19937 rng(31);
  for (int t = 0; t < 100; ++t) {
    std::vector<Elem> xs;
    for (int j = 0; j < 5; ++j) xs.push_back(random_elem(G, rng));
    CHECK(psi_eval(ctx, 4, xs).val == psi4_eval_direct(ctx, xs).val);
  }
}

TEST_CASE("psi values are unchanged by central perturbation") {
  for (const auto* name : {"E3", "G3", "W3", "G4"}) {
    PcGroup G = PcGroup::build(catalog_find(name)->build());
    PsiContext ctx = PsiContext::build(G);
    std::mt19937 rng(41);
    for (int t = 0; t < 60; ++t) {
      for (int i = 2; i <= std::min(ctx.cls, 3); ++i) {
        std::vector<Elem> xs;
        for (int j = 0; j < i + 1; ++j) xs.push_back(random_elem(G, rng));
        TensorElement base = psi_eval(ctx, i, xs).val;
        size_t slot = rng() % xs.size();
        xs[slot] = G.mul(xs[slot], random_central(G, ctx, rng));
        CHECK(psi_eval(ctx, i, xs).val == base);
      }
    }
  }
}

TEST_CASE("psi is additive in each slot") {
  for (const auto* name : {"G3", "W3"}) {
    PcGroup G = PcGroup::build(catalog_find(name)->build());
    PsiContext ctx = PsiContext::build(G);
    std::mt19937 rng(43);
    for (int t = 0; t < 40; ++t) {
      int i = 2;
      std::vector<Elem> xs;
      for (int j = 0; j < i + 1; ++j) xs.push_back(random_elem(G, rng));
      size_t slot = rng() % xs.size();
      Elem extra = random_elem(G, rng);
      std::vector<Elem> ys = xs;
      ys[slot] = extra;
      std::vector<Elem> zs = xs;
      zs[slot] = G.mul(xs[slot], extra);
      TensorGroup T = ctx.value_group(i);
      CHECK(psi_eval(ctx, i, zs).val ==
            tensor_add(T, psi_eval(ctx, i, xs).val, psi_eval(ctx, i, ys).val));
    }
  }
}

TEST_CASE("image orders are subgroup exponents of the value group") {
  for (const auto* name : {"E3", "G3", "G4", "W3", "MC35"}) {
    PcGroup G = PcGroup::build(catalog_find(name)->build());
    PsiContext ctx = PsiContext::build(G);
    for (int i = 2; i <= ctx.cls; ++i) {
      long long im = psi_image_order_exp(ctx, i);
      CHECK(im >= 0);
      CHECK(im <= ctx.value_group(i).order_exp());
    }
  }
}

TEST_CASE("theorem 1 witness tuples certify the lower bound") {
  PcGroup G = PcGroup::build(build_G4());
  PsiContext ctx = PsiContext::build(G);
  CHECK(ctx.delta == 3);
  for (int i = 2; i <= 3; ++i) {
    Theorem1Witness w = theorem1_witness(ctx, i);
    CHECK(w.ok);
    CHECK(w.verified_lower_exp >= ctx.delta - i);
    CHECK((int)w.commutator_tuple.size() == i);
    CHECK((int)w.z_indices.size() == ctx.delta - i);
  }
  CHECK_THROWS_AS(theorem1_witness(ctx, 4), GroupError);
}

TEST_CASE("theorem 3 witness on maximal class groups") {
  for (const auto* name : {"W3", "MC35"}) {
    PcGroup G = PcGroup::build(catalog_find(name)->build());
    Theorem3Witness w = theorem3_witness(G);
    CHECK(w.found);
    CHECK(w.generates);
    CHECK(w.chain_ok);
    CHECK(w.ok());
    for (const auto& c : w.odd_checks) {
      CHECK(c.i % 2 == 1);
      CHECK(c.psi_nontrivial);
      CHECK(c.normed_congruence);
    }
  }
  // not maximal class: refused with an explanation
  PcGroup E = PcGroup::build(build_G3(3));
  Theorem3Witness w = theorem3_witness(E);
  CHECK(!w.ok());
  CHECK(!w.obstruction.empty());
}
