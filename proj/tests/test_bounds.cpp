#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pmult/bounds.hpp"
#include "pmult/catalog.hpp"
#include "pmult/oracle.hpp"

using namespace pmult;

TEST_CASE("closed-form bounds on pinned parameters") {
  CHECK(green_bound(3) == Rat(3));
  CHECK(green_bound(2) == Rat(1));
  CHECK(green_bound(7) == Rat(21));
  CHECK(eq0_bound(3, 1) == Rat(2));
  CHECK(eq0_bound(4, 1) == Rat(4));
  CHECK(ew_rai_bound(3, 6, 3) == Rat(8));
  CHECK(theorem1_bound(3, 7, 4, 3) == Rat(10));
  CHECK(theorem1_bound(3, 6, 3, 2) == Rat(8));
  CHECK(gaschutz_bound(4) == Rat(3));
  CHECK(moravec_bound(3, 5) == Rat(4));
  CHECK(theorem3_bound(4) == 2);
  CHECK(theorem3_bound(5) == 2);
  CHECK(theorem3_bound_raw(5) == Rat(5, 2));
  CHECK_THROWS_AS(ew_rai_bound(1, 3, 1), GroupError);
  CHECK_THROWS_AS(moravec_bound(3, 4), GroupError);
}

TEST_CASE("theorem 1 never exceeds the product bound it refines") {
  for (long long d = 2; d <= 6; ++d)
    for (long long c = 2; c <= 6; ++c)
      for (long long n = 2; n <= 12; ++n)
        for (long long k = c - 1; k < n; ++k) {
          if (k < 1) continue;
          CHECK(theorem1_bound(d, n, k, c) <= ew_rai_bound(d, n, k));
        }
}

TEST_CASE("invariants of catalog groups") {
  for (const auto& e : catalog()) {
    PcGroup G = PcGroup::build(e.build());
    GroupInvariants inv = group_invariants(G);
    CHECK(G.order() == e.expect_order);
    CHECK(inv.c == e.expect_class);
    CHECK(inv.k == e.expect_k);
    CHECK(inv.d == e.expect_d);
  }
}

TEST_CASE("exact product inequality and tightness") {
  // tight for the exponent-3 extraspecial group
  PcGroup E = PcGroup::build(build_extraspecial(3, true));
  PsiContext ctx = PsiContext::build(E);
  Prop1Breakdown b = prop1_check(ctx, multiplier_exp(E));
  CHECK(b.pass);
  CHECK(b.lhs_exp == b.rhs_exp);
  CHECK(prop1_exact_upper(ctx) == 2);

  // strict for the exponent-9 one
  PcGroup M = PcGroup::build(build_extraspecial(3, false));
  PsiContext mctx = PsiContext::build(M);
  Prop1Breakdown mb = prop1_check(mctx, multiplier_exp(M));
  CHECK(mb.pass);
  CHECK(mb.lhs_exp < mb.rhs_exp);
}

TEST_CASE("exact upper bounds for the two big catalog groups") {
  PcGroup G3 = PcGroup::build(build_G3(3));
  CHECK(prop1_exact_upper(PsiContext::build(G3)) == 8);
  PcGroup G4 = PcGroup::build(build_G4());
  CHECK(prop1_exact_upper(PsiContext::build(G4)) == 10);
}

TEST_CASE("exact-sequence order identity") {
  KarpilowskyOrders o;
  o.tensor_order = 9;
  o.m_G = 3;
  o.m_quot = 9;
  o.gamma_c = 3;
  auto x = karpilowsky_check(o, 3);
  REQUIRE(x.has_value());
  CHECK(*x == 9);

  // fabricated multiplier order breaks the identity
  o.m_G = 7;
  CHECK(!karpilowsky_check(o, 3).has_value());
  o.m_G = 2;
  CHECK(!karpilowsky_check(o, 3).has_value());
}

TEST_CASE("report assembly and attainment flags") {
  PcGroup E = PcGroup::build(build_extraspecial(3, true));
  BoundReport r = build_report(E, 2, "oracle");
  CHECK(r.inv.n == 3);
  CHECK(r.inv.k == 1);
  CHECK(r.inv.d == 2);
  REQUIRE(r.niroomand_eq0.has_value());
  CHECK(*r.niroomand_eq0 == Rat(2));
  REQUIRE(r.gaschutz.has_value());  // d = 2
  CHECK(*r.gaschutz == Rat(2));
  REQUIRE(r.prop1_upper.has_value());
  CHECK(*r.prop1_upper == 2);
  bool saw_eq0 = false;
  for (const auto& [name, flag] : r.attained)
    if (name == "niroomand_eq0") {
      saw_eq0 = true;
      CHECK(flag);
    }
  CHECK(saw_eq0);

  nlohmann::json j = report_json(r);
  CHECK(j["p"] == 3);
  CHECK(j["niroomand_eq0"]["num"] == 2);
  CHECK(j["niroomand_eq0"]["den"] == 1);
  CHECK(j["multiplier_exp"] == 2);
  CHECK(j["attained"]["niroomand_eq0"] == true);
}

TEST_CASE("report on a maximal class group includes the specialized bounds") {
  PcGroup W = PcGroup::build(build_wreath_CpCp(3));
  BoundReport r = build_report(W, 1, "oracle");
  CHECK(r.inv.maximal_class());
  REQUIRE(r.theorem3.has_value());
  CHECK(*r.theorem3 == 2);
  REQUIRE(r.gaschutz.has_value());
  CHECK(*r.gaschutz == Rat(3));
  CHECK(*r.theorem3 < 3);  // strictly sharper than Gaschutz here
  CHECK(!r.moravec.has_value());  // n = 4 = p + 1 misses the hypothesis
}

TEST_CASE("abelian groups get only the unconditional bounds") {
  PcGroup A = PcGroup::build(build_abelian(3, {1, 1}));
  BoundReport r = build_report(A, 1, "oracle");
  CHECK(r.inv.c == 1);
  CHECK(r.green.has_value());
  CHECK(!r.theorem1.has_value());
  CHECK(!r.prop1_upper.has_value());
}
