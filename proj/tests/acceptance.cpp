// Acceptance harness: each criterion prints one PASS/FAIL line; the exit
// code is the number of failed criteria.

#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "pmult/bounds.hpp"
#include "pmult/catalog.hpp"
#include "pmult/oracle.hpp"
#include "pmult/psi.hpp"

using namespace pmult;

namespace {

int failures = 0;

void criterion(int num, const char* title, const std::function<bool()>& body) {
  bool ok = false;
  std::string err;
  try {
    ok = body();
  } catch (const std::exception& e) {
    err = e.what();
  }
  printf("%s  criterion %2d: %s%s%s\n", ok ? "PASS" : "FAIL", num, title,
         err.empty() ? "" : " -- ", err.c_str());
  fflush(stdout);
  if (!ok) ++failures;
}

std::vector<std::vector<int>> partitions_up_to(int nmax) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int rest, int maxpart) {
    if (rest == 0) {
      out.push_back(cur);
      return;
    }
    for (int part = std::min(rest, maxpart); part >= 1; --part) {
      cur.push_back(part);
      rec(rest - part, part);
      cur.pop_back();
    }
  };
  for (int n = 1; n <= nmax; ++n) rec(n, n);
  return out;
}

}  // namespace

int main() {
  criterion(1, "oracle equals the closed form on all abelian p-groups of order <= 81", [] {
    struct Box {
      long long p;
      int nmax;
    };
    for (Box box : {Box{2, 6}, Box{3, 4}}) {
      for (const auto& shape : partitions_up_to(box.nmax)) {
        PcGroup G = PcGroup::build(build_abelian(box.p, shape));
        long long expect = multiplier_abelian(FinAb{box.p, shape}).order_exp();
        if (multiplier_exp(G, /*cap=*/243) != expect) return false;
      }
    }
    return true;
  });

  criterion(2, "elementary abelian groups attain the n(n-1)/2 bound", [] {
    PcGroup C33 = PcGroup::build(build_abelian(3, {1, 1, 1}));
    if (Rat(multiplier_exp(C33)) != green_bound(3)) return false;
    PcGroup C22 = PcGroup::build(build_abelian(2, {1, 1}));
    return Rat(multiplier_exp(C22)) == green_bound(2);
  });

  criterion(3, "the E_p x C_p^{n-3} family attains the (n-k-1)(n+k-2)/2+1 bound", [] {
    PcGroup E = PcGroup::build(build_extraspecial(3, true));
    if (Rat(multiplier_exp(E)) != eq0_bound(3, 1)) return false;
    PcGroup G1 = PcGroup::build(build_G1(3, 4));
    return Rat(multiplier_exp(G1)) == eq0_bound(4, 1);
  });

  criterion(4, "the exponent-9 extraspecial group misses that bound", [] {
    PcGroup M = PcGroup::build(build_extraspecial(3, false));
    long long m = multiplier_exp(M);
    return m == 0 && Rat(m) < eq0_bound(3, 1);
  });

  criterion(5, "exact product inequality holds for all oracle-sized groups, tight for E_3", [] {
    for (const auto& e : catalog()) {
      if (e.expect_order > 81 || e.expect_class < 2) continue;
      PcGroup G = PcGroup::build(e.build());
      PsiContext ctx = PsiContext::build(G);
      Prop1Breakdown b = prop1_check(ctx, multiplier_exp(G));
      if (!b.pass) return false;
      if (e.name == "E3" && b.lhs_exp != b.rhs_exp) return false;
    }
    return true;
  });

  criterion(6, "refined bound formula dominated by the product bound; pinned values", [] {
    for (long long d = 2; d <= 6; ++d)
      for (long long c = 2; c <= 6; ++c)
        for (long long n = 2; n <= 12; ++n)
          for (long long k = std::max(1LL, c - 1); k < n; ++k)
            if (theorem1_bound(d, n, k, c) > ew_rai_bound(d, n, k)) return false;
    return theorem1_bound(3, 7, 4, 3) == Rat(10) && theorem1_bound(3, 6, 3, 2) == Rat(8);
  });

  criterion(7, "structural suite for the order-3^7 class-3 group", [] {
    PcGroup G = PcGroup::build(build_G4());
    if (G.order() != 2187) return false;
    GroupInvariants inv = group_invariants(G);
    if (inv.d != 3 || inv.c != 3 || inv.k != 4) return false;
    auto series = lower_central_series(G);
    if (series[1].order() / series[2].order() != 27) return false;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (i != j && !G.is_id(G.left_normed({G.gen(i), G.gen(j), G.gen(i)})))
          return false;
    Elem w1 = G.commutator(G.commutator(G.gen(0), G.gen(1)), G.gen(2));
    Elem w2 = G.commutator(G.commutator(G.gen(1), G.gen(2)), G.gen(0));
    Elem w3 = G.commutator(G.commutator(G.gen(2), G.gen(0)), G.gen(1));
    if (w1 != w2 || w2 != w3) return false;
    PsiContext ctx = PsiContext::build(G);
    if (psi_image_order_exp(ctx, 3) != 0) return false;
    if (psi_image_order_exp(ctx, 2) < 1) return false;
    // the multiplier order itself (3^10) is out of oracle range; the exact
    // upper bound reproduces the claimed exponent
    return prop1_exact_upper(ctx) == 10;
  });

  criterion(8, "witness suite for the order-81 maximal class group", [] {
    PcGroup W = PcGroup::build(build_wreath_CpCp(3));
    Theorem3Witness w = theorem3_witness(W);
    if (!w.ok()) return false;
    bool saw3 = false;
    for (const auto& c : w.odd_checks)
      if (c.i == 3) saw3 = c.psi_nontrivial;
    if (!saw3) return false;
    long long m = multiplier_exp(W);
    return m <= theorem3_bound(4) && Rat(theorem3_bound(4)) < gaschutz_bound(4);
  });

  criterion(9, "exact-sequence order identity for the order-81 maximal class group", [] {
    PcGroup W = PcGroup::build(build_wreath_CpCp(3));
    auto series = lower_central_series(W);
    KarpilowskyOrders o;
    Section ab = abelianization(W);
    Section gc = make_section(W, series[2], series[3]);
    o.tensor_order = 1;
    for (long long t = 0; t < tensor(ab.shape(), gc.shape()).order_exp(); ++t)
      o.tensor_order *= 3;
    o.gamma_c = series[2].order();
    long long mexp = multiplier_exp(W);
    o.m_G = 1;
    for (long long t = 0; t < mexp; ++t) o.m_G *= 3;
    QuotientGroup Q = quotient(W, series[2]);
    long long qexp = cocycle_multiplier(Q.Q, 3).mult_exp;
    o.m_quot = 1;
    for (long long t = 0; t < qexp; ++t) o.m_quot *= 3;
    auto x = karpilowsky_check(o, 3);
    if (!x || *x < 1) return false;
    for (long long v = *x; v > 1; v /= 3)
      if (v % 3 != 0) return false;
    // fabricated multiplier order must break the identity
    KarpilowskyOrders bad = o;
    bad.m_G *= 7;
    return !karpilowsky_check(bad, 3).has_value();
  });

  criterion(10, "psi well-definedness and evaluator agreement property suite", [] {
    std::mt19937 rng(97);
    for (const auto& e : catalog()) {
      if (e.expect_class < 2) continue;
      PcGroup G = PcGroup::build(e.build());
      PsiContext ctx = PsiContext::build(G);
      std::uniform_int_distribution<long long> pick(0, G.order() - 1);
      const Subgroup& g2 = ctx.series[1];
      for (int t = 0; t < 100; ++t) {
        int i = 2 + (int)(rng() % (ctx.cls - 1));
        std::vector<Elem> xs;
        for (int j = 0; j < i + 1; ++j) xs.push_back(G.unrank(pick(rng)));
        TensorElement base = psi_eval(ctx, i, xs).val;
        size_t slot = rng() % xs.size();
        Elem z = G.mul(G.unrank(ctx.Z.ranks[rng() % ctx.Z.ranks.size()]),
                       G.unrank(g2.ranks[rng() % g2.ranks.size()]));
        xs[slot] = G.mul(xs[slot], z);
        if (!(psi_eval(ctx, i, xs).val == base)) return false;
      }
      for (int t = 0; t < 100 && ctx.cls >= 3; ++t) {
        std::vector<Elem> xs;
        for (int j = 0; j < 4; ++j) xs.push_back(G.unrank(pick(rng)));
        if (!(psi_eval(ctx, 3, xs).val == psi3_eval_direct(ctx, xs).val)) return false;
      }
      for (int t = 0; t < 100 && ctx.cls >= 4; ++t) {
        std::vector<Elem> xs;
        for (int j = 0; j < 5; ++j) xs.push_back(G.unrank(pick(rng)));
        if (!(psi_eval(ctx, 4, xs).val == psi4_eval_direct(ctx, xs).val)) return false;
      }
    }
    return true;
  });

  criterion(11, "inconsistent and weight-violating presentations are rejected", [] {
    // weight violation: [g3,g1] = g3
    auto bad_weight = pcp_skeleton(3, {3, 3, 3});
    bad_weight.comm_rhs[1][0] = word({{2, 1}});
    bad_weight.comm_rhs[2][0] = word({{2, 1}});
    try {
      PcGroup::build(bad_weight);
      return false;
    } catch (const GroupError& e) {
      if (std::string(e.what()).find("g3") == std::string::npos) return false;
    }
    // overlap inconsistency: g1^3 = g2 forces [g2,g1] = 1, but [g2,g1] = g3
    auto bad = pcp_skeleton(3, {3, 3, 3});
    bad.comm_rhs[1][0] = word({{2, 1}});
    bad.power_rhs[0] = word({{1, 1}});
    auto why = PcGroup::check_consistency(bad);
    if (!why || why->empty()) return false;
    try {
      PcGroup::build(bad);
      return false;
    } catch (const GroupError&) {
    }
    return true;
  });

  printf("%d of 11 criteria passed\n", 11 - failures);
  return failures;
}
