#pragma once

// Every multiplier-order bound, the Ellis-Weigold product inequality with
// all factors computed exactly, the exact-sequence order identity, and
// report assembly with attainment flags.

#include <optional>

#include "json.hpp"
#include "psi.hpp"
#include "rat.hpp"

namespace pmult {

inline Rat green_bound(long long n) { return Rat(n * (n - 1), 2); }

inline Rat eq0_bound(long long n, long long k) {
  return Rat((n - k - 1) * (n + k - 2), 2) + Rat(1);
}

inline Rat ew_rai_bound(long long d, long long n, long long k) {
  if (d < 2) throw GroupError("ew_rai_bound: non-abelian groups need d >= 2");
  return Rat((d - 1) * (n + k - 2), 2) + Rat(1);
}

inline Rat theorem1_bound(long long d, long long n, long long k, long long c) {
  if (d < 2 || c < 2) throw GroupError("theorem1_bound: need d >= 2 and c >= 2");
  long long corr = 0;
  for (long long i = 2; i <= std::min(d, c); ++i) corr += d - i;
  return Rat((d - 1) * (n + k), 2) - Rat(corr);
}

inline Rat gaschutz_bound(long long n) { return Rat(n - 1); }  // d = 2 only

inline Rat moravec_bound(long long p, long long n) {  // maximal class, n > p+1
  if (n <= p + 1) throw GroupError("moravec_bound needs n > p+1");
  long long ceil_term = (n - 2) / (p - 1) + 1;  // ceil((n-1)/(p-1))
  return Rat((p + 1) * ceil_term, 2);
}

inline Rat theorem3_bound_raw(long long n) { return Rat(n, 2); }

// group orders are integral p-powers, so n/2 rounds down
inline long long theorem3_bound(long long n) { return n / 2; }

struct GroupInvariants {
  long long p = 0, n = 0, k = 0, d = 0, c = 0, delta = 0;
  bool maximal_class() const { return c == n - 1; }
};

inline GroupInvariants group_invariants(const PcGroup& G) {
  GroupInvariants inv;
  inv.p = G.prime();
  inv.n = log_p(G.order(), G.prime());
  auto series = lower_central_series(G);
  inv.c = nilpotency_class(series);
  inv.k = log_p(series[1].order(), G.prime());
  inv.d = min_generators(G);
  if (inv.c >= 2) {
    PsiContext ctx = PsiContext::build(G);
    inv.delta = ctx.delta;
  } else {
    inv.delta = 0;
  }
  return inv;
}

// Exact per-factor breakdown of |M(G)||gamma_2|prod|Im Psi_i| <=
// |M(G^{ab})| prod |gamma_i/gamma_{i+1} (x) (G/Z)^{ab}| (all exponents).
struct Prop1Breakdown {
  long long m_exp = 0, k_exp = 0;
  std::vector<long long> im_psi_exps;     // i = 2..c
  long long mult_ab_exp = 0;
  std::vector<long long> tensor_exps;     // i = 2..c
  long long lhs_exp = 0, rhs_exp = 0;
  bool pass = false;
};

inline Prop1Breakdown prop1_check(const PsiContext& ctx, long long m_exp) {
  Prop1Breakdown b;
  b.m_exp = m_exp;
  const PcGroup& G = *ctx.G;
  b.k_exp = log_p(ctx.series[1].order(), G.prime());
  Section ab = abelianization(G);
  b.mult_ab_exp = multiplier_abelian(ab.shape()).order_exp();
  b.lhs_exp = m_exp + b.k_exp;
  b.rhs_exp = b.mult_ab_exp;
  for (int i = 2; i <= ctx.cls; ++i) {
    long long im = psi_image_order_exp(ctx, i);
    b.im_psi_exps.push_back(im);
    b.lhs_exp += im;
    long long te = ctx.value_group(i).order_exp();
    b.tensor_exps.push_back(te);
    b.rhs_exp += te;
  }
  b.pass = b.lhs_exp <= b.rhs_exp;
  return b;
}

// RHS - (k + sum log|Im Psi_i|): the sharpest multiplier exponent the
// product inequality yields with exact factors.
inline long long prop1_exact_upper(const PsiContext& ctx) {
  Prop1Breakdown b = prop1_check(ctx, 0);
  return b.rhs_exp - b.lhs_exp;  // m_exp was 0, so lhs = k + sum(im)
}

struct KarpilowskyOrders {
  long long tensor_order = 0;  // |G/gamma_2 (x) gamma_c|
  long long m_G = 0;           // |M(G)|
  long long m_quot = 0;        // |M(G/gamma_c)|
  long long gamma_c = 0;       // |gamma_c|
};

// 1 -> X -> G/gamma_2 (x) gamma_c -> M(G) -> M(G/gamma_c) -> gamma_c -> 1
// forces |X| = t * m_quot / (m_G * gamma_c); failure if not a p-power.
inline std::optional<long long> karpilowsky_check(const KarpilowskyOrders& o, long long p) {
  long long num = o.tensor_order * o.m_quot;
  long long den = o.m_G * o.gamma_c;
  if (den == 0 || num % den != 0) return std::nullopt;
  long long x = num / den;
  long long v = x;
  while (v % p == 0) v /= p;
  if (v != 1) return std::nullopt;
  return x;
}

struct BoundReport {
  GroupInvariants inv;
  std::optional<Rat> green, gaschutz, niroomand_eq0, ew_rai, theorem1, moravec;
  std::optional<long long> theorem3;
  std::optional<Rat> theorem3_raw;
  std::optional<long long> prop1_upper;
  std::optional<long long> multiplier_exp;
  std::string multiplier_source;  // "oracle" | "paper" | ""
  std::vector<std::pair<std::string, bool>> attained;
};

inline BoundReport build_report(const PcGroup& G,
                                std::optional<long long> mult_exp = std::nullopt,
                                const std::string& mult_source = "") {
  BoundReport r;
  r.inv = group_invariants(G);
  const auto& inv = r.inv;
  r.green = green_bound(inv.n);
  if (inv.c >= 2) {
    r.niroomand_eq0 = eq0_bound(inv.n, inv.k);
    r.ew_rai = ew_rai_bound(inv.d, inv.n, inv.k);
    r.theorem1 = theorem1_bound(inv.d, inv.n, inv.k, inv.c);
    if (inv.d == 2) r.gaschutz = gaschutz_bound(inv.n);
    if (inv.maximal_class() && inv.n > inv.p + 1) r.moravec = moravec_bound(inv.p, inv.n);
    if (inv.maximal_class() && inv.p != 2 && inv.n >= 4) {
      r.theorem3 = theorem3_bound(inv.n);
      r.theorem3_raw = theorem3_bound_raw(inv.n);
    }
    PsiContext ctx = PsiContext::build(G);
    r.prop1_upper = prop1_exact_upper(ctx);
  }
  r.multiplier_exp = mult_exp;
  r.multiplier_source = mult_source;
  if (mult_exp) {
    Rat m(*mult_exp);
    auto flag = [&](const char* name, const std::optional<Rat>& bound) {
      if (bound) r.attained.emplace_back(name, m == *bound);
    };
    flag("green", r.green);
    flag("gaschutz", r.gaschutz);
    flag("niroomand_eq0", r.niroomand_eq0);
    flag("ew_rai", r.ew_rai);
    flag("theorem1", r.theorem1);
    flag("moravec", r.moravec);
    if (r.theorem3) r.attained.emplace_back("theorem3", *mult_exp == *r.theorem3);
    if (r.prop1_upper) r.attained.emplace_back("prop1_exact_upper", *mult_exp == *r.prop1_upper);
  }
  return r;
}

inline nlohmann::json rat_json(const Rat& r) {
  return nlohmann::json{{"num", r.num}, {"den", r.den}};
}

inline nlohmann::json report_json(const BoundReport& r) {
  nlohmann::json j;
  j["p"] = r.inv.p;
  j["n"] = r.inv.n;
  j["k"] = r.inv.k;
  j["d"] = r.inv.d;
  j["c"] = r.inv.c;
  j["delta"] = r.inv.delta;
  auto put = [&](const char* name, const std::optional<Rat>& b) {
    if (b) j[name] = rat_json(*b);
  };
  put("green", r.green);
  put("gaschutz", r.gaschutz);
  put("niroomand_eq0", r.niroomand_eq0);
  put("ew_rai", r.ew_rai);
  put("theorem1", r.theorem1);
  put("moravec", r.moravec);
  if (r.theorem3) j["theorem3"] = rat_json(Rat(*r.theorem3));
  put("theorem3_raw", r.theorem3_raw);
  if (r.prop1_upper) j["prop1_exact_upper"] = rat_json(Rat(*r.prop1_upper));
  if (r.multiplier_exp) {
    j["multiplier_exp"] = *r.multiplier_exp;
    j["multiplier_source"] = r.multiplier_source;
  }
  if (!r.attained.empty()) {
    nlohmann::json a;
    for (const auto& [name, flag] : r.attained) a[name] = flag;
    j["attained"] = a;
  }
  return j;
}

}  // namespace pmult
