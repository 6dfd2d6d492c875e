#pragma once

// The Psi_i homomorphisms from tensor powers of (G/Z(G))^{ab} into
// (gamma_i/gamma_{i+1}) (x) (G/Z(G))^{ab}, their exact image orders, and
// the witness constructions used for the two bound theorems.

#include "finab.hpp"
#include "structure.hpp"
#include "tensor.hpp"

namespace pmult {

struct PsiContext {
  const PcGroup* G = nullptr;
  std::vector<Subgroup> series;   // gamma_1 .. gamma_{c+1} = 1
  Subgroup Z;
  int cls = 0;                    // nilpotency class
  Section gbar_ab;                // (G/Z)^{ab} = G/(Z gamma_2)
  std::vector<Section> sections;  // sections[i-2] = gamma_i/gamma_{i+1}, 2 <= i <= c
  std::vector<Elem> S;            // deterministic generator lifts, |S| = delta
  int delta = 0;

  const Section& section(int i) const {
    if (i < 2 || i > cls) throw GroupError("section index out of range");
    return sections[i - 2];
  }

  static PsiContext build(const PcGroup& G) {
    PsiContext ctx;
    ctx.G = &G;
    ctx.series = lower_central_series(G);
    ctx.cls = nilpotency_class(ctx.series);
    if (ctx.cls < 2) throw GroupError("Psi machinery requires nilpotency class >= 2");
    ctx.Z = center(G);
    // Z(G) gamma_2(G)
    std::vector<Elem> zg2;
    for (const Elem& z : ctx.Z.gens) zg2.push_back(z);
    for (long long r : ctx.series[1].ranks) zg2.push_back(G.unrank(r));
    Subgroup D = closure(G, zg2, /*normal_closure=*/true);
    ctx.gbar_ab = make_section(G, whole_group(G), D);
    for (int i = 2; i <= ctx.cls; ++i)
      ctx.sections.push_back(make_section(G, ctx.series[i - 1], ctx.series[i]));
    ctx.delta = ctx.gbar_ab.shape().rank();

    // lifts: first presentation generators independent modulo Phi(G/Z)
    // pulled back, i.e. modulo <Z gamma_2, generator p-th powers>
    std::vector<Elem> phigens;
    for (const Elem& z : zg2) phigens.push_back(z);
    for (int t = 0; t < G.ngens(); ++t) phigens.push_back(G.pow(G.gen(t), G.prime()));
    Subgroup H = closure(G, phigens, /*normal_closure=*/true);
    std::vector<Elem> hgens = phigens;
    for (int t = 0; t < G.ngens() && (int)ctx.S.size() < ctx.delta; ++t) {
      if (!H.contains(G, G.gen(t))) {
        ctx.S.push_back(G.gen(t));
        hgens.push_back(G.gen(t));
        H = closure(G, hgens, /*normal_closure=*/true);
      }
    }
    if ((int)ctx.S.size() != ctx.delta)
      throw GroupError("failed to select delta independent generator lifts");
    return ctx;
  }

  TensorGroup value_group(int i) const {
    return tensor(section(i).shape(), gbar_ab.shape());
  }
};

struct PsiValue {
  int i = 0;
  TensorGroup group;
  TensorElement val;

  bool zero() const { return val.zero(); }
};

namespace detail {

// dlog of a weight-i commutator in gamma_i/gamma_{i+1}, tensored with the
// image of y in (G/Z)^{ab}, added into acc
inline void add_term(const PsiContext& ctx, int i, TensorElement& acc,
                     const Elem& commutator_value, const Elem& y, bool negate = false) {
  const TensorGroup T = ctx.value_group(i);
  TensorElement t =
      tensor_elem(T, ctx.section(i).dlog(commutator_value), ctx.gbar_ab.dlog(y));
  if (negate) t = tensor_neg(T, t);
  acc = tensor_add(T, acc, t);
}

}  // namespace detail

// Psi_2(x1,x2,x3) = [x1,x2](x)x3 + [x2,x3](x)x1 + [x3,x1](x)x2
inline PsiValue psi2_eval(const PsiContext& ctx, const Elem& x1, const Elem& x2,
                          const Elem& x3) {
  const PcGroup& G = *ctx.G;
  PsiValue v;
  v.i = 2;
  v.group = ctx.value_group(2);
  v.val = tensor_zero(v.group);
  detail::add_term(ctx, 2, v.val, G.commutator(x1, x2), x3);
  detail::add_term(ctx, 2, v.val, G.commutator(x2, x3), x1);
  detail::add_term(ctx, 2, v.val, G.commutator(x3, x1), x2);
  return v;
}

// General Psi_i on an (i+1)-tuple. Term t (0 <= t <= i) pairs the weight-i
// commutator [[x_{i+2-t},...,x_{i+1}]_r, [x_1,...,x_{i-t}]_l] with the
// image of x_{i+1-t}; the t = 0 and t = i ends degenerate to the pure
// left- and right-normed commutators.
inline PsiValue psi_eval(const PsiContext& ctx, int i, const std::vector<Elem>& xs) {
  if (i < 2 || i > ctx.cls) throw GroupError("psi index exceeds nilpotency class");
  if ((int)xs.size() != i + 1) throw GroupError("psi_eval expects i+1 elements");
  const PcGroup& G = *ctx.G;
  PsiValue v;
  v.i = i;
  v.group = ctx.value_group(i);
  v.val = tensor_zero(v.group);
  for (int t = 0; t <= i; ++t) {
    Elem w;
    if (t == 0) {
      w = G.left_normed_any(std::vector<Elem>(xs.begin(), xs.begin() + i));
    } else if (t == i) {
      w = G.right_normed_any(std::vector<Elem>(xs.begin() + 1, xs.end()));
    } else {
      Elem right = G.right_normed_any(std::vector<Elem>(xs.begin() + (i + 1 - t), xs.end()));
      Elem left = G.left_normed_any(std::vector<Elem>(xs.begin(), xs.begin() + (i - t)));
      w = G.commutator(right, left);
    }
    detail::add_term(ctx, i, v.val, w, xs[i - t]);
  }
  return v;
}

// Hand-coded i = 3 specialization (the simplified four-term display);
// locked against psi_eval by tests.
inline PsiValue psi3_eval_direct(const PsiContext& ctx, const std::vector<Elem>& xs) {
  if (xs.size() != 4) throw GroupError("psi3 expects 4 elements");
  const PcGroup& G = *ctx.G;
  PsiValue v;
  v.i = 3;
  v.group = ctx.value_group(3);
  v.val = tensor_zero(v.group);
  const Elem &x1 = xs[0], &x2 = xs[1], &x3 = xs[2], &x4 = xs[3];
  detail::add_term(ctx, 3, v.val, G.commutator(G.commutator(x1, x2), x3), x4);
  detail::add_term(ctx, 3, v.val, G.commutator(x4, G.commutator(x1, x2)), x3);
  detail::add_term(ctx, 3, v.val, G.commutator(G.commutator(x3, x4), x1), x2);
  detail::add_term(ctx, 3, v.val, G.commutator(x2, G.commutator(x3, x4)), x1);
  return v;
}

// Hand-coded i = 4 specialization.
inline PsiValue psi4_eval_direct(const PsiContext& ctx, const std::vector<Elem>& xs) {
  if (xs.size() != 5) throw GroupError("psi4 expects 5 elements");
  const PcGroup& G = *ctx.G;
  PsiValue v;
  v.i = 4;
  v.group = ctx.value_group(4);
  v.val = tensor_zero(v.group);
  const Elem &x1 = xs[0], &x2 = xs[1], &x3 = xs[2], &x4 = xs[3], &x5 = xs[4];
  detail::add_term(ctx, 4, v.val, G.left_normed({x1, x2, x3, x4}), x5);
  detail::add_term(ctx, 4, v.val, G.commutator(x5, G.left_normed({x1, x2, x3})), x4);
  detail::add_term(ctx, 4, v.val, G.commutator(G.commutator(x4, x5), G.commutator(x1, x2)), x3);
  detail::add_term(ctx, 4, v.val, G.commutator(G.commutator(x3, G.commutator(x4, x5)), x1), x2);
  detail::add_term(ctx, 4, v.val, G.commutator(x2, G.commutator(x3, G.commutator(x4, x5))), x1);
  return v;
}

// Exact |Im Psi_i| as a p-power exponent: the image is generated by the
// values on all (i+1)-tuples over the lift set S.
inline long long psi_image_order_exp(const PsiContext& ctx, int i) {
  if (i < 2 || i > ctx.cls) throw GroupError("psi index exceeds nilpotency class");
  long long tuples = 1;
  for (int t = 0; t < i + 1; ++t) {
    tuples *= ctx.delta;
    if (tuples > 1000000) throw GroupError("psi image tuple count exceeds cap");
  }
  TensorGroup T = ctx.value_group(i);
  std::vector<TensorElement> values;
  std::vector<Elem> xs(i + 1, ctx.G->id());
  for (long long code = 0; code < tuples; ++code) {
    long long c = code;
    for (int t = 0; t <= i; ++t) {
      xs[t] = ctx.S[c % ctx.delta];
      c /= ctx.delta;
    }
    values.push_back(psi_eval(ctx, i, xs).val);
  }
  return tensor_subgroup_order_exp(T, values);
}

struct Theorem1Witness {
  int i = 0;
  std::vector<int> commutator_tuple;  // indices into S for (y_1..y_i)
  std::vector<int> z_indices;         // indices into S for (z_1..z_{delta-i})
  long long verified_lower_exp = 0;   // log_p of subgroup generated by the values
  bool ok = false;
  std::string note;
};

// Find a simple left-normed weight-i commutator in elements of S outside
// gamma_{i+1}, pick the remaining delta-i lifts, and certify that the
// Psi_i values generate a subgroup of order >= p^{delta-i}.
inline Theorem1Witness theorem1_witness(const PsiContext& ctx, int i) {
  if (i < 2 || i > std::min((long long)ctx.delta, (long long)ctx.cls))
    throw GroupError("theorem1_witness needs 2 <= i <= min(delta, c)");
  const PcGroup& G = *ctx.G;
  Theorem1Witness w;
  w.i = i;
  const Subgroup& deeper = ctx.series[i];  // gamma_{i+1}
  long long tuples = 1;
  for (int t = 0; t < i; ++t) tuples *= ctx.delta;
  for (long long code = 0; code < tuples; ++code) {
    std::vector<int> idx(i);
    long long c = code;
    for (int t = 0; t < i; ++t) {
      idx[t] = (int)(c % ctx.delta);
      c /= ctx.delta;
    }
    std::vector<Elem> ys;
    for (int t : idx) ys.push_back(ctx.S[t]);
    Elem comm = G.left_normed_any(ys);
    if (deeper.contains(G, comm)) continue;
    w.commutator_tuple = idx;
    std::vector<char> used(ctx.delta, 0);
    for (int t : idx) used[t] = 1;
    for (int t = 0; t < ctx.delta && (int)w.z_indices.size() < ctx.delta - i; ++t)
      if (!used[t]) w.z_indices.push_back(t);
    TensorGroup T = ctx.value_group(i);
    std::vector<TensorElement> vals;
    for (int zi : w.z_indices) {
      std::vector<Elem> xs = ys;
      xs.push_back(ctx.S[zi]);
      vals.push_back(psi_eval(ctx, i, xs).val);
    }
    w.verified_lower_exp = tensor_subgroup_order_exp(T, vals);
    w.ok = w.verified_lower_exp >= ctx.delta - i;
    if (!w.ok) w.note = "witness values generate less than p^{delta-i}";
    return w;
  }
  // would contradict the simple-commutator generation lemma
  w.note = "internal inconsistency: no weight-" + std::to_string(i) +
           " commutator over S escapes gamma_{i+1}";
  return w;
}

struct Theorem3OddCheck {
  int i = 0;
  bool psi_nontrivial = false;
  bool normed_congruence = false;  // [s1,s,..,s]_l = [s,..,s,s1]_r in gamma_i/gamma_{i+1}
};

struct Theorem3Witness {
  Elem s, s1;
  bool found = false;
  bool generates = false;
  bool chain_ok = false;  // s_i = [s_{i-1}, s] lies in gamma_i minus gamma_{i+1}
  std::vector<Theorem3OddCheck> odd_checks;
  std::vector<int> even_not_claimed;  // even i in [3, c]: no assertion made
  std::string obstruction;
  bool ok() const {
    if (!found || !generates || !chain_ok) return false;
    for (const auto& c : odd_checks)
      if (!c.psi_nontrivial || !c.normed_congruence) return false;
    return true;
  }
};

// The Theorem 3 selection: s outside P_1 = C_G(gamma_2/gamma_4) and outside
// C_G(gamma_{n-2}), s_1 in P_1 minus gamma_2; then the s_i chain and the
// odd-index nontriviality of Psi_i(s1, s, ..., s, s1).
inline Theorem3Witness theorem3_witness(const PcGroup& G) {
  Theorem3Witness w;
  auto series = lower_central_series(G);
  int c = nilpotency_class(series);
  int n = log_p(G.order(), G.prime());
  if (G.prime() == 2) {
    w.obstruction = "theorem 3 requires an odd prime";
    return w;
  }
  if (c != n - 1 || n < 4) {
    w.obstruction = "group is not of maximal class with n >= 4";
    return w;
  }
  const Subgroup& gamma2 = series[1];
  const Subgroup& gamma4 = series[3];
  Subgroup P1 = centralizer_of_section(G, gamma2, gamma4);
  Subgroup Cn2 = centralizer_of_subgroup(G, series[n - 3]);  // gamma_{n-2}
  for (long long r = 0; r < G.order() && !w.found; ++r) {
    if (P1.contains(r) || Cn2.contains(r)) continue;
    w.s = G.unrank(r);
    w.found = true;
  }
  if (!w.found) {
    w.obstruction = "G \\ (P_1 u C_G(gamma_{n-2})) is empty";
    return w;
  }
  bool have_s1 = false;
  for (long long r : P1.ranks) {
    if (gamma2.contains(r)) continue;
    w.s1 = G.unrank(r);
    have_s1 = true;
    break;
  }
  if (!have_s1) {
    w.obstruction = "P_1 \\ gamma_2 is empty";
    return w;
  }
  w.generates = closure(G, {w.s, w.s1}).order() == G.order();
  if (!w.generates) {
    w.obstruction = "<s, s_1> is a proper subgroup";
    return w;
  }
  // s_i chain
  w.chain_ok = true;
  Elem si = w.s1;
  for (int i = 2; i <= c; ++i) {
    si = G.commutator(si, w.s);
    if (!series[i - 1].contains(G, si) || series[i].contains(G, si)) w.chain_ok = false;
  }
  PsiContext ctx = PsiContext::build(G);
  for (int i = 3; i <= c; ++i) {
    if (i % 2 == 0) {
      w.even_not_claimed.push_back(i);
      continue;
    }
    Theorem3OddCheck chk;
    chk.i = i;
    std::vector<Elem> xs;
    xs.push_back(w.s1);
    for (int t = 0; t < i - 1; ++t) xs.push_back(w.s);
    xs.push_back(w.s1);
    chk.psi_nontrivial = !psi_eval(ctx, i, xs).zero();
    std::vector<Elem> lw, rw;
    lw.push_back(w.s1);
    for (int t = 0; t < i - 1; ++t) lw.push_back(w.s);
    for (int t = 0; t < i - 1; ++t) rw.push_back(w.s);
    rw.push_back(w.s1);
    chk.normed_congruence = ctx.section(i).dlog(G.left_normed(lw)) ==
                            ctx.section(i).dlog(G.right_normed(rw));
    w.odd_checks.push_back(chk);
  }
  return w;
}

}  // namespace pmult
