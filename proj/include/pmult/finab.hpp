#pragma once

// Finite abelian p-groups: invariant factors, discrete logs on concrete
// carriers (table groups and sections of pc groups), the closed-form
// Schur multiplier of abelian groups, and the rank/exponent bound.

#include <functional>
#include <unordered_map>

#include "pc_group.hpp"
#include "rat.hpp"
#include "structure.hpp"

namespace pmult {

struct FinAb {
  long long p = 0;
  std::vector<int> exps;  // a_1 >= a_2 >= ... >= 1

  int rank() const { return (int)exps.size(); }
  long long order_exp() const {
    long long s = 0;
    for (int a : exps) s += a;
    return s;
  }
  long long order() const {
    long long r = 1;
    for (long long i = 0; i < order_exp(); ++i) r *= p;
    return r;
  }
  long long cyclic_order(int i) const {
    long long r = 1;
    for (int t = 0; t < exps[i]; ++t) r *= p;
    return r;
  }
};

// M(C_{p^{a_1}} x ... x C_{p^{a_r}}) = sum over i<j of C_{p^{min(a_i,a_j)}}
inline FinAb multiplier_abelian(const FinAb& A) {
  FinAb M;
  M.p = A.p;
  for (size_t i = 0; i < A.exps.size(); ++i)
    for (size_t j = i + 1; j < A.exps.size(); ++j)
      M.exps.push_back(std::min(A.exps[i], A.exps[j]));
  std::sort(M.exps.rbegin(), M.exps.rend());
  return M;
}

// |M(A)| <= p^{(1/2)(d-1)(n-(a_1-a_d))}
inline Rat lemma21_bound(const FinAb& A) {
  if (A.exps.empty()) return Rat(0);
  long long d = A.rank(), n = A.order_exp();
  long long spread = A.exps.front() - A.exps.back();
  return Rat((d - 1) * (n - spread), 2);
}

// Basis of an abelian table group: invariant-factor exponents read off the
// p^j-torsion counts, then a backtracking search for elements realizing
// them as a direct sum. coords_of maps every element to its dlog vector.
struct AbelianBasis {
  FinAb shape;
  std::vector<int> basis;                    // element indices in the table group
  std::vector<std::vector<int>> coords_of;   // element index -> coordinates
};

inline AbelianBasis abelian_basis(const TableGroup& T, long long p) {
  if (!T.is_abelian()) throw GroupError("abelian_basis on non-abelian table group");
  AbelianBasis out;
  out.shape.p = p;
  if (T.n == 1) {
    out.coords_of = {{}};
    return out;
  }
  int nexp = log_p(T.n, p);
  // number of invariant factors with exponent >= j, from torsion counts
  std::vector<long long> torsion(nexp + 1, 0);
  for (int x = 0; x < T.n; ++x) {
    long long o = T.elem_order(x);
    torsion[log_p(o, p)]++;
  }
  // torsion[e] currently counts elements of exact order p^e; prefix-sum
  for (int j = 1; j <= nexp; ++j) torsion[j] += torsion[j - 1];
  // geq[j] = number of invariant factors with exponent >= j
  std::vector<int> geq(nexp + 2, 0);
  for (int j = 1; j <= nexp; ++j)
    geq[j] = (int)(log_p(torsion[j], p) - log_p(torsion[j - 1], p));
  std::vector<int> exps;
  for (int j = 1; j <= nexp; ++j)
    for (int c = 0; c < geq[j] - geq[j + 1]; ++c) exps.push_back(j);
  std::sort(exps.rbegin(), exps.rend());
  out.shape.exps = exps;

  // candidates by exact order
  std::vector<std::vector<int>> by_exp(nexp + 1);
  for (int x = 0; x < T.n; ++x) by_exp[log_p(T.elem_order(x), p)].push_back(x);

  std::vector<int> chosen;
  std::vector<char> in_span(T.n, 0);
  in_span[T.identity] = 1;
  long long span_size = 1;
  std::function<bool(size_t)> search = [&](size_t idx) -> bool {
    if (idx == exps.size()) return true;
    long long target = 1;
    for (int t = 0; t < exps[idx]; ++t) target *= p;
    for (int cand : by_exp[exps[idx]]) {
      if (in_span[cand]) continue;
      // extend the span by <cand>; direct sum iff size multiplies by target
      std::vector<int> old_span;
      for (int x = 0; x < T.n; ++x)
        if (in_span[x]) old_span.push_back(x);
      std::vector<int> added;
      long long new_size = span_size;
      int q = cand;
      for (long long e = 1; e < target; ++e) {
        for (int x : old_span) {
          int y = T.mul(x, q);
          if (!in_span[y]) {
            in_span[y] = 1;
            added.push_back(y);
            ++new_size;
          }
        }
        q = T.mul(q, cand);
      }
      if (new_size == span_size * target) {
        long long save = span_size;
        span_size = new_size;
        chosen.push_back(cand);
        if (search(idx + 1)) return true;
        chosen.pop_back();
        span_size = save;
      }
      for (int y : added) in_span[y] = 0;
    }
    return false;
  };
  if (!search(0)) throw GroupError("abelian basis search failed");
  out.basis = chosen;

  // dlog for every element by enumerating coordinate tuples
  out.coords_of.assign(T.n, {});
  std::vector<char> seen(T.n, 0);
  std::vector<int> coords(exps.size(), 0);
  std::function<void(size_t, int)> enumerate = [&](size_t idx, int acc) {
    if (idx == exps.size()) {
      if (seen[acc]) throw GroupError("dlog enumeration collision");
      seen[acc] = 1;
      out.coords_of[acc] = coords;
      return;
    }
    long long o = out.shape.cyclic_order((int)idx);
    int cur = acc;
    for (long long e = 0; e < o; ++e) {
      coords[idx] = (int)e;
      enumerate(idx + 1, cur);
      cur = T.mul(cur, chosen[idx]);
    }
  };
  enumerate(0, T.identity);
  return out;
}

// Abelian section A/B of a pc group, with dlog on ambient elements.
struct Section {
  QuotientGroup quo;
  AbelianBasis ab;

  const FinAb& shape() const { return ab.shape; }
  std::vector<long long> dlog(const Elem& x) const {
    const auto& c = ab.coords_of[quo.project(x)];
    return std::vector<long long>(c.begin(), c.end());
  }
  Elem basis_lift(int i) const { return quo.rep_elem(ab.basis[i]); }
};

inline Section make_section(const PcGroup& G, const Subgroup& A, const Subgroup& B) {
  Section s;
  s.quo = quotient(G, A, B);
  s.ab = abelian_basis(s.quo.Q, G.prime());
  return s;
}

// G^{ab} = G/gamma_2(G) with a discrete-log-capable projection.
inline Section abelianization(const PcGroup& G) {
  auto series = lower_central_series(G);
  return make_section(G, series[0], series[1]);
}

}  // namespace pmult
