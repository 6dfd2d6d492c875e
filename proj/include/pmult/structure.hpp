#pragma once

// Enumeration-backed structure computations: subgroup closures, lower
// central series, center and centralizers, Frattini quotient rank,
// quotient groups carried as multiplication tables.

#include <map>
#include <queue>
#include <random>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "pc_group.hpp"

namespace pmult {

// Enumeration-backed algorithms fail loudly past this size.
constexpr long long kEnumerationCap = 100000;

inline void require_enumeration_scale(const PcGroup& G) {
  if (G.order() > kEnumerationCap)
    throw GroupError("group order " + std::to_string(G.order()) +
                     " exceeds enumeration cap " + std::to_string(kEnumerationCap));
}

struct Subgroup {
  std::vector<long long> ranks;  // sorted element ranks
  std::vector<Elem> gens;

  long long order() const { return (long long)ranks.size(); }
  bool contains(long long r) const {
    return std::binary_search(ranks.begin(), ranks.end(), r);
  }
  bool contains(const PcGroup& G, const Elem& x) const { return contains(G.rank(x)); }
};

// Subgroup generated by gens; with normal_closure, closed under
// conjugation by the group's defining generators as well.
inline Subgroup closure(const PcGroup& G, std::vector<Elem> gens,
                        bool normal_closure = false) {
  require_enumeration_scale(G);
  for (;;) {
    std::unordered_set<long long> seen;
    std::queue<Elem> bfs;
    seen.insert(G.rank(G.id()));
    bfs.push(G.id());
    while (!bfs.empty()) {
      Elem x = bfs.front();
      bfs.pop();
      for (const Elem& s : gens) {
        Elem y = G.mul(x, s);
        if (seen.insert(G.rank(y)).second) bfs.push(y);
      }
    }
    if (!normal_closure) {
      Subgroup H;
      H.gens = std::move(gens);
      H.ranks.assign(seen.begin(), seen.end());
      std::sort(H.ranks.begin(), H.ranks.end());
      return H;
    }
    bool grew = false;
    for (long long r : seen) {
      Elem x = G.unrank(r);
      for (int t = 0; t < G.ngens() && !grew; ++t) {
        Elem c = G.conj(x, G.gen(t));
        if (!seen.count(G.rank(c))) {
          gens.push_back(c);
          grew = true;
        }
      }
      if (grew) break;
    }
    if (!grew) {
      Subgroup H;
      H.gens = std::move(gens);
      H.ranks.assign(seen.begin(), seen.end());
      std::sort(H.ranks.begin(), H.ranks.end());
      return H;
    }
  }
}

inline Subgroup whole_group(const PcGroup& G) {
  require_enumeration_scale(G);
  Subgroup H;
  H.ranks.resize(G.order());
  for (long long r = 0; r < G.order(); ++r) H.ranks[r] = r;
  for (int t = 0; t < G.ngens(); ++t) H.gens.push_back(G.gen(t));
  return H;
}

inline Subgroup trivial_subgroup(const PcGroup& G) {
  Subgroup H;
  H.ranks = {G.rank(G.id())};
  return H;
}

inline bool is_normal(const PcGroup& G, const Subgroup& N) {
  for (long long r : N.ranks) {
    Elem x = G.unrank(r);
    for (int t = 0; t < G.ngens(); ++t)
      if (!N.contains(G, G.conj(x, G.gen(t)))) return false;
  }
  return true;
}

// gamma_1 > gamma_2 > ... > 1, gamma_{i+1} = [gamma_i, G].
inline std::vector<Subgroup> lower_central_series(const PcGroup& G) {
  require_enumeration_scale(G);
  std::vector<Subgroup> series;
  series.push_back(whole_group(G));
  std::vector<Elem> cur_gens;
  for (int t = 0; t < G.ngens(); ++t) cur_gens.push_back(G.gen(t));
  for (;;) {
    std::vector<Elem> next_gens;
    for (const Elem& x : cur_gens)
      for (int t = 0; t < G.ngens(); ++t) {
        Elem c = G.commutator(x, G.gen(t));
        if (!G.is_id(c)) next_gens.push_back(c);
      }
    Subgroup nxt = closure(G, next_gens, /*normal_closure=*/true);
    series.push_back(nxt);
    if (nxt.order() == 1) break;
    if (nxt.order() >= series[series.size() - 2].order())
      throw GroupError("lower central series does not descend (group not nilpotent?)");
    cur_gens = nxt.gens;
  }
  return series;
}

inline int nilpotency_class(const std::vector<Subgroup>& series) {
  return (int)series.size() - 1;
}

inline Subgroup center(const PcGroup& G) {
  require_enumeration_scale(G);
  Subgroup Z;
  for (long long r = 0; r < G.order(); ++r) {
    Elem x = G.unrank(r);
    bool central = true;
    for (int t = 0; t < G.ngens() && central; ++t)
      central = G.is_id(G.commutator(x, G.gen(t)));
    if (central) {
      Z.ranks.push_back(r);
      if (!G.is_id(x)) Z.gens.push_back(x);
    }
  }
  std::sort(Z.ranks.begin(), Z.ranks.end());
  return Z;
}

// C_G(A/B) = { g : [g, a] in B for all a in A }. B must be normal in A.
inline Subgroup centralizer_of_section(const PcGroup& G, const Subgroup& A,
                                       const Subgroup& B) {
  require_enumeration_scale(G);
  Subgroup C;
  for (long long r = 0; r < G.order(); ++r) {
    Elem g = G.unrank(r);
    bool ok = true;
    for (long long ar : A.ranks) {
      if (!B.contains(G.rank(G.commutator(g, G.unrank(ar))))) {
        ok = false;
        break;
      }
    }
    if (ok) {
      C.ranks.push_back(r);
      if (!G.is_id(g)) C.gens.push_back(g);
    }
  }
  std::sort(C.ranks.begin(), C.ranks.end());
  return C;
}

inline Subgroup centralizer_of_subgroup(const PcGroup& G, const Subgroup& A) {
  return centralizer_of_section(G, A, trivial_subgroup(G));
}

// Frattini subgroup of a p-group: G^p gamma_2(G).
inline Subgroup frattini(const PcGroup& G) {
  std::vector<Elem> gens;
  for (int i = 0; i < G.ngens(); ++i) {
    gens.push_back(G.pow(G.gen(i), G.prime()));
    for (int j = 0; j < i; ++j) gens.push_back(G.commutator(G.gen(i), G.gen(j)));
  }
  return closure(G, gens, /*normal_closure=*/true);
}

inline int log_p(long long v, long long p) {
  int e = 0;
  while (v % p == 0 && v > 1) { v /= p; ++e; }
  if (v != 1) throw GroupError("order is not a power of p");
  return e;
}

// d(G) = rank of G/Phi(G)
inline int min_generators(const PcGroup& G) {
  return log_p(G.order() / frattini(G).order(), G.prime());
}

struct TableGroup {
  int n = 1;
  int identity = 0;
  std::vector<std::vector<int>> table;

  int mul(int a, int b) const { return table[a][b]; }
  int inverse(int a) const {
    for (int b = 0; b < n; ++b)
      if (table[a][b] == identity) return b;
    throw GroupError("element without inverse (not a group table)");
  }
  long long elem_order(int a) const {
    long long o = 1;
    int x = a;
    while (x != identity) { x = mul(x, a); ++o; }
    return o;
  }
  int pow(int a, long long e) const {
    e %= n;
    if (e < 0) e += n;
    int r = identity;
    for (long long i = 0; i < e; ++i) r = mul(r, a);
    return r;
  }
  bool is_abelian() const {
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (table[a][b] != table[b][a]) return false;
    return true;
  }
  bool latin_square() const {
    for (int a = 0; a < n; ++a) {
      std::vector<char> row(n, 0), col(n, 0);
      for (int b = 0; b < n; ++b) {
        if (row[table[a][b]]++) return false;
        if (col[table[b][a]]++) return false;
      }
    }
    return true;
  }
  // probabilistic spot check used at build time; full check on demand
  bool associativity_spot_check(int trials = 200, unsigned seed = 1) const {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int t = 0; t < trials; ++t) {
      int a = pick(rng), b = pick(rng), c = pick(rng);
      if (mul(mul(a, b), c) != mul(a, mul(b, c))) return false;
    }
    return true;
  }
  bool associativity_exhaustive() const {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          if (mul(mul(a, b), c) != mul(a, mul(b, c))) return false;
    return true;
  }
};

// A/B as a table group with canonical (minimum-rank) coset representatives
// and a projection from ambient elements.
struct QuotientGroup {
  const PcGroup* G = nullptr;
  TableGroup Q;
  std::vector<long long> reps;                     // coset index -> rep rank
  std::vector<Elem> B_elems;
  std::unordered_map<long long, int> index_of_rep; // rep rank -> coset index

  long long rep_of(const Elem& x) const {
    long long best = -1;
    for (const Elem& b : B_elems) {
      long long r = G->rank(G->mul(x, b));
      if (best < 0 || r < best) best = r;
    }
    return best;
  }
  int project(const Elem& x) const {
    auto it = index_of_rep.find(rep_of(x));
    if (it == index_of_rep.end()) throw GroupError("element not in subgroup A of section");
    return it->second;
  }
  Elem rep_elem(int coset) const { return G->unrank(reps[coset]); }
};

inline QuotientGroup quotient(const PcGroup& G, const Subgroup& A, const Subgroup& B) {
  for (long long br : B.ranks)
    if (!A.contains(br)) throw GroupError("B is not contained in A");
  // B must be normal in A
  for (long long ar : A.ranks) {
    Elem a = G.unrank(ar);
    for (const Elem& bg : B.gens)
      if (!B.contains(G, G.conj(bg, a))) throw GroupError("B is not normal in A");
  }
  QuotientGroup quo;
  quo.G = &G;
  for (long long br : B.ranks) quo.B_elems.push_back(G.unrank(br));
  std::set<long long> rep_set;
  for (long long ar : A.ranks) rep_set.insert(quo.rep_of(G.unrank(ar)));
  quo.reps.assign(rep_set.begin(), rep_set.end());
  for (int i = 0; i < (int)quo.reps.size(); ++i) quo.index_of_rep[quo.reps[i]] = i;
  const int n = (int)quo.reps.size();
  quo.Q.n = n;
  quo.Q.identity = quo.index_of_rep.at(quo.rep_of(G.id()));
  quo.Q.table.assign(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      quo.Q.table[i][j] =
          quo.index_of_rep.at(quo.rep_of(G.mul(quo.rep_elem(i), quo.rep_elem(j))));
  if (!quo.Q.latin_square() || !quo.Q.associativity_spot_check())
    throw GroupError("quotient table failed sanity checks");
  return quo;
}

inline QuotientGroup quotient(const PcGroup& G, const Subgroup& N) {
  return quotient(G, whole_group(G), N);
}

inline TableGroup to_table_group(const PcGroup& G, long long cap = 1000) {
  if (G.order() > cap)
    throw GroupError("table materialization refused above cap");
  TableGroup T;
  T.n = (int)G.order();
  T.identity = (int)G.rank(G.id());
  T.table.assign(T.n, std::vector<int>(T.n, 0));
  for (int i = 0; i < T.n; ++i)
    for (int j = 0; j < T.n; ++j)
      T.table[i][j] = (int)G.rank(G.mul(G.unrank(i), G.unrank(j)));
  return T;
}

}  // namespace pmult
