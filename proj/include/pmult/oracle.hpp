#pragma once

// Ground-truth Schur multiplier orders for small groups from normalized
// 2-cocycle linear algebra over Z/|G|, independent of the Psi/bound
// machinery.
//
// A normalized cocycle is determined by its values f(x, g) on a generating
// set: f(x, w) for w = u*g (BFS tree) expands through the cocycle identity
// f(x, ug) = f(x, u) + f(xu, g) - f(u, g). Imposing the identity for all
// (x, y, g) with g a generator then implies it for all triples, by
// induction on the tree depth of the last argument. Solution counts come
// from the mod-p^k row space (Howell echelon).

#include <cstdlib>
#include <set>
#include <unordered_map>

#include "snf.hpp"
#include "structure.hpp"

namespace pmult {

constexpr long long kOracleDefaultCap = 243;

inline long long oracle_cap() {
  if (const char* env = std::getenv("PMULT_ORACLE_CAP")) {
    long long v = std::atoll(env);
    if (v > 0) return v;
  }
  return kOracleDefaultCap;
}

// Constraint system over the reduced unknowns f(x, g), x != 1, g a
// generator; modulus |G|.
struct CocycleSystem {
  long long p = 0;
  int k = 0;             // modulus = p^k = |G|
  int ngens = 0;
  long long unknowns = 0;
  long long rows_inserted = 0;
  long long rowspace_log = 0;
};

namespace detail {

using SparseRow = ModRowSpace::SparseRow;

struct CocycleSolver {
  const TableGroup& T;
  std::vector<int> gens;
  std::vector<int> gen_index_of;           // element -> index in gens, or -1
  std::vector<int> tree_parent;            // w = parent * gens[tree_gen[w]]
  std::vector<int> tree_gen;
  std::vector<std::vector<SparseRow>> memo;// [x][w] cached expansions
  std::vector<std::vector<char>> have;

  explicit CocycleSolver(const TableGroup& t) : T(t) {
    pick_generators();
    build_tree();
    memo.assign(T.n, std::vector<SparseRow>(T.n));
    have.assign(T.n, std::vector<char>(T.n, 0));
  }

  void pick_generators() {
    gen_index_of.assign(T.n, -1);
    std::vector<char> in_span(T.n, 0);
    in_span[T.identity] = 1;
    long long span = 1;
    // order candidates by decreasing element order to keep the set small
    std::vector<int> cands;
    for (int x = 0; x < T.n; ++x)
      if (x != T.identity) cands.push_back(x);
    std::stable_sort(cands.begin(), cands.end(), [&](int a, int b) {
      return T.elem_order(a) > T.elem_order(b);
    });
    while (span < T.n) {
      int pick = -1;
      for (int x : cands)
        if (!in_span[x]) { pick = x; break; }
      if (pick < 0) throw GroupError("generator selection failed");
      gen_index_of[pick] = (int)gens.size();
      gens.push_back(pick);
      // close the span under the enlarged generating set
      std::vector<int> frontier;
      for (int x = 0; x < T.n; ++x)
        if (in_span[x]) frontier.push_back(x);
      while (!frontier.empty()) {
        std::vector<int> next;
        for (int x : frontier)
          for (int g : gens) {
            int y = T.mul(x, g);
            if (!in_span[y]) {
              in_span[y] = 1;
              ++span;
              next.push_back(y);
            }
          }
        frontier = std::move(next);
      }
    }
  }

  void build_tree() {
    tree_parent.assign(T.n, -1);
    tree_gen.assign(T.n, -1);
    std::vector<int> frontier = {T.identity};
    std::vector<char> seen(T.n, 0);
    seen[T.identity] = 1;
    while (!frontier.empty()) {
      std::vector<int> next;
      for (int u : frontier)
        for (int gi = 0; gi < (int)gens.size(); ++gi) {
          int w = T.mul(u, gens[gi]);
          if (!seen[w]) {
            seen[w] = 1;
            tree_parent[w] = u;
            tree_gen[w] = gi;
            next.push_back(w);
          }
        }
      frontier = std::move(next);
    }
  }

  int unknown_id(int x, int gi) const { return x * (int)gens.size() + gi; }

  // expansion of f(x, w) over the basis unknowns
  const SparseRow& expr(int x, int w) {
    static const SparseRow kEmpty;
    if (x == T.identity || w == T.identity) return kEmpty;
    if (have[x][w]) return memo[x][w];
    SparseRow out;
    if (gen_index_of[w] >= 0 && tree_parent[w] == T.identity) {
      out.emplace_back(unknown_id(x, gen_index_of[w]), 1);
    } else {
      int u = tree_parent[w], gi = tree_gen[w];
      // f(x, ug) = f(x, u) + f(xu, g) - f(u, g)
      append(out, expr(x, u), 1);
      int xu = T.mul(x, u);
      if (xu != T.identity) out.emplace_back(unknown_id(xu, gi), 1);
      out.emplace_back(unknown_id(u, gi), -1);
      compress(out);
    }
    memo[x][w] = std::move(out);
    have[x][w] = 1;
    return memo[x][w];
  }

  static void append(SparseRow& dst, const SparseRow& src, long long c) {
    for (auto [col, v] : src) dst.emplace_back(col, v * c);
  }

  static void compress(SparseRow& row) {
    std::sort(row.begin(), row.end());
    SparseRow out;
    for (auto& e : row) {
      if (!out.empty() && out.back().first == e.first)
        out.back().second += e.second;
      else
        out.push_back(e);
    }
    out.erase(std::remove_if(out.begin(), out.end(),
                             [](const auto& e) { return e.second == 0; }),
              out.end());
    row = std::move(out);
  }
};

}  // namespace detail

struct OracleResult {
  long long p = 0;
  long long z2_exp = 0;    // log_p |Z^2| of the normalized system
  long long h2_exp = 0;    // log_p |H^2(G, Z/|G|)|
  long long mult_exp = 0;  // log_p |M(G)|
  CocycleSystem system;
};

inline OracleResult cocycle_multiplier(const TableGroup& T, long long p,
                                       long long cap = oracle_cap()) {
  if (T.n > cap)
    throw GroupError("oracle refused: order " + std::to_string(T.n) +
                     " exceeds cap " + std::to_string(cap));
  OracleResult res;
  res.p = p;
  if (T.n == 1) return res;
  int k = log_p(T.n, p);
  res.system.p = p;
  res.system.k = k;

  detail::CocycleSolver solver(T);
  const int ng = (int)solver.gens.size();
  res.system.ngens = ng;
  res.system.unknowns = (long long)(T.n - 1) * ng;

  ModRowSpace space(p, k);
  std::set<detail::SparseRow> dedup;
  for (int x = 0; x < T.n; ++x) {
    if (x == T.identity) continue;
    for (int y = 0; y < T.n; ++y) {
      if (y == T.identity) continue;
      for (int gi = 0; gi < ng; ++gi) {
        int g = solver.gens[gi];
        // f(x,y) + f(xy,g) - f(y,g) - f(x,yg) = 0
        detail::SparseRow row;
        detail::CocycleSolver::append(row, solver.expr(x, y), 1);
        int xy = T.mul(x, y);
        if (xy != T.identity) row.emplace_back(solver.unknown_id(xy, gi), 1);
        row.emplace_back(solver.unknown_id(y, gi), -1);
        detail::CocycleSolver::append(row, solver.expr(x, T.mul(y, g)), -1);
        detail::CocycleSolver::compress(row);
        if (row.empty()) continue;
        if (!dedup.insert(row).second) continue;
        ++res.system.rows_inserted;
        space.insert(std::move(row));
      }
    }
  }
  res.system.rowspace_log = space.log_p_size();

  // |Z^2| = mod^unknowns / |rowspace|
  res.z2_exp = (long long)k * res.system.unknowns - res.system.rowspace_log;
  // |B^2| = mod^{N-1} / |Hom(G, Z/mod)|, |Hom| = |G^{ab}| since mod kills it;
  // |M(G)| = |H^2| / |G^{ab}| collapses to |Z^2| / mod^{N-1}.
  res.mult_exp = res.z2_exp - (long long)k * (T.n - 1);

  // |G^{ab}| for |H^2| itself: derived subgroup by commutator closure
  std::vector<char> in_derived(T.n, 0);
  in_derived[T.identity] = 1;
  long long dsize = 1;
  std::vector<int> comms;
  for (int a = 0; a < T.n; ++a)
    for (int b = 0; b < T.n; ++b) {
      int c = T.mul(T.mul(T.inverse(a), T.inverse(b)), T.mul(a, b));
      if (!in_derived[c]) {
        in_derived[c] = 1;
        ++dsize;
        comms.push_back(c);
      }
    }
  // close under multiplication
  bool grew = true;
  while (grew) {
    grew = false;
    for (int a = 0; a < T.n; ++a)
      if (in_derived[a])
        for (int b : comms)
          if (!in_derived[T.mul(a, b)]) {
            in_derived[T.mul(a, b)] = 1;
            ++dsize;
            grew = true;
          }
  }
  long long ab_exp = k - log_p(dsize, p);
  res.h2_exp = res.mult_exp + ab_exp;
  return res;
}

inline long long h2_order(const TableGroup& T, long long p, long long cap = oracle_cap()) {
  OracleResult r = cocycle_multiplier(T, p, cap);
  long long out = 1;
  for (long long i = 0; i < r.h2_exp; ++i) out *= p;
  return out;
}

inline long long multiplier_exp(const TableGroup& T, long long p,
                                long long cap = oracle_cap()) {
  return cocycle_multiplier(T, p, cap).mult_exp;
}

inline long long multiplier_order(const TableGroup& T, long long p,
                                  long long cap = oracle_cap()) {
  long long e = multiplier_exp(T, p, cap);
  long long out = 1;
  for (long long i = 0; i < e; ++i) out *= p;
  return out;
}

inline long long multiplier_exp(const PcGroup& G, long long cap = oracle_cap()) {
  return multiplier_exp(to_table_group(G, cap), G.prime(), cap);
}

}  // namespace pmult
