#pragma once

// Finite p-groups presented by consistent weighted power-commutator
// presentations. Elements are exponent vectors in normal form; all
// arithmetic goes through collection.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pmult {

struct GroupError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Normal form: exponent vector, entry t in [0, rel_order(t)).
using Elem = std::vector<int>;

// Normal word: (generator, exponent) letters with strictly increasing
// generator index, exponents in (0, rel_order).
using NormalWord = std::vector<std::pair<int, int>>;

struct PcPresentation {
  long long prime = 0;
  int ngens = 0;
  std::vector<int> rel_orders;                  // each a power of prime
  std::vector<NormalWord> power_rhs;            // g_i^{rel_order(i)}
  std::vector<std::vector<NormalWord>> comm_rhs;// comm_rhs[j][i] = [g_j, g_i], j > i
};

inline bool is_prime_power(long long v, long long p, int* exp_out = nullptr) {
  if (v < 1) return false;
  int e = 0;
  while (v % p == 0) { v /= p; ++e; }
  if (exp_out) *exp_out = e;
  return v == 1;
}

class PcGroup {
public:
  // Syntactic invariants: ranges, normal words, weight condition
  // (RHS indices strictly above the defining generators).
  static void validate_syntax(const PcPresentation& pres) {
    if (pres.prime < 2) throw GroupError("prime must be >= 2");
    for (long long q = 2; q * q <= pres.prime; ++q)
      if (pres.prime % q == 0) throw GroupError("prime is composite");
    if (pres.ngens < 1) throw GroupError("need at least one generator");
    if ((int)pres.rel_orders.size() != pres.ngens ||
        (int)pres.power_rhs.size() != pres.ngens ||
        (int)pres.comm_rhs.size() != pres.ngens)
      throw GroupError("presentation arrays disagree with ngens");
    for (int i = 0; i < pres.ngens; ++i) {
      if (!is_prime_power(pres.rel_orders[i], pres.prime) || pres.rel_orders[i] < 2)
        throw GroupError("relative order of g" + std::to_string(i + 1) +
                         " is not a power of p");
      check_word(pres, pres.power_rhs[i], i, "power relation of g" + std::to_string(i + 1));
      if ((int)pres.comm_rhs[i].size() != i)
        throw GroupError("commutator table row has wrong length");
      for (int j = 0; j < i; ++j)
        check_word(pres, pres.comm_rhs[i][j], i,
                   "[g" + std::to_string(i + 1) + ",g" + std::to_string(j + 1) + "]");
    }
  }

  // Overlap (consistency) tests for a weighted pcp: the triple overlaps
  // g_k(g_j g_i) = (g_k g_j)g_i plus the power overlaps. Passing them is
  // equivalent to collection defining a group of order prod rel_order(t).
  static std::optional<std::string> check_consistency(const PcPresentation& pres) {
    validate_syntax(pres);
    PcGroup G(pres);
    const int m = pres.ngens;
    auto word_elem = [&](const NormalWord& w) {
      Elem r = G.id();
      for (auto [g, e] : w)
        for (int rep = 0; rep < e; ++rep) r = G.mul_gen(r, g);
      return r;
    };
    for (int k = 0; k < m; ++k)
      for (int j = 0; j < k; ++j)
        for (int i = 0; i < j; ++i) {
          Elem lhs = G.mul(G.gen(k), G.mul(G.gen(j), G.gen(i)));
          Elem rhs = G.mul(G.mul(G.gen(k), G.gen(j)), G.gen(i));
          if (lhs != rhs) {
            std::ostringstream os;
            os << "overlap g" << k + 1 << "(g" << j + 1 << " g" << i + 1
               << ") != (g" << k + 1 << " g" << j + 1 << ")g" << i + 1;
            return os.str();
          }
        }
    for (int j = 0; j < m; ++j)
      for (int i = 0; i < j; ++i) {
        Elem lhs = G.mul(word_elem(pres.power_rhs[j]), G.gen(i));
        Elem rhs = G.mul(G.pow_nonneg(G.gen(j), pres.rel_orders[j] - 1),
                         G.mul(G.gen(j), G.gen(i)));
        if (lhs != rhs)
          return "power overlap g" + std::to_string(j + 1) + "^o g" + std::to_string(i + 1);
        lhs = G.mul(G.gen(j), word_elem(pres.power_rhs[i]));
        rhs = G.mul(G.mul(G.gen(j), G.gen(i)),
                    G.pow_nonneg(G.gen(i), pres.rel_orders[i] - 1));
        if (lhs != rhs)
          return "power overlap g" + std::to_string(j + 1) + " g" + std::to_string(i + 1) + "^o";
      }
    for (int i = 0; i < m; ++i) {
      Elem lhs = G.mul(word_elem(pres.power_rhs[i]), G.gen(i));
      Elem rhs = G.mul(G.gen(i), word_elem(pres.power_rhs[i]));
      if (lhs != rhs)
        return "power overlap g" + std::to_string(i + 1) + "^o g" + std::to_string(i + 1);
    }
    return std::nullopt;
  }

  // Only route to a usable group: syntax + consistency, or a thrown error.
  static PcGroup build(PcPresentation pres) {
    if (auto bad = check_consistency(pres))
      throw GroupError("inconsistent presentation: " + *bad);
    return PcGroup(std::move(pres));
  }

  int ngens() const { return pres_.ngens; }
  long long prime() const { return pres_.prime; }
  long long order() const { return order_; }
  const PcPresentation& presentation() const { return pres_; }

  Elem id() const { return Elem(pres_.ngens, 0); }
  Elem gen(int i) const {
    Elem e = id();
    e[i] = 1;
    return e;
  }
  bool is_id(const Elem& x) const {
    return std::all_of(x.begin(), x.end(), [](int v) { return v == 0; });
  }

  Elem mul(const Elem& a, const Elem& b) const {
    Elem r = a;
    for (int t = 0; t < pres_.ngens; ++t)
      for (int rep = 0; rep < b[t]; ++rep) r = mul_gen(r, t);
    return r;
  }

  // Right multiplication by g_t only touches coordinates >= t, so the
  // inverse can be read off triangularly.
  Elem inv(const Elem& a) const {
    Elem y = id(), cur = a;
    for (int t = 0; t < pres_.ngens; ++t) {
      int v = cur[t];
      if (v == 0) continue;
      int e = pres_.rel_orders[t] - v;
      for (int rep = 0; rep < e; ++rep) {
        cur = mul_gen(cur, t);
        y = mul_gen(y, t);
      }
    }
    return y;
  }

  Elem pow(const Elem& a, long long e) const {
    if (e < 0) return pow_nonneg(inv(a), -e);
    return pow_nonneg(a, e);
  }

  Elem conj(const Elem& x, const Elem& y) const { return mul(mul(inv(y), x), y); }

  // [x,y] = x^-1 y^-1 x y
  Elem commutator(const Elem& x, const Elem& y) const {
    return mul(mul(mul(inv(x), inv(y)), x), y);
  }

  // [...[[x1,x2],x3],...,xn]
  Elem left_normed(const std::vector<Elem>& xs) const {
    if (xs.size() < 2) throw GroupError("left_normed needs length >= 2");
    return left_normed_any(xs);
  }

  // [x1,[...,[x_{n-2},[x_{n-1},xn]]...]]
  Elem right_normed(const std::vector<Elem>& xs) const {
    if (xs.size() < 2) throw GroupError("right_normed needs length >= 2");
    return right_normed_any(xs);
  }

  Elem left_normed_any(const std::vector<Elem>& xs) const {
    Elem r = xs.front();
    for (size_t t = 1; t < xs.size(); ++t) r = commutator(r, xs[t]);
    return r;
  }

  Elem right_normed_any(const std::vector<Elem>& xs) const {
    Elem r = xs.back();
    for (size_t t = xs.size() - 1; t-- > 0;) r = commutator(xs[t], r);
    return r;
  }

  // Word of signed 1-based generator indices (-g meaning the inverse).
  Elem collect(const std::vector<int>& word) const {
    Elem r = id();
    for (int s : word) {
      if (s == 0 || std::abs(s) > pres_.ngens)
        throw GroupError("generator index out of range in word");
      Elem g = gen(std::abs(s) - 1);
      r = mul(r, s > 0 ? g : inv(g));
    }
    return r;
  }

  long long elem_order(const Elem& x) const {
    Elem r = x;
    long long n = 1;
    while (!is_id(r)) {
      r = mul(r, x);
      ++n;
    }
    return n;
  }

  long long rank(const Elem& x) const {
    long long r = 0;
    for (int t = 0; t < pres_.ngens; ++t) r += x[t] * weight_[t];
    return r;
  }

  Elem unrank(long long r) const {
    Elem x(pres_.ngens, 0);
    for (int t = 0; t < pres_.ngens; ++t) {
      x[t] = (int)(r / weight_[t]);
      r %= weight_[t];
    }
    return x;
  }

private:
  explicit PcGroup(PcPresentation pres) : pres_(std::move(pres)) {
    weight_.assign(pres_.ngens, 1);
    for (int t = pres_.ngens - 2; t >= 0; --t)
      weight_[t] = weight_[t + 1] * pres_.rel_orders[t + 1];
    order_ = weight_[0] * pres_.rel_orders[0];
  }

  static void check_word(const PcPresentation& pres, const NormalWord& w,
                         int above, const std::string& where) {
    int last = above;  // weight condition: every letter index > defining index
    for (auto [g, e] : w) {
      if (g <= last || g >= pres.ngens)
        throw GroupError("weight/ordering violation in " + where);
      if (e < 1 || e >= pres.rel_orders[g])
        throw GroupError("exponent out of range in " + where);
      last = g;
    }
  }

  Elem pow_nonneg(Elem a, long long e) const {
    Elem r = id();
    e %= order_;
    for (long long rep = 0; rep < e; ++rep) r = mul(r, a);
    return r;
  }

  // Normal form of x * g_g: the tail of x past g is conjugated through,
  // g_t g_g = g_g g_t [g_t, g_g]; all spill letters have index > g, which
  // is what makes the recursion terminate for weighted presentations.
  Elem mul_gen(const Elem& x, int g) const {
    const int m = pres_.ngens;
    Elem r(m, 0);
    for (int t = 0; t < g; ++t) r[t] = x[t];
    std::vector<int> letters;
    auto push_word = [&](const NormalWord& w) {
      for (auto [wg, we] : w)
        for (int rep = 0; rep < we; ++rep) letters.push_back(wg);
    };
    int e = x[g] + 1;
    if (e == pres_.rel_orders[g]) {
      push_word(pres_.power_rhs[g]);
    } else {
      r[g] = e;
    }
    for (int t = g + 1; t < m; ++t)
      for (int rep = 0; rep < x[t]; ++rep) {
        letters.push_back(t);
        push_word(pres_.comm_rhs[t][g]);
      }
    for (int L : letters) r = mul_gen(r, L);
    return r;
  }

  PcPresentation pres_;
  long long order_ = 1;
  std::vector<long long> weight_;
};

}  // namespace pmult
