#pragma once

// Tensor products A (x) B of finite abelian p-groups in the min-rule grid
// basis: e_i (x) f_j has order p^{min(a_i, b_j)}, elements are reduced
// integer grids, subgroup orders are exact.

#include "finab.hpp"
#include "snf.hpp"

namespace pmult {

struct TensorGroup {
  FinAb A, B;
  std::vector<std::vector<int>> grid_exp;  // min(a_i, b_j)

  long long p() const { return A.p; }
  long long order_exp() const {
    long long s = 0;
    for (const auto& row : grid_exp)
      for (int e : row) s += e;
    return s;
  }
  long long modulus(size_t i, size_t j) const {
    long long r = 1;
    for (int t = 0; t < grid_exp[i][j]; ++t) r *= A.p;
    return r;
  }
};

struct TensorElement {
  std::vector<std::vector<long long>> e;

  bool zero() const {
    for (const auto& row : e)
      for (long long v : row)
        if (v) return false;
    return true;
  }
  bool operator==(const TensorElement& o) const { return e == o.e; }
};

inline TensorGroup tensor(const FinAb& A, const FinAb& B) {
  if (A.p != B.p) throw GroupError("tensor of groups over different primes");
  TensorGroup T;
  T.A = A;
  T.B = B;
  T.grid_exp.assign(A.rank(), std::vector<int>(B.rank(), 0));
  for (int i = 0; i < A.rank(); ++i)
    for (int j = 0; j < B.rank(); ++j) T.grid_exp[i][j] = std::min(A.exps[i], B.exps[j]);
  return T;
}

inline TensorElement tensor_zero(const TensorGroup& T) {
  TensorElement z;
  z.e.assign(T.A.rank(), std::vector<long long>(T.B.rank(), 0));
  return z;
}

inline void tensor_reduce(const TensorGroup& T, TensorElement& x) {
  for (int i = 0; i < T.A.rank(); ++i)
    for (int j = 0; j < T.B.rank(); ++j) {
      long long m = T.modulus(i, j);
      x.e[i][j] = ((x.e[i][j] % m) + m) % m;
    }
}

// bilinear extension of coordinates: (a (x) b)_{ij} = a_i b_j
inline TensorElement tensor_elem(const TensorGroup& T, const std::vector<long long>& a,
                                 const std::vector<long long>& b) {
  if ((int)a.size() != T.A.rank() || (int)b.size() != T.B.rank())
    throw GroupError("tensor_elem coordinate size mismatch");
  TensorElement x = tensor_zero(T);
  for (int i = 0; i < T.A.rank(); ++i)
    for (int j = 0; j < T.B.rank(); ++j) x.e[i][j] = a[i] * b[j];
  tensor_reduce(T, x);
  return x;
}

inline TensorElement tensor_add(const TensorGroup& T, const TensorElement& x,
                                const TensorElement& y) {
  TensorElement r = x;
  for (int i = 0; i < T.A.rank(); ++i)
    for (int j = 0; j < T.B.rank(); ++j) r.e[i][j] += y.e[i][j];
  tensor_reduce(T, r);
  return r;
}

inline TensorElement tensor_neg(const TensorGroup& T, const TensorElement& x) {
  TensorElement r = x;
  for (auto& row : r.e)
    for (auto& v : row) v = -v;
  tensor_reduce(T, r);
  return r;
}

inline TensorElement tensor_scale(const TensorGroup& T, const TensorElement& x, long long c) {
  TensorElement r = x;
  for (auto& row : r.e)
    for (auto& v : row) v *= c;
  tensor_reduce(T, r);
  return r;
}

// log_p of the order of the subgroup generated by the given elements.
// Coordinates with modulus p^{k_ij} are embedded in Z/p^K by scaling with
// p^{K-k_ij}; the row space size in (Z/p^K)^{grid} is the subgroup order.
inline long long tensor_subgroup_order_exp(const TensorGroup& T,
                                           const std::vector<TensorElement>& vs) {
  int K = 0;
  for (const auto& row : T.grid_exp)
    for (int e : row) K = std::max(K, e);
  if (K == 0) return 0;
  ModRowSpace space(T.p(), K);
  for (const auto& v : vs) {
    ModRowSpace::SparseRow row;
    int col = 0;
    for (int i = 0; i < T.A.rank(); ++i)
      for (int j = 0; j < T.B.rank(); ++j, ++col) {
        long long scale = 1;
        for (int t = 0; t < K - T.grid_exp[i][j]; ++t) scale *= T.p();
        long long w = v.e[i][j] * scale;
        if (w) row.emplace_back(col, w);
      }
    space.insert(std::move(row));
  }
  return space.log_p_size();
}

}  // namespace pmult
