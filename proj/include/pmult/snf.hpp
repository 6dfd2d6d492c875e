#pragma once

// Integer Smith normal form for small dense matrices, and a sparse
// mod-p^k row space (Howell-style echelon) used for exact solution and
// subgroup-order counting.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

namespace pmult {

using Mat = std::vector<std::vector<long long>>;

inline Mat identity_mat(int n) {
  Mat I(n, std::vector<long long>(n, 0));
  for (int i = 0; i < n; ++i) I[i][i] = 1;
  return I;
}

inline Mat mat_mul(const Mat& A, const Mat& B) {
  int n = (int)A.size(), k = (int)B.size(), m = k ? (int)B[0].size() : 0;
  Mat C(n, std::vector<long long>(m, 0));
  for (int i = 0; i < n; ++i)
    for (int t = 0; t < k; ++t)
      if (A[i][t])
        for (int j = 0; j < m; ++j) C[i][j] += A[i][t] * B[t][j];
  return C;
}

struct SmithResult {
  Mat U, V;                     // unimodular, U*M*V = diagonal
  std::vector<long long> diag;  // d_1 | d_2 | ..., nonnegative
  int rank = 0;                 // number of nonzero diagonal entries
};

// Classic elimination with smallest-pivot selection; fine for the small
// matrices this project produces.
inline SmithResult smith_normal_form(Mat M) {
  const int rows = (int)M.size();
  const int cols = rows ? (int)M[0].size() : 0;
  SmithResult res;
  res.U = identity_mat(rows);
  res.V = identity_mat(cols);
  auto row_op = [&](int dst, int src, long long q) {  // row dst -= q*src
    for (int j = 0; j < cols; ++j) M[dst][j] -= q * M[src][j];
    for (int j = 0; j < rows; ++j) res.U[dst][j] -= q * res.U[src][j];
  };
  auto col_op = [&](int dst, int src, long long q) {
    for (int i = 0; i < rows; ++i) M[i][dst] -= q * M[i][src];
    for (int i = 0; i < cols; ++i) res.V[i][dst] -= q * res.V[i][src];
  };
  auto swap_rows = [&](int a, int b) { std::swap(M[a], M[b]); std::swap(res.U[a], res.U[b]); };
  auto swap_cols = [&](int a, int b) {
    for (int i = 0; i < rows; ++i) std::swap(M[i][a], M[i][b]);
    for (int i = 0; i < cols; ++i) std::swap(res.V[i][a], res.V[i][b]);
  };
  auto negate_row = [&](int a) {
    for (int j = 0; j < cols; ++j) M[a][j] = -M[a][j];
    for (int j = 0; j < rows; ++j) res.U[a][j] = -res.U[a][j];
  };

  const int lim = std::min(rows, cols);

  // diagonalize the block starting at t0, returning one past the last pivot
  auto eliminate = [&](int t0) {
    int t = t0;
    while (t < lim) {
      int pi = -1, pj = -1;
      long long best = 0;
      for (int i = t; i < rows; ++i)
        for (int j = t; j < cols; ++j) {
          long long v = M[i][j] < 0 ? -M[i][j] : M[i][j];
          if (v != 0 && (pi < 0 || v < best)) { best = v; pi = i; pj = j; }
        }
      if (pi < 0) break;
      swap_rows(t, pi);
      swap_cols(t, pj);
      if (M[t][t] < 0) negate_row(t);
      bool done = true;
      for (int i = t + 1; i < rows; ++i)
        if (M[i][t]) {
          row_op(i, t, M[i][t] / M[t][t]);
          if (M[i][t]) done = false;  // remainder left: retry with smaller pivot
        }
      for (int j = t + 1; j < cols; ++j)
        if (M[t][j]) {
          col_op(j, t, M[t][j] / M[t][t]);
          if (M[t][j]) done = false;
        }
      if (done) ++t;
    }
    return t;
  };

  int rank = eliminate(0);
  // enforce the divisibility chain d_i | d_{i+1}
  for (;;) {
    int bad = -1;
    for (int i = 0; i + 1 < rank && bad < 0; ++i)
      if (M[i + 1][i + 1] % M[i][i] != 0) bad = i;
    if (bad < 0) break;
    col_op(bad, bad + 1, -1);  // pull d_{i+1} into column i, then re-reduce
    rank = eliminate(bad);
  }
  res.diag.assign(lim, 0);
  for (int i = 0; i < lim; ++i) res.diag[i] = M[i][i];
  res.rank = rank;
  return res;
}

// Row space of a set of vectors over Z/p^k, kept in Howell-style echelon
// form: distinct pivot columns, pivot entries p^v, and for every pivot
// with v > 0 the overflow multiple p^{k-v}*row is inserted too, so the
// subgroup size is the product of p^{k-v_i} over pivots.
class ModRowSpace {
public:
  using SparseRow = std::vector<std::pair<int, long long>>;  // sorted by column

  ModRowSpace(long long p, int k) : p_(p), k_(k) {
    mod_ = 1;
    for (int i = 0; i < k; ++i) mod_ *= p;
  }

  long long modulus() const { return mod_; }

  void insert(SparseRow row) {
    normalize(row);
    while (!row.empty()) {
      int j = row.front().first;
      int v = valuation(row.front().second);
      auto it = rows_.find(j);
      if (it == rows_.end()) {
        long long pv = pow_p(v);
        long long unit = row.front().second / pv;
        scale(row, inv_mod(unit));
        rows_[j] = row;
        if (v > 0) {
          SparseRow overflow = row;
          scale(overflow, pow_p(k_ - v));
          insert(std::move(overflow));
        }
        return;
      }
      int pv = valuation(it->second.front().second);
      if (v >= pv) {
        long long q = row.front().second / pow_p(pv);
        axpy(row, it->second, mod_ - (q % mod_));
      } else {
        SparseRow old = it->second;
        rows_.erase(it);
        SparseRow keep = std::move(row);
        insert_normalized_at(j, keep, v);
        row = std::move(old);
      }
    }
  }

  // log_p of the size of the generated subgroup of (Z/p^k)^cols
  long long log_p_size() const {
    long long s = 0;
    for (const auto& [col, r] : rows_) s += k_ - valuation(r.front().second);
    return s;
  }

  int pivot_count() const { return (int)rows_.size(); }

private:
  void insert_normalized_at(int j, SparseRow& row, int v) {
    long long pv = pow_p(v);
    long long unit = row.front().second / pv;
    scale(row, inv_mod(unit));
    rows_[j] = row;
    if (v > 0) {
      SparseRow overflow = row;
      scale(overflow, pow_p(k_ - v));
      insert(std::move(overflow));
    }
  }

  long long pow_p(int e) const {
    long long r = 1;
    for (int i = 0; i < e; ++i) r *= p_;
    return r;
  }

  int valuation(long long v) const {
    int e = 0;
    while (v % p_ == 0) { v /= p_; ++e; }
    return e;
  }

  long long inv_mod(long long a) const {  // a must be a unit mod p^k
    long long t = 0, nt = 1, r = mod_, nr = a % mod_;
    while (nr != 0) {
      long long q = r / nr;
      std::swap(t -= q * nt, nt);
      std::swap(r -= q * nr, nr);
    }
    if (r != 1) throw std::invalid_argument("non-unit in inv_mod");
    return ((t % mod_) + mod_) % mod_;
  }

  void normalize(SparseRow& row) const {
    SparseRow out;
    for (auto& [c, v] : row) {
      long long w = ((v % mod_) + mod_) % mod_;
      if (w) out.emplace_back(c, w);
    }
    std::sort(out.begin(), out.end());
    // merge duplicate columns
    SparseRow merged;
    for (auto& e : out) {
      if (!merged.empty() && merged.back().first == e.first) {
        merged.back().second = (merged.back().second + e.second) % mod_;
        if (merged.back().second == 0) merged.pop_back();
      } else {
        merged.push_back(e);
      }
    }
    row = std::move(merged);
  }

  void scale(SparseRow& row, long long c) const {
    c %= mod_;
    SparseRow out;
    for (auto& [col, v] : row) {
      long long w = (__int128)v * c % mod_;
      if (w) out.emplace_back(col, w);
    }
    row = std::move(out);
  }

  // row += c * other (mod), keeping sparse sorted form
  void axpy(SparseRow& row, const SparseRow& other, long long c) const {
    c %= mod_;
    SparseRow out;
    size_t a = 0, b = 0;
    while (a < row.size() || b < other.size()) {
      if (b >= other.size() || (a < row.size() && row[a].first < other[b].first)) {
        out.push_back(row[a++]);
      } else if (a >= row.size() || other[b].first < row[a].first) {
        long long w = (__int128)other[b].second * c % mod_;
        if (w) out.emplace_back(other[b].first, w);
        ++b;
      } else {
        long long w = (row[a].second + (__int128)other[b].second * c) % mod_;
        if (w) out.emplace_back(row[a].first, w);
        ++a;
        ++b;
      }
    }
    row = std::move(out);
  }

  long long p_;
  int k_;
  long long mod_;
  std::map<int, SparseRow> rows_;
};

}  // namespace pmult
