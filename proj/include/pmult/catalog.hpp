#pragma once

// Built-in presentations for every group the verification suite needs,
// the JSON group-file format, and the catalog registry.

#include <fstream>
#include <functional>

#include "json.hpp"
#include "pc_group.hpp"

namespace pmult {

inline NormalWord word(std::initializer_list<std::pair<int, int>> letters) {
  return NormalWord(letters);
}

// empty presentation skeleton: all powers and commutators trivial
inline PcPresentation pcp_skeleton(long long p, const std::vector<int>& orders) {
  PcPresentation pres;
  pres.prime = p;
  pres.ngens = (int)orders.size();
  pres.rel_orders = orders;
  pres.power_rhs.assign(pres.ngens, {});
  pres.comm_rhs.resize(pres.ngens);
  for (int i = 0; i < pres.ngens; ++i) pres.comm_rhs[i].assign(i, {});
  return pres;
}

// abelian p-group with invariant factor exponents
inline PcPresentation build_abelian(long long p, const std::vector<int>& exps) {
  std::vector<int> orders;
  for (int a : exps) {
    long long o = 1;
    for (int t = 0; t < a; ++t) o *= p;
    orders.push_back((int)o);
  }
  return pcp_skeleton(p, orders);
}

inline PcPresentation build_elementary(long long p, int n) {
  return build_abelian(p, std::vector<int>(n, 1));
}

// extraspecial of order p^3: exponent p (E_p) or exponent p^2 (modular)
inline PcPresentation build_extraspecial(long long p, bool exponent_p) {
  // g1 = a, g2 = b, g3 = c central; [a,b] = c, so [g2,g1] = c^{-1}
  auto pres = pcp_skeleton(p, {(int)p, (int)p, (int)p});
  pres.comm_rhs[1][0] = word({{2, (int)p - 1}});
  if (!exponent_p) pres.power_rhs[0] = word({{2, 1}});  // a^p = c
  return pres;
}

// G1 = E_p x C_p^(n-3)
inline PcPresentation build_G1(long long p, int n) {
  if (n < 3) throw GroupError("build_G1 needs n >= 3");
  auto pres = pcp_skeleton(p, std::vector<int>(n, (int)p));
  pres.comm_rhs[1][0] = word({{2, (int)p - 1}});
  return pres;
}

// G2 = C_p^(4) : C_p; the action is not pinned down, both readings
// are shipped. "2+2": [a1,b]=a2, [a3,b]=a4 (class 2). "3+1": [a1,b]=a2,
// [a2,b]=a3 (class 3).
inline PcPresentation build_G2(long long p, const std::string& variant) {
  // g1 = b (top), then the a_i ordered so every RHS index increases
  auto pres = pcp_skeleton(p, std::vector<int>(5, (int)p));
  if (variant == "2+2") {
    // g2 = a1, g3 = a3, g4 = a2, g5 = a4
    pres.comm_rhs[1][0] = word({{3, 1}});  // [a1,b] = a2
    pres.comm_rhs[2][0] = word({{4, 1}});  // [a3,b] = a4
  } else if (variant == "3+1") {
    // g2 = a1, g3 = a2, g4 = a3, g5 = a4 (untouched)
    pres.comm_rhs[1][0] = word({{2, 1}});  // [a1,b] = a2
    pres.comm_rhs[2][0] = word({{3, 1}});  // [a2,b] = a3
  } else {
    throw GroupError("unknown G2 variant: " + variant);
  }
  return pres;
}

// G3: [a1,a2] = b3, [a2,a3] = b1, [a3,a1] = b2, b_i central, exponent p
inline PcPresentation build_G3(long long p) {
  if (p == 2) throw GroupError("G3 requires an odd prime");
  // g1..g3 = a1..a3, g4..g6 = b1..b3
  auto pres = pcp_skeleton(p, std::vector<int>(6, (int)p));
  pres.comm_rhs[1][0] = word({{5, (int)p - 1}});  // [a2,a1] = b3^{-1}
  pres.comm_rhs[2][0] = word({{4, 1}});           // [a3,a1] = b2
  pres.comm_rhs[2][1] = word({{3, (int)p - 1}});  // [a3,a2] = b1^{-1}
  return pres;
}

// G4 (p = 3, order 3^7): the G3 relations plus [b_i, a_i] = gamma central.
inline PcPresentation build_G4() {
  // g1..g3 = a1..a3, g4..g6 = b1..b3, g7 = gamma
  auto pres = pcp_skeleton(3, std::vector<int>(7, 3));
  pres.comm_rhs[1][0] = word({{5, 2}});  // [a2,a1] = b3^{-1}
  pres.comm_rhs[2][0] = word({{4, 1}});  // [a3,a1] = b2
  pres.comm_rhs[2][1] = word({{3, 2}});  // [a3,a2] = b1^{-1}
  pres.comm_rhs[3][0] = word({{6, 1}});  // [b1,a1] = gamma
  pres.comm_rhs[4][1] = word({{6, 1}});  // [b2,a2] = gamma
  pres.comm_rhs[5][2] = word({{6, 1}});  // [b3,a3] = gamma
  return pres;
}

// C_p wr C_p: order p^{p+1}, maximal class. g1 = t, g_{i+1} = s_i with
// s_1 a base coordinate and s_{i+1} = [s_i, t].
inline PcPresentation build_wreath_CpCp(long long p) {
  auto pres = pcp_skeleton(p, std::vector<int>((int)p + 1, (int)p));
  for (int i = 1; i < (int)p; ++i) pres.comm_rhs[i][0] = word({{i + 1, 1}});
  return pres;
}

// Maximal class of order 3^5 (class 4): the commutator chain
// [g_{i+1}, g1] = g_{i+2} with tail and power relations chosen so the
// overlap checks pass (located by an exhaustive search over small tails).
inline PcPresentation build_maximal_class_3_5() {
  auto pres = pcp_skeleton(3, std::vector<int>(5, 3));
  pres.comm_rhs[1][0] = word({{2, 1}});  // [g2,g1] = g3
  pres.comm_rhs[2][0] = word({{3, 1}});  // [g3,g1] = g4
  pres.comm_rhs[3][0] = word({{4, 1}});  // [g4,g1] = g5
  // exponent-3 groups have class <= 3, so the class-4 chain needs power
  // tails; this pair passes the overlap tests (found by exhaustive search)
  pres.power_rhs[1] = word({{3, 2}});  // g2^3 = g4^2
  pres.power_rhs[2] = word({{4, 2}});  // g3^3 = g5^2
  return pres;
}

inline nlohmann::json presentation_to_json(const PcPresentation& pres) {
  nlohmann::json j;
  j["prime"] = pres.prime;
  j["orders"] = pres.rel_orders;
  nlohmann::json powers = nlohmann::json::object();
  for (int i = 0; i < pres.ngens; ++i) {
    if (pres.power_rhs[i].empty()) continue;
    nlohmann::json w = nlohmann::json::array();
    for (auto [g, e] : pres.power_rhs[i]) w.push_back({g + 1, e});
    powers[std::to_string(i + 1)] = w;
  }
  j["powers"] = powers;
  nlohmann::json comms = nlohmann::json::object();
  for (int jj = 0; jj < pres.ngens; ++jj)
    for (int ii = 0; ii < jj; ++ii) {
      if (pres.comm_rhs[jj][ii].empty()) continue;
      nlohmann::json w = nlohmann::json::array();
      for (auto [g, e] : pres.comm_rhs[jj][ii]) w.push_back({g + 1, e});
      comms[std::to_string(jj + 1) + "," + std::to_string(ii + 1)] = w;
    }
  j["commutators"] = comms;
  return j;
}

inline PcPresentation presentation_from_json(const nlohmann::json& j) {
  if (!j.contains("prime") || !j.contains("orders"))
    throw GroupError("group file: missing 'prime' or 'orders'");
  long long p = j.at("prime").get<long long>();
  std::vector<int> orders = j.at("orders").get<std::vector<int>>();
  PcPresentation pres = pcp_skeleton(p, orders);
  auto parse_word = [&](const nlohmann::json& w, int reduce_hint) {
    NormalWord out;
    (void)reduce_hint;
    for (const auto& letter : w) {
      if (!letter.is_array() || letter.size() != 2)
        throw GroupError("group file: word letters must be [gen, exp] pairs");
      int g = letter[0].get<int>();
      long long e = letter[1].get<long long>();
      if (g < 1 || g > pres.ngens)
        throw GroupError("group file: generator index " + std::to_string(g) +
                         " out of range");
      long long o = pres.rel_orders[g - 1];
      e = ((e % o) + o) % o;
      if (e != 0) out.emplace_back(g - 1, (int)e);
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  if (j.contains("powers"))
    for (auto& [key, w] : j.at("powers").items()) {
      int i = std::stoi(key);
      if (i < 1 || i > pres.ngens)
        throw GroupError("group file: power key " + key + " out of range");
      pres.power_rhs[i - 1] = parse_word(w, i);
    }
  if (j.contains("commutators"))
    for (auto& [key, w] : j.at("commutators").items()) {
      auto comma = key.find(',');
      if (comma == std::string::npos)
        throw GroupError("group file: commutator key '" + key + "' must be \"j,i\"");
      int jj = std::stoi(key.substr(0, comma));
      int ii = std::stoi(key.substr(comma + 1));
      if (jj <= ii) throw GroupError("group file: commutator key needs j > i: " + key);
      if (ii < 1 || jj > pres.ngens)
        throw GroupError("group file: commutator key " + key + " out of range");
      pres.comm_rhs[jj - 1][ii - 1] = parse_word(w, jj);
    }
  return pres;
}

inline PcPresentation parse_group_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GroupError("cannot open group file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw GroupError("group file parse error: " + std::string(e.what()));
  }
  return presentation_from_json(j);
}

struct CatalogEntry {
  std::string name;
  std::string description;
  std::function<PcPresentation()> build;
  long long expect_order = 0;
  int expect_class = 0;
  long long expect_k = 0;  // log_p |gamma_2|
  int expect_d = 0;
  std::optional<long long> expect_mult_exp;
  std::string mult_source;  // "oracle" | "paper"
};

inline const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = {
      {"C3x3", "abelian C_3 x C_3", [] { return build_abelian(3, {1, 1}); },
       9, 1, 0, 2, 1, "oracle"},
      {"C3x3x3", "elementary abelian of rank 3", [] { return build_abelian(3, {1, 1, 1}); },
       27, 1, 0, 3, 3, "oracle"},
      {"C9x3", "abelian C_9 x C_3", [] { return build_abelian(3, {2, 1}); },
       27, 1, 0, 2, 1, "oracle"},
      {"C2x2", "elementary abelian of rank 2", [] { return build_abelian(2, {1, 1}); },
       4, 1, 0, 2, 1, "oracle"},
      {"E3", "extraspecial 3^3 of exponent 3", [] { return build_extraspecial(3, true); },
       27, 2, 1, 2, 2, "oracle"},
      {"M27", "extraspecial 3^3 of exponent 9", [] { return build_extraspecial(3, false); },
       27, 2, 1, 2, 0, "oracle"},
      {"E5", "extraspecial 5^3 of exponent 5", [] { return build_extraspecial(5, true); },
       125, 2, 1, 2, 2, "oracle"},
      {"G1_3_4", "E_3 x C_3 (order 81)", [] { return build_G1(3, 4); },
       81, 2, 1, 3, 4, "oracle"},
      {"W3", "C_3 wr C_3 (order 81, maximal class)", [] { return build_wreath_CpCp(3); },
       81, 3, 2, 2, 1, "oracle"},
      {"MC35", "maximal class of order 3^5", [] { return build_maximal_class_3_5(); },
       243, 4, 3, 2, 1, "oracle"},
      {"G2_2x2", "C_3^4 : C_3, action 2+2", [] { return build_G2(3, "2+2"); },
       243, 2, 2, 3, std::nullopt, ""},
      {"G2_3x1", "C_3^4 : C_3, action 3+1", [] { return build_G2(3, "3+1"); },
       243, 3, 2, 3, std::nullopt, ""},
      {"G3", "order 3^6, class 2, relations [a_i,a_j] = b_k", [] { return build_G3(3); },
       729, 2, 3, 3, 8, "paper"},
      {"G4", "order 3^7, class 3", [] { return build_G4(); },
       2187, 3, 4, 3, 10, "paper"},
  };
  return entries;
}

inline const CatalogEntry* catalog_find(const std::string& name) {
  for (const auto& e : catalog())
    if (e.name == name) return &e;
  return nullptr;
}

}  // namespace pmult
