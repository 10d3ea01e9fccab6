// Brute-force oracle for length-additive factorizations of an n-cycle in S_n.

#pragma once

#include "absord/bigint.hpp"
#include "absord/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace absord {

/// One-line notation on {0, ..., n-1}: p[i] is the image of i.
using Perm = std::vector<int>;
/// A partition of n, parts in weakly decreasing order.
using CycleType = std::vector<int>;

inline constexpr int kMaxCactusN = 6;

inline Perm identity_perm(int n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

/// (a * b)(i) = a(b(i)).
inline Perm compose(const Perm& a, const Perm& b) {
  Perm out(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = a[b[i]];
  return out;
}

inline Perm perm_inverse(const Perm& p) {
  Perm out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[p[i]] = static_cast<int>(i);
  return out;
}

inline bool is_permutation(const Perm& p) {
  std::vector<bool> seen(p.size(), false);
  for (int v : p) {
    if (v < 0 || v >= static_cast<int>(p.size()) || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

inline CycleType cycle_type(const Perm& p) {
  std::vector<bool> seen(p.size(), false);
  CycleType t;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (std::size_t j = i; !seen[j]; j = p[j]) {
      seen[j] = true;
      ++len;
    }
    t.push_back(len);
  }
  std::sort(t.rbegin(), t.rend());
  return t;
}

/// n minus the number of cycles.
inline int perm_length(const Perm& p) {
  return static_cast<int>(p.size() - cycle_type(p).size());
}

inline int type_length(const CycleType& t) {
  int s = 0;
  for (int a : t) s += a - 1;
  return s;
}

/// The n-cycle 0 -> 1 -> ... -> n-1 -> 0.
inline Perm standard_ncycle(int n) {
  Perm p(n);
  for (int i = 0; i < n; ++i) p[i] = (i + 1) % n;
  return p;
}

/// All permutations of {0..n-1} in lexicographic order.
inline std::vector<Perm> all_perms(int n) {
  std::vector<Perm> out;
  Perm p = identity_perm(n);
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

/// Partitions of n in reverse lexicographic order, (n) first.
inline std::vector<CycleType> partitions(int n) {
  std::vector<CycleType> out;
  CycleType cur;
  auto rec = [&](auto&& self, int rest, int max_part) -> void {
    if (rest == 0) {
      out.push_back(cur);
      return;
    }
    for (int a = std::min(rest, max_part); a >= 1; --a) {
      cur.push_back(a);
      self(self, rest - a, a);
      cur.pop_back();
    }
  };
  rec(rec, n, n);
  return out;
}

inline CycleType parse_cycle_type(const std::string& text) {
  CycleType t;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) throw std::invalid_argument("empty part in cycle type '" + text + "'");
    std::size_t used = 0;
    const int a = std::stoi(tok, &used);
    if (used != tok.size() || a < 1)
      throw std::invalid_argument("bad part '" + tok + "' in cycle type");
    t.push_back(a);
  }
  std::sort(t.rbegin(), t.rend());
  return t;
}

/// Parses "3,1|2,1,1".
inline std::vector<CycleType> parse_type_list(const std::string& text) {
  std::vector<CycleType> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, '|')) out.push_back(parse_cycle_type(tok));
  return out;
}

inline std::string format_cycle_type(const CycleType& t) {
  std::string s;
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
  return s;
}

inline std::string format_type_list(const std::vector<CycleType>& ts) {
  std::string s;
  for (std::size_t i = 0; i < ts.size(); ++i) s += (i ? "|" : "") + format_cycle_type(ts[i]);
  return s;
}

/// N(lambda) = (1/m) * m! / prod_i m_i!, with m the number of cycles and m_i
/// the number of cycles of size i.
inline Rational n_lambda(const CycleType& t) {
  const int m = static_cast<int>(t.size());
  if (m == 0) throw std::invalid_argument("empty cycle type");
  Int num = 1;
  for (int i = 2; i <= m; ++i) num *= i;
  Int den = m;
  std::vector<int> mult(*std::max_element(t.begin(), t.end()) + 1, 0);
  for (int a : t) ++mult[a];
  for (int k : mult)
    for (int i = 2; i <= k; ++i) den *= i;
  return Rational(num, den);
}

/// n^{m-1} prod_i N(lambda^(i)); throws if the product is not an integer.
inline Int cactus_formula(int n, const std::vector<CycleType>& types) {
  Rational v = rpow(Rational(n), static_cast<long>(types.size()) - 1);
  for (const auto& t : types) v *= n_lambda(t);
  if (denominator(v) != 1)
    throw std::logic_error("cactus formula value " + to_string(v) + " is not an integer");
  return numerator(v);
}

inline void check_type_list(int n, const std::vector<CycleType>& types) {
  if (n < 1 || n > kMaxCactusN)
    throw std::invalid_argument("n = " + std::to_string(n) + " outside brute-force range 1.." +
                                std::to_string(kMaxCactusN));
  if (types.empty()) throw std::invalid_argument("empty type list");
  int total = 0;
  for (const auto& t : types) {
    int s = 0;
    for (int a : t) s += a;
    if (s != n)
      throw std::invalid_argument("cycle type " + format_cycle_type(t) + " is not a partition of " +
                                  std::to_string(n));
    total += type_length(t);
  }
  if (total != n - 1)
    throw std::invalid_argument("type lengths sum to " + std::to_string(total) + ", need " +
                                std::to_string(n - 1));
}

/// Tuples (s_1, ..., s_m) with cycle_type(s_i) = types[i], s_1 * ... * s_m =
/// target, and sum of lengths equal to perm_length(target).
inline Int count_factorizations(const Perm& target, const std::vector<CycleType>& types,
                                unsigned threads = 1) {
  const int n = static_cast<int>(target.size());
  check_type_list(n, types);
  const auto perms = all_perms(n);
  std::vector<std::vector<Perm>> classes(types.size());
  for (const auto& p : perms)
    for (std::size_t i = 0; i < types.size(); ++i)
      if (cycle_type(p) == types[i]) classes[i].push_back(p);
  const int want = perm_length(target);
  const std::size_t m = types.size();

  std::atomic<long long> total{0};
  // the last factor is forced: s_m = (s_1 ... s_{m-1})^{-1} target
  auto rec = [&](auto&& self, std::size_t i, const Perm& prefix, int len) -> long long {
    if (i + 1 == m) {
      const Perm last = compose(perm_inverse(prefix), target);
      if (cycle_type(last) != types[i]) return 0;
      return len + perm_length(last) == want ? 1 : 0;
    }
    long long c = 0;
    for (const auto& s : classes[i]) c += self(self, i + 1, compose(prefix, s), len + perm_length(s));
    return c;
  };
  if (m == 1) return rec(rec, 0, identity_perm(n), 0);
  parallel_for(classes[0].size(), threads, [&](std::size_t lo, std::size_t hi) {
    long long c = 0;
    for (std::size_t k = lo; k < hi; ++k)
      c += rec(rec, 1, classes[0][k], perm_length(classes[0][k]));
    total += c;
  });
  return Int(total.load());
}

struct CactusResult {
  Int count;
  Int formula;
  bool match;
};

inline CactusResult count_cactus(int n, const std::vector<CycleType>& types,
                                 unsigned threads = 1) {
  CactusResult r;
  r.count = count_factorizations(standard_ncycle(n), types, threads);
  r.formula = cactus_formula(n, types);
  r.match = r.count == r.formula;
  return r;
}

/// Every list of at most max_m partitions of n whose lengths sum to n - 1.
inline std::vector<std::vector<CycleType>> admissible_type_lists(int n, int max_m) {
  const auto parts = partitions(n);
  std::vector<std::vector<CycleType>> out;
  std::vector<CycleType> cur;
  auto rec = [&](auto&& self, int budget) -> void {
    if (!cur.empty() && budget == 0) out.push_back(cur);
    if (static_cast<int>(cur.size()) == max_m) return;
    for (const auto& p : parts) {
      const int l = type_length(p);
      if (l > budget) continue;
      cur.push_back(p);
      self(self, budget - l);
      cur.pop_back();
    }
  };
  rec(rec, n - 1);
  return out;
}

}  // namespace absord
