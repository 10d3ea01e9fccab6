// Singer cycles, regular elliptic elements, and the interval [e, c] below
// them: flag f-vectors, Moebius function, the chain/decomposition bijection,
// and isomorphism invariants.

#pragma once

#include "absord/absorder.hpp"
#include "absord/matfq.hpp"
#include "absord/parallel.hpp"
#include "absord/qseries.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace absord {

// ---------------------------------------------------------------------------
// Singer cycles and regular elliptic elements

inline constexpr std::uint64_t kMaxSingerOrder = std::uint64_t{1} << 40;

/// The first monic degree-n polynomial over F_q, ordered by coefficient
/// encodings with the constant term varying fastest, whose root generates
/// F_{q^n}^x.
inline PolyFq primitive_poly(int n, const FieldPtr& field) {
  if (n < 1) throw std::invalid_argument("degree must be >= 1");
  const std::uint32_t q = field->q();
  std::uint64_t qn = 1;
  for (int i = 0; i < n; ++i) {
    qn *= q;
    if (qn > kMaxSingerOrder)
      throw std::length_error("q^n too large to factor q^n - 1 by trial division");
  }
  const std::uint64_t order = qn - 1;
  const auto factors = detail::prime_factors(order);
  const PolyFq x = PolyFq::x(field);
  const PolyFq one = PolyFq::constant(field, field->one());
  for (std::uint64_t code = 0; code < qn; ++code) {
    std::vector<FqElem> c(n + 1);
    std::uint64_t r = code;
    for (int i = 0; i < n; ++i) {
      c[i] = FqElem{static_cast<std::uint32_t>(r % q)};
      r /= q;
    }
    c[n] = field->one();
    if (c[0].is_zero()) continue;
    const PolyFq f(field, c);
    if (!(powmod(x, order, f) == one)) continue;
    bool primitive = true;
    for (auto p : factors)
      if (powmod(x, order / p, f) == one) {
        primitive = false;
        break;
      }
    if (primitive) return f;
  }
  throw std::logic_error("no primitive polynomial found");
}

/// Companion matrix of primitive_poly(n, F): the image of a generator of
/// F_{q^n}^x acting on F_{q^n} = F_q^n.
inline Matrix singer_cycle(int n, const FieldPtr& field) {
  return companion(primitive_poly(n, field));
}

/// True iff the characteristic polynomial is irreducible, i.e. g stabilizes
/// no proper nonzero subspace.
inline bool is_regular_elliptic(const Matrix& g) { return is_irreducible(char_poly(g)); }

/// Least k >= 1 with g^k = 1; throws past `limit`.
inline std::uint64_t matrix_order(const Matrix& g, std::uint64_t limit = 10'000'000) {
  Matrix p = g;
  for (std::uint64_t k = 1; k <= limit; ++k) {
    if (p.is_identity()) return k;
    p = p * g;
  }
  throw std::length_error("matrix order exceeds limit");
}

// ---------------------------------------------------------------------------
// The interval [e, c]

class IntervalModel {
 public:
  /// Filters GL_n(F_q) by g <= c. Elements are ordered by rank, then by
  /// entry encodings; index 0 is e and the last index is c.
  static IntervalModel build(const Matrix& c,
                             std::uint64_t max_order = kDefaultMaxGroupOrder,
                             unsigned threads = 1) {
    IntervalModel m;
    m.top_ = c;
    m.n_ = c.rows();
    const auto& F = c.field_ptr();
    std::uint64_t row_codes = 1;
    for (int i = 0; i < m.n_; ++i) row_codes *= F->q();
    // check the bound up front so workers never throw it
    if (gl_order(m.n_, F->q()) > Int(max_order))
      throw std::length_error("|GL_" + std::to_string(m.n_) + "(F_" + F->name() +
                              ")| exceeds enumeration bound " + std::to_string(max_order));

    std::vector<std::vector<Matrix>> shards(std::max(1u, threads));
    const std::size_t shard_count = shards.size();
    parallel_for(shard_count, threads, [&](std::size_t lo, std::size_t hi) {
      for (std::size_t s = lo; s < hi; ++s) {
        const std::uint64_t b = row_codes * s / shard_count;
        const std::uint64_t e = row_codes * (s + 1) / shard_count;
        for_each_gl(
            m.n_, F,
            [&](const Matrix& g) {
              if (abs_leq(g, c)) shards[s].push_back(g);
            },
            max_order, b, e);
      }
    });
    std::vector<std::pair<int, Matrix>> tagged;
    for (auto& sh : shards)
      for (auto& g : sh) tagged.emplace_back(reflection_length(g), std::move(g));
    std::sort(tagged.begin(), tagged.end(), [](const auto& a, const auto& b) {
      return a.first != b.first ? a.first < b.first : a.second < b.second;
    });
    m.by_rank_.assign(m.n_ + 1, {});
    for (auto& [r, g] : tagged) {
      m.by_rank_[r].push_back(m.elems_.size());
      m.index_.emplace(g, m.elems_.size());
      m.rank_.push_back(r);
      m.elems_.push_back(std::move(g));
    }
    m.by_rank_.resize(m.rank_.back() + 1);

    const std::size_t N = m.elems_.size();
    m.leq_.assign(N * N, 0);
    std::vector<Matrix> inverses(N);
    for (std::size_t i = 0; i < N; ++i) inverses[i] = inverse(m.elems_[i]);
    parallel_for(N, threads, [&](std::size_t lo, std::size_t hi) {
      for (std::size_t i = lo; i < hi; ++i)
        for (std::size_t j = 0; j < N; ++j) {
          if (m.rank_[i] > m.rank_[j]) continue;
          if (i == j) {
            m.leq_[i * N + j] = 1;
            continue;
          }
          if (m.rank_[i] == m.rank_[j]) continue;
          m.leq_[i * N + j] =
              m.rank_[i] + reflection_length(inverses[i] * m.elems_[j]) == m.rank_[j];
        }
    });
    return m;
  }

  const Matrix& top() const { return top_; }
  int n() const { return n_; }
  /// Reflection length of the top, the rank of the interval.
  int length() const { return rank_.back(); }
  std::size_t size() const { return elems_.size(); }
  const Matrix& element(std::size_t i) const { return elems_[i]; }
  const std::vector<Matrix>& elements() const { return elems_; }
  int rank_of(std::size_t i) const { return rank_[i]; }
  const std::vector<std::size_t>& rank(int k) const { return by_rank_.at(k); }
  std::size_t bottom_index() const { return 0; }
  std::size_t top_index() const { return elems_.size() - 1; }

  std::vector<std::size_t> rank_sizes() const {
    std::vector<std::size_t> out;
    for (const auto& r : by_rank_) out.push_back(r.size());
    return out;
  }

  bool leq(std::size_t i, std::size_t j) const { return leq_[i * elems_.size() + j]; }
  bool less(std::size_t i, std::size_t j) const { return i != j && leq(i, j); }
  bool covers(std::size_t i, std::size_t j) const {
    return rank_[j] == rank_[i] + 1 && leq(i, j);
  }

  std::optional<std::size_t> index_of(const Matrix& g) const {
    auto it = index_.find(g);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::vector<std::pair<std::size_t, std::size_t>> cover_pairs() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (int r = 0; r + 1 < static_cast<int>(by_rank_.size()); ++r)
      for (auto i : by_rank_[r])
        for (auto j : by_rank_[r + 1])
          if (leq(i, j)) out.emplace_back(i, j);
    return out;
  }

 private:
  Matrix top_;
  int n_ = 0;
  std::vector<Matrix> elems_;
  std::vector<int> rank_;
  std::vector<std::vector<std::size_t>> by_rank_;
  std::unordered_map<Matrix, std::size_t, MatrixHash> index_;
  std::vector<unsigned char> leq_;
};

/// Chains e = c_0 < c_1 < ... < c_m = c with rank(c_i) - rank(c_{i-1}) = alpha_i.
inline Int flag_f(const IntervalModel& model, const Composition& alpha) {
  if (alpha.n() != model.length())
    throw std::invalid_argument("composition of " + std::to_string(alpha.n()) +
                                " does not match the top's length " +
                                std::to_string(model.length()));
  std::vector<Int> ways(model.size(), 0);
  ways[model.bottom_index()] = 1;
  int level = 0;
  for (int part : alpha.parts()) {
    const int next = level + part;
    for (auto j : model.rank(next)) {
      Int s = 0;
      for (auto i : model.rank(level))
        if (ways[i] != 0 && model.leq(i, j)) s += ways[i];
      ways[j] = s;
    }
    level = next;
  }
  return ways[model.top_index()];
}

inline Int maximal_chains(const IntervalModel& model) {
  return flag_f(model, Composition(std::vector<int>(model.length(), 1)));
}

/// mu(e,c) from mu(e,e) = 1 and mu(e,y) = -sum_{x<y} mu(e,x).
inline Int mobius_poset(const IntervalModel& model) {
  std::vector<Int> mu(model.size(), 0);
  for (std::size_t y = 0; y < model.size(); ++y) {
    if (y == model.bottom_index()) {
      mu[y] = 1;
      continue;
    }
    Int s = 0;
    for (std::size_t x = 0; x < model.size(); ++x)
      if (model.rank_of(x) < model.rank_of(y) && model.leq(x, y)) s += mu[x];
    mu[y] = -s;
  }
  return mu[model.top_index()];
}

// ---------------------------------------------------------------------------
// Chains and twisted decompositions

struct Decomposition {
  std::vector<Subspace> parts;

  std::vector<int> dims() const {
    std::vector<int> d;
    for (const auto& p : parts) d.push_back(p.dim());
    return d;
  }

  friend bool operator==(const Decomposition&, const Decomposition&) = default;
};

namespace detail {

inline Subspace span_of(const std::vector<Subspace>& parts, std::size_t lo, std::size_t hi,
                        const FieldPtr& F, int n) {
  std::vector<Vec> vs;
  for (std::size_t i = lo; i < hi; ++i)
    for (auto& v : parts[i].vectors()) vs.push_back(v);
  return Subspace::span(F, n, vs);
}

inline void require_no_fixed_vectors(const Matrix& c) {
  if (fixed_space(c).dim() != 0)
    throw std::invalid_argument("top element has nonzero fixed space");
}

}  // namespace detail

/// Whether the parts form a direct sum decomposition of V.
inline bool is_direct_decomposition(const Decomposition& d, const FieldPtr& F, int n) {
  int total = 0;
  for (const auto& p : d.parts) total += p.dim();
  return total == n && detail::span_of(d.parts, 0, d.parts.size(), F, n).dim() == n;
}

/// First index i in 0..m with V != c(V_{<=i}) (+) V_{>i}, if any.
inline std::optional<std::size_t> twisted_failure(const Decomposition& d, const Matrix& c) {
  const auto& F = c.field_ptr();
  const int n = c.rows();
  for (std::size_t i = 0; i <= d.parts.size(); ++i) {
    const Subspace low = detail::span_of(d.parts, 0, i, F, n).image(c);
    const Subspace high = detail::span_of(d.parts, i, d.parts.size(), F, n);
    if (low.dim() + high.dim() != n || (low + high).dim() != n) return i;
  }
  return std::nullopt;
}

/// V_i = V^{g_{i-1}} cap V^{g_i^-1 g_m} for a multichain e = g_0 <= ... <= g_m = c.
inline Decomposition phi(const std::vector<Matrix>& chain, const Matrix& c) {
  detail::require_no_fixed_vectors(c);
  if (chain.size() < 2) throw std::invalid_argument("chain needs at least e and c");
  if (!chain.front().is_identity() || !(chain.back() == c))
    throw std::invalid_argument("chain must run from e to c");
  for (std::size_t i = 1; i < chain.size(); ++i)
    if (!abs_leq(chain[i - 1], chain[i]))
      throw std::invalid_argument("not a multichain at step " + std::to_string(i));
  Decomposition d;
  for (std::size_t i = 1; i < chain.size(); ++i)
    d.parts.push_back(
        fixed_space(chain[i - 1]).intersect(fixed_space(inverse(chain[i]) * c)));
  return d;
}

/// g_i(x + y) = c(x) + y for x in V_{<=i}, y in V_{>i}.
inline std::vector<Matrix> psi(const Decomposition& d, const Matrix& c) {
  detail::require_no_fixed_vectors(c);
  const auto& F = c.field_ptr();
  const int n = c.rows();
  if (!is_direct_decomposition(d, F, n))
    throw std::invalid_argument("parts do not form a direct sum decomposition");
  if (auto bad = twisted_failure(d, c))
    throw std::invalid_argument("twisted complement condition fails at i = " +
                                std::to_string(*bad));
  std::vector<Vec> basis;
  std::vector<std::size_t> part_end;
  for (const auto& p : d.parts) {
    for (auto& v : p.vectors()) basis.push_back(v);
    part_end.push_back(basis.size());
  }
  const Matrix B = Matrix::from_columns(F, n, basis);
  const Matrix Binv = inverse(B);
  std::vector<Matrix> chain;
  for (std::size_t i = 0; i <= d.parts.size(); ++i) {
    const std::size_t low = i == 0 ? 0 : part_end[i - 1];
    std::vector<Vec> imgs = basis;
    for (std::size_t k = 0; k < low; ++k) imgs[k] = c.apply(basis[k]);
    chain.push_back(Matrix::from_columns(F, n, imgs) * Binv);
  }
  return chain;
}

/// Visits every twisted decomposition (V_1, ..., V_m) with dim V_i = alpha_i.
inline void for_each_twisted_decomposition(const Matrix& c, const Composition& alpha,
                                           const std::function<void(const Decomposition&)>& visit) {
  detail::require_no_fixed_vectors(c);
  const auto& F = c.field_ptr();
  const int n = c.rows();
  if (alpha.n() != n) throw std::invalid_argument("composition does not match n");
  std::vector<std::vector<Subspace>> grass(n + 1);
  for (int k : alpha.parts())
    if (grass[k].empty())
      for_each_subspace(n, k, F, [&](const Subspace& s) { grass[k].push_back(s); });
  Decomposition cur;
  std::function<void(std::size_t, const Subspace&)> rec = [&](std::size_t i,
                                                               const Subspace& sum) {
    if (i == alpha.parts().size()) {
      if (!twisted_failure(cur, c)) visit(cur);
      return;
    }
    for (const Subspace& s : grass[alpha.parts()[i]]) {
      const Subspace next = sum + s;
      if (next.dim() != sum.dim() + s.dim()) continue;
      cur.parts.push_back(s);
      rec(i + 1, next);
      cur.parts.pop_back();
    }
  };
  rec(0, Subspace::zero(F, n));
}

inline Int count_twisted_decompositions(const Matrix& c, const Composition& alpha) {
  Int count = 0;
  for_each_twisted_decomposition(c, alpha, [&](const Decomposition&) { ++count; });
  return count;
}

// ---------------------------------------------------------------------------
// Lattice property and isomorphism invariants

struct LatticeWitness {
  std::size_t a, b;
  std::vector<std::size_t> minimal_upper_bounds;
};

inline std::vector<std::size_t> minimal_upper_bounds(const IntervalModel& model, std::size_t a,
                                                     std::size_t b) {
  std::vector<std::size_t> ub;
  for (std::size_t z = 0; z < model.size(); ++z)
    if (model.leq(a, z) && model.leq(b, z)) ub.push_back(z);
  std::vector<std::size_t> out;
  for (auto z : ub) {
    bool minimal = true;
    for (auto w : ub)
      if (w != z && model.leq(w, z)) {
        minimal = false;
        break;
      }
    if (minimal) out.push_back(z);
  }
  return out;
}

/// Two elements with at least two minimal upper bounds, if the interval has any.
inline std::optional<LatticeWitness> lattice_witness(const IntervalModel& model) {
  for (std::size_t a = 0; a < model.size(); ++a)
    for (std::size_t b = a + 1; b < model.size(); ++b) {
      if (model.leq(a, b) || model.leq(b, a)) continue;
      auto mub = minimal_upper_bounds(model, a, b);
      if (mub.size() >= 2) return LatticeWitness{a, b, std::move(mub)};
    }
  return std::nullopt;
}

/// |det| by fraction-free (Bareiss) elimination over the integers.
inline Int abs_determinant(std::vector<std::vector<Int>> a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t sel = k + 1;
      while (sel < n && a[sel][k] == 0) ++sel;
      if (sel == n) return 0;
      std::swap(a[k], a[sel]);
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  Int d = a[n - 1][n - 1];
  return d < 0 ? Int(-d) : d;
}

struct IntervalInvariants {
  std::vector<std::size_t> rank_sizes;
  std::vector<std::vector<std::size_t>> up_degrees;    // sorted, per rank
  std::vector<std::vector<std::size_t>> down_degrees;  // sorted, per rank
  Int incidence_det;  // |det| of the rank 1 x rank n-1 incidence matrix

  friend bool operator==(const IntervalInvariants&, const IntervalInvariants&) = default;
};

inline IntervalInvariants interval_invariants(const IntervalModel& model) {
  IntervalInvariants inv;
  const int n = model.length();
  inv.rank_sizes = model.rank_sizes();
  inv.up_degrees.assign(n + 1, {});
  inv.down_degrees.assign(n + 1, {});
  for (int r = 0; r <= n; ++r)
    for (auto i : model.rank(r)) {
      std::size_t up = 0, down = 0;
      if (r < n)
        for (auto j : model.rank(r + 1)) up += model.leq(i, j);
      if (r > 0)
        for (auto j : model.rank(r - 1)) down += model.leq(j, i);
      inv.up_degrees[r].push_back(up);
      inv.down_degrees[r].push_back(down);
    }
  for (auto& v : inv.up_degrees) std::sort(v.begin(), v.end());
  for (auto& v : inv.down_degrees) std::sort(v.begin(), v.end());

  if (n >= 2) {
    const auto& low = model.rank(1);
    const auto& high = model.rank(n - 1);
    std::vector<std::vector<Int>> inc(low.size(), std::vector<Int>(high.size(), 0));
    for (std::size_t a = 0; a < low.size(); ++a)
      for (std::size_t b = 0; b < high.size(); ++b) inc[a][b] = model.leq(low[a], high[b]) ? 1 : 0;
    inv.incidence_det = low.size() == high.size() ? abs_determinant(std::move(inc)) : Int(0);
  } else {
    inv.incidence_det = 0;
  }
  return inv;
}

}  // namespace absord
