// The absolute order on GL_n(F_q) generated by all reflections.
//
// Reflection length equals fixed space codimension, so every order test
// reduces to ranks of g - 1. Minimal factorizations are built by repeatedly
// multiplying on the right by a reflection that enlarges the fixed space.

#pragma once

#include "absord/matfq.hpp"

#include <deque>
#include <map>
#include <optional>
#include <stdexcept>
#include <unordered_set>
#include <utility>
#include <vector>

namespace absord {

inline int reflection_length(const Matrix& g) {
  return rank(g - Matrix::identity(g.field_ptr(), g.rows()));
}

inline bool is_reflection(const Matrix& g) {
  return g.square() && reflection_length(g) == 1 && is_invertible(g);
}

enum class LeqCheck { kCodim, kCrossCheck };

/// V^g + V^{h} = V and V^g cap V^h = V^{gh}.
inline bool codim_equality_conditions(const Matrix& g, const Matrix& h) {
  const Subspace vg = fixed_space(g), vh = fixed_space(h);
  return (vg + vh).dim() == g.rows() && vg.intersect(vh) == fixed_space(g * h);
}

/// g <= h iff codim V^g + codim V^{g^-1 h} = codim V^h. With kCrossCheck the
/// subspace characterization is evaluated too and must agree.
inline bool abs_leq(const Matrix& g, const Matrix& h, LeqCheck mode = LeqCheck::kCodim) {
  if (g.rows() != h.rows() || !(g.field() == h.field()))
    throw std::invalid_argument("abs_leq: elements of different groups");
  const Matrix gi = inverse(g);
  const Matrix rest = gi * h;
  const bool by_codim =
      reflection_length(g) + reflection_length(rest) == reflection_length(h);
  if (mode == LeqCheck::kCrossCheck && by_codim != codim_equality_conditions(g, rest))
    throw std::logic_error("codimension and subspace characterizations disagree");
  return by_codim;
}

inline bool abs_less(const Matrix& g, const Matrix& h) {
  return !(g == h) && abs_leq(g, h);
}

// ---------------------------------------------------------------------------
// Factorizations into reflections

class Factorization {
 public:
  Factorization(FieldPtr field, int n, std::vector<Matrix> factors = {})
      : factors_(std::move(factors)), product_(Matrix::identity(field, n)) {
    for (const Matrix& t : factors_) {
      if (t.rows() != n || !is_reflection(t))
        throw std::invalid_argument("factor is not a reflection of GL_" +
                                    std::to_string(n));
      product_ = product_ * t;
    }
  }

  const std::vector<Matrix>& factors() const { return factors_; }
  const Matrix& product() const { return product_; }
  std::size_t size() const { return factors_.size(); }
  const Matrix& operator[](std::size_t i) const { return factors_[i]; }

  bool is_reduced() const {
    return static_cast<int>(factors_.size()) == reflection_length(product_);
  }

  friend bool operator==(const Factorization& a, const Factorization& b) {
    return a.factors_ == b.factors_;
  }

 private:
  std::vector<Matrix> factors_;
  Matrix product_;
};

/// A reflection t with V^{gt} strictly containing V^g, so l(gt) = l(g) - 1.
///
/// Work in a basis e_1..e_n whose last n-m vectors span V^g, where g has
/// block form [[A, 0], [B, 1]]. After a change of basis on the first m
/// vectors making (A^-1)_{mm} nonzero, t fixes every e_j with j != m and
/// sends e_m to A^-1 e_m (+) -B A^-1 e_m.
inline Matrix descent_reflection(const Matrix& g) {
  const int n = g.rows();
  const auto& Fp = g.field_ptr();
  const Field& F = *Fp;
  const Subspace fixed = fixed_space(g);
  const int m = n - fixed.dim();
  if (m == 0) throw std::invalid_argument("descent_reflection: g is the identity");

  // Complement of V^g from standard vectors at non-pivot coordinates.
  std::vector<bool> is_pivot(n, false);
  for (int p : fixed.pivots()) is_pivot[p] = true;
  std::vector<Vec> cols;
  for (int j = 0; j < n; ++j)
    if (!is_pivot[j]) {
      Vec v(n);
      v[j] = F.one();
      cols.push_back(std::move(v));
    }
  for (const Vec& v : fixed.vectors()) cols.push_back(v);
  Matrix S = Matrix::from_columns(Fp, n, cols);

  auto block_a_inverse = [&](const Matrix& basis) {
    const Matrix conj = inverse(basis) * g * basis;
    Matrix A(Fp, m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) A.set(i, j, conj(i, j));
    return std::pair{conj, inverse(A)};
  };

  auto [conj, Q] = block_a_inverse(S);
  if (Q(m - 1, m - 1).is_zero()) {
    int j = 0;
    while (j < m - 1 && Q(j, m - 1).is_zero()) ++j;
    if (j == m - 1) throw std::logic_error("descent_reflection: no usable basis change");
    // P(e_j) = e_j + e_m acts on coordinates; the new basis is S P^{-1},
    // i.e. e_j is replaced by e_j - e_m.
    for (int i = 0; i < n; ++i) S.set(i, j, F.sub(S(i, j), S(i, m - 1)));
    std::tie(conj, Q) = block_a_inverse(S);
    if (Q(m - 1, m - 1).is_zero())
      throw std::logic_error("descent_reflection: basis change failed");
  }

  // column m of t in the adapted basis
  Vec col(n);
  for (int i = 0; i < m; ++i) col[i] = Q(i, m - 1);
  for (int r = m; r < n; ++r) {
    FqElem acc{};
    for (int k = 0; k < m; ++k) acc = F.add(acc, F.mul(conj(r, k), col[k]));
    col[r] = F.neg(acc);
  }
  Matrix t_adapted = Matrix::identity(Fp, n);
  for (int i = 0; i < n; ++i) t_adapted.set(i, m - 1, col[i]);
  return S * t_adapted * inverse(S);
}

/// A minimal reflection factorization g = t_1 ... t_l with l = rank(g - 1).
inline Factorization reduced_word(const Matrix& g) {
  std::vector<Matrix> descents;
  Matrix cur = g;
  while (!cur.is_identity()) {
    Matrix t = descent_reflection(cur);
    cur = cur * t;
    descents.push_back(std::move(t));
  }
  // g t_a t_b ... t_z = e, so g = t_z^-1 ... t_b^-1 t_a^-1
  std::vector<Matrix> factors;
  for (auto it = descents.rbegin(); it != descents.rend(); ++it)
    factors.push_back(inverse(*it));
  return Factorization(g.field_ptr(), g.rows(), std::move(factors));
}

// ---------------------------------------------------------------------------
// Hurwitz moves

/// sigma_i (direction +1) or sigma_i^-1 (direction -1) acting on positions
/// i and i+1 (zero-based):
///   sigma_i:    (t_i, t_{i+1}) -> (t_{i+1}, t_{i+1}^-1 t_i t_{i+1})
///   sigma_i^-1: (t_i, t_{i+1}) -> (t_i t_{i+1} t_i^-1, t_i)
inline Factorization hurwitz(const Factorization& w, std::size_t i, int direction) {
  if (i + 1 >= w.size()) throw std::out_of_range("Hurwitz index out of range");
  if (direction != 1 && direction != -1)
    throw std::invalid_argument("Hurwitz direction must be +1 or -1");
  std::vector<Matrix> f = w.factors();
  const Matrix a = f[i], b = f[i + 1];
  if (direction == 1) {
    f[i] = b;
    f[i + 1] = inverse(b) * a * b;
  } else {
    f[i] = a * b * inverse(a);
    f[i + 1] = a;
  }
  return Factorization(w.product().field_ptr(), w.product().rows(), std::move(f));
}

/// Moves the letter at `from` to position `to <= from` unchanged.
inline Factorization shift_left(Factorization w, std::size_t from, std::size_t to) {
  while (from > to) {
    w = hurwitz(w, from - 1, 1);
    --from;
  }
  return w;
}

/// Given increasing positions of a subword, returns a word for the same
/// element that has the subword as its prefix.
inline Factorization subword_to_prefix(Factorization w, const std::vector<std::size_t>& positions) {
  for (std::size_t k = 0; k < positions.size(); ++k) {
    if (positions[k] >= w.size() || (k && positions[k] <= positions[k - 1]))
      throw std::invalid_argument("subword positions must be increasing and in range");
    w = shift_left(std::move(w), positions[k], k);
  }
  return w;
}

namespace detail {
inline std::vector<std::uint32_t> word_key(const Factorization& w) {
  std::vector<std::uint32_t> key;
  for (const Matrix& t : w.factors())
    for (FqElem x : t.entries()) key.push_back(x.value);
  return key;
}
}  // namespace detail

struct HurwitzOrbit {
  std::vector<Factorization> words;
  bool complete = true;  // false when the bound stopped the search
};

/// Breadth-first exploration of the Hurwitz orbit of w, stopping after
/// max_words distinct words.
inline HurwitzOrbit hurwitz_orbit(const Factorization& w, std::size_t max_words = 100000) {
  HurwitzOrbit orbit;
  std::map<std::vector<std::uint32_t>, bool> seen;
  std::deque<Factorization> queue{w};
  seen[detail::word_key(w)] = true;
  while (!queue.empty()) {
    Factorization cur = std::move(queue.front());
    queue.pop_front();
    for (std::size_t i = 0; i + 1 < cur.size(); ++i)
      for (int dir : {1, -1}) {
        Factorization next = hurwitz(cur, i, dir);
        auto key = detail::word_key(next);
        if (seen.emplace(std::move(key), true).second) queue.push_back(std::move(next));
      }
    orbit.words.push_back(std::move(cur));
    if (orbit.words.size() >= max_words && !queue.empty()) {
      orbit.complete = false;
      break;
    }
  }
  return orbit;
}

struct ExchangeWitness {
  Factorization word;  // reduced word for g
  std::size_t index;   // word[index] == t^-1
};

/// When l(tg) < l(g), t^-1 <= g, so t^-1 followed by a reduced word for tg
/// is a reduced word for g containing t^-1.
inline std::optional<ExchangeWitness> exchange_witness(const Matrix& t, const Matrix& g) {
  if (reflection_length(t * g) >= reflection_length(g)) return std::nullopt;
  std::vector<Matrix> letters{inverse(t)};
  const Factorization rest = reduced_word(t * g);
  for (const Matrix& s : rest.factors()) letters.push_back(s);
  return ExchangeWitness{Factorization(g.field_ptr(), g.rows(), std::move(letters)), 0};
}

/// Looks for a word in the Hurwitz orbit of w having `letter` at some
/// position. The orbit need not contain every reduced word of the product.
inline std::optional<ExchangeWitness> find_letter_in_orbit(const Factorization& w,
                                                           const Matrix& letter,
                                                           std::size_t max_words = 100000) {
  const HurwitzOrbit orbit = hurwitz_orbit(w, max_words);
  for (const auto& v : orbit.words)
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] == letter) return ExchangeWitness{v, i};
  return std::nullopt;
}

/// tg = (t t_1 t^-1) ... (t t_{i-1} t^-1) t_{i+1} ... t_k for a witness.
inline bool exchange_identity_holds(const Matrix& t, const Matrix& g, const ExchangeWitness& w) {
  const Matrix tinv = inverse(t);
  Matrix prod = Matrix::identity(g.field_ptr(), g.rows());
  for (std::size_t j = 0; j < w.word.size(); ++j) {
    if (j < w.index) prod = prod * (t * w.word[j] * tinv);
    else if (j > w.index) prod = prod * w.word[j];
  }
  return prod == t * g && w.word.product() == g && w.word.is_reduced();
}

/// All reflections of GL_n(F_q), in enumeration order.
inline std::vector<Matrix> all_reflections(int n, const FieldPtr& field,
                                           std::uint64_t max_order = kDefaultMaxGroupOrder) {
  std::vector<Matrix> out;
  for_each_gl(n, field, [&](const Matrix& g) {
    if (reflection_length(g) == 1) out.push_back(g);
  }, max_order);
  return out;
}

/// Every reduced word of h over the given reflection set.
inline std::vector<Factorization> all_reduced_words(const Matrix& h,
                                                    const std::vector<Matrix>& reflections) {
  const int len = reflection_length(h);
  std::vector<Factorization> out;
  std::vector<Matrix> word;
  auto rec = [&](auto&& self, const Matrix& prefix) -> void {
    const int placed = static_cast<int>(word.size());
    if (placed == len) {
      if (prefix == h) out.emplace_back(h.field_ptr(), h.rows(), word);
      return;
    }
    for (const Matrix& t : reflections) {
      Matrix next = prefix * t;
      // prefixes of reduced words are below h
      if (reflection_length(next) != placed + 1 || !abs_leq(next, h)) continue;
      word.push_back(t);
      self(self, next);
      word.pop_back();
    }
  };
  rec(rec, Matrix::identity(h.field_ptr(), h.rows()));
  return out;
}

// ---------------------------------------------------------------------------

/// y -> x y^-1 z, an order-reversing bijection of [x, z] onto itself.
inline Matrix dual_map(const Matrix& x, const Matrix& z, const Matrix& y) {
  if (!abs_leq(x, y) || !abs_leq(y, z))
    throw std::invalid_argument("dual_map needs x <= y <= z");
  return x * inverse(y) * z;
}

/// Inverse of dual_map: y -> z y^-1 x.
inline Matrix dual_map_inverse(const Matrix& x, const Matrix& z, const Matrix& y) {
  if (!abs_leq(x, y) || !abs_leq(y, z))
    throw std::invalid_argument("dual_map_inverse needs x <= y <= z");
  return z * inverse(y) * x;
}

}  // namespace absord
