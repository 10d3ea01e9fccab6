// Property suites over GL_n(F_q): exhaustive on small groups, seeded
// sampling otherwise. Each property reports how many cases it checked and
// the first counterexample it met.

#pragma once

#include "absord/absorder.hpp"
#include "absord/qseries.hpp"
#include "absord/singer.hpp"
#include "absord/symoracle.hpp"

#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace absord {

struct PropertyResult {
  std::string name;
  bool passed = true;
  std::uint64_t checked = 0;
  std::string detail;  // counterexample on failure, summary otherwise
};

struct SuiteReport {
  std::string suite;
  std::vector<PropertyResult> results;

  bool all_passed() const {
    for (const auto& r : results)
      if (!r.passed) return false;
    return true;
  }
};

struct VerifyOptions {
  int n = 2;
  FieldPtr field;
  std::uint64_t seed = 1;
  std::size_t samples = 300;
  // groups at most this large are checked exhaustively
  std::uint64_t exhaustive_limit = 100;
  std::uint64_t max_group_order = kDefaultMaxGroupOrder;
  unsigned threads = 1;
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"order-axioms", "duality", "bijection",
                                              "qseries",      "cactus",  "mobius"};
  return names;
}

namespace detail {

/// Accumulates checks for one property, keeping the first failure.
class Check {
 public:
  explicit Check(std::string name) { r_.name = std::move(name); }

  bool operator()(bool ok, const std::function<std::string()>& describe) {
    ++r_.checked;
    if (!ok && r_.passed) {
      r_.passed = false;
      r_.detail = describe();
    }
    return ok;
  }

  void note(std::string s) {
    if (r_.passed) r_.detail = std::move(s);
  }
  bool passed() const { return r_.passed; }
  PropertyResult result() const { return r_; }

 private:
  PropertyResult r_;
};

inline std::string mats(std::initializer_list<const Matrix*> ms) {
  std::string s;
  for (const Matrix* m : ms) s += (s.empty() ? "" : " | ") + format_matrix(*m);
  return s;
}

class Sampler {
 public:
  Sampler(int n, FieldPtr field, std::uint64_t seed)
      : n_(n), field_(std::move(field)), rng_(seed) {}

  std::size_t index(std::size_t bound) {
    return std::uniform_int_distribution<std::size_t>(0, bound - 1)(rng_);
  }

  FqElem elem() {
    return FqElem{static_cast<std::uint32_t>(index(field_->q()))};
  }

  Vec nonzero_vec() {
    while (true) {
      Vec v(n_);
      for (auto& x : v) x = elem();
      if (std::any_of(v.begin(), v.end(), [](FqElem x) { return !x.is_zero(); })) return v;
    }
  }

  /// Uniform over GL_n(F_q) by rejection.
  Matrix group_element() {
    while (true) {
      Matrix m(field_, n_, n_);
      for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) m.set(i, j, elem());
      if (is_invertible(m)) return m;
    }
  }

  /// I + u v^T with 1 + v^T u nonzero.
  Matrix reflection() {
    const Field& F = *field_;
    while (true) {
      const Vec u = nonzero_vec(), v = nonzero_vec();
      Matrix m = Matrix::identity(field_, n_);
      for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) m.set(i, j, F.add(m(i, j), F.mul(u[i], v[j])));
      if (is_invertible(m)) return m;
    }
  }

  /// A reduced word for a random element, scrambled by random Hurwitz moves.
  Factorization scrambled_word() {
    Factorization w = reduced_word(group_element());
    for (int k = 0; k < 2 * n_ && w.size() > 1; ++k)
      w = hurwitz(w, index(w.size() - 1), index(2) ? 1 : -1);
    return w;
  }

  /// Prefix products of a scrambled reduced word: e = p_0 <= p_1 <= ... <= p_l.
  std::vector<Matrix> prefix_chain() {
    const Factorization w = scrambled_word();
    std::vector<Matrix> chain{Matrix::identity(field_, n_)};
    for (const Matrix& t : w.factors()) chain.push_back(chain.back() * t);
    return chain;
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  int n_;
  FieldPtr field_;
  std::mt19937_64 rng_;
};

inline std::string subspace_key(const Subspace& s) {
  return std::to_string(s.dim()) + ":" + format_matrix(s.basis());
}

}  // namespace detail

// ---------------------------------------------------------------------------
// order axioms and the structural properties of the absolute order

inline SuiteReport verify_order_axioms(const VerifyOptions& o) {
  using detail::Check;
  using detail::mats;
  const int n = o.n;
  const FieldPtr& F = o.field;
  const bool exhaustive = gl_order(n, F->q()) <= Int(o.exhaustive_limit);
  detail::Sampler rnd(n, F, o.seed);
  SuiteReport rep{"order-axioms", {}};

  Check reflexive("reflexive"), antisym("antisymmetric"), trans("transitive"),
      graded("graded-by-length"), subadd("length-subadditive"), conj("length-conjugacy-invariant"),
      pm1("length-plus-minus-one"), codim("codim-equality-conditions"),
      descent("descent-reflection"), hur("hurwitz-moves"), subword("subword"),
      exchange("exchange"), surj("fixed-space-surjective");

  const auto grading_ok = [&](const Matrix& g, const Matrix& h) {
    // some reflection t has g < gt <= h
    if (!abs_less(g, h)) return true;
    const Matrix t = reduced_word(inverse(g) * h)[0];
    const Matrix gt = g * t;
    return reflection_length(gt) == reflection_length(g) + 1 && abs_leq(g, gt) &&
           abs_leq(gt, h);
  };
  const auto descent_ok = [&](const Matrix& g) {
    if (g.is_identity()) return true;
    const Matrix t = descent_reflection(g);
    const Factorization w = reduced_word(g);
    return is_reflection(t) && reflection_length(g * t) == reflection_length(g) - 1 &&
           fixed_space(g * t).contains(fixed_space(g)) && w.product() == g && w.is_reduced();
  };
  const auto hurwitz_ok = [&](const Factorization& w) {
    if (w.size() < 2) return true;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      const Factorization a = hurwitz(w, i, 1), b = hurwitz(w, i, -1);
      if (!(a.product() == w.product()) || !(b.product() == w.product())) return false;
      if (!(hurwitz(a, i, -1) == w) || !(hurwitz(b, i, 1) == w)) return false;
    }
    if (w.size() >= 3) {
      const Factorization l = hurwitz(hurwitz(hurwitz(w, 0, 1), 1, 1), 0, 1);
      const Factorization r = hurwitz(hurwitz(hurwitz(w, 1, 1), 0, 1), 1, 1);
      if (!(l == r)) return false;
    }
    return true;
  };
  // moving a reduced subword of a reduced word to the front keeps its letters
  const auto to_prefix_ok = [&](const Factorization& w, const std::vector<std::size_t>& pos) {
    const Factorization v = subword_to_prefix(w, pos);
    bool ok = v.product() == w.product() && v.is_reduced();
    for (std::size_t k = 0; k < pos.size(); ++k) ok = ok && v[k] == w[pos[k]];
    return ok;
  };
  const auto exchange_ok = [&](const Matrix& t, const Matrix& g) {
    if (reflection_length(t * g) >= reflection_length(g)) return true;
    const auto wit = exchange_witness(t, g);
    if (!wit) return false;
    // slide t^-1 to the end so the conjugated letters get exercised too
    ExchangeWitness moved = *wit;
    while (moved.index + 1 < moved.word.size()) {
      moved.word = hurwitz(moved.word, moved.index, -1);
      ++moved.index;
    }
    return exchange_identity_holds(t, g, *wit) && exchange_identity_holds(t, g, moved);
  };
  const auto codim_ok = [&](const Matrix& g, const Matrix& h) {
    const bool additive =
        reflection_length(g) + reflection_length(h) == reflection_length(g * h);
    return additive == codim_equality_conditions(g, h) &&
           abs_leq(g, h, LeqCheck::kCodim) == abs_leq(g, h, LeqCheck::kCrossCheck);
  };

  if (exhaustive) {
    const auto G = enumerate_gl(n, F, o.max_group_order);
    const std::size_t N = G.size();
    std::vector<Matrix> inv(N);
    std::vector<int> len(N);
    for (std::size_t i = 0; i < N; ++i) {
      inv[i] = inverse(G[i]);
      len[i] = reflection_length(G[i]);
    }
    std::vector<unsigned char> leq(N * N);
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j)
        leq[i * N + j] = len[i] + reflection_length(inv[i] * G[j]) == len[j];
    std::vector<Matrix> refl;
    for (std::size_t i = 0; i < N; ++i)
      if (len[i] == 1) refl.push_back(G[i]);

    for (std::size_t i = 0; i < N; ++i) {
      reflexive(leq[i * N + i], [&] { return mats({&G[i]}); });
      descent(descent_ok(G[i]), [&] { return mats({&G[i]}); });
      for (const Matrix& t : refl) {
        const int a = reflection_length(t * G[i]), b = reflection_length(G[i] * t);
        pm1(std::abs(a - len[i]) <= 1 && std::abs(b - len[i]) <= 1,
            [&] { return mats({&t, &G[i]}); });
        exchange(exchange_ok(t, G[i]), [&] { return mats({&t, &G[i]}); });
      }
      const auto words = all_reduced_words(G[i], refl);
      for (const auto& w : words) hur(hurwitz_ok(w), [&] { return mats({&G[i]}); });
      for (std::size_t j = 0; j < N; ++j) {
        const Matrix& g = G[i];
        const Matrix& h = G[j];
        if (i != j)
          antisym(!(leq[i * N + j] && leq[j * N + i]), [&] { return mats({&g, &h}); });
        subadd(reflection_length(g * h) <= len[i] + len[j], [&] { return mats({&g, &h}); });
        conj(reflection_length(h * g * inv[j]) == len[i], [&] { return mats({&g, &h}); });
        codim(codim_ok(g, h), [&] { return mats({&g, &h}); });
        graded(grading_ok(g, h), [&] { return mats({&g, &h}); });
        for (std::size_t k = 0; k < N; ++k)
          if (leq[i * N + j] && leq[j * N + k])
            trans(leq[i * N + k], [&] { return mats({&g, &h, &G[k]}); });
      }
    }
    // subword: the products of reduced subwords of reduced words of h are
    // exactly the elements below h
    std::map<std::string, std::size_t> where;
    for (std::size_t i = 0; i < N; ++i) where[format_matrix(G[i])] = i;
    for (std::size_t j = 0; j < N; ++j) {
      std::vector<bool> reached(N, false);
      for (const auto& w : all_reduced_words(G[j], refl)) {
        const std::size_t L = w.size();
        for (std::uint32_t mask = 0; mask < (1u << L); ++mask) {
          std::vector<std::size_t> pos;
          Matrix p = Matrix::identity(F, n);
          for (std::size_t k = 0; k < L; ++k)
            if (mask >> k & 1) {
              pos.push_back(k);
              p = p * w[k];
            }
          if (reflection_length(p) != static_cast<int>(pos.size())) continue;
          const std::size_t i = where.at(format_matrix(p));
          reached[i] = true;
          subword(leq[i * N + j] && to_prefix_ok(w, pos), [&] { return mats({&p, &G[j]}); });
        }
      }
      for (std::size_t i = 0; i < N; ++i)
        subword(reached[i] == static_cast<bool>(leq[i * N + j]),
                [&] { return mats({&G[i], &G[j]}); });
    }
    std::set<std::string> spaces;
    for (const Matrix& g : G) spaces.insert(detail::subspace_key(fixed_space(g)));
    std::size_t total = 0;
    for (int k = 0; k <= n; ++k)
      for_each_subspace(n, k, F, [&](const Subspace& s) {
        ++total;
        surj(spaces.count(detail::subspace_key(s)) == 1,
             [&] { return "no g with fixed space " + format_matrix(s.basis()); });
      });
    surj(spaces.size() == total, [&] { return "fixed spaces outside the subspace list"; });
  } else {
    for (std::size_t s = 0; s < o.samples; ++s) {
      const Matrix g = rnd.group_element(), h = rnd.group_element();
      const Matrix t = rnd.reflection();
      const int lg = reflection_length(g);
      reflexive(abs_leq(g, g), [&] { return mats({&g}); });
      antisym(g == h || !(abs_leq(g, h) && abs_leq(h, g)), [&] { return mats({&g, &h}); });
      subadd(reflection_length(g * h) <= lg + reflection_length(h),
             [&] { return mats({&g, &h}); });
      conj(reflection_length(h * g * inverse(h)) == lg, [&] { return mats({&g, &h}); });
      codim(codim_ok(g, h), [&] { return mats({&g, &h}); });
      descent(descent_ok(g), [&] { return mats({&g}); });
      pm1(std::abs(reflection_length(t * g) - lg) <= 1 &&
              std::abs(reflection_length(g * t) - lg) <= 1,
          [&] { return mats({&t, &g}); });
      exchange(exchange_ok(t, g), [&] { return mats({&t, &g}); });
      const Factorization w = rnd.scrambled_word();
      hur(hurwitz_ok(w), [&] { return mats({&w.product()}); });

      // comparable triples come from prefixes of one reduced word
      const auto chain = rnd.prefix_chain();
      const std::size_t a = rnd.index(chain.size()), b = rnd.index(chain.size()),
                        c = rnd.index(chain.size());
      std::size_t x[3] = {a, b, c};
      std::sort(x, x + 3);
      const Matrix &p = chain[x[0]], &m = chain[x[1]], &r = chain[x[2]];
      trans(abs_leq(p, m) && abs_leq(m, r) && abs_leq(p, r), [&] { return mats({&p, &m, &r}); });
      antisym(p == r || !abs_leq(r, p), [&] { return mats({&p, &r}); });
      graded(grading_ok(p, r) && grading_ok(g, h), [&] { return mats({&p, &r}); });
      codim(codim_ok(p, r), [&] { return mats({&p, &r}); });
      // hide the prefix for p inside a reduced word for r, then recover it
      Factorization hidden = reduced_word(p);
      const Factorization tail = reduced_word(inverse(p) * r);
      for (const Matrix& t : tail.factors()) {
        std::vector<Matrix> f = hidden.factors();
        f.push_back(t);
        hidden = Factorization(F, n, std::move(f));
      }
      std::vector<std::size_t> pos(reflection_length(p));
      std::iota(pos.begin(), pos.end(), 0);
      for (std::size_t k = pos.size(); k-- > 0;) {
        const std::size_t room = (k + 1 < pos.size() ? pos[k + 1] : hidden.size()) - pos[k] - 1;
        for (std::size_t step = rnd.index(room + 1); step > 0; --step) {
          hidden = hurwitz(hidden, pos[k], -1);
          ++pos[k];
        }
      }
      subword(hidden.product() == r && hidden.is_reduced() && to_prefix_ok(hidden, pos),
              [&] { return mats({&p, &r}); });
      // a random reduced subword of w multiplies to an element below r
      std::vector<std::size_t> sub;
      Matrix prod = Matrix::identity(F, n);
      for (std::size_t k = 0; k < hidden.size(); ++k)
        if (rnd.index(2)) {
          sub.push_back(k);
          prod = prod * hidden[k];
        }
      if (reflection_length(prod) == static_cast<int>(sub.size()))
        subword(abs_leq(prod, r) && to_prefix_ok(hidden, sub), [&] { return mats({&prod, &r}); });
    }
    if (gl_order(n, F->q()) <= Int(std::min<std::uint64_t>(o.max_group_order, 200000))) {
      std::set<std::string> spaces;
      for_each_gl(n, F, [&](const Matrix& g) { spaces.insert(detail::subspace_key(fixed_space(g))); },
                  o.max_group_order);
      std::size_t total = 0;
      for (int k = 0; k <= n; ++k)
        for_each_subspace(n, k, F, [&](const Subspace& s) {
          ++total;
          surj(spaces.count(detail::subspace_key(s)) == 1,
               [&] { return "no g with fixed space " + format_matrix(s.basis()); });
        });
      surj.note(std::to_string(total) + " subspaces realized");
    } else {
      surj.note("skipped: group too large to enumerate");
    }
  }
  for (auto* c : {&reflexive, &antisym, &trans, &graded, &subadd, &conj, &pm1, &codim, &descent,
                  &hur, &subword, &exchange, &surj})
    rep.results.push_back(c->result());
  return rep;
}

// ---------------------------------------------------------------------------
// self-duality of intervals

inline SuiteReport verify_duality(const VerifyOptions& o) {
  using detail::Check;
  using detail::mats;
  const int n = o.n;
  const FieldPtr& F = o.field;
  const bool exhaustive = gl_order(n, F->q()) <= Int(o.exhaustive_limit);
  detail::Sampler rnd(n, F, o.seed);
  SuiteReport rep{"duality", {}};
  Check inside("dual-stays-in-interval"), invol("dual-inverse-map"), ranks("dual-complements-rank"),
      rev("dual-order-reversing"), top("singer-rank-symmetry");

  const auto check_triple = [&](const Matrix& x, const Matrix& z, const Matrix& y) {
    const Matrix d = dual_map(x, z, y);
    inside(abs_leq(x, d) && abs_leq(d, z), [&] { return mats({&x, &z, &y}); });
    invol(dual_map_inverse(x, z, d) == y, [&] { return mats({&x, &z, &y}); });
    ranks(reflection_length(d) - reflection_length(x) ==
              reflection_length(z) - reflection_length(y),
          [&] { return mats({&x, &z, &y}); });
  };
  const auto check_pair = [&](const Matrix& x, const Matrix& z, const Matrix& y1,
                              const Matrix& y2) {
    if (!abs_leq(y1, y2)) return;
    rev(abs_leq(dual_map(x, z, y2), dual_map(x, z, y1)), [&] { return mats({&x, &z, &y1, &y2}); });
  };

  if (exhaustive) {
    const auto G = enumerate_gl(n, F, o.max_group_order);
    for (const Matrix& x : G)
      for (const Matrix& z : G) {
        if (!abs_leq(x, z)) continue;
        std::vector<const Matrix*> iv;
        for (const Matrix& y : G)
          if (abs_leq(x, y) && abs_leq(y, z)) iv.push_back(&y);
        std::set<std::string> images;
        for (auto* y : iv) {
          check_triple(x, z, *y);
          images.insert(format_matrix(x * inverse(*y) * z));
        }
        invol(images.size() == iv.size(), [&] { return mats({&x, &z}); });
        for (auto* y1 : iv)
          for (auto* y2 : iv) check_pair(x, z, *y1, *y2);
      }
  } else {
    for (std::size_t s = 0; s < o.samples; ++s) {
      const auto chain = rnd.prefix_chain();
      std::size_t idx[4];
      for (auto& v : idx) v = rnd.index(chain.size());
      std::sort(idx, idx + 4);
      const Matrix &x = chain[idx[0]], &y1 = chain[idx[1]], &y2 = chain[idx[2]],
                   &z = chain[idx[3]];
      check_triple(x, z, y1);
      check_triple(x, z, y2);
      check_pair(x, z, y1, y2);
    }
  }

  // (x, z) = (e, c) in the Singer interval, when it can be enumerated
  if (gl_order(n, F->q()) <= Int(o.max_group_order) && gl_order(n, F->q()) <= Int(200000)) {
    const Matrix c = singer_cycle(n, F);
    const auto model = IntervalModel::build(c, o.max_group_order, o.threads);
    const Matrix e = Matrix::identity(F, n);
    std::vector<std::size_t> hits(model.size(), 0);
    for (std::size_t i = 0; i < model.size(); ++i) {
      const Matrix d = dual_map(e, c, model.element(i));
      const auto j = model.index_of(d);
      top(j && model.rank_of(*j) == n - model.rank_of(i),
          [&] { return mats({&model.element(i)}); });
      if (j) ++hits[*j];
    }
    top(std::all_of(hits.begin(), hits.end(), [](std::size_t h) { return h == 1; }),
        [] { return std::string("dual map is not a bijection on [e,c]"); });
  } else {
    top.note("skipped: group exceeds enumeration bound");
  }
  for (auto* c : {&inside, &invol, &ranks, &rev, &top}) rep.results.push_back(c->result());
  return rep;
}

// ---------------------------------------------------------------------------
// chains <-> twisted decompositions

/// A chain e = c_0 < ... < c_m = c with rank jumps alpha, picked by a random
/// upward walk through the interval.
inline std::vector<std::size_t> random_chain(const IntervalModel& model, const Composition& alpha,
                                             std::mt19937_64& rng) {
  std::vector<std::size_t> chain{model.bottom_index()};
  int level = 0;
  for (int part : alpha.parts()) {
    level += part;
    std::vector<std::size_t> options;
    for (auto j : model.rank(level))
      if (model.leq(chain.back(), j)) options.push_back(j);
    if (options.empty()) throw std::logic_error("chain walk got stuck");
    chain.push_back(options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)]);
  }
  return chain;
}

/// Calls visit on every chain with rank jumps alpha.
inline void for_each_chain(const IntervalModel& model, const Composition& alpha,
                           const std::function<void(const std::vector<std::size_t>&)>& visit) {
  std::vector<std::size_t> chain{model.bottom_index()};
  std::vector<int> levels{0};
  for (int part : alpha.parts()) levels.push_back(levels.back() + part);
  std::function<void(std::size_t)> rec = [&](std::size_t step) {
    if (step == alpha.parts().size()) {
      visit(chain);
      return;
    }
    for (auto j : model.rank(levels[step + 1]))
      if (model.leq(chain.back(), j)) {
        chain.push_back(j);
        rec(step + 1);
        chain.pop_back();
      }
  };
  rec(0);
}

inline SuiteReport verify_bijection(const VerifyOptions& o, std::uint64_t exhaustive_chain_limit = 20000) {
  using detail::Check;
  const int n = o.n;
  const FieldPtr& F = o.field;
  SuiteReport rep{"bijection", {}};
  Check round("psi-phi-round-trip"), twisted("phi-twisted-complements"),
      dims("phi-dimensions"), inverse_rt("phi-psi-round-trip"), multi("multichain-round-trip"),
      counts("decomposition-counts");

  const Matrix c = singer_cycle(n, F);
  const auto model = IntervalModel::build(c, o.max_group_order, o.threads);
  std::mt19937_64 rng(o.seed);

  const auto check_chain = [&](const std::vector<std::size_t>& idx, const Composition& alpha) {
    std::vector<Matrix> chain;
    for (auto i : idx) chain.push_back(model.element(i));
    const Decomposition d = phi(chain, c);
    const auto describe = [&] {
      std::string s;
      for (const auto& g : chain) s += (s.empty() ? "" : " < ") + format_matrix(g);
      return s;
    };
    twisted(!twisted_failure(d, c) && is_direct_decomposition(d, F, n), describe);
    dims(d.dims() == alpha.parts(), describe);
    const auto back = psi(d, c);
    round(back == chain, describe);
    inverse_rt(phi(back, c) == d, describe);
  };

  Int total_chains = 0;
  for (const auto& alpha : compositions(n)) total_chains += flag_f(model, alpha);
  const bool exhaustive = total_chains <= Int(exhaustive_chain_limit);
  for (const auto& alpha : compositions(n)) {
    if (exhaustive) {
      for_each_chain(model, alpha, [&](const std::vector<std::size_t>& ch) { check_chain(ch, alpha); });
    } else {
      const std::size_t per = std::max<std::size_t>(1, o.samples / compositions(n).size());
      for (std::size_t s = 0; s < per; ++s) check_chain(random_chain(model, alpha, rng), alpha);
    }
  }

  // multichains: repeat an element, giving a zero summand
  for (std::size_t s = 0; s < std::min<std::size_t>(o.samples, 50); ++s) {
    const auto idx = random_chain(model, Composition(std::vector<int>(n, 1)), rng);
    std::vector<Matrix> chain;
    for (auto i : idx) chain.push_back(model.element(i));
    chain.insert(chain.begin() + 1 + rng() % n, chain[1 + rng() % n]);
    std::sort(chain.begin(), chain.end(), [](const Matrix& a, const Matrix& b) {
      return reflection_length(a) < reflection_length(b);
    });
    const Decomposition d = phi(chain, c);
    multi(psi(d, c) == chain, [&] { return format_matrix(chain[1]); });
  }

  // the decomposition count is an independent route to f_alpha for alpha = (k, n-k)
  for (int k = 1; k < n; ++k) {
    const Composition alpha({k, n - k});
    const Int dec = count_twisted_decompositions(c, alpha);
    const Int fl = flag_f(model, alpha);
    counts(dec == fl && fl == flag_formula(alpha, F->q()), [&] {
      return "alpha=" + alpha.str() + " decompositions=" + to_string(dec) + " chains=" + to_string(fl);
    });
  }
  round.note(exhaustive ? "exhaustive over " + to_string(total_chains) + " chains"
                        : "sampled " + std::to_string(round.result().checked) + " chains");
  for (auto* ch : {&round, &twisted, &dims, &inverse_rt, &multi, &counts})
    rep.results.push_back(ch->result());
  return rep;
}

// ---------------------------------------------------------------------------
// closed-form identities

/// P_alpha(x) = prod_i P_{alpha_i}(x).
inline LaurentPoly p_alpha(const Composition& alpha, std::uint64_t q) {
  LaurentPoly f = LaurentPoly::constant(1);
  for (int k : alpha.parts()) f = f * pk_poly(alpha.n(), k, q);
  return f;
}

inline SuiteReport verify_qseries(const VerifyOptions& o) {
  using detail::Check;
  SuiteReport rep{"qseries", {}};
  Check formulas("rank-size-formulas-agree"), gl_sum("rank-sizes-sum-to-group-order"),
      census("rank-size-census"), gf("rank-size-generating-function"),
      qbin("q-binomial-theorem"), pk1("pk-at-one"), pkb("pk-boundary-terms"),
      pab("p-alpha-boundary-terms"), iter("q-difference-iterate"), mono("q-difference-monomials"),
      rev("flag-formula-reversal"), ct("chen-tseng-cross-check"), vdm("q-chu-vandermonde");

  for (std::uint64_t q : {2, 3, 4, 5})
    for (int n = 0; n <= 6; ++n) {
      Int sum = 0;
      for (int k = 0; k <= n; ++k) {
        const Int a = rank_size_formula(n, k, q), b = rank_size_fulman(n, k, q);
        formulas(a == b, [&] {
          return "n=" + std::to_string(n) + " k=" + std::to_string(k) + " q=" + std::to_string(q);
        });
        sum += a;
      }
      gl_sum(sum == gl_cardinality(n, q), [&] { return "n=" + std::to_string(n); });
    }

  const int n = o.n;
  const FieldPtr& F = o.field;
  if (gl_order(n, F->q()) <= Int(o.max_group_order)) {
    std::vector<Int> tally(n + 1, 0);
    for_each_gl(n, F, [&](const Matrix& g) { ++tally[reflection_length(g)]; }, o.max_group_order);
    for (int k = 0; k <= n; ++k)
      census(tally[k] == rank_size(n, k, F->q()), [&] {
        return "k=" + std::to_string(k) + " census=" + to_string(tally[k]) +
               " formula=" + to_string(rank_size(n, k, F->q()));
      });
  } else {
    census.note("skipped: group exceeds enumeration bound");
  }

  for (std::uint64_t q : {2, 3}) {
    gf(rank_size_gf_check(4, q), [&] { return "q=" + std::to_string(q); });
    for (int m = 0; m <= 5; ++m)
      for (const Rational& x : {Rational(0), Rational(1), Rational(-2), Rational(3, 7)})
        qbin(q_binomial_theorem_check(m, q, x), [&] { return "n=" + std::to_string(m); });
  }

  for (std::uint64_t q : {2, 3})
    for (int m = 1; m <= 5; ++m) {
      const Int Q(q);
      const Int qm1 = ipow(Q, m) - 1;
      for (int k = 0; k <= m; ++k) {
        const LaurentPoly P = pk_poly(m, k, q);
        const auto where = [&] {
          return "n=" + std::to_string(m) + " k=" + std::to_string(k) + " q=" + std::to_string(q);
        };
        if (m <= 4) pk1(P.eval(1) == Rational(rank_size(m, k, q)), where);
        const Rational c0 = Rational((k % 2 ? -1 : 1) * ipow(Q, choose2(k)) * q_binom(m, k, q));
        bool ok = !P.is_zero() && P.low_degree() >= 0 && P.degree() == k && P.coeff(0) == c0;
        if (k >= 1)
          ok = ok && P.coeff(k) == Rational(ipow(Q, k * (m - k) + m * (k - 1)) * qm1);
        pkb(ok, where);
      }
      for (const auto& alpha : compositions(m)) {
        const LaurentPoly P = p_alpha(alpha, q);
        Rational c0 = 1;
        for (int k : alpha.parts())
          c0 *= Rational((k % 2 ? -1 : 1) * ipow(Q, choose2(k)) * q_binom(m, k, q));
        const Rational lead(ipow(Q, alpha.epsilon() + m * (m - 1)) * ipow(qm1, alpha.m()));
        pab(P.low_degree() >= 0 && P.degree() == m && P.coeff(m) == lead && P.coeff(0) == c0,
            [&] { return "alpha=" + alpha.str() + " q=" + std::to_string(q); });
      }
    }

  for (std::uint64_t q : {2, 3}) {
    for (int N = 0; N <= 5; ++N)
      for (long m = -3; m <= 6; ++m) {
        const LaurentPoly f = LaurentPoly::monomial(m, Rational(2 * m + 1, 3));
        const auto where = [&] {
          return "N=" + std::to_string(N) + " m=" + std::to_string(m) + " q=" + std::to_string(q);
        };
        iter(delta_q(f, q, N) == delta_q_closed_form(f, q, N), where);
        const LaurentPoly d = delta_q(LaurentPoly::monomial(m), q, N);
        bool ok = d == delta_q_monomial(m, N, q);
        if (m >= 0 && N > m) ok = ok && d.is_zero();
        if (m >= 0 && N == m) ok = ok && d == LaurentPoly::constant(Rational(q_factorial(m, q)));
        if (m == -1)
          ok = ok && d == LaurentPoly::monomial(
                              -N - 1, Rational(N % 2 ? -1 : 1) *
                                          rpow(Rational(q), -choose2(N + 1)) *
                                          Rational(q_factorial(N, q)));
        mono(ok, where);
      }
    // a mixed Laurent polynomial
    const LaurentPoly f = LaurentPoly::monomial(-2, 5) + LaurentPoly::monomial(1, -1) +
                          LaurentPoly::monomial(4, Rational(1, 2));
    for (int N = 0; N <= 5; ++N)
      iter(delta_q(f, q, N) == delta_q_closed_form(f, q, N), [&] { return "mixed N=" + std::to_string(N); });
  }

  for (std::uint64_t q : {2, 3, 4})
    for (int m = 1; m <= 6; ++m) {
      for (const auto& alpha : compositions(m))
        rev(flag_formula(alpha, q) == flag_formula(alpha.reversed(), q),
            [&] { return alpha.str(); });
      for (int k = 1; 2 * k <= m; ++k) {
        Int s = 0;
        for (int d = 0; d < k; ++d) s += chen_tseng_g(m, k, d, q) * co_complement_f(m, k, d, q);
        ct(s == flag_formula(Composition({k, m - k}), q),
           [&] { return "n=" + std::to_string(m) + " k=" + std::to_string(k); });
      }
    }
  for (std::uint64_t q : {2, 3, 4})
    for (int a = 0; a <= 5; ++a)
      for (int b = 0; b <= 5; ++b)
        vdm(qchu_vandermonde_check(a, b, q), [&] { return std::to_string(a) + "," + std::to_string(b); });

  for (auto* c : {&formulas, &gl_sum, &census, &gf, &qbin, &pk1, &pkb, &pab, &iter, &mono, &rev,
                  &ct, &vdm})
    rep.results.push_back(c->result());
  return rep;
}

// ---------------------------------------------------------------------------
// cactus factorizations in S_n

inline SuiteReport verify_cactus(const VerifyOptions& o) {
  using detail::Check;
  SuiteReport rep{"cactus", {}};
  Check formula("cactus-formula"), conj("cactus-conjugacy-invariance");
  const int n = o.n;
  std::mt19937_64 rng(o.seed);
  const auto lists = admissible_type_lists(n, 3);
  // a different n-cycle: conjugate the standard one by a random permutation
  Perm s = identity_perm(n);
  std::shuffle(s.begin(), s.end(), rng);
  const Perm other = compose(compose(s, standard_ncycle(n)), perm_inverse(s));
  for (const auto& types : lists) {
    const auto r = count_cactus(n, types, o.threads);
    formula(r.match, [&] {
      return format_type_list(types) + ": count=" + to_string(r.count) +
             " formula=" + to_string(r.formula);
    });
    conj(count_factorizations(other, types, o.threads) == r.count,
         [&] { return format_type_list(types); });
  }
  formula.note(std::to_string(lists.size()) + " type lists for n=" + std::to_string(n));
  rep.results.push_back(formula.result());
  rep.results.push_back(conj.result());
  return rep;
}

// ---------------------------------------------------------------------------
// Moebius function of the Singer interval

inline SuiteReport verify_mobius(const VerifyOptions& o) {
  using detail::Check;
  SuiteReport rep{"mobius", {}};
  Check mu("mobius-recursion-vs-formula"), flags("flag-f-vector");
  const Matrix c = singer_cycle(o.n, o.field);
  const auto model = IntervalModel::build(c, o.max_group_order, o.threads);
  const Int rec = mobius_poset(model), form = mobius_formula(o.n, o.field->q());
  mu(rec == form, [&] { return "recursion=" + to_string(rec) + " formula=" + to_string(form); });
  mu.note("mu(e,c) = " + to_string(rec) + ", |mu| = " + to_string(rec < 0 ? Int(-rec) : rec));
  for (const auto& alpha : compositions(o.n))
    flags(flag_f(model, alpha) == flag_formula(alpha, o.field->q()), [&] { return alpha.str(); });
  rep.results.push_back(mu.result());
  rep.results.push_back(flags.result());
  return rep;
}

inline std::vector<SuiteReport> run_suite(const std::string& name, const VerifyOptions& o) {
  if (name == "order-axioms") return {verify_order_axioms(o)};
  if (name == "duality") return {verify_duality(o)};
  if (name == "bijection") return {verify_bijection(o)};
  if (name == "qseries") return {verify_qseries(o)};
  if (name == "cactus") return {verify_cactus(o)};
  if (name == "mobius") return {verify_mobius(o)};
  if (name == "all") {
    std::vector<SuiteReport> out;
    for (const auto& s : suite_names()) {
      VerifyOptions so = o;
      if (s == "cactus" && so.n > kMaxCactusN) so.n = kMaxCactusN;
      out.push_back(run_suite(s, so).front());
    }
    return out;
  }
  throw std::invalid_argument("unknown suite '" + name + "'");
}

}  // namespace absord
