// Exact q-analogue combinatorics for the absolute order on GL_n(F_q).
//
// q is always a concrete integer >= 2; every quantity is an arbitrary
// precision integer or rational, never floating point.

#pragma once

#include "absord/bigint.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace absord {

// ---------------------------------------------------------------------------
// Compositions

class Composition {
 public:
  Composition() = default;
  explicit Composition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (int a : parts_)
      if (a < 1) throw std::invalid_argument("composition parts must be positive");
  }

  const std::vector<int>& parts() const { return parts_; }
  int m() const { return static_cast<int>(parts_.size()); }
  int n() const {
    int s = 0;
    for (int a : parts_) s += a;
    return s;
  }

  /// eps(alpha) = sum_i (alpha_i - 1)(n - alpha_i).
  long epsilon() const {
    const long n = this->n();
    long e = 0;
    for (int a : parts_) e += static_cast<long>(a - 1) * (n - a);
    return e;
  }

  Composition reversed() const {
    return Composition(std::vector<int>(parts_.rbegin(), parts_.rend()));
  }

  std::string str() const {
    std::string s;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(parts_[i]);
    }
    return s;
  }

  friend bool operator==(const Composition&, const Composition&) = default;

 private:
  std::vector<int> parts_;
};

inline Composition parse_composition(const std::string& text) {
  std::vector<int> parts;
  std::size_t s = 0;
  while (s <= text.size()) {
    const std::size_t comma = std::min(text.find(',', s), text.size());
    const std::string tok = text.substr(s, comma - s);
    if (tok.empty()) throw std::invalid_argument("bad composition '" + text + "'");
    std::size_t used = 0;
    const int v = std::stoi(tok, &used);
    if (used != tok.size()) throw std::invalid_argument("bad composition '" + text + "'");
    parts.push_back(v);
    s = comma + 1;
  }
  return Composition(std::move(parts));
}

/// All 2^{n-1} compositions of n. Bit i of the mask marks a cut after
/// position i+1; masks are visited in increasing order, so (n) comes first
/// and (1,...,1) last.
inline std::vector<Composition> compositions(int n) {
  if (n < 1) throw std::invalid_argument("compositions need n >= 1");
  std::vector<Composition> out;
  const std::uint64_t count = std::uint64_t{1} << (n - 1);
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    std::vector<int> parts;
    int run = 1;
    for (int i = 0; i < n - 1; ++i) {
      if (mask >> i & 1) {
        parts.push_back(run);
        run = 1;
      } else {
        ++run;
      }
    }
    parts.push_back(run);
    out.emplace_back(std::move(parts));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Standard q-analogues

inline Int q_int(int n, std::uint64_t q) {
  if (n < 0) throw std::invalid_argument("[n]_q needs n >= 0");
  Int r = 0, p = 1;
  for (int i = 0; i < n; ++i) {
    r += p;
    p *= q;
  }
  return r;
}

inline Int q_factorial(int n, std::uint64_t q) {
  Int r = 1;
  for (int i = 1; i <= n; ++i) r *= q_int(i, q);
  return r;
}

/// Gaussian binomial; zero outside 0 <= k <= n.
inline Int q_binom(int n, int k, std::uint64_t q) {
  if (n < 0 || k < 0 || k > n) return 0;
  Int num = 1, den = 1;
  for (int i = 0; i < k; ++i) {
    // num *= (q^{n-i} - 1), den *= (q^{i+1} - 1)
    num *= ipow(Int(q), static_cast<unsigned>(n - i)) - 1;
    den *= ipow(Int(q), static_cast<unsigned>(i + 1)) - 1;
  }
  return num / den;
}

/// (x;q)_n = (1-x)(1-xq)...(1-xq^{n-1}).
inline Rational pochhammer(const Rational& x, const Rational& q, int n) {
  Rational r = 1, qi = 1;
  for (int i = 0; i < n; ++i) {
    r *= 1 - x * qi;
    qi *= q;
  }
  return r;
}

inline long choose2(long k) { return k * (k - 1) / 2; }

inline Int gl_cardinality(int n, std::uint64_t q) {
  // (-1)^n q^{C(n,2)} (q;q)_n
  Rational v = pochhammer(Rational(q), Rational(q), n) *
               rpow(Rational(q), choose2(n)) * (n % 2 ? -1 : 1);
  return numerator(v);
}

// ---------------------------------------------------------------------------
// Laurent polynomials in x with rational coefficients

class LaurentPoly {
 public:
  LaurentPoly() = default;
  static LaurentPoly monomial(long exp, Rational c = 1) {
    LaurentPoly p;
    if (c != 0) p.c_[exp] = std::move(c);
    return p;
  }
  static LaurentPoly constant(Rational c) { return monomial(0, std::move(c)); }

  const std::map<long, Rational>& terms() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  Rational coeff(long e) const {
    auto it = c_.find(e);
    return it == c_.end() ? Rational(0) : it->second;
  }
  long degree() const {
    if (c_.empty()) throw std::domain_error("degree of zero Laurent polynomial");
    return c_.rbegin()->first;
  }
  long low_degree() const {
    if (c_.empty()) throw std::domain_error("low degree of zero Laurent polynomial");
    return c_.begin()->first;
  }

  void add_term(long e, const Rational& c) {
    if (c == 0) return;
    Rational& slot = c_[e];
    slot += c;
    if (slot == 0) c_.erase(e);
  }

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) {
    for (const auto& [e, c] : b.c_) a.add_term(e, c);
    return a;
  }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) {
    for (const auto& [e, c] : b.c_) a.add_term(e, -c);
    return a;
  }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r;
    for (const auto& [e1, c1] : a.c_)
      for (const auto& [e2, c2] : b.c_) r.add_term(e1 + e2, c1 * c2);
    return r;
  }
  friend LaurentPoly operator*(const Rational& s, const LaurentPoly& a) {
    LaurentPoly r;
    for (const auto& [e, c] : a.c_) r.add_term(e, s * c);
    return r;
  }

  /// f(s x).
  LaurentPoly rescaled(const Rational& s) const {
    LaurentPoly r;
    for (const auto& [e, c] : c_) r.add_term(e, c * rpow(s, e));
    return r;
  }

  /// x^k f(x).
  LaurentPoly shifted(long k) const {
    LaurentPoly r;
    for (const auto& [e, c] : c_) r.c_[e + k] = c;
    return r;
  }

  Rational eval(const Rational& x) const {
    Rational r = 0;
    for (const auto& [e, c] : c_) r += c * rpow(x, e);
    return r;
  }

  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

 private:
  std::map<long, Rational> c_;  // no zero coefficients stored
};

// ---------------------------------------------------------------------------
// Identities and counts

/// (x;q)_n against sum_k (-1)^k q^{C(k,2)} [n k]_q x^k.
inline bool q_binomial_theorem_check(int n, std::uint64_t q, const Rational& x) {
  if (n < 0) throw std::invalid_argument("n must be >= 0");
  Rational rhs = 0;
  for (int k = 0; k <= n; ++k)
    rhs += Rational((k % 2 ? -1 : 1) * ipow(Int(q), static_cast<unsigned>(choose2(k))) *
                    q_binom(n, k, q)) *
           rpow(x, k);
  return pochhammer(x, Rational(q), n) == rhs;
}

/// r_q(n,k) = (-1)^k q^{C(k,2)} [n k]_q sum_j [k j]_q q^{j(n-k)} (q;q)_j.
inline Int rank_size_formula(int n, int k, std::uint64_t q) {
  if (k < 0 || k > n) throw std::invalid_argument("rank out of range");
  Rational s = 0;
  for (int j = 0; j <= k; ++j)
    s += Rational(q_binom(k, j, q) * ipow(Int(q), static_cast<unsigned>(j * (n - k)))) *
         pochhammer(Rational(q), Rational(q), j);
  s *= Rational((k % 2 ? -1 : 1) * ipow(Int(q), static_cast<unsigned>(choose2(k))) *
                q_binom(n, k, q));
  if (denominator(s) != 1) throw std::logic_error("rank size is not an integer");
  return numerator(s);
}

/// Fulman's form: |GL_n|/|GL_{n-k}| sum_j (-1)^j q^{C(j,2) - j(n-k)} / |GL_j|.
inline Int rank_size_fulman(int n, int k, std::uint64_t q) {
  if (k < 0 || k > n) throw std::invalid_argument("rank out of range");
  Rational s = 0;
  for (int j = 0; j <= k; ++j)
    s += Rational(j % 2 ? -1 : 1) *
         rpow(Rational(q), choose2(j) - static_cast<long>(j) * (n - k)) /
         Rational(gl_cardinality(j, q));
  s *= Rational(gl_cardinality(n, q)) / Rational(gl_cardinality(n - k, q));
  if (denominator(s) != 1) throw std::logic_error("Fulman rank size is not an integer");
  return numerator(s);
}

/// Number of elements of GL_n(F_q) with fixed space of codimension k.
inline Int rank_size(int n, int k, std::uint64_t q) {
  Int a = rank_size_formula(n, k, q);
  if (a != rank_size_fulman(n, k, q))
    throw std::logic_error("rank size formulas disagree at n=" + std::to_string(n) +
                           " k=" + std::to_string(k));
  return a;
}

/// Compares the y^0..y^{n_max} coefficients of both sides of
///   1 + sum_n (sum_k r_q(n,k) x^{n-k}) y^n/|GL_n| = 1/(1-y) sum_n (x;q^{-1})_n/(q;q)_n y^n
/// as polynomials in x.
inline bool rank_size_gf_check(int n_max, std::uint64_t q) {
  const Rational qinv = Rational(1) / Rational(q);
  // running sum of (x;q^{-1})_m/(q;q)_m over m <= n
  LaurentPoly rhs;
  LaurentPoly poch = LaurentPoly::constant(1);  // (x;q^{-1})_m
  for (int n = 0; n <= n_max; ++n) {
    if (n > 0)
      poch = poch * (LaurentPoly::constant(1) -
                     LaurentPoly::monomial(1, rpow(qinv, n - 1)));
    rhs = rhs + (Rational(1) / pochhammer(Rational(q), Rational(q), n)) * poch;
    LaurentPoly lhs;
    if (n == 0) {
      lhs = LaurentPoly::constant(1);
    } else {
      const Rational inv_gl = Rational(1) / Rational(gl_cardinality(n, q));
      for (int k = 0; k <= n; ++k)
        lhs.add_term(n - k, Rational(rank_size(n, k, q)) * inv_gl);
    }
    if (!(lhs == rhs)) return false;
  }
  return true;
}

/// f_alpha[e,c] for regular elliptic c: q^{eps(alpha)} (q^n - 1)^{m-1}.
inline Int flag_formula(const Composition& alpha, std::uint64_t q) {
  return ipow(Int(q), static_cast<unsigned>(alpha.epsilon())) *
         ipow(ipow(Int(q), static_cast<unsigned>(alpha.n())) - 1,
              static_cast<unsigned>(alpha.m() - 1));
}

/// P_k(x) = (-1)^k q^{C(k,2)} ([n k]_q + (1-q^n)/[n-k]!_q *
///          sum_{j=1}^k [n-j]!_q/[k-j]!_q q^{j(n-k)} x (x q^{n-j+1}; q)_{j-1}).
inline LaurentPoly pk_poly(int n, int k, std::uint64_t q) {
  if (n < 1 || k < 0 || k > n) throw std::invalid_argument("P_k needs 0 <= k <= n, n >= 1");
  const Rational Q(q);
  LaurentPoly sum;
  for (int j = 1; j <= k; ++j) {
    // x (x q^{n-j+1}; q)_{j-1}
    LaurentPoly term = LaurentPoly::monomial(1);
    for (int i = 0; i < j - 1; ++i)
      term = term * (LaurentPoly::constant(1) -
                     LaurentPoly::monomial(1, rpow(Q, n - j + 1 + i)));
    const Rational coef = Rational(q_factorial(n - j, q)) /
                          Rational(q_factorial(k - j, q)) *
                          rpow(Q, static_cast<long>(j) * (n - k));
    sum = sum + coef * term;
  }
  const Rational outer = Rational(k % 2 ? -1 : 1) * rpow(Q, choose2(k));
  LaurentPoly inner = LaurentPoly::constant(Rational(q_binom(n, k, q))) +
                      ((1 - rpow(Q, n)) / Rational(q_factorial(n - k, q))) * sum;
  return outer * inner;
}

/// Delta_q f(x) = (f(qx) - f(x)) / ((q-1) x), applied `iterations` times.
inline LaurentPoly delta_q(LaurentPoly f, std::uint64_t q, int iterations = 1) {
  if (iterations < 0) throw std::invalid_argument("iterations must be >= 0");
  const Rational Q(q);
  for (int it = 0; it < iterations; ++it) {
    LaurentPoly r;
    for (const auto& [e, c] : f.terms())
      r.add_term(e - 1, c * (rpow(Q, e) - 1) / (Q - 1));
    f = std::move(r);
  }
  return f;
}

/// Closed form of the N-th iterate:
///   q^{-C(N,2)} (q-1)^{-N} sum_{d=0}^N (-1)^d q^{C(d,2)} [N d]_q f(q^{N-d} x) / x^N.
inline LaurentPoly delta_q_closed_form(const LaurentPoly& f, std::uint64_t q, int N) {
  const Rational Q(q);
  LaurentPoly s;
  for (int d = 0; d <= N; ++d) {
    const Rational w = Rational(d % 2 ? -1 : 1) * rpow(Q, choose2(d)) *
                       Rational(q_binom(N, d, q));
    s = s + w * f.rescaled(rpow(Q, N - d));
  }
  return (rpow(Q, -choose2(N)) * rpow(Q - 1, -N)) * s.shifted(-N);
}

/// Delta_q^N(x^m) = (q^{m-N+1}; q)_N / (1-q)^N x^{m-N}.
inline LaurentPoly delta_q_monomial(long m, int N, std::uint64_t q) {
  const Rational Q(q);
  return LaurentPoly::monomial(
      m - N, pochhammer(rpow(Q, m - N + 1), Q, N) / rpow(1 - Q, N));
}

/// Chen-Tseng count of k-subspaces U with dim(U cap cU) = d for regular
/// elliptic c: [n]_q/[k]_q [n-k-1, k-d-1]_q [k d]_q q^{(k-d)(k-d-1)}.
inline Int chen_tseng_g(int n, int k, int d, std::uint64_t q) {
  if (!(0 <= d && d < k && k < n))
    throw std::invalid_argument("Chen-Tseng count needs 0 <= d < k < n");
  Rational v = Rational(q_int(n, q)) / Rational(q_int(k, q)) *
               Rational(q_binom(n - k - 1, k - d - 1, q) * q_binom(k, d, q) *
                        ipow(Int(q), static_cast<unsigned>((k - d) * (k - d - 1))));
  if (denominator(v) != 1) throw std::logic_error("Chen-Tseng count is not an integer");
  return numerator(v);
}

/// Number of common complements W of two k-subspaces meeting in dimension d:
/// q^{k(n-k) - C(k-d+1,2)} (-1)^{k-d} (q;q)_{k-d}.
inline Int co_complement_f(int n, int k, int d, std::uint64_t q) {
  if (!(0 <= d && d <= k && 2 * k <= n))
    throw std::invalid_argument("co-complement count needs 0 <= d <= k <= n/2");
  const Rational Q(q);
  Rational v = rpow(Q, static_cast<long>(k) * (n - k) - choose2(k - d + 1)) *
               Rational((k - d) % 2 ? -1 : 1) * pochhammer(Q, Q, k - d);
  if (denominator(v) != 1 || v < 0)
    throw std::logic_error("co-complement count is not a nonnegative integer");
  return numerator(v);
}

/// q^{ab} = sum_{d=0}^a [a d]_q (q^b - 1)(q^b - q)...(q^b - q^{a-d-1}).
inline bool qchu_vandermonde_check(int a, int b, std::uint64_t q) {
  if (a < 0 || b < 0) throw std::invalid_argument("a, b must be >= 0");
  const Int Q(q);
  const Int qb = ipow(Q, static_cast<unsigned>(b));
  Int rhs = 0;
  for (int d = 0; d <= a; ++d) {
    Int prod = 1;
    for (int i = 0; i < a - d; ++i) prod *= qb - ipow(Q, static_cast<unsigned>(i));
    rhs += q_binom(a, d, q) * prod;
  }
  return rhs == ipow(Q, static_cast<unsigned>(a * b));
}

/// mu(e,c) = sum over compositions of (-1)^m q^{eps(alpha)} (q^n - 1)^{m-1}.
inline Int mobius_formula(int n, std::uint64_t q) {
  Int mu = 0;
  for (const auto& alpha : compositions(n))
    mu += (alpha.m() % 2 ? -1 : 1) * flag_formula(alpha, q);
  return mu;
}

}  // namespace absord
