// Finite fields F_q, q = p^e, with elements encoded as base-p integers.
//
// An element of F_{p^e} = F_p[t]/(m(t)) is the residue of a polynomial
// c_0 + c_1 t + ... + c_{e-1} t^{e-1}; its encoding is c_0 + c_1 p + ... so
// 0 and 1 are the additive and multiplicative identities and equality is
// integer equality.

#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace absord {

struct FqElem {
  std::uint32_t value = 0;

  constexpr FqElem() = default;
  constexpr explicit FqElem(std::uint32_t v) : value(v) {}

  constexpr bool is_zero() const { return value == 0; }
  friend constexpr auto operator<=>(FqElem, FqElem) = default;
};

class Field;
using FieldPtr = std::shared_ptr<const Field>;

class Field {
 public:
  static constexpr std::uint64_t kDefaultMaxOrder = std::uint64_t{1} << 20;
  static constexpr std::uint32_t kTableLimit = 1u << 16;

  /// Builds F_{p^e}. The modulus is the first monic degree-e polynomial over
  /// F_p, ordered by coefficient tuple with the constant term varying
  /// fastest, that is irreducible and has a primitive root.
  static FieldPtr create(std::uint32_t p, std::uint32_t e,
                         std::uint64_t max_order = kDefaultMaxOrder);

  /// Accepts "p" or "p^e".
  static FieldPtr parse(std::string_view spec,
                        std::uint64_t max_order = kDefaultMaxOrder);

  std::uint32_t p() const { return p_; }
  std::uint32_t e() const { return e_; }
  std::uint32_t q() const { return q_; }
  std::string name() const;

  // Coefficients of the monic modulus, constant term first (size e+1). For a
  // prime field this is the trivial modulus t.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  FqElem zero() const { return FqElem{0}; }
  FqElem one() const { return FqElem{1}; }
  FqElem generator() const { return generator_; }
  FqElem from_int(std::int64_t v) const;  // image of an integer in F_p

  bool contains(FqElem a) const { return a.value < q_; }

  FqElem add(FqElem a, FqElem b) const;
  FqElem neg(FqElem a) const;
  FqElem sub(FqElem a, FqElem b) const { return add(a, neg(b)); }
  FqElem mul(FqElem a, FqElem b) const;
  FqElem inv(FqElem a) const;
  FqElem div(FqElem a, FqElem b) const { return mul(a, inv(b)); }
  FqElem pow(FqElem a, std::uint64_t k) const;

  /// Multiplicative order of a nonzero element.
  std::uint64_t element_order(FqElem a) const;

  friend bool operator==(const Field& a, const Field& b) {
    return a.p_ == b.p_ && a.e_ == b.e_ && a.modulus_ == b.modulus_;
  }

 private:
  Field(std::uint32_t p, std::uint32_t e);

  void choose_modulus();
  void build_tables();
  FqElem poly_mul(FqElem a, FqElem b) const;
  FqElem digit_add(FqElem a, FqElem b) const;

  std::uint32_t p_ = 0;
  std::uint32_t e_ = 0;
  std::uint32_t q_ = 0;
  std::vector<std::uint32_t> modulus_;
  FqElem generator_{1};

  // log/antilog tables, present when q <= kTableLimit
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> exp_;
  // full addition table for small extension fields
  std::vector<std::uint32_t> add_;
};

namespace detail {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Dense polynomials over F_p, coefficient vectors constant term first.
using PrimePoly = std::vector<std::uint32_t>;

inline void trim(PrimePoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

inline PrimePoly prime_mulmod(const PrimePoly& a, const PrimePoly& b,
                              const PrimePoly& m, std::uint32_t p) {
  PrimePoly r(a.size() + b.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = static_cast<std::uint32_t>(
          (r[i + j] + std::uint64_t{a[i]} * b[j]) % p);
  trim(r);
  // m is monic
  const std::size_t dm = m.size() - 1;
  while (r.size() > dm) {
    const std::uint64_t lead = r.back();
    const std::size_t shift = r.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i)
      r[shift + i] = static_cast<std::uint32_t>(
          (r[shift + i] + (p - lead) * m[i]) % p);
    trim(r);
  }
  return r;
}

inline PrimePoly prime_powmod(PrimePoly base, std::uint64_t k,
                              const PrimePoly& m, std::uint32_t p) {
  PrimePoly r{1};
  while (k) {
    if (k & 1) r = prime_mulmod(r, base, m, p);
    base = prime_mulmod(base, base, m, p);
    k >>= 1;
  }
  return r;
}

inline PrimePoly prime_mod(PrimePoly a, const PrimePoly& b, std::uint32_t p) {
  trim(a);
  PrimePoly bb = b;
  trim(bb);
  const std::size_t db = bb.size() - 1;
  std::uint64_t inv_lead = 1;
  for (std::uint64_t x = 1; x < p; ++x)
    if (x * bb.back() % p == 1) inv_lead = x;
  while (a.size() > db) {
    const std::uint64_t c = a.back() * inv_lead % p;
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i)
      a[shift + i] =
          static_cast<std::uint32_t>((a[shift + i] + (p - c) * bb[i]) % p);
    trim(a);
  }
  return a;
}

// Irreducibility of a monic polynomial of small degree by trial division
// with every monic polynomial of degree <= deg/2.
inline bool prime_irreducible(const PrimePoly& f, std::uint32_t p) {
  const std::size_t deg = f.size() - 1;
  if (deg <= 1) return deg == 1;
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      PrimePoly g(d + 1, 0);
      std::uint64_t c = code;
      for (std::size_t i = 0; i < d; ++i) {
        g[i] = static_cast<std::uint32_t>(c % p);
        c /= p;
      }
      g[d] = 1;
      if (prime_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace detail

inline Field::Field(std::uint32_t p, std::uint32_t e) : p_(p), e_(e) {
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < e; ++i) q *= p;
  q_ = static_cast<std::uint32_t>(q);
}

inline FieldPtr Field::create(std::uint32_t p, std::uint32_t e,
                              std::uint64_t max_order) {
  if (!detail::is_prime(p))
    throw std::invalid_argument("field characteristic " + std::to_string(p) +
                                " is not prime");
  if (e == 0) throw std::invalid_argument("extension degree must be >= 1");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < e; ++i) {
    q *= p;
    if (q > max_order)
      throw std::invalid_argument("field order " + std::to_string(p) + "^" +
                                  std::to_string(e) + " exceeds bound " +
                                  std::to_string(max_order));
  }
  auto* f = new Field(p, e);
  std::shared_ptr<Field> sp(f);
  sp->choose_modulus();
  sp->build_tables();
  return sp;
}

inline FieldPtr Field::parse(std::string_view spec, std::uint64_t max_order) {
  auto to_uint = [&](std::string_view s) -> std::uint32_t {
    if (s.empty()) throw std::invalid_argument("bad field spec");
    std::uint64_t v = 0;
    for (char ch : s) {
      if (ch < '0' || ch > '9')
        throw std::invalid_argument("bad field spec '" + std::string(spec) +
                                    "'");
      v = v * 10 + static_cast<std::uint64_t>(ch - '0');
      if (v > 0xffffffffu) throw std::invalid_argument("field spec too large");
    }
    return static_cast<std::uint32_t>(v);
  };
  const auto caret = spec.find('^');
  if (caret == std::string_view::npos) {
    const std::uint32_t q = to_uint(spec);
    if (detail::is_prime(q)) return create(q, 1, max_order);
    // accept a bare prime power such as "4"
    for (std::uint32_t p = 2; p <= q; ++p) {
      if (q % p) continue;
      std::uint32_t e = 0, r = q;
      while (r % p == 0) {
        r /= p;
        ++e;
      }
      if (r != 1) break;
      return create(p, e, max_order);
    }
    throw std::invalid_argument("'" + std::string(spec) +
                                "' is not a prime power");
  }
  return create(to_uint(spec.substr(0, caret)), to_uint(spec.substr(caret + 1)),
                max_order);
}

inline std::string Field::name() const {
  return e_ == 1 ? std::to_string(p_)
                 : std::to_string(p_) + "^" + std::to_string(e_);
}

inline void Field::choose_modulus() {
  if (e_ == 1) {
    modulus_ = {0, 1};
    // smallest primitive root mod p
    const auto factors = detail::prime_factors(p_ - 1);
    for (std::uint32_t g = 1; g < p_; ++g) {
      bool ok = true;
      for (auto r : factors) {
        std::uint64_t x = 1, b = g, k = (p_ - 1) / r;
        while (k) {
          if (k & 1) x = x * b % p_;
          b = b * b % p_;
          k >>= 1;
        }
        if (x == 1) {
          ok = false;
          break;
        }
      }
      if (ok) {
        generator_ = FqElem{g};
        return;
      }
    }
    generator_ = FqElem{1};  // p = 2
    return;
  }
  const std::uint64_t order = q_ - 1;
  const auto factors = detail::prime_factors(order);
  for (std::uint32_t code = 0; code < q_; ++code) {
    detail::PrimePoly m(e_ + 1, 0);
    std::uint32_t c = code;
    for (std::uint32_t i = 0; i < e_; ++i) {
      m[i] = c % p_;
      c /= p_;
    }
    m[e_] = 1;
    if (m[0] == 0) continue;
    if (!detail::prime_irreducible(m, p_)) continue;
    const detail::PrimePoly t{0, 1};
    bool primitive = detail::prime_powmod(t, order, m, p_) ==
                     detail::PrimePoly{1};
    for (auto r : factors) {
      if (!primitive) break;
      if (detail::prime_powmod(t, order / r, m, p_) == detail::PrimePoly{1})
        primitive = false;
    }
    if (primitive) {
      modulus_ = m;
      generator_ = FqElem{p_};  // the class of t
      return;
    }
  }
  throw std::logic_error("no primitive polynomial found");
}

inline FqElem Field::digit_add(FqElem a, FqElem b) const {
  std::uint32_t x = a.value, y = b.value, r = 0, place = 1;
  for (std::uint32_t i = 0; i < e_; ++i) {
    r += ((x % p_ + y % p_) % p_) * place;
    x /= p_;
    y /= p_;
    place *= p_;
  }
  return FqElem{r};
}

inline FqElem Field::poly_mul(FqElem a, FqElem b) const {
  if (e_ == 1)
    return FqElem{static_cast<std::uint32_t>(std::uint64_t{a.value} * b.value %
                                             p_)};
  detail::PrimePoly x(e_), y(e_);
  std::uint32_t u = a.value, v = b.value;
  for (std::uint32_t i = 0; i < e_; ++i) {
    x[i] = u % p_;
    y[i] = v % p_;
    u /= p_;
    v /= p_;
  }
  detail::trim(x);
  detail::trim(y);
  const auto r = detail::prime_mulmod(x, y, modulus_, p_);
  std::uint32_t out = 0;
  for (std::size_t i = r.size(); i-- > 0;) out = out * p_ + r[i];
  return FqElem{out};
}

inline void Field::build_tables() {
  if (e_ > 1 && p_ != 2 && q_ <= 256) {
    add_.resize(std::size_t{q_} * q_);
    for (std::uint32_t a = 0; a < q_; ++a)
      for (std::uint32_t b = 0; b < q_; ++b)
        add_[std::size_t{a} * q_ + b] = digit_add(FqElem{a}, FqElem{b}).value;
  }
  if (q_ > kTableLimit) return;
  log_.assign(q_, 0);
  exp_.assign(2 * std::size_t{q_}, 0);
  FqElem x = one();
  for (std::uint32_t k = 0; k + 1 < q_; ++k) {
    exp_[k] = x.value;
    log_[x.value] = k;
    x = poly_mul(x, generator_);
  }
  for (std::uint32_t k = q_ - 1; k < 2 * q_; ++k) exp_[k] = exp_[k - (q_ - 1)];
}

inline FqElem Field::from_int(std::int64_t v) const {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return FqElem{static_cast<std::uint32_t>(r)};
}

inline FqElem Field::add(FqElem a, FqElem b) const {
  if (p_ == 2) return FqElem{a.value ^ b.value};
  if (e_ == 1) {
    const std::uint32_t s = a.value + b.value;
    return FqElem{s >= p_ ? s - p_ : s};
  }
  if (!add_.empty()) return FqElem{add_[std::size_t{a.value} * q_ + b.value]};
  return digit_add(a, b);
}

inline FqElem Field::neg(FqElem a) const {
  if (p_ == 2) return a;
  if (e_ == 1) return FqElem{a.value == 0 ? 0 : p_ - a.value};
  std::uint32_t x = a.value, r = 0, place = 1;
  for (std::uint32_t i = 0; i < e_; ++i) {
    const std::uint32_t d = x % p_;
    r += (d == 0 ? 0 : p_ - d) * place;
    x /= p_;
    place *= p_;
  }
  return FqElem{r};
}

inline FqElem Field::mul(FqElem a, FqElem b) const {
  if (a.value == 0 || b.value == 0) return zero();
  if (!log_.empty()) return FqElem{exp_[log_[a.value] + log_[b.value]]};
  return poly_mul(a, b);
}

inline FqElem Field::pow(FqElem a, std::uint64_t k) const {
  FqElem r = one();
  while (k) {
    if (k & 1) r = mul(r, a);
    a = mul(a, a);
    k >>= 1;
  }
  return r;
}

inline FqElem Field::inv(FqElem a) const {
  if (a.value == 0) throw std::domain_error("division by zero in F_" + name());
  if (!log_.empty()) return FqElem{exp_[(q_ - 1 - log_[a.value]) % (q_ - 1)]};
  return pow(a, q_ - 2);
}

inline std::uint64_t Field::element_order(FqElem a) const {
  if (a.value == 0)
    throw std::domain_error("zero has no multiplicative order");
  std::uint64_t order = q_ - 1;
  for (auto r : detail::prime_factors(q_ - 1))
    while (order % r == 0 && pow(a, order / r) == one()) order /= r;
  return order;
}

}  // namespace absord
