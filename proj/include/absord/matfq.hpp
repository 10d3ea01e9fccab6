// Dense exact linear algebra over F_q: matrices, canonical subspaces,
// polynomials, and enumeration of GL_n(F_q) and of subspace Grassmannians.

#pragma once

#include "absord/bigint.hpp"
#include "absord/gf.hpp"

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace absord {

using Vec = std::vector<FqElem>;

class Matrix {
 public:
  Matrix() = default;
  Matrix(FieldPtr field, int rows, int cols)
      : field_(std::move(field)),
        rows_(rows),
        cols_(cols),
        a_(static_cast<std::size_t>(rows) * cols) {
    if (rows < 0 || cols < 0)
      throw std::invalid_argument("negative matrix dimension");
  }

  static Matrix identity(FieldPtr field, int n) {
    Matrix m(std::move(field), n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, FqElem{1});
    return m;
  }

  static Matrix from_rows(FieldPtr field,
                          const std::vector<std::vector<std::uint32_t>>& rows) {
    const int r = static_cast<int>(rows.size());
    const int c = r == 0 ? 0 : static_cast<int>(rows.front().size());
    Matrix m(field, r, c);
    for (int i = 0; i < r; ++i) {
      if (static_cast<int>(rows[i].size()) != c)
        throw std::invalid_argument("ragged matrix rows");
      for (int j = 0; j < c; ++j) {
        if (rows[i][j] >= field->q())
          throw std::invalid_argument("matrix entry " +
                                      std::to_string(rows[i][j]) +
                                      " not in F_" + field->name());
        m.set(i, j, FqElem{rows[i][j]});
      }
    }
    return m;
  }

  /// Builds the matrix whose columns are the given vectors.
  static Matrix from_columns(FieldPtr field, int n, const std::vector<Vec>& cols) {
    Matrix m(std::move(field), n, static_cast<int>(cols.size()));
    for (int j = 0; j < m.cols(); ++j)
      for (int i = 0; i < n; ++i) m.set(i, j, cols[j][i]);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int n() const { return rows_; }
  bool square() const { return rows_ == cols_; }
  const Field& field() const { return *field_; }
  const FieldPtr& field_ptr() const { return field_; }

  FqElem operator()(int r, int c) const {
    return a_[static_cast<std::size_t>(r) * cols_ + c];
  }
  void set(int r, int c, FqElem v) {
    a_[static_cast<std::size_t>(r) * cols_ + c] = v;
  }
  std::span<const FqElem> row(int r) const {
    return {a_.data() + static_cast<std::size_t>(r) * cols_,
            static_cast<std::size_t>(cols_)};
  }
  Vec row_vec(int r) const { return Vec(row(r).begin(), row(r).end()); }
  Vec col_vec(int c) const {
    Vec v(rows_);
    for (int i = 0; i < rows_; ++i) v[i] = (*this)(i, c);
    return v;
  }
  const std::vector<FqElem>& entries() const { return a_; }

  Matrix transpose() const {
    Matrix t(field_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t.set(j, i, (*this)(i, j));
    return t;
  }

  Vec apply(const Vec& v) const {
    const Field& F = *field_;
    Vec out(rows_);
    for (int i = 0; i < rows_; ++i) {
      FqElem acc{};
      for (int j = 0; j < cols_; ++j)
        acc = F.add(acc, F.mul((*this)(i, j), v[j]));
      out[i] = acc;
    }
    return out;
  }

  bool is_identity() const {
    if (!square()) return false;
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j)
        if ((*this)(i, j).value != (i == j ? 1u : 0u)) return false;
    return true;
  }

  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    if (x.cols_ != y.rows_) throw std::invalid_argument("shape mismatch in *");
    check_same_field(x, y);
    const Field& F = *x.field_;
    Matrix r(x.field_, x.rows_, y.cols_);
    for (int i = 0; i < x.rows_; ++i)
      for (int k = 0; k < x.cols_; ++k) {
        const FqElem a = x(i, k);
        if (a.is_zero()) continue;
        for (int j = 0; j < y.cols_; ++j)
          r.a_[static_cast<std::size_t>(i) * r.cols_ + j] =
              F.add(r(i, j), F.mul(a, y(k, j)));
      }
    return r;
  }

  friend Matrix operator+(const Matrix& x, const Matrix& y) {
    check_same_shape(x, y);
    Matrix r = x;
    for (std::size_t i = 0; i < r.a_.size(); ++i)
      r.a_[i] = x.field_->add(x.a_[i], y.a_[i]);
    return r;
  }

  friend Matrix operator-(const Matrix& x, const Matrix& y) {
    check_same_shape(x, y);
    Matrix r = x;
    for (std::size_t i = 0; i < r.a_.size(); ++i)
      r.a_[i] = x.field_->sub(x.a_[i], y.a_[i]);
    return r;
  }

  friend bool operator==(const Matrix& x, const Matrix& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_ &&
           (x.field_ == y.field_ ||
            (x.field_ && y.field_ && *x.field_ == *y.field_));
  }

  // Row-major lexicographic order on entry encodings.
  friend bool operator<(const Matrix& x, const Matrix& y) { return x.a_ < y.a_; }

 private:
  static void check_same_field(const Matrix& x, const Matrix& y) {
    if (x.field_ != y.field_ && !(*x.field_ == *y.field_))
      throw std::invalid_argument("matrices over different fields");
  }
  static void check_same_shape(const Matrix& x, const Matrix& y) {
    if (x.rows_ != y.rows_ || x.cols_ != y.cols_)
      throw std::invalid_argument("shape mismatch");
    check_same_field(x, y);
  }

  FieldPtr field_;
  int rows_ = 0;
  int cols_ = 0;
  std::vector<FqElem> a_;
};

struct MatrixHash {
  std::size_t operator()(const Matrix& m) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (FqElem x : m.entries()) {
      h ^= x.value + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

// ---------------------------------------------------------------------------
// Elimination

struct Echelon {
  Matrix reduced;            // reduced row echelon form, zero rows dropped
  std::vector<int> pivots;   // pivot column of each row
};

inline Echelon rref(Matrix m) {
  const Field& F = m.field();
  const int R = m.rows(), C = m.cols();
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < C && r < R; ++c) {
    int sel = -1;
    for (int i = r; i < R; ++i)
      if (!m(i, c).is_zero()) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    if (sel != r)
      for (int j = 0; j < C; ++j) {
        const FqElem t = m(r, j);
        m.set(r, j, m(sel, j));
        m.set(sel, j, t);
      }
    const FqElem inv = F.inv(m(r, c));
    for (int j = 0; j < C; ++j) m.set(r, j, F.mul(m(r, j), inv));
    for (int i = 0; i < R; ++i) {
      if (i == r) continue;
      const FqElem f = m(i, c);
      if (f.is_zero()) continue;
      for (int j = c; j < C; ++j)
        m.set(i, j, F.sub(m(i, j), F.mul(f, m(r, j))));
    }
    pivots.push_back(c);
    ++r;
  }
  Matrix out(m.field_ptr(), r, C);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < C; ++j) out.set(i, j, m(i, j));
  return {std::move(out), std::move(pivots)};
}

inline int rank(const Matrix& m) {
  // Forward elimination only; rank is all that is needed here.
  Matrix w = m;
  const Field& F = w.field();
  const int R = w.rows(), C = w.cols();
  int r = 0;
  for (int c = 0; c < C && r < R; ++c) {
    int sel = -1;
    for (int i = r; i < R; ++i)
      if (!w(i, c).is_zero()) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    if (sel != r)
      for (int j = c; j < C; ++j) {
        const FqElem t = w(r, j);
        w.set(r, j, w(sel, j));
        w.set(sel, j, t);
      }
    const FqElem inv = F.inv(w(r, c));
    for (int i = r + 1; i < R; ++i) {
      const FqElem f = F.mul(w(i, c), inv);
      if (f.is_zero()) continue;
      for (int j = c; j < C; ++j) w.set(i, j, F.sub(w(i, j), F.mul(f, w(r, j))));
    }
    ++r;
  }
  return r;
}

inline FqElem determinant(Matrix m) {
  if (!m.square()) throw std::invalid_argument("determinant of non-square matrix");
  const Field& F = m.field();
  const int n = m.rows();
  FqElem det = F.one();
  for (int c = 0; c < n; ++c) {
    int sel = -1;
    for (int i = c; i < n; ++i)
      if (!m(i, c).is_zero()) {
        sel = i;
        break;
      }
    if (sel < 0) return F.zero();
    if (sel != c) {
      for (int j = 0; j < n; ++j) {
        const FqElem t = m(c, j);
        m.set(c, j, m(sel, j));
        m.set(sel, j, t);
      }
      det = F.neg(det);
    }
    det = F.mul(det, m(c, c));
    const FqElem inv = F.inv(m(c, c));
    for (int i = c + 1; i < n; ++i) {
      const FqElem f = F.mul(m(i, c), inv);
      if (f.is_zero()) continue;
      for (int j = c; j < n; ++j) m.set(i, j, F.sub(m(i, j), F.mul(f, m(c, j))));
    }
  }
  return det;
}

inline bool is_invertible(const Matrix& m) {
  return m.square() && rank(m) == m.rows();
}

inline std::optional<Matrix> try_inverse(const Matrix& m) {
  if (!m.square()) return std::nullopt;
  const int n = m.rows();
  Matrix aug(m.field_ptr(), n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug.set(i, j, m(i, j));
    aug.set(i, n + i, FqElem{1});
  }
  auto e = rref(std::move(aug));
  if (static_cast<int>(e.pivots.size()) < n || e.pivots[n - 1] != n - 1)
    return std::nullopt;
  Matrix inv(m.field_ptr(), n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv.set(i, j, e.reduced(i, n + j));
  return inv;
}

inline Matrix inverse(const Matrix& m) {
  auto inv = try_inverse(m);
  if (!inv) throw std::domain_error("matrix is singular");
  return *std::move(inv);
}

/// Column null space {v : m v = 0}, one basis vector per free column.
inline std::vector<Vec> null_space_basis(const Matrix& m) {
  const Field& F = m.field();
  const auto e = rref(m);
  const int C = m.cols();
  std::vector<bool> is_pivot(C, false);
  for (int p : e.pivots) is_pivot[p] = true;
  std::vector<Vec> basis;
  for (int free = 0; free < C; ++free) {
    if (is_pivot[free]) continue;
    Vec v(C);
    v[free] = F.one();
    for (std::size_t r = 0; r < e.pivots.size(); ++r)
      v[e.pivots[r]] = F.neg(e.reduced(static_cast<int>(r), free));
    basis.push_back(std::move(v));
  }
  return basis;
}

// ---------------------------------------------------------------------------
// Subspaces of F_q^n, stored by the reduced echelon form of a basis.

class Subspace {
 public:
  Subspace() = default;

  static Subspace span(FieldPtr field, int n, const std::vector<Vec>& vectors) {
    Matrix m(field, static_cast<int>(vectors.size()), n);
    for (int i = 0; i < m.rows(); ++i) {
      if (static_cast<int>(vectors[i].size()) != n)
        throw std::invalid_argument("vector length differs from ambient dimension");
      for (int j = 0; j < n; ++j) m.set(i, j, vectors[i][j]);
    }
    return from_rows(std::move(m));
  }

  /// Row space of m.
  static Subspace from_rows(const Matrix& m) {
    Subspace s;
    s.n_ = m.cols();
    auto e = rref(m);
    s.basis_ = std::move(e.reduced);
    s.pivots_ = std::move(e.pivots);
    return s;
  }

  static Subspace zero(FieldPtr field, int n) {
    return from_rows(Matrix(std::move(field), 0, n));
  }
  static Subspace full(FieldPtr field, int n) {
    return from_rows(Matrix::identity(std::move(field), n));
  }

  int ambient() const { return n_; }
  int dim() const { return basis_.rows(); }
  const Matrix& basis() const { return basis_; }
  const std::vector<int>& pivots() const { return pivots_; }
  const FieldPtr& field_ptr() const { return basis_.field_ptr(); }

  /// The echelon basis rows.
  std::vector<Vec> vectors() const {
    std::vector<Vec> out;
    for (int i = 0; i < dim(); ++i) out.push_back(basis_.row_vec(i));
    return out;
  }

  bool contains(const Vec& v) const {
    const Field& F = basis_.field();
    Vec w = v;
    for (int i = 0; i < dim(); ++i) {
      const FqElem f = w[pivots_[i]];
      if (f.is_zero()) continue;
      for (int j = 0; j < n_; ++j) w[j] = F.sub(w[j], F.mul(f, basis_(i, j)));
    }
    return std::all_of(w.begin(), w.end(), [](FqElem x) { return x.is_zero(); });
  }

  bool contains(const Subspace& other) const {
    check_ambient(other);
    for (int i = 0; i < other.dim(); ++i)
      if (!contains(other.basis_.row_vec(i))) return false;
    return true;
  }

  friend Subspace operator+(const Subspace& a, const Subspace& b) {
    a.check_ambient(b);
    auto vs = a.vectors();
    auto ws = b.vectors();
    vs.insert(vs.end(), ws.begin(), ws.end());
    return span(a.field_ptr(), a.n_, vs);
  }

  /// Intersection from the kernel of the relation matrix [A; -B]^T.
  Subspace intersect(const Subspace& b) const {
    check_ambient(b);
    const Field& F = basis_.field();
    const int da = dim(), db = b.dim();
    Matrix rel(field_ptr(), n_, da + db);
    for (int j = 0; j < n_; ++j) {
      for (int i = 0; i < da; ++i) rel.set(j, i, basis_(i, j));
      for (int i = 0; i < db; ++i) rel.set(j, da + i, F.neg(b.basis_(i, j)));
    }
    std::vector<Vec> out;
    for (const Vec& z : null_space_basis(rel)) {
      Vec v(n_);
      for (int i = 0; i < da; ++i)
        for (int j = 0; j < n_; ++j)
          v[j] = F.add(v[j], F.mul(z[i], basis_(i, j)));
      out.push_back(std::move(v));
    }
    return span(field_ptr(), n_, out);
  }

  /// g(U) for a square matrix g acting on column vectors.
  Subspace image(const Matrix& g) const {
    std::vector<Vec> out;
    for (int i = 0; i < dim(); ++i) out.push_back(g.apply(basis_.row_vec(i)));
    return span(field_ptr(), n_, out);
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.n_ == b.n_ && a.basis_ == b.basis_;
  }

 private:
  void check_ambient(const Subspace& o) const {
    if (n_ != o.n_ || !(basis_.field() == o.basis_.field()))
      throw std::invalid_argument("subspaces in different ambient spaces");
  }

  int n_ = 0;
  Matrix basis_;
  std::vector<int> pivots_;
};

inline Subspace kernel(const Matrix& m) {
  return Subspace::span(m.field_ptr(), m.cols(), null_space_basis(m));
}

/// V^g = ker(g - 1).
inline Subspace fixed_space(const Matrix& g) {
  return kernel(g - Matrix::identity(g.field_ptr(), g.rows()));
}

// ---------------------------------------------------------------------------
// Polynomials over F_q, constant term first.

class PolyFq {
 public:
  PolyFq() = default;
  PolyFq(FieldPtr field, std::vector<FqElem> coeffs)
      : field_(std::move(field)), c_(std::move(coeffs)) {
    trim();
  }

  static PolyFq x(FieldPtr field) {
    return PolyFq(std::move(field), {FqElem{0}, FqElem{1}});
  }
  static PolyFq constant(FieldPtr field, FqElem a) {
    return PolyFq(std::move(field), {a});
  }

  const Field& field() const { return *field_; }
  const FieldPtr& field_ptr() const { return field_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_monic() const { return !c_.empty() && c_.back().value == 1; }
  const std::vector<FqElem>& coeffs() const { return c_; }
  FqElem coeff(int i) const {
    return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : FqElem{};
  }

  FqElem eval(FqElem a) const {
    FqElem r{};
    for (std::size_t i = c_.size(); i-- > 0;)
      r = field_->add(field_->mul(r, a), c_[i]);
    return r;
  }

  friend PolyFq operator+(const PolyFq& a, const PolyFq& b) {
    const Field& F = *a.field_;
    std::vector<FqElem> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i)
      r[i] = F.add(a.coeff(static_cast<int>(i)), b.coeff(static_cast<int>(i)));
    return PolyFq(a.field_, std::move(r));
  }
  friend PolyFq operator-(const PolyFq& a, const PolyFq& b) {
    const Field& F = *a.field_;
    std::vector<FqElem> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i)
      r[i] = F.sub(a.coeff(static_cast<int>(i)), b.coeff(static_cast<int>(i)));
    return PolyFq(a.field_, std::move(r));
  }
  friend PolyFq operator*(const PolyFq& a, const PolyFq& b) {
    if (a.is_zero() || b.is_zero()) return PolyFq(a.field_, {});
    const Field& F = *a.field_;
    std::vector<FqElem> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j)
        r[i + j] = F.add(r[i + j], F.mul(a.c_[i], b.c_[j]));
    return PolyFq(a.field_, std::move(r));
  }
  PolyFq scaled(FqElem s) const {
    std::vector<FqElem> r = c_;
    for (auto& x : r) x = field_->mul(x, s);
    return PolyFq(field_, std::move(r));
  }

  /// Remainder of division by a nonzero polynomial.
  friend PolyFq operator%(const PolyFq& a, const PolyFq& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    const Field& F = *a.field_;
    std::vector<FqElem> r = a.c_;
    const FqElem inv_lead = F.inv(b.c_.back());
    const std::size_t db = b.c_.size() - 1;
    while (r.size() > db) {
      while (!r.empty() && r.back().is_zero()) r.pop_back();
      if (r.size() <= db) break;
      const FqElem f = F.mul(r.back(), inv_lead);
      const std::size_t shift = r.size() - 1 - db;
      for (std::size_t i = 0; i <= db; ++i)
        r[shift + i] = F.sub(r[shift + i], F.mul(f, b.c_[i]));
      r.pop_back();
    }
    return PolyFq(a.field_, std::move(r));
  }

  PolyFq monic() const {
    if (is_zero()) return *this;
    return scaled(field_->inv(c_.back()));
  }

  friend bool operator==(const PolyFq& a, const PolyFq& b) { return a.c_ == b.c_; }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  FieldPtr field_;
  std::vector<FqElem> c_;
};

inline PolyFq gcd(PolyFq a, PolyFq b) {
  while (!b.is_zero()) {
    PolyFq r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

inline PolyFq powmod(PolyFq base, std::uint64_t k, const PolyFq& mod) {
  PolyFq r = PolyFq::constant(base.field_ptr(), FqElem{1}) % mod;
  base = base % mod;
  while (k) {
    if (k & 1) r = (r * base) % mod;
    base = (base * base) % mod;
    k >>= 1;
  }
  return r;
}

/// Irreducibility over F_q: f has no factor of degree <= deg/2 iff
/// gcd(f, x^{q^i} - x) = 1 for every i <= deg/2.
inline bool is_irreducible(const PolyFq& f) {
  const int d = f.degree();
  if (d <= 0) return false;
  if (d == 1) return true;
  const auto& F = f.field_ptr();
  const PolyFq x = PolyFq::x(F);
  PolyFq xp = x % f;
  for (int i = 1; i <= d / 2; ++i) {
    xp = powmod(xp, F->q(), f);
    if (gcd(f, xp - x).degree() != 0) return false;
  }
  return true;
}

/// det(xI - g) via reduction to upper Hessenberg form.
inline PolyFq char_poly(const Matrix& g) {
  if (!g.square()) throw std::invalid_argument("char_poly of non-square matrix");
  const auto& Fp = g.field_ptr();
  const Field& F = *Fp;
  const int n = g.rows();
  Matrix h = g;
  for (int m = 1; m + 1 < n; ++m) {
    int sel = -1;
    for (int i = m; i < n; ++i)
      if (!h(i, m - 1).is_zero()) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    if (sel != m) {
      for (int j = 0; j < n; ++j) {
        const FqElem t = h(sel, j);
        h.set(sel, j, h(m, j));
        h.set(m, j, t);
      }
      for (int i = 0; i < n; ++i) {
        const FqElem t = h(i, sel);
        h.set(i, sel, h(i, m));
        h.set(i, m, t);
      }
    }
    const FqElem inv = F.inv(h(m, m - 1));
    for (int j = m + 1; j < n; ++j) {
      const FqElem u = F.mul(h(j, m - 1), inv);
      if (u.is_zero()) continue;
      for (int k = 0; k < n; ++k) h.set(j, k, F.sub(h(j, k), F.mul(u, h(m, k))));
      for (int k = 0; k < n; ++k) h.set(k, m, F.add(h(k, m), F.mul(u, h(k, j))));
    }
  }
  const PolyFq x = PolyFq::x(Fp);
  std::vector<PolyFq> p{PolyFq::constant(Fp, F.one())};
  for (int m = 1; m <= n; ++m) {
    PolyFq pm = (x - PolyFq::constant(Fp, h(m - 1, m - 1))) * p[m - 1];
    FqElem t = F.one();
    for (int i = m - 1; i >= 1; --i) {
      t = F.mul(t, h(i, i - 1));
      pm = pm - p[i - 1].scaled(F.mul(h(i - 1, m - 1), t));
    }
    p.push_back(std::move(pm));
  }
  return p[n];
}

/// Companion matrix: ones on the subdiagonal, last column -f_0, ..., -f_{n-1}.
inline Matrix companion(const PolyFq& f) {
  if (!f.is_monic() || f.degree() < 1)
    throw std::invalid_argument("companion matrix needs a monic polynomial of degree >= 1");
  if (f.coeff(0).is_zero())
    throw std::domain_error("companion matrix of a polynomial with zero constant term is singular");
  const int n = f.degree();
  const Field& F = f.field();
  Matrix c(f.field_ptr(), n, n);
  for (int i = 1; i < n; ++i) c.set(i, i - 1, F.one());
  for (int i = 0; i < n; ++i) c.set(i, n - 1, F.neg(f.coeff(i)));
  return c;
}

// ---------------------------------------------------------------------------
// Text formats

inline std::string format_matrix(const Matrix& m) {
  std::string s;
  for (int i = 0; i < m.rows(); ++i) {
    if (i) s += ';';
    for (int j = 0; j < m.cols(); ++j) {
      if (j) s += ',';
      s += std::to_string(m(i, j).value);
    }
  }
  return s;
}

inline Matrix parse_matrix(std::string_view text, const FieldPtr& field) {
  std::vector<std::vector<std::uint32_t>> rows;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t semi = std::min(text.find(';', start), text.size());
    std::string_view row = text.substr(start, semi - start);
    std::vector<std::uint32_t> entries;
    std::size_t s = 0;
    while (s <= row.size()) {
      const std::size_t comma = std::min(row.find(',', s), row.size());
      std::string tok(row.substr(s, comma - s));
      tok.erase(std::remove_if(tok.begin(), tok.end(),
                               [](unsigned char ch) { return std::isspace(ch); }),
                tok.end());
      if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](unsigned char ch) {
            return std::isdigit(ch);
          }))
        throw std::invalid_argument("bad matrix entry '" + tok + "'");
      entries.push_back(static_cast<std::uint32_t>(std::stoul(tok)));
      s = comma + 1;
    }
    rows.push_back(std::move(entries));
    start = semi + 1;
  }
  Matrix m = Matrix::from_rows(field, rows);
  if (!m.square()) throw std::invalid_argument("matrix is not square");
  return m;
}

inline std::string format_poly(const PolyFq& f) {
  std::string s;
  for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
    if (i) s += ',';
    s += std::to_string(f.coeffs()[i].value);
  }
  return s.empty() ? "0" : s;
}

// ---------------------------------------------------------------------------
// Enumeration

/// |GL_n(F_q)| = (q^n - 1)(q^n - q)...(q^n - q^{n-1}).
inline Int gl_order(int n, std::uint64_t q) {
  Int qn = ipow(Int(q), static_cast<unsigned>(n));
  Int r = 1, qi = 1;
  for (int i = 0; i < n; ++i) {
    r *= qn - qi;
    qi *= q;
  }
  return r;
}

inline constexpr std::uint64_t kDefaultMaxGroupOrder = 10'000'000;

namespace detail {

struct RowBasis {
  std::vector<Vec> rows;  // reduced: rows[i] has a unit at pivots[i]
  std::vector<int> pivots;

  // Reduces v against the basis; returns the pivot of the residue or -1.
  int reduce(const Field& F, Vec& v) const {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const FqElem f = v[pivots[i]];
      if (f.is_zero()) continue;
      for (std::size_t j = 0; j < v.size(); ++j)
        v[j] = F.sub(v[j], F.mul(f, rows[i][j]));
    }
    for (std::size_t j = 0; j < v.size(); ++j)
      if (!v[j].is_zero()) return static_cast<int>(j);
    return -1;
  }

  void push(const Field& F, Vec v, int pivot) {
    const FqElem inv = F.inv(v[pivot]);
    for (auto& x : v) x = F.mul(x, inv);
    for (auto& r : rows) {
      const FqElem f = r[pivot];
      if (f.is_zero()) continue;
      for (std::size_t j = 0; j < r.size(); ++j) r[j] = F.sub(r[j], F.mul(f, v[j]));
    }
    rows.push_back(std::move(v));
    pivots.push_back(pivot);
  }
};

inline Vec decode_row(std::uint64_t code, int n, std::uint32_t q) {
  Vec v(n);
  for (int j = n - 1; j >= 0; --j) {
    v[j] = FqElem{static_cast<std::uint32_t>(code % q)};
    code /= q;
  }
  return v;
}

}  // namespace detail

/// Visits every invertible n x n matrix exactly once, in row-major
/// lexicographic order of entry encodings. Only first rows with code in
/// [first_begin, first_end) are visited, which lets callers shard the work.
inline void for_each_gl(int n, const FieldPtr& field,
                        const std::function<void(const Matrix&)>& visit,
                        std::uint64_t max_order = kDefaultMaxGroupOrder,
                        std::uint64_t first_begin = 0,
                        std::uint64_t first_end = ~std::uint64_t{0}) {
  if (n < 1) throw std::invalid_argument("dimension must be >= 1");
  if (gl_order(n, field->q()) > Int(max_order))
    throw std::length_error("|GL_" + std::to_string(n) + "(F_" + field->name() +
                            ")| exceeds enumeration bound " +
                            std::to_string(max_order));
  const Field& F = *field;
  const std::uint32_t q = F.q();
  std::uint64_t row_codes = 1;
  for (int i = 0; i < n; ++i) row_codes *= q;
  first_end = std::min(first_end, row_codes);

  Matrix m(field, n, n);
  std::function<void(int, const detail::RowBasis&)> rec =
      [&](int r, const detail::RowBasis& basis) {
        if (r == n) {
          visit(m);
          return;
        }
        const std::uint64_t lo = r == 0 ? first_begin : 0;
        const std::uint64_t hi = r == 0 ? first_end : row_codes;
        for (std::uint64_t code = lo; code < hi; ++code) {
          Vec v = detail::decode_row(code, n, q);
          Vec w = v;
          const int piv = basis.reduce(F, w);
          if (piv < 0) continue;
          for (int j = 0; j < n; ++j) m.set(r, j, v[j]);
          detail::RowBasis next = basis;
          next.push(F, std::move(w), piv);
          rec(r + 1, next);
        }
      };
  rec(0, detail::RowBasis{});
}

inline std::vector<Matrix> enumerate_gl(int n, const FieldPtr& field,
                                        std::uint64_t max_order = kDefaultMaxGroupOrder) {
  std::vector<Matrix> out;
  for_each_gl(n, field, [&](const Matrix& g) { out.push_back(g); }, max_order);
  return out;
}

/// Visits every k-dimensional subspace of F_q^n once, by pivot set and then
/// by the free entries of its reduced echelon basis.
inline void for_each_subspace(int n, int k, const FieldPtr& field,
                              const std::function<void(const Subspace&)>& visit) {
  if (k < 0 || k > n) return;
  const std::uint32_t q = field->q();
  std::vector<int> piv(k);
  for (int i = 0; i < k; ++i) piv[i] = i;
  while (true) {
    std::vector<std::pair<int, int>> free;
    std::vector<bool> is_pivot(n, false);
    for (int p : piv) is_pivot[p] = true;
    for (int r = 0; r < k; ++r)
      for (int c = piv[r] + 1; c < n; ++c)
        if (!is_pivot[c]) free.emplace_back(r, c);
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < free.size(); ++i) total *= q;
    for (std::uint64_t code = 0; code < total; ++code) {
      Matrix b(field, k, n);
      for (int r = 0; r < k; ++r) b.set(r, piv[r], FqElem{1});
      std::uint64_t c = code;
      for (auto [r, col] : free) {
        b.set(r, col, FqElem{static_cast<std::uint32_t>(c % q)});
        c /= q;
      }
      visit(Subspace::from_rows(b));
    }
    // next k-subset of {0..n-1}
    int i = k - 1;
    while (i >= 0 && piv[i] == n - k + i) --i;
    if (i < 0) break;
    ++piv[i];
    for (int j = i + 1; j < k; ++j) piv[j] = piv[j - 1] + 1;
  }
}

}  // namespace absord
