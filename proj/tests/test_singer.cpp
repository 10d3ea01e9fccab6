#include "absord/qseries.hpp"
#include "absord/singer.hpp"

#include <catch_amalgamated.hpp>

#include <map>
#include <set>
#include <random>

using namespace absord;

namespace {

Matrix companion_of(const FieldPtr& F, std::vector<std::uint32_t> coeffs) {
  std::vector<FqElem> c;
  for (auto v : coeffs) c.push_back(FqElem{v});
  return companion(PolyFq(F, c));
}

// Elements below c and chain counts found directly with abs_leq, without the
// model's relation table.
struct Naive {
  std::vector<Matrix> below;
  explicit Naive(const Matrix& c) {
    for_each_gl(c.rows(), c.field_ptr(), [&](const Matrix& g) {
      if (abs_leq(g, c)) below.push_back(g);
    });
  }
  Int chains(const Matrix& from, const Matrix& c, const std::vector<int>& parts,
             std::size_t k = 0) const {
    if (k == parts.size()) return from == c ? 1 : 0;
    const int target = reflection_length(from) + parts[k];
    Int total = 0;
    for (const Matrix& g : below)
      if (reflection_length(g) == target && abs_leq(from, g)) total += chains(g, c, parts, k + 1);
    return total;
  }
};

// |det| by Gaussian elimination over the rationals.
Int rational_abs_det(const std::vector<std::vector<Int>>& m) {
  const std::size_t n = m.size();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = Rational(m[i][j]);
  Rational det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a[p][k] == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      std::swap(a[p], a[k]);
      det = -det;
    }
    det *= a[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      const Rational f = a[i][k] / a[k][k];
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
    }
  }
  REQUIRE(denominator(det) == 1);
  return abs(numerator(det));
}

const IntervalModel& singer_4_2() {
  static const IntervalModel m =
      IntervalModel::build(singer_cycle(4, Field::create(2, 1)), kDefaultMaxGroupOrder, 4);
  return m;
}

const IntervalModel& order5_4_2() {
  static const IntervalModel m =
      IntervalModel::build(companion_of(Field::create(2, 1), {1, 1, 1, 1, 1}),
                           kDefaultMaxGroupOrder, 4);
  return m;
}

}  // namespace

TEST_CASE("Singer cycles", "[singer]") {
  const auto F2 = Field::create(2, 1);
  CHECK(format_matrix(singer_cycle(2, F2)) == "0,1;1,1");
  CHECK(matrix_order(singer_cycle(2, F2)) == 3);
  CHECK(format_poly(primitive_poly(3, F2)) == "1,1,0,1");
  CHECK(matrix_order(singer_cycle(3, F2)) == 7);
  const Matrix c4 = singer_cycle(4, F2);
  CHECK(format_poly(char_poly(c4)) == "1,1,0,0,1");
  CHECK(matrix_order(c4) == 15);
  const auto F3 = Field::create(3, 1);
  CHECK(format_matrix(singer_cycle(3, F3)) == "0,0,2;1,0,1;0,1,0");

  struct Case {
    int n;
    std::uint32_t p, e;
  };
  for (auto [n, p, e] : std::vector<Case>{{1, 5, 1}, {2, 3, 1}, {2, 2, 2}, {3, 3, 1},
                                          {4, 3, 1}, {2, 7, 1}, {5, 2, 1}, {3, 2, 2}}) {
    const auto F = Field::create(p, e);
    const Matrix c = singer_cycle(n, F);
    std::uint64_t qn = 1;
    for (int i = 0; i < n; ++i) qn *= F->q();
    REQUIRE(matrix_order(c) == qn - 1);
    REQUIRE(is_regular_elliptic(c));
    REQUIRE(reflection_length(c) == n);
  }
  CHECK_THROWS_AS(primitive_poly(50, F2), std::length_error);
}

TEST_CASE("regular elliptic elements", "[singer]") {
  const auto F2 = Field::create(2, 1);
  CHECK(!is_regular_elliptic(Matrix::identity(F2, 2)));
  const Matrix c5 = companion_of(F2, {1, 1, 1, 1, 1});
  CHECK(is_regular_elliptic(c5));
  CHECK(matrix_order(c5) == 5);
  // regular elliptic iff no proper nonzero invariant subspace
  const auto F3 = Field::create(3, 1);
  for (const Matrix& g : enumerate_gl(2, F3)) {
    bool invariant_line = false;
    for_each_subspace(2, 1, F3, [&](const Subspace& s) { invariant_line |= s.image(g) == s; });
    REQUIRE(is_regular_elliptic(g) == !invariant_line);
  }
}

TEST_CASE("interval rank sizes", "[singer]") {
  const auto F2 = Field::create(2, 1);
  const IntervalModel m2 = IntervalModel::build(singer_cycle(2, F2));
  CHECK(m2.rank_sizes() == std::vector<std::size_t>{1, 3, 1});
  CHECK(m2.element(m2.bottom_index()).is_identity());
  CHECK(m2.element(m2.top_index()) == singer_cycle(2, F2));
  CHECK(singer_4_2().rank_sizes() == std::vector<std::size_t>{1, 60, 240, 60, 1});
  CHECK(order5_4_2().rank_sizes() == std::vector<std::size_t>{1, 60, 240, 60, 1});
  for (std::size_t i = 0; i < singer_4_2().size(); ++i)
    REQUIRE(singer_4_2().rank_of(i) == reflection_length(singer_4_2().element(i)));
  CHECK_THROWS_AS(IntervalModel::build(singer_cycle(4, F2), 1000), std::length_error);
}

TEST_CASE("model relation matches abs_leq", "[singer]") {
  const auto F3 = Field::create(3, 1);
  const IntervalModel m = IntervalModel::build(singer_cycle(2, F3));
  const IntervalModel threaded = IntervalModel::build(singer_cycle(2, F3), kDefaultMaxGroupOrder, 3);
  REQUIRE(m.elements() == threaded.elements());
  for (std::size_t i = 0; i < m.size(); ++i) {
    REQUIRE(m.index_of(m.element(i)) == i);
    for (std::size_t j = 0; j < m.size(); ++j)
      REQUIRE(m.leq(i, j) == abs_leq(m.element(i), m.element(j)));
  }
  CHECK(!m.index_of(Matrix::identity(F3, 2) + Matrix::identity(F3, 2)).has_value());
  CHECK(m.cover_pairs().size() == 2 * 8);
}

TEST_CASE("flag f-vectors match the formula and a direct chain search", "[singer]") {
  struct Case {
    int n;
    std::uint32_t p, e;
  };
  for (auto [n, p, e] : std::vector<Case>{{2, 2, 1}, {2, 3, 1}, {2, 2, 2}, {3, 2, 1}, {3, 3, 1}}) {
    const auto F = Field::create(p, e);
    const Matrix c = singer_cycle(n, F);
    const IntervalModel m = IntervalModel::build(c);
    const Naive naive(c);
    REQUIRE(naive.below.size() == m.size());
    for (const auto& alpha : compositions(n)) {
      const Int got = flag_f(m, alpha);
      REQUIRE(got == flag_formula(alpha, F->q()));
      if (n <= 3 && F->q() <= 2) REQUIRE(got == naive.chains(Matrix::identity(F, n), c, alpha.parts()));
    }
  }
  for (const auto& alpha : compositions(4)) {
    REQUIRE(flag_f(singer_4_2(), alpha) == flag_formula(alpha, 2));
    REQUIRE(flag_f(order5_4_2(), alpha) == flag_formula(alpha, 2));
  }
  CHECK(flag_f(singer_4_2(), Composition({1, 2, 1})) == 900);
  CHECK(flag_f(singer_4_2(), Composition({4})) == 1);
  CHECK(maximal_chains(singer_4_2()) == 3375);
  CHECK(maximal_chains(IntervalModel::build(singer_cycle(3, Field::create(2, 1)))) == 49);
  CHECK_THROWS_AS(flag_f(singer_4_2(), Composition({1, 2})), std::invalid_argument);
}

TEST_CASE("intervals below tops of smaller length", "[singer]") {
  const auto F2 = Field::create(2, 1);
  // fixes a line, acts as a Singer cycle on a complement
  const Matrix top = parse_matrix("0,1,0;1,1,0;0,0,1", F2);
  const IntervalModel m = IntervalModel::build(top);
  CHECK(m.n() == 3);
  CHECK(m.length() == 2);
  CHECK(m.rank_sizes() == std::vector<std::size_t>{1, 3, 1});
  const Naive naive(top);
  for (const auto& alpha : compositions(2))
    CHECK(flag_f(m, alpha) == naive.chains(Matrix::identity(F2, 3), top, alpha.parts()));
  CHECK(maximal_chains(m) == 3);
  CHECK_THROWS_AS(flag_f(m, Composition({1, 1, 1})), std::invalid_argument);
  CHECK(m.cover_pairs().size() == 6);
}

TEST_CASE("Mobius function by recursion", "[singer]") {
  CHECK(mobius_poset(IntervalModel::build(singer_cycle(1, Field::create(3, 1)))) == -1);
  CHECK(mobius_poset(IntervalModel::build(singer_cycle(2, Field::create(2, 1)))) == 2);
  CHECK(mobius_poset(singer_4_2()) == 1034);
  CHECK(mobius_poset(order5_4_2()) == 1034);
  CHECK(mobius_formula(4, 2) == 1034);
  for (auto [n, p] : std::vector<std::pair<int, std::uint32_t>>{{2, 3}, {3, 2}, {3, 3}}) {
    const auto F = Field::create(p, 1);
    const IntervalModel m = IntervalModel::build(singer_cycle(n, F));
    // Hall: mu = sum over strict chains of (-1)^length
    Int hall = 0;
    for (const auto& alpha : compositions(n))
      hall += (alpha.m() % 2 ? -1 : 1) * flag_f(m, alpha);
    REQUIRE(mobius_poset(m) == hall);
    REQUIRE(mobius_poset(m) == mobius_formula(n, p));
  }
}

TEST_CASE("chains and twisted decompositions", "[singer]") {
  const auto F2 = Field::create(2, 1);
  const Matrix c3 = singer_cycle(3, F2);
  const IntervalModel m = IntervalModel::build(c3);
  const Matrix e = Matrix::identity(F2, 3);

  const Decomposition whole = phi({e, c3}, c3);
  REQUIRE(whole.parts.size() == 1);
  CHECK(whole.parts[0].dim() == 3);
  CHECK(psi(whole, c3) == std::vector<Matrix>{e, c3});

  std::size_t chains = 0;
  for (auto a : m.rank(1))
    for (auto b : m.rank(2)) {
      if (!m.leq(a, b)) continue;
      ++chains;
      const std::vector<Matrix> chain{e, m.element(a), m.element(b), c3};
      const Decomposition d = phi(chain, c3);
      REQUIRE(d.dims() == std::vector<int>{1, 1, 1});
      REQUIRE(is_direct_decomposition(d, F2, 3));
      REQUIRE(!twisted_failure(d, c3));
      REQUIRE(psi(d, c3) == chain);
    }
  CHECK(chains == 49);

  // every decomposition maps to a chain and back
  for (const auto& alpha : compositions(3)) {
    Int count = 0;
    for_each_twisted_decomposition(c3, alpha, [&](const Decomposition& d) {
      ++count;
      const auto chain = psi(d, c3);
      REQUIRE(chain.size() == alpha.parts().size() + 1);
      for (std::size_t i = 1; i < chain.size(); ++i) {
        REQUIRE(abs_leq(chain[i - 1], chain[i]));
        REQUIRE(reflection_length(chain[i]) - reflection_length(chain[i - 1]) ==
                alpha.parts()[i - 1]);
      }
      REQUIRE(phi(chain, c3) == d);
    });
    REQUIRE(count == flag_f(m, alpha));
  }
}

TEST_CASE("decompositions in GL_3(F_3) give valid chains", "[singer]") {
  const auto F3 = Field::create(3, 1);
  const Matrix c = singer_cycle(3, F3);
  std::size_t checked = 0;
  for_each_twisted_decomposition(c, Composition({1, 1, 1}), [&](const Decomposition& d) {
    const auto chain = psi(d, c);
    for (std::size_t i = 1; i < chain.size(); ++i) REQUIRE(abs_less(chain[i - 1], chain[i]));
    REQUIRE(phi(chain, c) == d);
    ++checked;
  });
  CHECK(checked == 676);
}

TEST_CASE("twisted decomposition counts in GL_4(F_2)", "[singer]") {
  const auto F2 = Field::create(2, 1);
  const Matrix c = singer_cycle(4, F2);
  CHECK(count_twisted_decompositions(c, Composition({1, 3})) == 60);
  CHECK(count_twisted_decompositions(c, Composition({2, 2})) ==
        flag_f(singer_4_2(), Composition({2, 2})));
}

TEST_CASE("psi rejects bad decompositions", "[singer]") {
  const auto F2 = Field::create(2, 1);
  const Matrix c = singer_cycle(2, F2);
  const Subspace x = Subspace::span(F2, 2, {Vec{FqElem{1}, FqElem{0}}});
  const Subspace y = Subspace::span(F2, 2, {Vec{FqElem{0}, FqElem{1}}});
  CHECK_THROWS_AS(psi(Decomposition{{x, x}}, c), std::invalid_argument);
  // V_2 = c(V_1) breaks the condition at i = 1
  const Subspace cx = x.image(c);
  REQUIRE(!(cx == x));
  const Decomposition d{{x, cx}};
  CHECK(is_direct_decomposition(d, F2, 2));
  CHECK(twisted_failure(d, c) == std::optional<std::size_t>{1});
  CHECK_THROWS_WITH(psi(d, c), Catch::Matchers::ContainsSubstring("i = 1"));
  CHECK_THROWS_AS(psi(Decomposition{{x, y}}, Matrix::identity(F2, 2)), std::invalid_argument);
  CHECK_THROWS_AS(phi({Matrix::identity(F2, 2)}, c), std::invalid_argument);
}

TEST_CASE("Chen-Tseng cross-check of two-part decompositions", "[singer]") {
  for (std::uint64_t q : {2, 3, 4})
    for (int n = 2; n <= 6; ++n)
      for (int k = 1; 2 * k <= n; ++k) {
        Int sum = 0;
        for (int d = 0; d < k; ++d) sum += chen_tseng_g(n, k, d, q) * co_complement_f(n, k, d, q);
        REQUIRE(sum == flag_formula(Composition({k, n - k}), q));
      }
}

TEST_CASE("non-lattice witness in GL_3(F_3)", "[singer]") {
  const auto F3 = Field::create(3, 1);
  const Matrix c = parse_matrix("0,0,2;1,0,1;0,1,0", F3);
  const IntervalModel m = IntervalModel::build(c);
  const auto a = m.index_of(parse_matrix("1,2,2;0,1,0;0,1,2", F3));
  const auto b = m.index_of(parse_matrix("1,2,2;0,2,1;0,2,0", F3));
  REQUIRE(a);
  REQUIRE(b);
  CHECK(m.rank_of(*a) == 1);
  CHECK(m.rank_of(*b) == 1);
  std::set<std::string> got;
  for (auto z : minimal_upper_bounds(m, *a, *b)) got.insert(format_matrix(m.element(z)));
  CHECK(got == std::set<std::string>{"1,2,2;0,1,1;0,1,0", "1,2,2;1,0,1;1,0,0",
                                     "1,2,2;2,2,1;2,2,0"});
  CHECK(lattice_witness(m).has_value());
  CHECK(!lattice_witness(IntervalModel::build(singer_cycle(2, F3))).has_value());
  CHECK(!lattice_witness(IntervalModel::build(singer_cycle(3, Field::create(2, 1)))).has_value());
}

TEST_CASE("Bareiss determinant agrees with rational elimination", "[singer]") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 7;
    std::vector<std::vector<Int>> a(n, std::vector<Int>(n));
    for (auto& row : a)
      for (auto& x : row) x = static_cast<int>(rng() % 5) - 2;
    REQUIRE(abs_determinant(a) == rational_abs_det(a));
  }
  CHECK(abs_determinant({}) == 1);
}

TEST_CASE("interval invariants distinguish the two elliptic tops", "[singer]") {
  const IntervalInvariants s = interval_invariants(singer_4_2());
  const IntervalInvariants o = interval_invariants(order5_4_2());
  CHECK(s.rank_sizes == o.rank_sizes);
  CHECK(s.incidence_det != o.incidence_det);

  // independent determinant of the rank-1 by rank-3 incidence matrices
  for (const IntervalModel* m : {&singer_4_2(), &order5_4_2()}) {
    std::vector<std::vector<Int>> inc;
    for (auto i : m->rank(1)) {
      std::vector<Int> row;
      for (auto j : m->rank(3)) row.push_back(abs_leq(m->element(i), m->element(j)) ? 1 : 0);
      inc.push_back(row);
    }
    CHECK(rational_abs_det(inc) == interval_invariants(*m).incidence_det);
  }
  CHECK(s.incidence_det == Int("573320760949506834432"));
  CHECK(o.incidence_det == Int("66244503224211476578304"));
}

TEST_CASE("conjugate and inverse tops give equal invariants", "[singer]") {
  const auto F2 = Field::create(2, 1);
  const Matrix c = singer_cycle(3, F2);
  const IntervalInvariants base = interval_invariants(IntervalModel::build(c));
  const Matrix h = parse_matrix("1,1,0;0,1,1;0,0,1", F2);
  CHECK(interval_invariants(IntervalModel::build(h * c * inverse(h))) == base);
  CHECK(interval_invariants(IntervalModel::build(inverse(c))) == base);
  CHECK(interval_invariants(IntervalModel::build(inverse(singer_4_2().top()))) ==
        interval_invariants(singer_4_2()));
}
