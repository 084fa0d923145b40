#include "doctest.h"
#include "qsym/son/moments.hpp"
#include "qsym/son/so_algebra.hpp"

using namespace qsym;
using namespace qsym::son;

namespace {

Matrix<Rational> commutator(const Matrix<Rational>& a, const Matrix<Rational>& b) { return a * b - b * a; }

SkewMatrix<Rational> generator(const SoAlgebra& g, std::size_t a) {
  SkewMatrix<Rational> s(g.n());
  s.upper()[a] = Rational(1);
  return s;
}

}  // namespace

TEST_CASE("structure constants match matrix commutators") {
  for (std::size_t n = 2; n <= 6; ++n) {
    SoAlgebra g(n);
    CHECK(g.dim() == n * (n - 1) / 2);
    for (std::size_t a = 0; a < g.dim(); ++a)
      for (std::size_t b = 0; b < g.dim(); ++b) {
        auto [i, j] = g.pair(a);
        auto [h, k] = g.pair(b);
        Matrix<Rational> expect = commutator(basis_element(n, i, j), basis_element(n, h, k));
        Matrix<Rational> got(n, n);
        if (auto c = g.bracket(a, b)) {
          auto [x, y] = g.pair(c->index);
          got = Rational(c->sign) * basis_element(n, x, y);
        }
        CHECK(got == expect);
      }
  }
}

TEST_CASE("named brackets") {
  SoAlgebra g(3);
  auto d12 = g.index(0, 1), d13 = g.index(0, 2), d23 = g.index(1, 2);
  auto c = g.bracket(d12, d23);
  REQUIRE(c);
  CHECK(c->sign == 1);
  CHECK(c->index == d13);
  c = g.bracket(d12, d13);
  REQUIRE(c);
  CHECK(c->sign == -1);
  CHECK(c->index == d23);
  CHECK(g.label(d23) == "2_3");
  CHECK(basis_element(3, 1, 1) == Matrix<Rational>(3, 3));
}

TEST_CASE("jacobi identity for structure constants") {
  Sampler s(21);
  for (int t = 0; t < 100; ++t) {
    std::size_t n = static_cast<std::size_t>(s.integer(2, 6));
    SoAlgebra g(n);
    auto a = random_skew(n, s, 20), b = random_skew(n, s, 20), c = random_skew(n, s, 20);
    auto j = bracket(g, a, bracket(g, b, c));
    auto k = bracket(g, b, bracket(g, c, a));
    auto l = bracket(g, c, bracket(g, a, b));
    for (std::size_t x = 0; x < g.dim(); ++x) CHECK((j.upper()[x] + k.upper()[x] + l.upper()[x]).is_zero());
    CHECK(bracket(g, a, b).dense() == commutator(a.dense(), b.dense()));
  }
}

TEST_CASE("centralizer of a generic element has dimension floor(n/2)") {
  Sampler s(22);
  for (int t = 0; t < 100; ++t) {
    std::size_t n = static_cast<std::size_t>(s.integer(2, 7));
    SoAlgebra g(n);
    CHECK(ad_kernel_dim(g, random_skew(n, s)) == n / 2);
  }
  // D^{12} is not regular: its centralizer contains so(3) on the last three indices.
  SoAlgebra g5(5);
  CHECK(ad_kernel_dim(g5, generator(g5, 0)) == 4);
}

TEST_CASE("sigma triple at random points") {
  Sampler s(23);
  SoAlgebra g6(6);
  auto spec = MomentSpec::symbolic({1, 2, 3});
  auto st = sigma_triple(g6, random_skew(6, s), spec.equal_pairs());
  CHECK(st.s1 == 11);
  CHECK(st.s2 == 2);
  CHECK(st.s3 == 0);
  spec = MomentSpec::symbolic({2, 4});
  st = sigma_triple(g6, random_skew(6, s), spec.equal_pairs());
  CHECK(st.s1 == 8);
  CHECK(st.s2 == 3);
  CHECK(st.s3 == 0);
  for (std::size_t n = 2; n <= 6; ++n) {
    SoAlgebra g(n);
    auto whole = MomentSpec::symbolic({n});
    st = sigma_triple(g, random_skew(n, s), whole.equal_pairs());
    CHECK(st.s1 == n / 2);
    CHECK(st.s2 == n / 2);
    CHECK(st.s3 == n / 2);
  }
}

TEST_CASE("casimir coefficients") {
  SkewMatrix<Rational> a(4);
  a.set(0, 1, Rational(1));
  a.set(2, 3, Rational(2));
  CHECK(casimir_set(a) == std::vector<Rational>{5, 4});

  Sampler s(24);
  for (int t = 0; t < 100; ++t) {
    std::size_t n = static_cast<std::size_t>(s.integer(2, 6));
    auto m = random_skew(n, s, 50);
    Rational sq;
    for (const auto& v : m.upper()) sq += v * v;
    auto cs = casimir_set(m);
    CHECK(cs[0] == sq);
    // odd coefficients vanish
    auto cp = char_poly(m.dense());
    for (std::size_t k = 1; k <= n; k += 2) CHECK(cp[k].is_zero());
    // invariance under orthogonal conjugation
    auto x = cayley_orthogonal(random_skew(n, s, 50));
    REQUIRE(x);
    CHECK(casimir_set(right_from_left(*x, m)) == cs);
  }
}

TEST_CASE("cayley chart") {
  SkewMatrix<Rational> s2(2);
  s2.set(0, 1, Rational(1));
  auto x = cayley_orthogonal(s2);
  REQUIRE(x);
  Matrix<Rational> expect(2, 2);
  expect(0, 1) = -1;
  expect(1, 0) = 1;
  CHECK(*x == expect);

  Sampler s(25);
  for (int t = 0; t < 20; ++t) {
    auto sk = random_skew(4, s, 100);
    auto y = cayley_orthogonal(sk);
    REQUIRE(y);
    CHECK(*y * y->transpose() == Matrix<Rational>::identity(4));
  }
  Matrix<Rational> bad = Matrix<Rational>::identity(3);
  bad(0, 1) = 1;
  CHECK_THROWS(right_from_left(bad, SkewMatrix<Rational>(3)));
}

TEST_CASE("moment specs") {
  auto spec = MomentSpec::explicit_values({Rational(2), Rational(1), Rational(2), Rational(3)});
  CHECK(spec.q() == std::vector<std::size_t>{1, 1, 2});
  CHECK(spec.d() == 2);
  SoAlgebra g(4);
  CHECK(spec.equal_pairs() == std::vector<std::size_t>{g.index(0, 2)});
  auto sym = MomentSpec::symbolic({3, 1, 2});
  CHECK(sym.q() == std::vector<std::size_t>{1, 2, 3});
  CHECK(sym.lambda<RationalFunction>(5) == RationalFunction::variable(3, 2));
  CHECK_THROWS(sym.lambda<Rational>(0));
  CHECK_THROWS(MomentSpec::explicit_values({Rational(1), Rational(-1)}));
}
