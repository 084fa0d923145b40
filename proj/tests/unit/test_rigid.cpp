#include "doctest.h"
#include "qsym/rigid/rigid.hpp"

using namespace qsym;
using namespace qsym::rigid;
using poisson::Side;

namespace {

// Oracle: coefficients of (1/2k) Tr(P + J^2 rho)^k in rho, expanded by words in P and J^2.
template <class K>
std::vector<LiePoissonPoly<K>> trace_coefficients(const SoAlgebra& g, const MomentSpec& spec, std::size_t k) {
  const std::size_t n = g.n();
  using M = Matrix<LiePoissonPoly<K>>;
  M p(n, n), j2(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) p(a, b) = poisson::momentum<K>(g, a, b);
    K l = spec.lambda<K>(a);
    j2(a, a) = LiePoissonPoly<K>::constant(g.dim(), l * l);
  }
  // words[j] = sum of all words of the current length with j factors J^2
  std::vector<M> words{M::identity(n)};
  for (std::size_t len = 1; len <= k; ++len) {
    std::vector<M> next(len + 1, M(n, n));
    for (std::size_t j = 0; j <= len; ++j) {
      if (j < words.size()) next[j] = next[j] + words[j] * p;
      if (j >= 1) next[j] = next[j] + words[j - 1] * j2;
    }
    words = std::move(next);
  }
  std::vector<LiePoissonPoly<K>> out;
  for (std::size_t j = 0; j <= k; ++j) {
    LiePoissonPoly<K> tr(g.dim());
    for (std::size_t a = 0; a < n; ++a) tr += words[j](a, a);
    out.push_back(tr * (K(1) / K(static_cast<long>(2 * k))));
  }
  return out;
}

std::vector<Rational> rationals(std::initializer_list<long> v) {
  std::vector<Rational> out;
  for (long x : v) out.push_back(Rational(x));
  return out;
}

}  // namespace

TEST_CASE("manakov coefficients") {
  auto spec = MomentSpec::symbolic({1, 1, 1, 1});
  auto l2 = [&](std::size_t i) { return spec.lambda<RationalFunction>(i) * spec.lambda<RationalFunction>(i); };
  CHECK(manakov_coefficient<RationalFunction>({3, 1}, {0, 1}, spec) == l2(0) + l2(1));
  CHECK(manakov_coefficient<RationalFunction>({5, 2}, {0, 1, 2, 3}, spec) == l2(0) + l2(1) + l2(2) + l2(3));
  CHECK(manakov_coefficient<RationalFunction>({2, 1}, {0, 1}, spec) == RationalFunction(1));
  // l = 1 closed form (x^{k-1} - y^{k-1}) / (x - y) in the squares
  for (std::size_t k = 2; k <= 6; ++k) {
    auto lhs = manakov_coefficient<RationalFunction>({k, 1}, {1, 3}, spec);
    CHECK(lhs * (l2(1) - l2(3)) == l2(1).pow(static_cast<unsigned>(k - 1)) - l2(3).pow(static_cast<unsigned>(k - 1)));
  }
  CHECK(manakov_indices(4).size() == 4);
  CHECK(manakov_indices(6).size() == 9);
  CHECK(manakov_indices(5).back().label() == "c_5_1");
}

TEST_CASE("manakov integrals match the trace generating polynomial") {
  for (std::size_t n = 3; n <= 5; ++n) {
    SoAlgebra g(n);
    std::vector<Rational> lam;
    for (std::size_t i = 0; i < n; ++i) lam.push_back(Rational(static_cast<long>(2 * i + 1), 3));
    auto spec = MomentSpec::explicit_values(lam);
    for (std::size_t k = 2; k <= n; ++k) {
      auto coeffs = trace_coefficients<Rational>(g, spec, k);
      for (std::size_t l = 1; 2 * l <= k; ++l) CHECK(manakov_integral<Rational>(g, {k, l}, spec) == coeffs[k - 2 * l]);
      // odd gaps vanish
      for (std::size_t j = k - 1; j + 1 > 0 && j < k; j -= 2) CHECK(coeffs[j].is_zero());
    }
  }
  SoAlgebra g3(3);
  auto sym = MomentSpec::symbolic({1, 1, 1});
  auto coeffs = trace_coefficients<RationalFunction>(g3, sym, 3);
  auto c31 = manakov_integral<RationalFunction>(g3, {3, 1}, sym);
  CHECK(c31 == coeffs[1]);
  // c_{3,1} = -1/2 sum (l_i^2 + l_j^2) P_ij^2
  LiePoissonPoly<RationalFunction> expect(g3.dim());
  for (std::size_t a = 0; a < g3.dim(); ++a) {
    auto [i, j] = g3.pair(a);
    auto li = sym.lambda<RationalFunction>(i), lj = sym.lambda<RationalFunction>(j);
    auto p = poisson::momentum<RationalFunction>(g3, i, j);
    expect += p * p * (RationalFunction(Rational(-1, 2)) * (li * li + lj * lj));
  }
  CHECK(c31 == expect);

  SoAlgebra g5(5);
  auto c20 = manakov_integral<Rational>(g5, {2, 1}, MomentSpec::symbolic({5}).specialize(rationals({2})));
  CHECK(c20 == poisson::momentum_square<Rational>(g5, {0, 1, 2, 3, 4}) * Rational(-1, 2));
}

TEST_CASE("hamiltonian and euler brackets") {
  SoAlgebra g(4);
  auto equal = MomentSpec::explicit_values(rationals({3, 3, 3, 3}));
  CHECK(hamiltonian<Rational>(g, equal) == poisson::momentum_square<Rational>(g, {0, 1, 2, 3}) * Rational(1, 12));
  for (std::size_t a = 0; a < g.dim(); ++a) {
    auto [i, j] = g.pair(a);
    CHECK(euler_rhs<Rational>(g, equal, i, j).is_zero());
  }
  auto sym = MomentSpec::symbolic({1, 1, 1, 1});
  RigidFunction<RationalFunction> h{Side::Left, hamiltonian<RationalFunction>(g, sym), "H"};
  CHECK(h.poly.size() == 6);
  for (std::size_t a = 0; a < g.dim(); ++a) {
    auto [i, j] = g.pair(a);
    RigidFunction<RationalFunction> p{Side::Left, poisson::momentum<RationalFunction>(g, i, j), "P"};
    CHECK(rigid_bracket(g, h, p) == euler_rhs<RationalFunction>(g, sym, i, j));
    RigidFunction<RationalFunction> pr{Side::Right, p.poly, "PR"};
    CHECK(rigid_bracket(g, h, pr).is_zero());
  }
}

TEST_CASE("hamiltonian as a combination of quadratic integrals") {
  SoAlgebra g(3);
  auto spec = MomentSpec::explicit_values(rationals({1, 2, 3}));
  auto beta = hamiltonian_combination<Rational>(g, spec);
  REQUIRE(beta);
  REQUIRE(beta->size() == 2);
  CHECK((*beta)[0] == Rational(-5, 12));
  CHECK((*beta)[1] == Rational(1, 60));
  auto sym = MomentSpec::symbolic({1, 1, 1});
  auto sb = hamiltonian_combination<RationalFunction>(g, sym);
  REQUIRE(sb);
  std::vector<Rational> at = rationals({1, 2, 3});
  CHECK((*sb)[0].evaluate(at) == Rational(-5, 12));
  CHECK((*sb)[1].evaluate(at) == Rational(1, 60));
}

TEST_CASE("counting closed forms") {
  CHECK(centrality_defect({1, 2, 3}) == Counts{19, 5, 6, 8});
  CHECK(centrality_defect({2, 2}) == Counts{8, 4, 0, 4});
  CHECK(centrality_defect({1, 1, 1}) == Counts{3, 1, 2, 2});
  CHECK(centrality_defect({4}) == Counts{10, 2, 0, 2});
  CHECK(centrality_defect({1, 1, 1, 1}) == Counts{6, 2, 4, 4});
  CHECK(centrality_defect({1, 2, 2}).kbar == 6);
  CHECK(centrality_defect({1, 1, 1, 1, 1, 1}) == Counts{15, 3, 12, 9});
  // defect is even and kbar = k + r/2 for every partition up to n = 12
  for (std::size_t n = 2; n <= 12; ++n)
    for (const auto& q : partitions(n)) {
      auto c = centrality_defect(q);
      INFO(n, " ", partition_label(q));
      CHECK(c.r % 2 == 0);
      CHECK(c.kbar == c.k + c.r / 2);
    }
  CHECK(partitions(6).size() == 11);
  CHECK(partition_label(partitions(5)[2]) == "(2,3)");
  auto table = rigid_table(6);
  CHECK(table.size() == 26);
}

TEST_CASE("closed forms agree with kernel dimensions and jacobians") {
  Sampler s(61);
  for (std::size_t n = 2; n <= 5; ++n)
    for (const auto& q : partitions(n)) {
      INFO(partition_label(q));
      auto closed = centrality_defect(q);
      CHECK(centrality_defect_from_kernels(q, s) == closed);
      CHECK(centrality_defect_from_jacobian(q, s) == closed);
    }
}

TEST_CASE("assembled integrable sets") {
  Sampler s(62);
  SoAlgebra g3(3);
  auto pt = poisson::sample_rigid_point(g3, s);
  auto set = assemble_integrable_set(g3, MomentSpec::explicit_values(rationals({1, 2, 3})), pt);
  CHECK(set.central().size() == 2);
  CHECK(set.manakov.front().label == "c_3_1");
  CHECK(set.noncentral.size() == 2);
  CHECK(set.all().size() == 4);

  SoAlgebra g4(4);
  auto pt4 = poisson::sample_rigid_point(g4, s);
  auto deg = assemble_integrable_set(g4, MomentSpec::explicit_values(rationals({2, 2, 2, 2})), pt4);
  CHECK(deg.manakov.empty());
  CHECK(deg.z.size() == 2);
  CHECK(deg.all().size() == 10);
  auto dist = assemble_integrable_set(g4, MomentSpec::explicit_values(rationals({1, 2, 3, 5})), pt4);
  CHECK(dist.manakov.size() == 2);
  CHECK(poisson::jacobian_rank(g4, dist.all(), pt4) == 12 - 4);
  CHECK_THROWS_AS(assemble_integrable_set(g4, MomentSpec::symbolic({1, 3}), pt4), std::invalid_argument);
}

TEST_CASE("classical rigid body suites") {
  for (std::size_t n = 3; n <= 4; ++n)
    for (const auto& q : partitions(n)) {
      ClassicalRigidConfig cfg;
      cfg.n = n;
      cfg.q = q;
      cfg.seed = 70 + n;
      cfg.samples = 2;
      auto rep = verify_classical_rigid(cfg);
      for (const auto& c : rep.checks) {
        INFO(c.id, ": ", c.witness);
        CHECK(c.status != report::Status::Fail);
      }
    }
  ClassicalRigidConfig cfg;
  cfg.lambda = rationals({1, 2, 2, 7});
  auto rep = verify_classical_rigid(cfg);
  CHECK(rep.passed());
  cfg = {};
  cfg.n = 4;
  cfg.mode = Mode::Sampled;
  cfg.samples = 2;
  CHECK(verify_classical_rigid(cfg).passed());
}
