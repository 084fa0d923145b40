#include <algorithm>

#include "doctest.h"
#include "support/generators.hpp"
#include "qsym/central/central.hpp"
#include "qsym/weyl/weyl.hpp"

using namespace qsym;
using namespace qsym::testing;
using namespace qsym::weyl;

namespace {

// Average over all distinct orderings of the factors; factor codes < n are x, >= n are p.
WeylOperator ordering_average(std::size_t n, std::vector<std::size_t> factors) {
  std::sort(factors.begin(), factors.end());
  WeylOperator sum(n);
  long count = 0;
  do {
    WeylOperator w = WeylOperator::identity(n);
    for (std::size_t f : factors) w = w * (f < n ? WeylOperator::x(n, f) : WeylOperator::p(n, f - n));
    sum += w;
    ++count;
  } while (std::next_permutation(factors.begin(), factors.end()));
  return Rational(1, count) * sum;
}

}  // namespace

TEST_CASE("composition normal-orders") {
  const std::size_t n = 3;
  auto x1 = WeylOperator::x(n, 0), p1 = WeylOperator::p(n, 0), x2 = WeylOperator::x(n, 1), p2 = WeylOperator::p(n, 1);
  CHECK(p1 * x1 == x1 * p1 + WeylOperator::identity(n));
  CHECK((x1 * p2) * (x2 * p1) == WeylOperator::from_normal_symbol(central::x_dot_p(n).p_homogeneous_part(1) * PhasePoly(n)) + x1 * x2 * p1 * p2 + x1 * p1 - (x1 * x2 * p1 * p2 + x1 * p1) + x1 * x2 * p1 * p2 + x1 * p1 - WeylOperator::from_normal_symbol(central::x_dot_p(n).p_homogeneous_part(1) * PhasePoly(n)));
  auto inv_r = WeylOperator::multiplication(n, RadicalElement::radius(n).inverse());
  RadicalElement d = -RadicalElement::coordinate(n, 0) * RadicalElement::radius(n) *
                     RadicalElement(RadicalElement::radius_squared(n) * RadicalElement::radius_squared(n)).inverse();
  CHECK(p1 * inv_r == inv_r * p1 + WeylOperator::multiplication(n, d));
}

TEST_CASE("composition is associative") {
  Sampler s(51);
  for (int t = 0; t < 100; ++t) {
    std::size_t n = static_cast<std::size_t>(s.integer(2, 3));
    auto a = random_op(s, n), b = random_op(s, n), c = random_op(s, n);
    CHECK((a * b) * c == a * (b * c));
    CHECK((commutator(a, commutator(b, c)) + commutator(b, commutator(c, a)) + commutator(c, commutator(a, b))).is_zero());
  }
}

TEST_CASE("symmetrization matches the ordering average") {
  const std::size_t n = 2;
  CHECK(symmetrize(PhasePoly::x(n, 0) * PhasePoly::p(n, 0)) ==
        WeylOperator::x(n, 0) * WeylOperator::p(n, 0) + Rational(1, 2) * WeylOperator::identity(n));
  Sampler s(52);
  for (int t = 0; t < 100; ++t) {
    std::size_t m = static_cast<std::size_t>(s.integer(2, 3));
    std::vector<std::size_t> factors;
    PhasePoly mono = PhasePoly::constant(m, Rational(1));
    int deg = static_cast<int>(s.integer(1, 5));
    for (int d = 0; d < deg; ++d) {
      std::size_t f = static_cast<std::size_t>(s.integer(0, 2 * static_cast<long>(m) - 1));
      factors.push_back(f);
      mono = mono * (f < m ? PhasePoly::x(m, f) : PhasePoly::p(m, f - m));
    }
    CHECK(symmetrize(mono) == ordering_average(m, factors));
  }
  // functions linear in p are fixed
  CHECK(symmetrize(central::momentum(3, 0, 1)) == momentum_op(3, 0, 1));
  for (std::size_t k = 2; k <= 6; ++k)
    CHECK(p_squared_op(k) - symmetrize(central::p_squared(k)) ==
          Rational(static_cast<long>(k * (k - 1)), 4) * WeylOperator::identity(k));
}

TEST_CASE("principal symbols multiply") {
  Sampler s(53);
  for (int t = 0; t < 50; ++t) {
    std::size_t n = 3;
    auto a = random_op(s, n), b = random_op(s, n);
    if (a.is_zero() || b.is_zero()) continue;
    CHECK((a * b).principal_symbol() == a.principal_symbol() * b.principal_symbol());
  }
  auto f = central::p_squared(3) + central::x_dot_p(3);
  CHECK(symmetrize(f).principal_symbol() == f.p_homogeneous_part(2));
}

TEST_CASE("standard quantization") {
  const std::size_t n = 3;
  CHECK(standard_quantize(central::momentum(n, 0, 1)) == momentum_op(n, 0, 1));
  CHECK(commutator(momentum_op(n, 0, 1), momentum_op(n, 1, 2)) == momentum_op(n, 0, 2));
  CHECK(commutator(momentum_op(n, 0, 1), momentum_op(n, 0, 2)) == -momentum_op(n, 1, 2));
  CHECK(standard_quantize(PhasePoly::constant(n, Rational(1))) == WeylOperator::identity(n));
  CHECK_THROWS_AS(standard_quantize(central::momentum_norm2(n)), std::invalid_argument);
  Sampler s(54);
  for (int t = 0; t < 50; ++t) {
    PhasePoly f(n), g(n);
    for (std::size_t i = 0; i < n; ++i) {
      f += PhasePoly::constant(n, Rational(s.integer(-3, 3))) * PhasePoly::x(n, (i + 1) % n) * PhasePoly::p(n, i);
      g += PhasePoly::constant(n, Rational(s.integer(-3, 3))) * PhasePoly::x(n, i) * PhasePoly::x(n, i) * PhasePoly::p(n, (i + 2) % n);
    }
    f += PhasePoly::radius(n);
    CHECK(commutator(standard_quantize(f), standard_quantize(g)) == standard_quantize(poisson::canonical_bracket(f, g)));
  }
}

TEST_CASE("quantum central force suite") {
  for (std::size_t n = 2; n <= 4; ++n) {
    QuantumCentralConfig cfg;
    cfg.n = n;
    auto rep = quantum_central_force_suite(cfg);
    for (const auto& c : rep.checks) {
      INFO(c.id, ": ", c.witness);
      CHECK(c.status != report::Status::Fail);
    }
  }
}
