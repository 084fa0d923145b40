#include <algorithm>
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "qsym/core/sampler.hpp"
#include "qsym/dynamics/euler.hpp"
#include "qsym/rigid/rigid.hpp"

using namespace qsym;
using namespace qsym::dynamics;

namespace {

std::vector<double> random_upper(Sampler& s, std::size_t n) {
  std::vector<double> u;
  for (std::size_t a = 0; a < n * (n - 1) / 2; ++a) u.push_back(s.uniform(-1.0, 1.0));
  return u;
}

std::vector<Rational> rationals(std::initializer_list<long> v) {
  std::vector<Rational> out;
  for (long x : v) out.push_back(Rational(x));
  return out;
}

std::vector<double> to_doubles(const std::vector<Rational>& v) {
  std::vector<double> out;
  for (const auto& x : v) out.push_back(x.to_double());
  return out;
}

double max_drift(const std::vector<DriftEntry>& d) {
  double m = 0.0;
  for (const auto& e : d) m = std::max(m, e.drift);
  return m;
}

// n = 4, moments (1,2,3,4), momentum entries uniform in [-1, 1] from seed 7.
FlowState reference_state() {
  Sampler s(7);
  return FlowState::from_upper({1, 2, 3, 4}, random_upper(s, 4));
}

}  // namespace

TEST_CASE("euler right-hand side examples") {
  Sampler s(11);
  auto equal = FlowState::from_upper({2, 2, 2, 2}, random_upper(s, 4));
  auto rhs = euler_rhs(equal.P, equal.lambda);
  CHECK(std::all_of(rhs.begin(), rhs.end(), [](double v) { return v == 0.0; }));

  auto plane = FlowState::from_upper({1, 2, 3}, {1.0, 0.0, 0.0});
  rhs = euler_rhs(plane.P, plane.lambda);
  CHECK(std::all_of(rhs.begin(), rhs.end(), [](double v) { return v == 0.0; }));

  // P_12 = P_23 = 1: dP_13/dt = -(1 - 3) P_12 P_23 / ((1 + 2)(2 + 3)) = 2/15
  auto two = FlowState::from_upper({1, 2, 3}, {1.0, 0.0, 1.0});
  rhs = euler_rhs(two.P, two.lambda);
  CHECK(rhs[0 * 3 + 2] == doctest::Approx(2.0 / 15.0).epsilon(1e-15));
  CHECK(rhs[2 * 3 + 0] == -rhs[0 * 3 + 2]);

  CHECK_THROWS_AS(euler_rhs(two.P, {1, 0, 3}), std::invalid_argument);
  CHECK_THROWS_AS(euler_rhs(two.P, {1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(FlowState::from_upper({1, 2, 3}, {1.0}), std::invalid_argument);
}

TEST_CASE("property: the flow is skew and conserves the quadratic Casimir") {
  Sampler s(901);
  for (int t = 0; t < 100; ++t) {
    const auto n = static_cast<std::size_t>(s.integer(3, 7));
    std::vector<double> lam;
    for (std::size_t i = 0; i < n; ++i) lam.push_back(s.uniform(0.1, 5.0));
    auto st = FlowState::from_upper(lam, random_upper(s, n));
    auto rhs = euler_rhs(st.P, lam);
    double deriv = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        CHECK(rhs[i * n + j] == -rhs[j * n + i]);
        deriv += st.P[i * n + j] * rhs[i * n + j];
        scale += std::abs(st.P[i * n + j] * rhs[i * n + j]);
      }
    INFO("case ", t);
    CHECK(std::abs(deriv) <= 1e-12 * std::max(1.0, scale));
  }
}

TEST_CASE("property: binary64 right-hand side agrees with the exact bracket") {
  Sampler s(902);
  for (int t = 0; t < 100; ++t) {
    const auto n = static_cast<std::size_t>(s.integer(3, 6));
    const son::SoAlgebra g(n);
    auto lam = s.distinct_positive(n, 9);
    auto upper = s.rationals(g.dim(), 9);
    auto spec = son::MomentSpec::explicit_values(lam);
    auto rhs = euler_rhs(FlowState::from_upper(to_doubles(lam), to_doubles(upper)).P, to_doubles(lam));
    for (std::size_t a = 0; a < g.dim(); ++a) {
      auto [i, j] = g.pair(a);
      // dP_ij/dt = {P_ij, H} = -{H, P_ij}
      const double exact = (-rigid::euler_rhs<Rational>(g, spec, i, j).evaluate(upper)).to_double();
      INFO("case ", t, " entry ", g.label(a));
      CHECK(std::abs(rhs[i * n + j] - exact) <= 1e-13 * std::max(1.0, std::abs(exact)));
    }
  }
}

TEST_CASE("integration basics") {
  auto zero = FlowState::from_upper({1, 2, 3, 4}, std::vector<double>(6, 0.0));
  auto traj = integrate(zero, {0.01, 100, 10});
  CHECK(traj.times.size() == 11);
  for (const auto& u : traj.upper) CHECK(std::all_of(u.begin(), u.end(), [](double v) { return v == 0.0; }));
  CHECK(traj.times.back() == doctest::Approx(1.0));

  auto odd = integrate(zero, {0.01, 25, 10});
  CHECK(odd.times.size() == 4);

  auto st = reference_state();
  auto a = integrate(st, {0.01, 200, 7});
  auto b = integrate(st, {0.01, 200, 7});
  CHECK(a.upper == b.upper);

  CHECK_THROWS_AS(integrate(st, {0.0, 10, 1}), std::invalid_argument);
  CHECK_THROWS_AS(integrate(st, {0.1, 10, 0}), std::invalid_argument);

  auto huge = FlowState::from_upper({1, 2, 3}, {1e200, 1e200, 1e200});
  try {
    integrate(huge, {1.0, 5, 1});
    FAIL("expected a non-finite state");
  } catch (const NonFiniteError& e) {
    CHECK(e.step() == 1);
  }
}

TEST_CASE("energy drift for n = 3") {
  Sampler s(5);
  auto st = FlowState::from_upper({1, 2, 3}, random_upper(s, 3));
  auto inv = rigid_invariants(rationals({1, 2, 3}));
  auto drift = conservation_report(integrate(st, {1e-3, 10000, 1}), inv);
  CHECK(drift.front().label == "H");
  CHECK(drift.front().drift < 1e-9);
}

TEST_CASE("conservation for n = 4 and the negative control") {
  auto inv = rigid_invariants(rationals({1, 2, 3, 4}));
  std::vector<std::string> labels;
  for (const auto& i : inv) labels.push_back(i.label());
  CHECK(labels == std::vector<std::string>{"H", "c_2_0", "c_3_1", "c_4_2", "c_4_0"});
  inv.emplace_back("P_1_2", poisson::momentum<Rational>(son::SoAlgebra(4), 0, 1));
  auto traj = integrate(reference_state(), {1e-3, 10000, 1});
  auto drift = conservation_report(traj, inv);
  for (std::size_t k = 0; k + 1 < drift.size(); ++k) {
    INFO(drift[k].label);
    CHECK(drift[k].drift < 1e-6);
  }
  CHECK(drift.back().drift > 1e-3);
}

TEST_CASE("fourth-order convergence of the invariant drift") {
  // At dt = 1e-3 the drift is at round-off level, so the order is measured at coarser steps.
  auto inv = rigid_invariants(rationals({1, 2, 3, 4}));
  auto coarse = max_drift(conservation_report(integrate(reference_state(), {0.1, 100, 1}), inv));
  auto fine = max_drift(conservation_report(integrate(reference_state(), {0.05, 200, 1}), inv));
  const double ratio = coarse / fine;
  INFO("ratio ", ratio);
  CHECK(ratio >= 12.0);
  CHECK(ratio <= 20.0);
}

TEST_CASE("equal moments give zero dynamics") {
  auto st = FlowState::from_upper({2, 2, 2, 2}, {0.3, -0.2, 0.7, 0.1, 0.5, -0.9});
  auto drift = conservation_report(integrate(st, {1e-3, 1000, 100}), rigid_invariants(rationals({2, 2, 2, 2})));
  for (const auto& d : drift) CHECK(d.drift == 0.0);
}

TEST_CASE("trajectory CSV") {
  auto st = FlowState::from_upper({1, 2, 3}, {0.5, -0.25, 1.0});
  auto traj = integrate(st, {0.5, 2, 1});
  std::ostringstream out;
  write_csv(out, traj, rigid_invariants(rationals({1, 2, 3})));
  std::istringstream in(out.str());
  std::string header, row;
  std::getline(in, header);
  CHECK(header == "t,P_1_2,P_1_3,P_2_3,H,c_2_0,c_3_1");
  std::getline(in, row);
  CHECK(row.rfind("0,0.5,-0.25,1,", 0) == 0);
  std::size_t rows = 1;
  while (std::getline(in, row)) ++rows;
  CHECK(rows == 3);
}
