// Acceptance run: one PASS/FAIL line per criterion, with its runtime budget.
//
// Usage: acceptance [--expect-fail ID,ID,...]
// Exit code 0 when the set of failing criteria equals the expected set, 1 otherwise.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "qsym/central/central.hpp"
#include "qsym/core/sampler.hpp"
#include "qsym/dynamics/euler.hpp"
#include "qsym/report/report.hpp"
#include "qsym/rigid/rigid.hpp"
#include "qsym/son/so_algebra.hpp"
#include "qsym/uea/quantum_rigid.hpp"
#include "qsym/weyl/weyl.hpp"
#include "support/generators.hpp"

using namespace qsym;

namespace {

constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
  bool ok = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double limit_s;
  std::function<Outcome()> run;
};

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

// Checks whose id ends in `suffix`; false when none exists or any of them failed.
bool passes(const report::VerificationReport& rep, const std::string& suffix, std::size_t at_least = 1) {
  std::size_t found = 0;
  for (const auto& c : rep.checks) {
    if (c.id.size() < suffix.size() || c.id.compare(c.id.size() - suffix.size(), suffix.size(), suffix) != 0)
      continue;
    if (c.status == report::Status::Fail) return false;
    ++found;
  }
  return found >= at_least;
}

std::vector<std::string> failed_ids(const report::VerificationReport& rep) {
  std::vector<std::string> out;
  for (const auto& c : rep.checks)
    if (c.status == report::Status::Fail) out.push_back(c.id);
  return out;
}

// ---- 1: rigid-body counting table ------------------------------------------------------

struct ReferenceRigidRow {
  std::size_t n;
  std::vector<std::size_t> q;
  std::size_t k, r, kbar;
};

// Reference values of the rigid-body counting table, frozen in row order.
const std::vector<ReferenceRigidRow> kReferenceRigidRows = {
    {3, {3}, 1, 0, 1},          {3, {1, 2}, 2, 0, 2},          {3, {1, 1, 1}, 1, 2, 2},
    {4, {4}, 2, 0, 2},          {4, {1, 3}, 3, 0, 3},          {4, {2, 2}, 4, 0, 4},
    {4, {1, 1, 2}, 3, 2, 4},    {4, {1, 1, 1, 1}, 2, 6, 5},    {5, {5}, 2, 0, 2},
    {5, {1, 4}, 4, 0, 4},       {5, {2, 3}, 4, 2, 5},          {5, {1, 1, 3}, 3, 4, 5},
    {5, {1, 2, 2}, 4, 4, 6},    {5, {1, 1, 1, 2}, 3, 6, 6},    {5, {1, 1, 1, 1, 1}, 2, 8, 6},
    {6, {6}, 3, 0, 3},          {6, {1, 5}, 5, 0, 5},          {6, {2, 4}, 6, 2, 7},
    {6, {3, 3}, 6, 2, 7},       {6, {1, 1, 4}, 5, 4, 7},       {6, {1, 2, 3}, 5, 6, 8},
    {6, {1, 1, 1, 3}, 4, 8, 8}, {6, {1, 1, 2, 2}, 5, 8, 9},    {6, {1, 1, 1, 1, 2}, 4, 10, 9},
    {6, {1, 1, 1, 1, 1, 1}, 3, 12, 9},
};

std::string triple(std::size_t k, std::size_t r, std::size_t kbar) {
  return std::to_string(k) + "," + std::to_string(r) + "," + std::to_string(kbar);
}

Outcome rigid_table_counts() {
  constexpr std::size_t kPoints = 3;
  Outcome out;
  Sampler sampler(kSeed);
  std::size_t routes_agree = 0, partitions_seen = 0;
  std::vector<std::string> route_failures;
  for (std::size_t n = 3; n <= 6; ++n)
    for (const auto& q : rigid::partitions(n)) {
      ++partitions_seen;
      const auto closed = rigid::centrality_defect(q);
      bool agree = true;
      for (std::size_t p = 0; p < kPoints; ++p) {
        agree = agree && rigid::centrality_defect_from_kernels(q, sampler) == closed;
        agree = agree && rigid::centrality_defect_from_jacobian(q, sampler) == closed;
      }
      if (agree) ++routes_agree;
      else route_failures.push_back("n=" + std::to_string(n) + " q=" + rigid::partition_label(q));
    }

  std::size_t matched = 0;
  std::vector<std::string> mismatches, missing;
  for (const auto& row : kReferenceRigidRows) {
    const auto c = rigid::centrality_defect(row.q);
    if (c.k == row.k && c.r == row.r && c.kbar == row.kbar) {
      ++matched;
      continue;
    }
    mismatches.push_back("n=" + std::to_string(row.n) + " q=" + rigid::partition_label(row.q) + " reference " +
                         triple(row.k, row.r, row.kbar) + " computed " + triple(c.k, c.r, c.kbar));
  }
  for (std::size_t n = 3; n <= 6; ++n)
    for (const auto& q : rigid::partitions(n)) {
      bool listed = std::any_of(kReferenceRigidRows.begin(), kReferenceRigidRows.end(),
                                [&](const ReferenceRigidRow& r) { return r.n == n && r.q == q; });
      if (!listed) missing.push_back("n=" + std::to_string(n) + " q=" + rigid::partition_label(q));
    }

  out.ok = mismatches.empty() && route_failures.empty();
  std::ostringstream d;
  d << matched << "/" << kReferenceRigidRows.size() << " reference rows match the closed forms (k,r,kbar); "
    << "kernel and Jacobian routes agree with the closed forms on " << routes_agree << "/" << partitions_seen
    << " partitions at " << kPoints << " points each";
  if (!mismatches.empty()) d << "; mismatch: " << join(mismatches, "; ");
  if (!route_failures.empty()) d << "; route disagreement: " << join(route_failures, "; ");
  if (!missing.empty()) d << "; not in the reference rows: " << join(missing, "; ");
  out.detail = d.str();
  return out;
}

// ---- 2: central-force tables ------------------------------------------------------------

struct ReferenceCentralRow {
  std::size_t n;
  std::string set;
  std::size_t k;
};

// Reference sets of the n=4 and n=5 central-force tables, frozen in row order.
const std::vector<ReferenceCentralRow> kReferenceCentralRows = {
    {4, "(H, P^2; P_13, P_14, P_23, P_24)", 2},
    {4, "(H, P^2, P^2_(123); P_12, P_13)", 3},
    {4, "(H, P^2, P^2_(123), P_12)", 4},
    {4, "(H, P^2, P_12, P_34)", 4},
    {5, "(H, P^2; P_13, P_14, P_15, P_23, P_24, P_25)", 2},
    {5, "(H, P^2, P^2_(1234); P_13, P_14, P_23, P_24)", 3},
    {5, "(H, P^2, P^2_(1234), P^2_(123); P_13, P_23)", 4},
    {5, "(H, P^2, P^2_(1234), P^2_(123), P_12)", 5},
    {5, "(H, P^2, P^2_(1234), P_12, P_34)", 5},
    {5, "(H, P^2, P^2_(123), P_45; P_12, P_13)", 4},
    {5, "(H, P^2, P^2_(123), P_45, P_12)", 5},
};

Outcome central_tables() {
  constexpr std::size_t kPoints = 3;
  Outcome out;
  std::vector<std::string> problems;
  std::size_t matched = 0, verified_checks = 0;
  for (std::size_t n : {4u, 5u}) {
    const auto rows = central::central_table(n);
    std::vector<ReferenceCentralRow> reference;
    for (const auto& r : kReferenceCentralRows)
      if (r.n == n) reference.push_back(r);
    if (rows.size() != reference.size())
      problems.push_back("n=" + std::to_string(n) + ": " + std::to_string(rows.size()) + " rows emitted");
    for (std::size_t i = 0; i < std::min(rows.size(), reference.size()); ++i) {
      const auto set = rows[i].set.render();
      if (set == reference[i].set && rows[i].k == reference[i].k) ++matched;
      else problems.push_back("n=" + std::to_string(n) + " row " + std::to_string(i + 1) + ": " + set + " k=" +
                              std::to_string(rows[i].k));
    }
    const auto rep = central::verify_central_tables(n, kPoints, kSeed);
    verified_checks += rep.checks.size();
    for (const auto& id : failed_ids(rep)) problems.push_back(id);
  }
  out.ok = problems.empty();
  out.detail = std::to_string(matched) + "/" + std::to_string(kReferenceCentralRows.size()) +
               " reference sets and k values reproduced; " + std::to_string(verified_checks) +
               " involution and Jacobian-rank checks at " + std::to_string(kPoints) + " points";
  if (!problems.empty()) out.detail += "; problems: " + join(problems, "; ");
  return out;
}

// ---- 3: classical Manakov integrals ------------------------------------------------------

Outcome classical_manakov() {
  Outcome out;
  std::vector<std::string> problems;
  std::size_t checks = 0;
  for (std::size_t n = 3; n <= 6; ++n) {
    rigid::ClassicalRigidConfig cfg;
    cfg.n = n;
    cfg.mode = rigid::Mode::Symbolic;  // quartic pairs switch to sampled moments at n = 6
    cfg.samples = 3;
    cfg.seed = kSeed;
    const auto rep = rigid::verify_classical_rigid(cfg);
    checks += rep.checks.size();
    for (const auto& id : failed_ids(rep)) problems.push_back(id);
    for (const char* required : {"euler-bracket", "manakov/hamiltonian", "manakov/mutual-quadratic"})
      if (!passes(rep, required)) problems.push_back("n=" + std::to_string(n) + " missing " + required);
    if (n == 5 && !passes(rep, "manakov/mutual-quartic")) problems.push_back("n=5 missing symbolic quartic pairs");
    if (n == 6) {
      std::size_t sampled = 0;
      for (const auto& c : rep.checks)
        if (c.id.find("manakov/mutual-quartic/sample") != std::string::npos && c.status == report::Status::Pass)
          ++sampled;
      if (sampled < 3) problems.push_back("n=6 has " + std::to_string(sampled) + " sampled quartic checks");
    }
  }
  out.ok = problems.empty();
  out.detail = std::to_string(checks) +
               " checks: brackets with H and pairwise brackets exact in Q(lambda) for n=3..5, quartic pairs at 3 "
               "distinct rational moment samples for n=6, Euler bracket closed form symbolic for n=3..6";
  if (!problems.empty()) out.detail += "; problems: " + join(problems, "; ");
  return out;
}

// ---- 4: quantum central force ---------------------------------------------------------------

Outcome quantum_central() {
  Outcome out;
  std::vector<std::string> problems;
  std::size_t checks = 0;
  auto run = [&](std::size_t n, long alpha) {
    weyl::QuantumCentralConfig cfg;
    cfg.n = n;
    cfg.alpha = Rational(alpha);
    cfg.max_tree_depth = 3;
    cfg.seed = kSeed;
    const auto rep = weyl::quantum_central_force_suite(cfg);
    checks += rep.checks.size();
    for (const auto& id : failed_ids(rep)) problems.push_back(id);
    std::vector<std::string> required = {"symmetrization-constant", "laplacian-r2", "p-squared"};
    if (n == 3) required.insert(required.end(), {"runge-lenz/conserved", "runge_lenz_square"});
    if (n >= 3 && n <= 5) required.push_back("recursive/commute");
    for (const auto& r : required)
      if (!passes(rep, r)) problems.push_back("n=" + std::to_string(n) + " alpha=" + std::to_string(alpha) + " " + r);
  };
  for (std::size_t n = 2; n <= 6; ++n) run(n, 1);
  run(3, 2);
  out.ok = problems.empty();
  out.detail = std::to_string(checks) +
               " exact operator checks for n=2..6 (alpha=1) and n=3 (alpha=2), splitting trees to depth 3";
  if (!problems.empty()) out.detail += "; problems: " + join(problems, "; ");
  return out;
}

// ---- 5: quantum rigid body at n = 6 ----------------------------------------------------------

// Coefficient of Sym3(P_ij, P_jk, P_ki), i < j < k, read off its leading word
// P_ij P_jk P_ki = -P_ij P_ik P_jk.
Rational sym3_coefficient(const son::SoAlgebra& g, const uea::PBWElement<Rational>& e, std::size_t i, std::size_t j,
                          std::size_t k) {
  return -e.coeff(uea::word::from_letters({g.index(i, j), g.index(i, k), g.index(j, k)}));
}

std::string moments_label(const std::vector<Rational>& lambda) {
  std::vector<std::string> parts;
  for (const auto& l : lambda) parts.push_back(l.str());
  return "(" + join(parts, ",") + ")";
}

Outcome quantum_rigid_n6() {
  Outcome out;
  std::vector<std::string> problems;
  std::vector<std::vector<Rational>> samples;
  {
    std::vector<Rational> first;
    for (long i = 1; i <= 6; ++i) first.emplace_back(i);
    samples.push_back(first);
    Sampler sampler(kSeed);
    for (int s = 0; s < 2; ++s) samples.push_back(sampler.distinct_positive(6, 30));
  }
  std::size_t checks = 0;
  double slowest = 0;
  for (const auto& lambda : samples) {
    report::Stopwatch watch;
    const auto tag = "lambda=" + moments_label(lambda);

    // Manakov operators and H built on the left momenta
    uea::QuantumRigidConfig cfg;
    cfg.n = 6;
    cfg.lambda = lambda;
    cfg.seed = kSeed;
    const auto rep = uea::verify_quantum_rigid(cfg);
    checks += rep.checks.size();
    for (const auto& id : failed_ids(rep)) problems.push_back(id);
    for (const char* required : {"quadratic/commute", "c51/quadratic", "hamiltonian-vs-c_6_2",
                                 "modified-c_6_2/quadratic", "c51_C62_commute"})
      if (!passes(rep, required)) problems.push_back(tag + " missing " + required);

    // Same operators in the algebra with negated structure constants, where the obstruction
    // expansion of [H, c_{6,2}] holds with +b^{ijk}.
    uea::PbwEngine eng(6, poisson::Side::Right);
    const auto spec = son::MomentSpec::explicit_values(lambda);
    const auto hat_h = uea::hamiltonian_operator<Rational>(eng, spec);
    const auto obstruction = uea::commutator(eng, hat_h, uea::manakov_operator<Rational>(eng, {6, 2}, spec));
    const auto expected = uea::sym3_expansion<Rational>(eng, [&](std::size_t i, std::size_t j, std::size_t k) {
      return uea::hamiltonian_obstruction_closed<Rational>(spec, i, j, k);
    });
    if (obstruction.is_zero()) problems.push_back(tag + " [H, c62] vanishes");
    if (!(obstruction == expected)) problems.push_back(tag + " [H, c62] differs from sum b^{ijk} Sym3");
    if (!uea::commutator(eng, hat_h, uea::modified_c62<Rational>(eng, spec)).is_zero())
      problems.push_back(tag + " [H, C62] nonzero with negated constants");
    if (lambda == samples.front()) {
      const auto spot = sym3_coefficient(eng.algebra(), obstruction, 0, 1, 2);
      const auto closed = uea::hamiltonian_obstruction_closed<Rational>(spec, 0, 1, 2);
      if (!(spot == Rational(-5, 3) && closed == Rational(-5, 3)))
        problems.push_back("b^123 spot value " + spot.str() + ", closed form " + closed.str());
    }
    slowest = std::max(slowest, watch.ms() / 1000.0);
  }
  constexpr double kPerSampleLimit = 600.0;
  if (slowest > kPerSampleLimit) problems.push_back("slowest moment sample took " + std::to_string(slowest) + " s");
  out.ok = problems.empty();
  std::vector<std::string> labels;
  for (const auto& l : samples) labels.push_back(moments_label(l));
  std::ostringstream d;
  d.precision(3);
  d << checks << " exact checks at lambda in " << join(labels, ", ")
    << "; [H, c62] = sum b^{ijk} Sym3 with b^123 = -5/3 at lambda=(1..6) under negated constants; slowest sample "
    << slowest << " s";
  out.detail = d.str();
  if (!problems.empty()) out.detail += "; problems: " + join(problems, "; ");
  return out;
}

// ---- 6: property suites ----------------------------------------------------------------------

struct Property {
  std::string name;
  std::size_t cases = 0, failures = 0;
};

Property pbw_confluence() {
  Property p{"PBW confluence"};
  Sampler s(kSeed + 1);
  for (; p.cases < 100; ++p.cases) {
    const auto n = static_cast<std::size_t>(s.integer(3, 5));
    uea::PbwEngine eng(n);
    std::vector<std::size_t> letters;
    for (auto len = s.integer(1, 5); len > 0; --len) letters.push_back(testing::pick(s, eng.algebra().dim()));
    if (eng.normalize_letters(letters, uea::RewriteOrder::Leftmost) !=
        eng.normalize_letters(letters, uea::RewriteOrder::Rightmost))
      ++p.failures;
  }
  return p;
}

Property canonical_jacobi() {
  Property p{"canonical bracket Jacobi"};
  Sampler s(kSeed + 2);
  for (; p.cases < 100; ++p.cases) {
    const auto n = static_cast<std::size_t>(s.integer(2, 3));
    auto f = testing::random_phase(s, n), g = testing::random_phase(s, n), h = testing::random_phase(s, n);
    using poisson::canonical_bracket;
    auto jac = canonical_bracket(f, canonical_bracket(g, h)) + canonical_bracket(g, canonical_bracket(h, f)) +
               canonical_bracket(h, canonical_bracket(f, g));
    if (!jac.is_zero()) ++p.failures;
  }
  return p;
}

Property lie_poisson_jacobi() {
  Property p{"Lie-Poisson Jacobi, both sides"};
  Sampler s(kSeed + 3);
  for (; p.cases < 100; ++p.cases) {
    son::SoAlgebra g(static_cast<std::size_t>(s.integer(3, 5)));
    auto a = testing::random_lp(s, g), b = testing::random_lp(s, g), c = testing::random_lp(s, g);
    for (auto side : {poisson::Side::Left, poisson::Side::Right}) {
      auto br = [&](const auto& x, const auto& y) { return poisson::lie_poisson_bracket(g, x, y, side); };
      if (!(br(a, br(b, c)) + br(b, br(c, a)) + br(c, br(a, b))).is_zero()) {
        ++p.failures;
        break;
      }
    }
  }
  return p;
}

Property weyl_jacobi() {
  Property p{"Weyl algebra Jacobi"};
  Sampler s(kSeed + 4);
  for (; p.cases < 100; ++p.cases) {
    const auto n = static_cast<std::size_t>(s.integer(2, 3));
    auto a = testing::random_op(s, n), b = testing::random_op(s, n), c = testing::random_op(s, n);
    using weyl::commutator;
    if (!(commutator(a, commutator(b, c)) + commutator(b, commutator(c, a)) + commutator(c, commutator(a, b)))
             .is_zero())
      ++p.failures;
  }
  return p;
}

Property uea_jacobi() {
  Property p{"enveloping algebra Jacobi"};
  Sampler s(kSeed + 5);
  for (; p.cases < 100; ++p.cases) {
    uea::PbwEngine eng(static_cast<std::size_t>(s.integer(3, 5)));
    auto a = testing::random_element(eng, s, 3, 2), b = testing::random_element(eng, s, 3, 2),
         c = testing::random_element(eng, s, 2, 2);
    using uea::commutator;
    if (!(commutator(eng, a, commutator(eng, b, c)) + commutator(eng, b, commutator(eng, c, a)) +
          commutator(eng, c, commutator(eng, a, b)))
             .is_zero())
      ++p.failures;
  }
  return p;
}

// Cases whose inputs are constants have no principal-symbol statement and are redrawn.
Property uea_principal_symbol() {
  Property p{"commutator symbols are Lie-Poisson brackets"};
  Sampler s(kSeed + 6);
  while (p.cases < 100) {
    uea::PbwEngine eng(static_cast<std::size_t>(s.integer(3, 5)));
    auto a = testing::random_element(eng, s, 3, 3), b = testing::random_element(eng, s, 3, 3);
    const std::size_t da = a.degree(), db = b.degree();
    if (da == 0 || db == 0) continue;
    ++p.cases;
    auto top = uea::commutator(eng, a, b).homogeneous_symbol(da + db - 1);
    if (!(top == poisson::lie_poisson_bracket(eng.algebra(), a.principal_symbol(), b.principal_symbol())))
      ++p.failures;
  }
  return p;
}

Property weyl_principal_symbol() {
  Property p{"Weyl principal symbols multiply"};
  Sampler s(kSeed + 7);
  while (p.cases < 100) {
    auto a = testing::random_op(s, 3), b = testing::random_op(s, 3);
    if (a.is_zero() || b.is_zero()) continue;
    ++p.cases;
    if (!((a * b).principal_symbol() == a.principal_symbol() * b.principal_symbol())) ++p.failures;
  }
  return p;
}

Property casimir_invariance() {
  Property p{"Casimirs invariant under conjugation"};
  Sampler s(kSeed + 8);
  while (p.cases < 100) {
    const auto n = static_cast<std::size_t>(s.integer(2, 6));
    auto m = son::random_skew(n, s, 50);
    auto x = son::cayley_orthogonal(son::random_skew(n, s, 50));
    if (!x) continue;
    ++p.cases;
    if (son::casimir_set(son::right_from_left(*x, m)) != son::casimir_set(m)) ++p.failures;
  }
  return p;
}

Property ad_kernel() {
  Property p{"ad-kernel dimension floor(n/2)"};
  Sampler s(kSeed + 9);
  for (; p.cases < 100; ++p.cases) {
    const auto n = static_cast<std::size_t>(s.integer(2, 7));
    son::SoAlgebra g(n);
    if (son::ad_kernel_dim(g, son::random_skew(n, s)) != n / 2) ++p.failures;
  }
  return p;
}

Outcome property_suites() {
  Outcome out;
  std::vector<std::string> parts;
  for (const auto& make : std::vector<std::function<Property()>>{
           pbw_confluence, canonical_jacobi, lie_poisson_jacobi, weyl_jacobi, uea_jacobi, uea_principal_symbol,
           weyl_principal_symbol, casimir_invariance, ad_kernel}) {
    const auto p = make();
    out.ok = out.ok && p.failures == 0 && p.cases == 100;
    parts.push_back(p.name + " " + std::to_string(p.cases - p.failures) + "/" + std::to_string(p.cases));
  }
  out.detail = join(parts, "; ");
  return out;
}

// ---- 7: Euler dynamics --------------------------------------------------------------------

Outcome euler_dynamics() {
  constexpr double kDriftBound = 1e-6;
  constexpr double kRatioLow = 12.0, kRatioHigh = 20.0;
  constexpr double kControlFloor = 1e-3;
  constexpr double kTEnd = 10.0;
  Outcome out;
  std::vector<Rational> lambda;
  for (long i = 1; i <= 4; ++i) lambda.emplace_back(i);
  Sampler sampler(kSeed);
  std::vector<double> upper;
  for (std::size_t a = 0; a < 6; ++a) upper.push_back(sampler.uniform(-1.0, 1.0));
  const auto initial = dynamics::FlowState::from_upper({1, 2, 3, 4}, upper);
  const auto invariants = dynamics::rigid_invariants(lambda);

  auto run = [&](double dt) {
    dynamics::IntegrateOptions opts;
    opts.dt = dt;
    opts.steps = static_cast<std::size_t>(std::llround(kTEnd / dt));
    return dynamics::integrate(initial, opts);
  };
  auto worst = [](const std::vector<dynamics::DriftEntry>& d) {
    double m = 0;
    for (const auto& e : d) m = std::max(m, e.drift);
    return m;
  };

  const auto fine = run(1e-3);
  const auto drift = dynamics::conservation_report(fine, invariants);
  std::vector<std::string> parts;
  const std::set<std::string> required = {"H", "c_2_0", "c_3_1", "c_4_2", "c_4_0"};
  std::size_t seen = 0;
  for (const auto& e : drift) {
    if (!required.count(e.label)) continue;
    ++seen;
    out.ok = out.ok && e.drift < kDriftBound;
    std::ostringstream s;
    s.precision(2);
    s << e.label << " " << std::scientific << e.drift;
    parts.push_back(s.str());
  }
  out.ok = out.ok && seen == required.size();

  const double coarse = worst(dynamics::conservation_report(run(0.1), invariants));
  const double halved = worst(dynamics::conservation_report(run(0.05), invariants));
  const double ratio = coarse / halved;
  out.ok = out.ok && ratio >= kRatioLow && ratio <= kRatioHigh;

  const auto control = dynamics::conservation_report(
      fine, {dynamics::FloatInvariant("P_1_2", poisson::momentum<Rational>(son::SoAlgebra(4), 0, 1))});
  out.ok = out.ok && control.front().drift > kControlFloor;

  std::ostringstream d;
  d.precision(3);
  d << "drift at dt=1e-3 over t=10: " << join(parts, ", ") << " (bound 1e-6); dt 0.1 -> 0.05 drift ratio " << ratio
    << " (window [12, 20]); negative control P_1_2 drift " << control.front().drift << " (floor 1e-3)";
  out.detail = d.str();
  return out;
}

std::set<int> parse_ids(const std::string& list) {
  std::set<int> ids;
  std::stringstream in(list);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty()) ids.insert(std::stoi(item));
  return ids;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> expected_failures;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--expect-fail" && i + 1 < argc) {
      expected_failures = parse_ids(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--expect-fail ID,ID,...]\n", argv[0]);
      return 2;
    }
  }

  const std::vector<Criterion> criteria = {
      {1, "rigid-body counts for n=3..6", 60, rigid_table_counts},
      {2, "central-force tables n=4 and n=5", 30, central_tables},
      {3, "classical Manakov integrals", 300, classical_manakov},
      {4, "quantum central force", 120, quantum_central},
      {5, "quantum rigid body at n=6", 1800, quantum_rigid_n6},
      {6, "property suites", 600, property_suites},
      {7, "Euler dynamics", 30, euler_dynamics},
  };

  std::set<int> failed;
  for (const auto& c : criteria) {
    report::Stopwatch watch;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = watch.ms() / 1000.0;
    const bool ok = o.ok && seconds <= c.limit_s;
    if (!ok) failed.insert(c.id);
    std::printf("%s %d %s: %s [%.1f s, limit %.0f s]\n", ok ? "PASS" : "FAIL", c.id, c.name.c_str(),
                o.detail.c_str(), seconds, c.limit_s);
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria pass\n", criteria.size() - failed.size(), criteria.size());
  if (failed != expected_failures) {
    std::printf("failing set differs from the expected set\n");
    return 1;
  }
  return 0;
}
