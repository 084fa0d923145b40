#include "qsym/central/central.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

#include "qsym/poisson/chart.hpp"

namespace qsym::central {

using poisson::canonical_bracket;

PhasePoly momentum(std::size_t n, std::size_t i, std::size_t j) {
  return PhasePoly::x(n, i) * PhasePoly::p(n, j) - PhasePoly::x(n, j) * PhasePoly::p(n, i);
}

std::vector<PhasePoly> momenta(std::size_t n) {
  std::vector<PhasePoly> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) out.push_back(momentum(n, i, j));
  return out;
}

PhasePoly p_squared(std::size_t n, const std::vector<std::size_t>& subset) {
  PhasePoly out(n);
  for (std::size_t a = 0; a < subset.size(); ++a)
    for (std::size_t b = a + 1; b < subset.size(); ++b) {
      auto m = momentum(n, subset[a], subset[b]);
      out += m * m;
    }
  return out;
}

PhasePoly p_squared(std::size_t n) {
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  return p_squared(n, all);
}

PhasePoly momentum_norm2(std::size_t n) {
  PhasePoly out(n);
  for (std::size_t i = 0; i < n; ++i) out += PhasePoly::p(n, i) * PhasePoly::p(n, i);
  return out;
}

PhasePoly radius_norm2(std::size_t n) {
  PhasePoly out(n);
  for (std::size_t i = 0; i < n; ++i) out += PhasePoly::x(n, i) * PhasePoly::x(n, i);
  return out;
}

PhasePoly x_dot_p(std::size_t n) {
  PhasePoly out(n);
  for (std::size_t i = 0; i < n; ++i) out += PhasePoly::x(n, i) * PhasePoly::p(n, i);
  return out;
}

namespace {

PhasePoly inverse_radius(std::size_t n) { return PhasePoly(n, RadicalElement::radius(n).inverse()); }

PhasePoly scaled(const Rational& c, const PhasePoly& f) { return RadicalElement(c) * f; }

}  // namespace

PhasePoly kepler_hamiltonian(std::size_t n, const Rational& alpha) {
  return scaled(Rational(1, 2), momentum_norm2(n)) - scaled(alpha, inverse_radius(n));
}

PhasePoly runge_lenz(std::size_t n, std::size_t i, const Rational& alpha) {
  PhasePoly out(n);
  for (std::size_t j = 0; j < n; ++j)
    if (j != i) out += momentum(n, i, j) * PhasePoly::p(n, j);
  return out - scaled(alpha, PhasePoly::x(n, i) * inverse_radius(n));
}

PhasePoly default_hamiltonian(std::size_t n) {
  // depends on p^2, r and P^2 nonlinearly
  return scaled(Rational(1, 2), momentum_norm2(n)) - inverse_radius(n) +
         scaled(Rational(1, 2), radius_norm2(n) * p_squared(n));
}

std::string subset_label(const std::vector<std::size_t>& subset) {
  std::string s = "(";
  for (std::size_t i : subset) s += std::to_string(i + 1);
  return s + ")";
}

std::string momentum_label(std::size_t i, std::size_t j) {
  return "P_" + std::to_string(i + 1) + std::to_string(j + 1);
}

std::vector<Labeled> IntegrableSet::all() const {
  std::vector<Labeled> v = central;
  v.insert(v.end(), noncentral.begin(), noncentral.end());
  return v;
}

std::string IntegrableSet::render() const {
  std::string s = "(";
  for (std::size_t i = 0; i < central.size(); ++i) s += (i ? ", " : "") + central[i].first;
  if (!noncentral.empty()) {
    s += "; ";
    for (std::size_t i = 0; i < noncentral.size(); ++i) s += (i ? ", " : "") + noncentral[i].first;
  }
  return s + ")";
}

SplitNode SplitNode::leaf(std::vector<std::size_t> indices) {
  SplitNode s;
  s.indices = std::move(indices);
  std::sort(s.indices.begin(), s.indices.end());
  return s;
}

SplitNode SplitNode::stopped(std::vector<std::size_t> indices, std::vector<std::pair<std::size_t, std::size_t>> l) {
  SplitNode s = leaf(std::move(indices));
  s.stop_momenta = std::move(l);
  return s;
}

SplitNode SplitNode::split(SplitNode a, SplitNode b) {
  SplitNode s;
  s.indices = a.indices;
  s.indices.insert(s.indices.end(), b.indices.begin(), b.indices.end());
  std::sort(s.indices.begin(), s.indices.end());
  s.stop = false;
  s.children.push_back(std::move(a));
  s.children.push_back(std::move(b));
  return s;
}

std::string SplitNode::describe() const {
  if (stop || indices.size() <= 2) {
    std::string s = subset_label(indices);
    if (indices.size() > 2) s += "*";
    return s;
  }
  return "[" + children[0].describe() + "|" + children[1].describe() + "]";
}

std::size_t SplitNode::depth() const {
  if (stop || indices.size() <= 2) return 0;
  return 1 + std::max(children[0].depth(), children[1].depth());
}

namespace {

// One node's contribution; children are visited by the caller.
void collect(std::size_t n, const SplitNode& node, bool root, RecursiveSets& out) {
  const auto& idx = node.indices;
  const std::size_t m = idx.size();
  if (m == 0) throw std::invalid_argument("empty node in split tree");
  if (m == 1) return;
  if (m == 2) {
    out.z.push_back({momentum_label(idx[0], idx[1]), momentum(n, idx[0], idx[1])});
    out.z_support.push_back(idx);
    return;
  }
  std::string sq_label = root ? "P^2" : "P^2_" + subset_label(idx);
  out.z.push_back({sq_label, p_squared(n, idx)});
  out.z_support.push_back(idx);
  if (node.stop) {
    if (!node.children.empty()) throw std::invalid_argument("stopped node with children");
    std::vector<std::pair<std::size_t, std::size_t>> l = node.stop_momenta;
    if (l.empty()) {
      for (std::size_t a : {0u, 1u})
        for (std::size_t b = 2; b < m; ++b) l.emplace_back(idx[a], idx[b]);
    }
    if (l.size() != 2 * (m - 2)) throw std::invalid_argument("stopped node needs 2(m-2) momenta");
    for (auto [i, j] : l) {
      if (!std::binary_search(idx.begin(), idx.end(), i) || !std::binary_search(idx.begin(), idx.end(), j) || i == j)
        throw std::invalid_argument("stop momentum outside its node");
      out.l.push_back({momentum_label(i, j), momentum(n, i, j)});
      out.l_pairs.emplace_back(i, j);
    }
    return;
  }
  if (node.children.size() != 2) throw std::invalid_argument("split node needs two children");
  std::vector<std::size_t> joined = node.children[0].indices;
  joined.insert(joined.end(), node.children[1].indices.begin(), node.children[1].indices.end());
  std::sort(joined.begin(), joined.end());
  if (joined != idx || std::adjacent_find(joined.begin(), joined.end()) != joined.end())
    throw std::invalid_argument("children do not partition their parent");
}

}  // namespace

RecursiveSets build_recursive_sets(std::size_t n, const SplitNode& root) {
  if (n < 2) throw std::invalid_argument("n must be at least 2");
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  if (root.indices != all) throw std::invalid_argument("root must cover all coordinates");
  RecursiveSets out;
  // breadth first: shallower subsets are listed before deeper ones
  std::deque<const SplitNode*> pending{&root};
  while (!pending.empty()) {
    const SplitNode* node = pending.front();
    pending.pop_front();
    collect(n, *node, node == &root, out);
    if (!node->stop && node->indices.size() > 2)
      for (const auto& child : node->children) pending.push_back(&child);
  }
  if (out.l.size() != 2 * (n - out.z.size() - 1)) throw std::logic_error("recursive set count mismatch");
  return out;
}

IntegrableSet set_from_tree(std::size_t n, const SplitNode& root, const PhasePoly& hamiltonian, std::string label) {
  auto rs = build_recursive_sets(n, root);
  IntegrableSet s;
  s.n = n;
  s.label = std::move(label);
  s.central.push_back({"H", hamiltonian});
  s.central.insert(s.central.end(), rs.z.begin(), rs.z.end());
  s.noncentral = std::move(rs.l);
  return s;
}

namespace {

std::vector<SplitNode> trees_over(const std::vector<std::size_t>& idx, std::size_t depth) {
  std::vector<SplitNode> out;
  if (idx.size() <= 2) {
    out.push_back(SplitNode::leaf(idx));
    return out;
  }
  out.push_back(SplitNode::stopped(idx));
  if (depth == 0) return out;
  const std::size_t m = idx.size();
  // first index always goes to the left child
  for (std::size_t mask = 0; mask < (std::size_t{1} << (m - 1)); ++mask) {
    std::vector<std::size_t> a{idx[0]}, b;
    for (std::size_t t = 1; t < m; ++t) ((mask >> (t - 1)) & 1 ? b : a).push_back(idx[t]);
    if (b.empty()) continue;
    for (const auto& ta : trees_over(a, depth - 1))
      for (const auto& tb : trees_over(b, depth - 1)) out.push_back(SplitNode::split(ta, tb));
  }
  return out;
}

}  // namespace

std::vector<SplitNode> enumerate_split_trees(std::size_t n, std::size_t max_depth) {
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  return trees_over(all, max_depth);
}

std::string to_string(Family f) {
  switch (f) {
    case Family::GenericF:
      return "generic_f";
    case Family::Kepler:
      return "kepler";
    case Family::Oscillator:
      return "oscillator";
    case Family::FOfP2:
      return "f_of_P2";
  }
  return "?";
}

namespace {

std::vector<Labeled> default_l(std::size_t n) {
  std::vector<Labeled> l;
  for (std::size_t a : {0u, 1u})
    for (std::size_t b = 2; b < n; ++b) l.push_back({momentum_label(a, b), momentum(n, a, b)});
  return l;
}

}  // namespace

IntegrableSet catalog(std::size_t n, Family family, const Rational& alpha) {
  if (n < 2) throw std::invalid_argument("n must be at least 2");
  IntegrableSet s;
  s.n = n;
  s.label = to_string(family);
  switch (family) {
    case Family::GenericF:
      s.central = {{"H", default_hamiltonian(n)}, {"P^2", p_squared(n)}};
      s.noncentral = default_l(n);
      break;
    case Family::Kepler:
      s.central = {{"H", kepler_hamiltonian(n, alpha)}};
      s.noncentral = {{"P^2", p_squared(n)}};
      for (auto& l : default_l(n)) s.noncentral.push_back(std::move(l));
      s.noncentral.push_back({"A_1", runge_lenz(n, 0, alpha)});
      break;
    case Family::Oscillator: {
      s.central = {{"H", scaled(Rational(1, 2), momentum_norm2(n) + radius_norm2(n))}};
      for (std::size_t i = 0; i + 1 < n; ++i) {
        auto hi = scaled(Rational(1, 2), PhasePoly::p(n, i) * PhasePoly::p(n, i) + PhasePoly::x(n, i) * PhasePoly::x(n, i));
        s.noncentral.push_back({"H_" + std::to_string(i + 1), hi});
      }
      for (std::size_t j = 1; j < n; ++j) s.noncentral.push_back({momentum_label(0, j), momentum(n, 0, j)});
      break;
    }
    case Family::FOfP2:
      s.central = {{"P^2", p_squared(n)}};
      s.noncentral = {{"p^2", momentum_norm2(n)}, {"r", PhasePoly::radius(n)}};
      for (auto& l : default_l(n)) s.noncentral.push_back(std::move(l));
      break;
  }
  return s;
}

std::vector<TableRow> central_table(std::size_t n) {
  using SN = SplitNode;
  std::vector<SN> trees;
  if (n == 4) {
    trees = {
        SN::stopped({0, 1, 2, 3}),
        SN::split(SN::stopped({0, 1, 2}, {{0, 1}, {0, 2}}), SN::leaf({3})),
        SN::split(SN::split(SN::leaf({0, 1}), SN::leaf({2})), SN::leaf({3})),
        SN::split(SN::leaf({0, 1}), SN::leaf({2, 3})),
    };
  } else if (n == 5) {
    trees = {
        SN::stopped({0, 1, 2, 3, 4}),
        SN::split(SN::stopped({0, 1, 2, 3}), SN::leaf({4})),
        SN::split(SN::split(SN::stopped({0, 1, 2}), SN::leaf({3})), SN::leaf({4})),
        SN::split(SN::split(SN::split(SN::leaf({0, 1}), SN::leaf({2})), SN::leaf({3})), SN::leaf({4})),
        SN::split(SN::split(SN::leaf({0, 1}), SN::leaf({2, 3})), SN::leaf({4})),
        SN::split(SN::stopped({0, 1, 2}, {{0, 1}, {0, 2}}), SN::leaf({3, 4})),
        SN::split(SN::split(SN::leaf({0, 1}), SN::leaf({2})), SN::leaf({3, 4})),
    };
  } else {
    throw std::invalid_argument("tables exist for n = 4 and n = 5 only");
  }
  std::vector<TableRow> rows;
  PhasePoly h = default_hamiltonian(n);
  for (std::size_t r = 0; r < trees.size(); ++r) {
    TableRow row;
    row.n = n;
    row.row = r + 1;
    row.set = set_from_tree(n, trees[r], h, "n=" + std::to_string(n) + " row " + std::to_string(r + 1));
    row.k = row.set.k();
    row.tree = trees[r];
    rows.push_back(std::move(row));
  }
  return rows;
}

report::VerificationReport verify_integrable_set(const IntegrableSet& set, Sampler& sampler, std::size_t samples,
                                                 const std::string& id) {
  report::VerificationReport rep;
  const std::size_t n = set.n;
  auto all = set.all();
  rep.add(report::identity_check(id + "/count", "|F| = 2n - k", set.size() == 2 * n - set.k(),
                                 std::to_string(set.size()) + " functions, k = " + std::to_string(set.k())));
  // central-central pairs once, then central-noncentral
  auto br = [](const PhasePoly& a, const PhasePoly& b) { return canonical_bracket(a, b); };
  auto c1 = poisson::involution_check(id + "/central", "central elements pairwise in involution", set.central,
                                      set.central, br, true);
  auto c2 = poisson::involution_check(id + "/mixed", "central elements in involution with the rest", set.central,
                                      set.noncentral, br);
  rep.add(c1);
  rep.add(c2);

  report::Stopwatch sw;
  std::vector<PhasePoly> fs;
  for (const auto& f : all) fs.push_back(f.second);
  std::string witness;
  bool ok = true;
  for (std::size_t t = 0; t < samples; ++t) {
    auto pt = poisson::sample_phase_point(n, sampler);
    std::size_t r = poisson::jacobian_rank(fs, pt);
    ok = ok && r == fs.size();
    witness += (t ? "," : "") + std::to_string(r);
  }
  auto c = report::sampled_check(id + "/rank", "Jacobian rank equals |F| at random points", ok,
                                 "ranks " + witness + " of " + std::to_string(fs.size()));
  c.elapsed_ms = sw.ms();
  rep.add(c);
  return rep;
}

report::VerificationReport runge_lenz_check(std::size_t n, const Rational& alpha) {
  report::VerificationReport rep;
  report::Stopwatch sw;
  PhasePoly h = kepler_hamiltonian(n, alpha);
  std::vector<Labeled> hs{{"H", h}}, as;
  PhasePoly a2(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto a = runge_lenz(n, i, alpha);
    a2 += a * a;
    as.push_back({"A_" + std::to_string(i + 1), a});
  }
  rep.add(poisson::involution_check("runge-lenz/conserved", "{H, A_i} = 0", hs, as,
                                    [](const PhasePoly& x, const PhasePoly& y) { return canonical_bracket(x, y); }));
  report::Stopwatch sw2;
  PhasePoly defect = a2 - scaled(Rational(2), p_squared(n) * h) - PhasePoly::constant(n, alpha * alpha);
  auto c = report::identity_check("runge-lenz/norm", "A^2 = 2 P^2 H + alpha^2", defect.is_zero(),
                                  defect.is_zero() ? "difference is 0" : defect.str());
  c.elapsed_ms = sw2.ms();
  rep.add(c);
  return rep;
}

report::VerificationReport verify_central_tables(std::size_t n, std::size_t samples, std::uint64_t seed) {
  report::VerificationReport rep;
  Sampler sampler(seed);
  for (const auto& row : central_table(n)) {
    std::string id = "table-n" + std::to_string(n) + "/row" + std::to_string(row.row);
    auto r = verify_integrable_set(row.set, sampler, samples, id);
    r.checks.front().witness += "; " + row.set.render();
    rep.append(r);
  }
  return rep;
}

report::VerificationReport verify_classical_central(const ClassicalCentralConfig& cfg) {
  const std::size_t n = cfg.n;
  report::VerificationReport rep;
  Sampler sampler(cfg.seed);

  {
    PhasePoly xp = x_dot_p(n);
    PhasePoly defect = p_squared(n) - radius_norm2(n) * momentum_norm2(n) + xp * xp;
    rep.add(report::identity_check("p-squared", "P^2 = r^2 p^2 - (x.p)^2", defect.is_zero(),
                                   defect.is_zero() ? "difference is 0" : defect.str()));
  }
  {
    // U = a/r + b/r^2 + c r^2 + d r^4, truncated series
    PhasePoly inv_r = inverse_radius(n), r2 = radius_norm2(n);
    PhasePoly h = scaled(Rational(1, 2), momentum_norm2(n)) + scaled(cfg.alpha, inv_r) +
                  scaled(Rational(-3, 7), inv_r * inv_r) + scaled(Rational(5, 2), r2) + scaled(Rational(2, 9), r2 * r2);
    std::vector<Labeled> hs{{"H", h}}, ps;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) ps.push_back({momentum_label(i, j), momentum(n, i, j)});
    rep.add(poisson::involution_check("conserved-momenta", "{H, P_ij} = 0 for H = p^2/2 + U(r)", hs, ps,
                                      [](const PhasePoly& a, const PhasePoly& b) { return canonical_bracket(a, b); }));
  }
  for (Family f : {Family::GenericF, Family::Kepler, Family::Oscillator, Family::FOfP2})
    rep.append(verify_integrable_set(catalog(n, f, cfg.alpha), sampler, cfg.samples, "catalog/" + to_string(f)));
  rep.append(runge_lenz_check(n, cfg.alpha));

  report::Stopwatch sw;
  auto trees = enumerate_split_trees(n, cfg.max_tree_depth);
  PhasePoly h = default_hamiltonian(n);
  std::set<std::size_t> ks;
  std::size_t bad = 0;
  std::string witness;
  for (const auto& t : trees) {
    auto set = set_from_tree(n, t, h, t.describe());
    ks.insert(set.k());
    auto r = verify_integrable_set(set, sampler, 1, "tree");
    if (!r.passed()) {
      ++bad;
      if (witness.size() < 2000) witness += t.describe() + " ";
    }
  }
  if (bad == 0) witness = std::to_string(trees.size()) + " trees verified";
  auto c = report::sampled_check("recursive/all-trees",
                                 "every splitting tree gives an integrable set with k = z + 1", bad == 0, witness);
  c.elapsed_ms = sw.ms();
  rep.add(c);
  bool full_range = true;
  for (std::size_t k = 2; k <= n; ++k) full_range = full_range && ks.count(k);
  std::string kw;
  for (auto k : ks) kw += std::to_string(k) + " ";
  rep.add(report::identity_check("recursive/k-range", "k takes every value from 2 to n", full_range || n < 2,
                                 "k values: " + kw));
  rep.prefix_ids("classical-central/n" + std::to_string(n));
  return rep;
}

}  // namespace qsym::central
