#include "qsym/rigid/rigid.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>

namespace qsym::rigid {

namespace {

std::string subset_label(const std::vector<std::size_t>& idx) {
  std::string s = "(";
  for (std::size_t i : idx) s += std::to_string(i + 1);
  return s + ")";
}

std::vector<std::size_t> all_indices(std::size_t n) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), std::size_t{0});
  return v;
}

template <class K>
K lambda_sq(const MomentSpec& spec, std::size_t i) {
  K l = spec.lambda<K>(i);
  return l * l;
}

// h_d(x_1..x_m) by the recurrence h_d(x_1..x_m) = sum_t x_m^t h_{d-t}(x_1..x_{m-1}).
template <class K>
K complete_homogeneous(const std::vector<K>& xs, std::size_t d) {
  std::vector<K> h(d + 1, K(0));
  h[0] = K(1);
  for (const auto& x : xs)
    for (std::size_t e = 1; e <= d; ++e) h[e] = h[e] + x * h[e - 1];
  return h[d];
}

std::size_t sum_pairwise(const std::vector<std::size_t>& q) {
  std::size_t s = 0;
  for (std::size_t a = 0; a < q.size(); ++a)
    for (std::size_t b = a + 1; b < q.size(); ++b) s += q[a] * q[b];
  return s;
}

}  // namespace

std::string ManakovIndex::label() const { return "c_" + std::to_string(k) + "_" + std::to_string(j()); }

std::vector<ManakovIndex> manakov_indices(std::size_t n) {
  std::vector<ManakovIndex> out;
  for (std::size_t k = 2; k <= n; ++k)
    for (std::size_t l = 1; 2 * l <= k; ++l) out.push_back({k, l});
  return out;
}

template <class K>
LiePoissonPoly<K> hamiltonian(const SoAlgebra& g, const MomentSpec& spec) {
  LiePoissonPoly<K> h(g.dim());
  for (std::size_t a = 0; a < g.dim(); ++a) {
    auto [i, j] = g.pair(a);
    Exponent e;
    e.inc(a);
    e.inc(a);
    h.add_term(e, K(1) / (K(2) * (spec.lambda<K>(i) + spec.lambda<K>(j))));
  }
  return h;
}

template <class K>
LiePoissonPoly<K> euler_rhs(const SoAlgebra& g, const MomentSpec& spec, std::size_t i, std::size_t j) {
  LiePoissonPoly<K> out(g.dim());
  const K li = spec.lambda<K>(i), lj = spec.lambda<K>(j);
  if (li == lj) return out;
  for (std::size_t k = 0; k < g.n(); ++k) {
    if (k == i || k == j) continue;
    const K lk = spec.lambda<K>(k);
    K c = (li - lj) / ((li + lk) * (lk + lj));
    out += poisson::momentum<K>(g, i, k) * poisson::momentum<K>(g, k, j) * c;
  }
  return out;
}

template <class K>
K manakov_coefficient(const ManakovIndex& idx, const std::vector<std::size_t>& indices, const MomentSpec& spec) {
  std::vector<K> xs;
  for (std::size_t i : indices) xs.push_back(lambda_sq<K>(spec, i));
  return complete_homogeneous(xs, idx.j());
}

template <class K>
LiePoissonPoly<K> manakov_integral(const SoAlgebra& g, const ManakovIndex& idx, const MomentSpec& spec) {
  if (idx.l == 0 || 2 * idx.l > idx.k) throw std::invalid_argument("Manakov index needs 1 <= l <= k/2");
  const std::size_t n = g.n(), m = 2 * idx.l;
  // momentum monomial -> (sorted index multiset -> signed count)
  std::map<Exponent, std::map<std::vector<std::size_t>, long>> acc;
  std::vector<std::size_t> cycle(m);
  std::function<void(std::size_t, Exponent, int)> walk = [&](std::size_t pos, Exponent e, int sign) {
    if (pos == m) {
      auto s = g.signed_index(cycle[m - 1], cycle[0]);
      if (!s) return;
      e.inc(s->index);
      std::vector<std::size_t> key = cycle;
      std::sort(key.begin(), key.end());
      acc[e][key] += sign * s->sign;
      return;
    }
    for (std::size_t v = 0; v < n; ++v) {
      cycle[pos] = v;
      if (pos == 0) {
        walk(1, e, sign);
        continue;
      }
      auto s = g.signed_index(cycle[pos - 1], v);
      if (!s) continue;
      Exponent f = e;
      f.inc(s->index);
      walk(pos + 1, f, sign * s->sign);
    }
  };
  walk(0, Exponent{}, 1);

  std::map<std::vector<std::size_t>, K> coeff_cache;
  const K scale = K(1) / K(static_cast<long>(4 * idx.l));
  LiePoissonPoly<K> out(g.dim());
  for (const auto& [e, by_key] : acc) {
    K c(0);
    for (const auto& [key, count] : by_key) {
      if (count == 0) continue;
      auto it = coeff_cache.find(key);
      if (it == coeff_cache.end()) it = coeff_cache.emplace(key, manakov_coefficient<K>(idx, key, spec)).first;
      c += it->second * K(count);
    }
    out.add_term(e, c * scale);
  }
  return out;
}

template <class K>
std::vector<RigidFunction<K>> z_lambda(const SoAlgebra& g, const MomentSpec& spec) {
  std::vector<RigidFunction<K>> out;
  auto full = poisson::casimir_polys<K>(g, all_indices(g.n()));
  for (std::size_t c = 0; c < full.size(); ++c)
    out.push_back({poisson::Side::Left, full[c], "C" + std::to_string(c + 1)});
  if (spec.u() == 1) return out;
  for (std::size_t b = 0; b < spec.u(); ++b) {
    auto members = spec.block_members(b);
    auto cas = poisson::casimir_polys<K>(g, members);
    for (std::size_t c = 0; c < cas.size(); ++c)
      out.push_back({poisson::Side::Left, cas[c], "C" + std::to_string(c + 1) + subset_label(members)});
  }
  return out;
}

template <class K>
std::optional<std::vector<K>> hamiltonian_combination(const SoAlgebra& g, const MomentSpec& spec) {
  const std::size_t n = g.n();
  std::vector<LiePoissonPoly<K>> cs;
  for (std::size_t k = 2; k <= n; ++k) cs.push_back(manakov_integral<K>(g, {k, 1}, spec));
  LiePoissonPoly<K> h = hamiltonian<K>(g, spec);
  std::map<Exponent, std::size_t> rows;
  auto note = [&](const LiePoissonPoly<K>& p) {
    for (const auto& [e, c] : p.terms()) rows.emplace(e, rows.size());
  };
  note(h);
  for (const auto& c : cs) note(c);
  Matrix<K> m(rows.size(), cs.size());
  std::vector<K> rhs(rows.size(), K(0));
  for (const auto& [e, r] : rows) {
    for (std::size_t c = 0; c < cs.size(); ++c) m(r, c) = cs[c].coeff(e);
    rhs[r] = h.coeff(e);
  }
  return solve_linear(m, rhs);
}

std::string to_string(const Counts& c) {
  return "rank " + std::to_string(c.rank) + ", k " + std::to_string(c.k) + ", r " + std::to_string(c.r) + ", kbar " +
         std::to_string(c.kbar);
}

Counts centrality_defect(const std::vector<std::size_t>& partition) {
  const std::size_t n = std::accumulate(partition.begin(), partition.end(), std::size_t{0});
  const std::size_t dim2 = n * (n - 1), half = n / 2;
  Counts c;
  if (partition.size() == 1) {
    c.rank = dim2 - half;
    c.k = half;
    c.r = 0;
    c.kbar = half;
    return c;
  }
  std::size_t sq = 0, odd = 0, halves = 0;
  for (std::size_t q : partition) {
    sq += q * q;
    odd += q % 2;
    halves += q / 2;
  }
  const std::size_t s1 = sum_pairwise(partition);
  c.rank = dim2 - s1;
  c.k = half + halves;
  if (c.k != n - (odd + 1) / 2) throw std::logic_error("centrality closed forms disagree");
  c.r = s1 - c.k;
  const std::size_t four_kbar = n * n + 2 * n - sq - 2 * ((odd + 1) / 2);
  if (four_kbar % 4 != 0) throw std::logic_error("non-integral central count");
  c.kbar = four_kbar / 4;
  return c;
}

Counts centrality_defect_from_kernels(const std::vector<std::size_t>& partition, Sampler& sampler) {
  auto spec = MomentSpec::symbolic(partition);
  const std::size_t n = spec.n();
  SoAlgebra g(n);
  auto a = son::random_skew(n, sampler);
  const std::size_t sigma = son::ad_kernel_dim(g, a);
  auto st = son::sigma_triple(g, a, spec.equal_pairs());
  Counts c;
  c.rank = 2 * g.dim() - st.s1;
  c.k = sigma + st.s2 - st.s3;
  c.r = st.s1 - c.k;
  c.kbar = c.k + c.r / 2;
  return c;
}

namespace {

std::vector<RigidFunction<Rational>> b_lambda(const SoAlgebra& g, const MomentSpec& spec) {
  std::vector<RigidFunction<Rational>> out;
  for (std::size_t a = 0; a < g.dim(); ++a) {
    auto [i, j] = g.pair(a);
    out.push_back({poisson::Side::Right, poisson::momentum<Rational>(g, i, j), "PR_" + g.label(a)});
  }
  for (std::size_t a : spec.equal_pairs()) {
    auto [i, j] = g.pair(a);
    out.push_back({poisson::Side::Left, poisson::momentum<Rational>(g, i, j), "PL_" + g.label(a)});
  }
  return out;
}

Rational evaluate_at(const RigidFunction<Rational>& f, const LiePoissonPoly<Rational>& p, const poisson::RigidPoint& pt) {
  return p.evaluate(f.side == poisson::Side::Left ? pt.left.upper() : pt.right.upper());
}

}  // namespace

Counts centrality_defect_from_jacobian(const std::vector<std::size_t>& partition, Sampler& sampler) {
  auto spec = MomentSpec::symbolic(partition);
  SoAlgebra g(spec.n());
  auto pt = poisson::sample_rigid_point(g, sampler);
  auto fs = b_lambda(g, spec);
  const std::size_t rank = poisson::jacobian_rank(g, fs, pt);
  // The radical of the bracket form on span dF has dimension rank - rank(Gram).
  Matrix<Rational> gram(fs.size(), fs.size());
  for (std::size_t a = 0; a < fs.size(); ++a)
    for (std::size_t b = a + 1; b < fs.size(); ++b) {
      auto br = rigid_bracket(g, fs[a], fs[b]);
      Rational v = evaluate_at(fs[a], br, pt);
      gram(a, b) = v;
      gram(b, a) = -v;
    }
  const std::size_t grank = exact_rank(gram, false).rank;
  Counts c;
  c.rank = rank;
  c.k = rank - grank;
  c.r = 2 * g.dim() - rank - c.k;
  c.kbar = c.k + c.r / 2;
  return c;
}

std::vector<std::vector<std::size_t>> partitions(std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  std::function<void(std::size_t, std::size_t)> gen = [&](std::size_t rest, std::size_t minp) {
    if (rest == 0) {
      out.push_back(cur);
      return;
    }
    for (std::size_t p = minp; p <= rest; ++p) {
      cur.push_back(p);
      gen(rest - p, p);
      cur.pop_back();
    }
  };
  gen(n, 1);
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

std::string partition_label(const std::vector<std::size_t>& q) {
  std::string s = "(";
  for (std::size_t i = 0; i < q.size(); ++i) s += (i ? "," : "") + std::to_string(q[i]);
  return s + ")";
}

std::vector<TableRow> rigid_table(std::size_t max_n) {
  std::vector<TableRow> rows;
  for (std::size_t n = 3; n <= max_n; ++n)
    for (const auto& q : partitions(n)) rows.push_back({n, q, centrality_defect(q)});
  return rows;
}

std::vector<RigidFunction<Rational>> RigidBodySet::central() const {
  auto out = z;
  out.insert(out.end(), manakov.begin(), manakov.end());
  return out;
}

std::vector<RigidFunction<Rational>> RigidBodySet::all() const {
  auto out = central();
  out.insert(out.end(), noncentral.begin(), noncentral.end());
  return out;
}

template <class K>
LiePoissonPoly<K> rigid_bracket(const SoAlgebra& g, const RigidFunction<K>& a, const RigidFunction<K>& b) {
  if (a.side != b.side) return LiePoissonPoly<K>(g.dim());
  return poisson::lie_poisson_bracket(g, a.poly, b.poly, a.side);
}

RigidBodySet assemble_integrable_set(const SoAlgebra& g, const MomentSpec& spec, const poisson::RigidPoint& pt) {
  if (spec.is_symbolic()) throw std::invalid_argument("assembly needs explicit moments");
  RigidBodySet set;
  set.counts = centrality_defect(spec.q());
  const std::size_t dim = g.dim();
  IncrementalRank<Rational> rank(2 * dim);
  auto take = [&](const RigidFunction<Rational>& f) { return rank.try_add(poisson::rigid_gradient(g, f, pt)); };

  for (auto& f : z_lambda<Rational>(g, spec)) {
    if (!take(f)) throw std::runtime_error("degenerate point: " + f.label + " depends on earlier Casimirs");
    set.z.push_back(std::move(f));
  }
  const std::size_t want_manakov = set.counts.r / 2;
  for (const auto& idx : manakov_indices(g.n())) {
    if (set.manakov.size() == want_manakov) break;
    RigidFunction<Rational> f{poisson::Side::Left, manakov_integral<Rational>(g, idx, spec), idx.label()};
    if (take(f)) set.manakov.push_back(std::move(f));
  }
  if (set.manakov.size() != want_manakov)
    throw std::runtime_error("only " + std::to_string(set.manakov.size()) + " of " + std::to_string(want_manakov) +
                             " Manakov integrals are independent at this point");
  const std::size_t target = 2 * dim - set.counts.kbar;
  for (auto& f : b_lambda(g, spec)) {
    if (rank.rank() == target) break;
    if (take(f)) set.noncentral.push_back(std::move(f));
  }
  if (rank.rank() != target)
    throw std::runtime_error("assembled rank " + std::to_string(rank.rank()) + " short of " + std::to_string(target));
  return set;
}

namespace {

template <class K>
using LabeledFn = std::pair<std::string, RigidFunction<K>>;

template <class K>
std::vector<LabeledFn<K>> labeled(const std::vector<RigidFunction<K>>& fs) {
  std::vector<LabeledFn<K>> out;
  for (const auto& f : fs) out.push_back({f.label, f});
  return out;
}

template <class K>
std::vector<RigidFunction<K>> manakov_family(const SoAlgebra& g, const MomentSpec& spec) {
  std::vector<RigidFunction<K>> out;
  for (const auto& idx : manakov_indices(g.n()))
    out.push_back({poisson::Side::Left, manakov_integral<K>(g, idx, spec), idx.label()});
  return out;
}

template <class K>
std::vector<RigidFunction<K>> block_momenta(const SoAlgebra& g, const MomentSpec& spec) {
  std::vector<RigidFunction<K>> out;
  for (std::size_t a : spec.equal_pairs()) {
    auto [i, j] = g.pair(a);
    out.push_back({poisson::Side::Left, poisson::momentum<K>(g, i, j), "PL_" + g.label(a)});
  }
  return out;
}

// Bracket checks at one coefficient field. Quartic-by-quartic Manakov pairs are skipped
// when skip_heavy is set; the caller covers them at sampled moments.
template <class K>
void bracket_checks(const SoAlgebra& g, const MomentSpec& spec, bool skip_heavy, const std::string& tag,
                    report::VerificationReport& rep) {
  auto br = [&](const RigidFunction<K>& a, const RigidFunction<K>& b) { return rigid_bracket(g, a, b); };
  RigidFunction<K> h{poisson::Side::Left, hamiltonian<K>(g, spec), "H"};
  const auto hs = labeled<K>({h});

  {
    report::Stopwatch sw;
    std::string witness;
    std::size_t bad = 0;
    for (std::size_t a = 0; a < g.dim(); ++a) {
      auto [i, j] = g.pair(a);
      RigidFunction<K> p{poisson::Side::Left, poisson::momentum<K>(g, i, j), "PL_" + g.label(a)};
      auto diff = br(h, p) - euler_rhs<K>(g, spec, i, j);
      if (diff.is_zero()) continue;
      ++bad;
      if (witness.size() < 2000) witness += "{H, " + p.label + "} - closed form = " + diff.str() + "; ";
    }
    if (!bad) witness = std::to_string(g.dim()) + " components match";
    auto c = report::identity_check("euler-bracket" + tag,
                                    "{H, P_ij} = (l_i - l_j) sum_k P_ik P_kj / ((l_i + l_k)(l_k + l_j))", bad == 0,
                                    witness);
    c.elapsed_ms = sw.ms();
    rep.add(c);
  }

  auto ms = manakov_family<K>(g, spec);
  auto lms = labeled(ms);
  rep.add(poisson::involution_check("manakov/hamiltonian" + tag, "{c_kj, H} = 0", lms, hs, br));

  std::vector<LabeledFn<K>> light, heavy;
  for (const auto& m : lms) (m.second.poly.total_degree() <= 2 ? light : heavy).push_back(m);
  auto c = poisson::involution_check("manakov/mutual-quadratic" + tag, "{c, c'} = 0 with c quadratic", light, lms, br);
  rep.add(c);
  if (!skip_heavy && heavy.size() > 1)
    rep.add(poisson::involution_check("manakov/mutual-quartic" + tag, "{c, c'} = 0 for quartic and higher c, c'",
                                      heavy, heavy, br, true));

  auto bm = labeled(block_momenta<K>(g, spec));
  if (!bm.empty()) {
    rep.add(poisson::involution_check("manakov/block-momenta" + tag, "{c_kj, P_ij} = 0 for equal moments", lms, bm, br));
  }
  auto z = labeled(z_lambda<K>(g, spec));
  auto with_h = bm;
  with_h.push_back(hs.front());
  rep.add(poisson::involution_check("z-lambda/involution" + tag, "Z commutes with H and the block momenta", z, with_h,
                                    br));

  {
    report::Stopwatch sw;
    auto beta = hamiltonian_combination<K>(g, spec);
    bool ok = false;
    std::string witness = "no solution";
    if (beta) {
      LiePoissonPoly<K> sum(g.dim());
      for (std::size_t k = 2; k <= g.n(); ++k) sum += manakov_integral<K>(g, {k, 1}, spec) * (*beta)[k - 2];
      ok = sum == h.poly;
      witness.clear();
      for (std::size_t k = 0; k < beta->size(); ++k)
        witness += (k ? ", " : "") + std::string("beta_") + std::to_string(k + 2) + " = " + to_string((*beta)[k]);
      if (witness.size() > 1500) witness = witness.substr(0, 1500) + "...";
    }
    auto chk = report::identity_check("hamiltonian-combination" + tag, "H = sum_k beta_k c_{k,k-2}", ok, witness);
    chk.elapsed_ms = sw.ms();
    rep.add(chk);
  }
}

std::string rational_list(const std::vector<Rational>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].str();
  return s;
}

void chart_checks(const SoAlgebra& g, const MomentSpec& spec, Sampler& sampler, std::size_t samples,
                  report::VerificationReport& rep) {
  const auto& q = spec.q();
  const Counts closed = centrality_defect(q);
  {
    report::Stopwatch sw;
    bool ok = true;
    std::string witness = "closed form " + to_string(closed);
    for (std::size_t t = 0; t < samples; ++t) {
      Counts a = centrality_defect_from_kernels(q, sampler);
      Counts b = centrality_defect_from_jacobian(q, sampler);
      ok = ok && a == closed && b == closed;
      if (!(a == closed)) witness += "; kernels " + to_string(a);
      if (!(b == closed)) witness += "; jacobian " + to_string(b);
    }
    auto c = report::sampled_check("counts", "rank, centrality and defect of B^lambda match the closed forms", ok,
                                   witness);
    c.elapsed_ms = sw.ms();
    rep.add(c);
  }
  {
    report::Stopwatch sw;
    bool ok = true;
    std::string witness;
    std::size_t z_rank = 0, set_rank = 0, set_size = 0, l_eq_r = 0;
    std::vector<std::string> central_labels;
    for (std::size_t t = 0; t < samples; ++t) {
      auto pt = poisson::sample_rigid_point(g, sampler);
      auto z = z_lambda<Rational>(g, spec);
      z_rank = poisson::jacobian_rank(g, z, pt);
      ok = ok && z_rank == closed.k && z.size() == closed.k;
      try {
        auto set = assemble_integrable_set(g, spec, pt);
        auto all = set.all();
        set_size = all.size();
        set_rank = poisson::jacobian_rank(g, all, pt);
        ok = ok && set_size == 2 * g.dim() - closed.kbar && set_rank == set_size;
        central_labels.clear();
        for (const auto& f : set.central()) central_labels.push_back(f.label);
      } catch (const std::runtime_error& e) {
        ok = false;
        witness += std::string(e.what()) + "; ";
      }
      // Casimirs agree on the left and right momenta.
      for (const auto& c : poisson::casimir_polys<Rational>(g, all_indices(g.n())))
        l_eq_r += c.evaluate(pt.left.upper()) == c.evaluate(pt.right.upper()) ? 0 : 1;
    }
    ok = ok && l_eq_r == 0;
    witness += "rank Z " + std::to_string(z_rank) + ", assembled " + std::to_string(set_size) + " functions of rank " +
               std::to_string(set_rank) + ", central";
    for (const auto& l : central_labels) witness += " " + l;
    if (l_eq_r) witness += "; left and right Casimirs differ";
    auto c = report::sampled_check("assembled/rank",
                                   "Z has rank k, the assembled set has 2N - kbar independent elements and "
                                   "C(P^L) = C(P^R)",
                                   ok, witness);
    c.elapsed_ms = sw.ms();
    rep.add(c);
  }
}

void assembled_involution(const SoAlgebra& g, const MomentSpec& spec, Sampler& sampler,
                          report::VerificationReport& rep) {
  auto pt = poisson::sample_rigid_point(g, sampler);
  RigidBodySet set;
  try {
    set = assemble_integrable_set(g, spec, pt);
  } catch (const std::runtime_error& e) {
    rep.add(report::identity_check("assembled/involution", "central elements commute with the whole set", false,
                                   e.what()));
    return;
  }
  auto br = [&](const RigidFunction<Rational>& a, const RigidFunction<Rational>& b) { return rigid_bracket(g, a, b); };
  auto c = labeled(set.central());
  auto all = labeled(set.all());
  rep.add(poisson::involution_check("assembled/involution", "central elements commute with the whole set", c, all, br));
}

}  // namespace

report::VerificationReport verify_classical_rigid(const ClassicalRigidConfig& cfg) {
  report::VerificationReport rep;
  Sampler sampler(cfg.seed);
  const std::size_t n = cfg.lambda.empty() ? cfg.n : cfg.lambda.size();
  SoAlgebra g(n);
  std::vector<std::size_t> q = cfg.q.empty() ? std::vector<std::size_t>(n, 1) : cfg.q;
  if (cfg.lambda.empty() && std::accumulate(q.begin(), q.end(), std::size_t{0}) != n)
    throw std::invalid_argument("partition does not sum to n");
  const long bound = 1000;

  if (!cfg.lambda.empty()) {
    auto spec = MomentSpec::explicit_values(cfg.lambda);
    bracket_checks<Rational>(g, spec, false, "", rep);
    chart_checks(g, spec, sampler, cfg.samples, rep);
    assembled_involution(g, spec, sampler, rep);
    for (auto& c : rep.checks) c.witness += " [lambda " + rational_list(cfg.lambda) + "]";
  } else if (cfg.mode == Mode::Symbolic) {
    auto spec = MomentSpec::symbolic(q);
    const bool split = n >= cfg.sampled_from_n;
    bracket_checks<RationalFunction>(g, spec, split, "", rep);
    for (auto& c : rep.checks) c.witness += " [symbolic " + spec.describe() + "]";
    if (split) {
      for (std::size_t t = 0; t < cfg.samples; ++t) {
        auto s = MomentSpec::sampled(q, sampler, bound);
        auto br = [&](const RigidFunction<Rational>& a, const RigidFunction<Rational>& b) {
          return rigid_bracket(g, a, b);
        };
        std::vector<LabeledFn<Rational>> heavy;
        for (auto& m : labeled(manakov_family<Rational>(g, s)))
          if (m.second.poly.total_degree() > 2) heavy.push_back(std::move(m));
        auto c = poisson::involution_check("manakov/mutual-quartic/sample" + std::to_string(t + 1),
                                           "{c, c'} = 0 for quartic and higher c, c'", heavy, heavy, br, true);
        c.witness += " [" + s.describe() + "]";
        rep.add(c);
      }
    }
    chart_checks(g, MomentSpec::sampled(q, sampler, bound), sampler, cfg.samples, rep);
    assembled_involution(g, MomentSpec::sampled(q, sampler, bound), sampler, rep);
  } else {
    for (std::size_t t = 0; t < cfg.samples; ++t) {
      auto spec = MomentSpec::sampled(q, sampler, bound);
      report::VerificationReport sub;
      bracket_checks<Rational>(g, spec, false, "", sub);
      for (auto& c : sub.checks) c.witness += " [" + spec.describe() + "]";
      sub.prefix_ids("sample" + std::to_string(t + 1));
      rep.append(sub);
    }
    chart_checks(g, MomentSpec::sampled(q, sampler, bound), sampler, cfg.samples, rep);
    assembled_involution(g, MomentSpec::sampled(q, sampler, bound), sampler, rep);
  }
  rep.prefix_ids("classical-rigid/n" + std::to_string(n) + "/q" + partition_label(q));
  return rep;
}

report::VerificationReport verify_rigid_table(std::size_t max_n, std::size_t samples, std::uint64_t seed) {
  report::VerificationReport rep;
  Sampler sampler(seed);
  for (const auto& row : rigid_table(max_n)) {
    report::Stopwatch sw;
    bool ok = true;
    std::string witness = to_string(row.counts);
    for (std::size_t t = 0; t < samples; ++t) {
      Counts a = centrality_defect_from_kernels(row.q, sampler);
      Counts b = centrality_defect_from_jacobian(row.q, sampler);
      if (!(a == row.counts)) witness += "; kernels " + to_string(a);
      if (!(b == row.counts)) witness += "; jacobian " + to_string(b);
      ok = ok && a == row.counts && b == row.counts;
    }
    ok = ok && row.counts.r % 2 == 0 && row.counts.kbar == row.counts.k + row.counts.r / 2;
    auto c = report::sampled_check(
        "rigid-table/n" + std::to_string(row.n) + "/q" + partition_label(row.q),
        "closed-form counts agree with kernel dimensions and with the Jacobian of B^lambda", ok, witness);
    c.elapsed_ms = sw.ms();
    rep.add(c);
  }
  return rep;
}

#define QSYM_RIGID_INSTANTIATE(K)                                                                              \
  template LiePoissonPoly<K> hamiltonian<K>(const SoAlgebra&, const MomentSpec&);                            \
  template LiePoissonPoly<K> euler_rhs<K>(const SoAlgebra&, const MomentSpec&, std::size_t, std::size_t);    \
  template K manakov_coefficient<K>(const ManakovIndex&, const std::vector<std::size_t>&, const MomentSpec&); \
  template LiePoissonPoly<K> manakov_integral<K>(const SoAlgebra&, const ManakovIndex&, const MomentSpec&);   \
  template std::vector<RigidFunction<K>> z_lambda<K>(const SoAlgebra&, const MomentSpec&);                   \
  template std::optional<std::vector<K>> hamiltonian_combination<K>(const SoAlgebra&, const MomentSpec&);    \
  template LiePoissonPoly<K> rigid_bracket<K>(const SoAlgebra&, const RigidFunction<K>&, const RigidFunction<K>&);

QSYM_RIGID_INSTANTIATE(Rational)
QSYM_RIGID_INSTANTIATE(RationalFunction)

}  // namespace qsym::rigid
