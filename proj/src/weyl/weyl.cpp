#include "qsym/weyl/weyl.hpp"

#include <functional>
#include <map>
#include <set>
#include <stdexcept>

#include "qsym/central/central.hpp"
#include "qsym/poisson/chart.hpp"

namespace qsym::weyl {

namespace {

// Calls fn(g) for every exponent g <= a componentwise.
template <class Fn>
void for_each_below(const Exponent& a, std::size_t n, Fn&& fn) {
  Exponent g;
  std::function<void(std::size_t)> rec = [&](std::size_t v) {
    if (v == n) {
      fn(g);
      return;
    }
    for (unsigned k = 0; k <= a[v]; ++k) {
      rec(v + 1);
      g.inc(v);
    }
    for (unsigned k = 0; k <= a[v]; ++k) g.dec(v);
  };
  rec(0);
}

Integer multi_binomial(const Exponent& a, const Exponent& g, std::size_t n) {
  Integer r = 1;
  for (std::size_t i = 0; i < n; ++i)
    if (g[i]) r *= binomial(a[i], g[i]);
  return r;
}

// Mixed x-derivatives of one coefficient, memoized by the multi-index.
class DerivativeCache {
 public:
  explicit DerivativeCache(const RadicalElement& c) { memo_.emplace(Exponent{}, c); }
  const RadicalElement& get(const Exponent& g) {
    auto it = memo_.find(g);
    if (it != memo_.end()) return it->second;
    std::size_t v = 0;
    while (g[v] == 0) ++v;
    Exponent h = g;
    h.dec(v);
    RadicalElement d = get(h).derivative(v);
    return memo_.emplace(g, std::move(d)).first->second;
  }

 private:
  std::map<Exponent, RadicalElement> memo_;
};

}  // namespace

WeylOperator operator*(const WeylOperator& a, const WeylOperator& b) {
  const std::size_t n = std::max(a.n(), b.n());
  PhasePoly out(n);
  std::vector<std::pair<Exponent, DerivativeCache>> right;
  for (const auto& [eb, cb] : b.symbol_.terms()) right.emplace_back(eb, DerivativeCache(cb));
  for (const auto& [ea, ca] : a.symbol_.terms()) {
    for_each_below(ea, n, [&](const Exponent& g) {
      RadicalElement scale = ca * RadicalElement(Rational(multi_binomial(ea, g, n)));
      Exponent rest = ea - g;
      for (auto& [eb, cache] : right) {
        const RadicalElement& d = cache.get(g);
        if (d.is_zero()) continue;
        out.add_term(rest + eb, scale * d);
      }
    });
  }
  return WeylOperator::from_normal_symbol(std::move(out));
}

std::string WeylOperator::str() const { return symbol_.str(); }

WeylOperator compose(const WeylOperator& a, const WeylOperator& b) { return a * b; }

WeylOperator commutator(const WeylOperator& a, const WeylOperator& b) { return a * b - b * a; }

WeylOperator diamond(const WeylOperator& a, const WeylOperator& b) { return Rational(1, 2) * (a * b + b * a); }

WeylOperator symmetrize(const PhasePoly& f) {
  const std::size_t n = f.n();
  PhasePoly out(n);
  for (const auto& [e, c] : f.terms()) {
    DerivativeCache cache(c);
    for_each_below(e, n, [&](const Exponent& g) {
      const RadicalElement& d = cache.get(g);
      if (d.is_zero()) return;
      Rational w(multi_binomial(e, g, n), Integer(1) << g.total);
      out.add_term(e - g, RadicalElement(w) * d);
    });
  }
  return WeylOperator::from_normal_symbol(std::move(out));
}

WeylOperator standard_quantize(const PhasePoly& f) {
  if (f.p_degree() > 1) throw std::invalid_argument("standard quantization needs a function at most linear in p");
  return WeylOperator::from_normal_symbol(f);
}

WeylOperator momentum_op(std::size_t n, std::size_t i, std::size_t j) {
  return WeylOperator::x(n, i) * WeylOperator::p(n, j) - WeylOperator::x(n, j) * WeylOperator::p(n, i);
}

WeylOperator laplacian(std::size_t n) {
  WeylOperator out(n);
  for (std::size_t i = 0; i < n; ++i) out += WeylOperator::p(n, i) * WeylOperator::p(n, i);
  return out;
}

WeylOperator radius_squared_op(std::size_t n) {
  return WeylOperator::multiplication(n, RadicalElement(RadicalElement::radius_squared(n)));
}

WeylOperator x_dot_p_op(std::size_t n) {
  WeylOperator out(n);
  for (std::size_t i = 0; i < n; ++i) out += WeylOperator::x(n, i) * WeylOperator::p(n, i);
  return out;
}

WeylOperator p_squared_op(std::size_t n, const std::vector<std::size_t>& subset) {
  WeylOperator out(n);
  for (std::size_t a = 0; a < subset.size(); ++a)
    for (std::size_t b = a + 1; b < subset.size(); ++b) {
      auto m = momentum_op(n, subset[a], subset[b]);
      out += m * m;
    }
  return out;
}

WeylOperator p_squared_op(std::size_t n) {
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  return p_squared_op(n, all);
}

WeylOperator kepler_hamiltonian_op(std::size_t n, const Rational& alpha) {
  return Rational(1, 2) * laplacian(n) -
         WeylOperator::multiplication(n, RadicalElement(alpha) * RadicalElement::radius(n).inverse());
}

WeylOperator runge_lenz_op(std::size_t n, std::size_t i, const Rational& alpha) {
  WeylOperator out(n);
  for (std::size_t j = 0; j < n; ++j)
    if (j != i) out += diamond(momentum_op(n, i, j), WeylOperator::p(n, j));
  RadicalElement c = RadicalElement(alpha) * RadicalElement::coordinate(n, i) * RadicalElement::radius(n).inverse();
  return out - WeylOperator::multiplication(n, c);
}

namespace {

report::Check equality_check(const std::string& id, const std::string& claim, const WeylOperator& lhs,
                             const WeylOperator& rhs, const report::Stopwatch& sw) {
  WeylOperator d = lhs - rhs;
  std::string w = d.is_zero() ? "difference is 0" : d.str();
  if (w.size() > 2000) w = w.substr(0, 2000) + "...";
  auto c = report::identity_check(id, claim, d.is_zero(), w);
  c.elapsed_ms = sw.ms();
  return c;
}

using LabeledOp = std::pair<std::string, WeylOperator>;

}  // namespace

report::VerificationReport quantum_central_force_suite(const QuantumCentralConfig& cfg) {
  const std::size_t n = cfg.n;
  if (n < 2) throw std::invalid_argument("n must be at least 2");
  const Rational& alpha = cfg.alpha;
  report::VerificationReport rep;
  auto id = [](std::size_t k) { return WeylOperator::identity(k); };

  {
    report::Stopwatch sw;
    WeylOperator r2 = radius_squared_op(n), lap = laplacian(n), xp = x_dot_p_op(n);
    rep.add(equality_check("laplacian-r2", "[p^2, r^2] = 4 x.p + 2n", commutator(lap, r2),
                           Rational(4) * xp + Rational(static_cast<long>(2 * n)) * id(n), sw));
    report::Stopwatch sw2;
    rep.add(equality_check("dilation", "x.p = (p^2 r^2 - r^2 p^2)/4 - n/2", xp,
                           Rational(1, 4) * (lap * r2 - r2 * lap) - Rational(static_cast<long>(n), 2) * id(n), sw2));
  }

  std::vector<LabeledOp> moms;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      moms.push_back({central::momentum_label(i, j), momentum_op(n, i, j)});
      pairs.emplace_back(i, j);
    }
  {
    report::Stopwatch sw;
    std::size_t bad = 0;
    for (std::size_t a = 0; a < pairs.size(); ++a)
      for (std::size_t b = a + 1; b < pairs.size(); ++b) {
        auto pa = central::momentum(n, pairs[a].first, pairs[a].second);
        auto pb = central::momentum(n, pairs[b].first, pairs[b].second);
        if (!(commutator(moms[a].second, moms[b].second) ==
              standard_quantize(poisson::canonical_bracket(pa, pb))))
          ++bad;
      }
    auto c = report::identity_check("momenta-isomorphism", "[Q(P_ij), Q(P_hk)] = Q({P_ij, P_hk})", bad == 0,
                                    std::to_string(bad) + " mismatching pairs");
    c.elapsed_ms = sw.ms();
    rep.add(c);
  }

  WeylOperator h = kepler_hamiltonian_op(n, alpha);
  std::vector<LabeledOp> hs{{"H", h}};
  auto comm = [](const WeylOperator& a, const WeylOperator& b) { return commutator(a, b); };
  rep.add(poisson::involution_check("conserved-momenta", "[H, P_ij] = 0", hs, moms, comm));

  WeylOperator psq = p_squared_op(n);
  {
    report::Stopwatch sw;
    WeylOperator xp = x_dot_p_op(n);
    rep.add(equality_check("p-squared", "P^2 = r^2 p^2 - (x.p)^2 - (n-2) x.p", psq,
                           radius_squared_op(n) * laplacian(n) - xp * xp -
                               Rational(static_cast<long>(n) - 2) * xp,
                           sw));
    report::Stopwatch sw2;
    rep.add(equality_check("symmetrization-constant", "P^2 - (P^2)^sym = n(n-1)/4", psq - symmetrize(central::p_squared(n)),
                           Rational(static_cast<long>(n * (n - 1)), 4) * id(n), sw2));
  }

  {
    std::vector<LabeledOp> as;
    WeylOperator a2(n);
    for (std::size_t i = 0; i < n; ++i) {
      auto a = runge_lenz_op(n, i, alpha);
      a2 += a * a;
      as.push_back({"A_" + std::to_string(i + 1), std::move(a)});
    }
    rep.add(poisson::involution_check("runge-lenz/conserved", "[H, A_i] = 0", hs, as, comm));
    report::Stopwatch sw;
    Rational shift = Rational(static_cast<long>(n) - 1, 2);
    rep.add(equality_check("runge_lenz_square", "A^2 = 2 H (P^2 - ((n-1)/2)^2) + alpha^2", a2,
                           Rational(2) * h * (psq - shift * shift * id(n)) + alpha * alpha * id(n), sw));
  }

  {
    // Quantum splitting-tree sets. Operators and commutators are shared between trees.
    report::Stopwatch sw;
    std::map<std::vector<std::size_t>, WeylOperator> ops;
    auto op_for = [&](const std::vector<std::size_t>& support) -> const WeylOperator& {
      auto it = ops.find(support);
      if (it != ops.end()) return it->second;
      WeylOperator w = support.empty() ? h
                       : support.size() == 2 ? momentum_op(n, support[0], support[1])
                                             : p_squared_op(n, support);
      return ops.emplace(support, std::move(w)).first->second;
    };
    std::map<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>, bool> commutes;
    auto check_pair = [&](std::vector<std::size_t> a, std::vector<std::size_t> b) {
      if (a == b) return true;
      if (b < a) std::swap(a, b);
      auto key = std::make_pair(a, b);
      auto it = commutes.find(key);
      if (it != commutes.end()) return it->second;
      bool z = commutator(op_for(a), op_for(b)).is_zero();
      commutes.emplace(key, z);
      return z;
    };

    Sampler sampler(cfg.seed);
    auto trees = central::enumerate_split_trees(n, cfg.max_tree_depth);
    std::size_t bad_comm = 0, bad_rank = 0;
    std::string witness;
    for (const auto& t : trees) {
      auto rs = central::build_recursive_sets(n, t);
      // empty support stands for H
      std::vector<std::vector<std::size_t>> central{{}}, all;
      central.insert(central.end(), rs.z_support.begin(), rs.z_support.end());
      all = central;
      for (auto [i, j] : rs.l_pairs) all.push_back({i, j});
      bool ok = true;
      for (std::size_t a = 0; a < central.size(); ++a)
        for (std::size_t b = a + 1; b < all.size(); ++b) ok = ok && check_pair(central[a], all[b]);
      if (!ok) {
        ++bad_comm;
        if (witness.size() < 2000) witness += "commutator " + t.describe() + " ";
      }
      std::vector<PhasePoly> symbols;
      for (const auto& s : all) symbols.push_back(op_for(s).principal_symbol());
      for (std::size_t k = 0; k < cfg.samples; ++k) {
        auto pt = poisson::sample_phase_point(n, sampler);
        if (poisson::jacobian_rank(symbols, pt) != symbols.size()) {
          ++bad_rank;
          if (witness.size() < 2000) witness += "rank " + t.describe() + " ";
          break;
        }
      }
    }
    if (bad_comm == 0 && bad_rank == 0)
      witness = std::to_string(trees.size()) + " trees, " + std::to_string(commutes.size()) + " distinct commutators";
    auto c1 = report::identity_check("recursive/commute", "central operators of every splitting tree commute with the set",
                                     bad_comm == 0, witness);
    c1.elapsed_ms = sw.ms();
    rep.add(c1);
    rep.add(report::sampled_check("recursive/symbol-rank",
                                  "principal symbols of every splitting-tree set are functionally independent",
                                  bad_rank == 0, std::to_string(bad_rank) + " trees below full rank"));
  }
  rep.prefix_ids("quantum-central/n" + std::to_string(n));
  return rep;
}

}  // namespace qsym::weyl
