#include "qsym/uea/quantum_rigid.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

#include "qsym/core/matrix.hpp"
#include "qsym/poisson/chart.hpp"

namespace qsym::uea {

namespace {

template <class K>
K lambda_sq(const MomentSpec& spec, std::size_t i) {
  K l = spec.lambda<K>(i);
  return l * l;
}

template <class K>
K power(K x, std::size_t e) {
  K r(1);
  for (std::size_t t = 0; t < e; ++t) r = r * x;
  return r;
}

// h_{h-4} of the squares at four indices.
template <class K>
K quartic_weight(std::size_t h, const MomentSpec& spec, std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
  return rigid::manakov_coefficient<K>({h, 2}, {a, b, c, d}, spec);
}

// Unantisymmetrized b^{ijk} for the quadratic operator with weight a against c_{h,h-4}.
template <class K>
K raw_obstruction(const QuadraticWeight<K>& a, std::size_t h, const MomentSpec& spec, std::size_t i, std::size_t j,
                  std::size_t k) {
  const std::size_t n = spec.n();
  const K iijk = quartic_weight<K>(h, spec, i, i, j, k);
  K inner = K(2) * iijk - K(3) * quartic_weight<K>(h, spec, i, i, k, k);
  K tail(0);
  for (std::size_t p = 0; p < n; ++p) {
    if (p == i || p == j || p == k) continue;
    inner -= quartic_weight<K>(h, spec, i, i, k, p);
    tail += a(k, p) * (iijk - quartic_weight<K>(h, spec, i, i, j, p));
  }
  return a(i, j) * inner + tail;
}

template <class K>
K antisymmetrize(const std::function<K(std::size_t, std::size_t, std::size_t)>& f, std::size_t i, std::size_t j,
                 std::size_t k) {
  K even = f(i, j, k) + f(j, k, i) + f(k, i, j);
  K odd = f(j, i, k) + f(i, k, j) + f(k, j, i);
  return (even - odd) * K(Rational(1, 6));
}

std::string truncate(std::string s, std::size_t max = 600) {
  if (s.size() > max) s = s.substr(0, max) + "...";
  return s;
}

// Collects nonzero remainders of claimed zeros.
struct Tally {
  std::size_t computed = 0;
  std::size_t bad = 0;
  std::string witness;

  template <class K>
  void zero(const std::string& what, const PBWElement<K>& v, const son::SoAlgebra& g) {
    ++computed;
    if (v.is_zero()) return;
    ++bad;
    if (witness.size() < 4000) witness += what + " = " + truncate(v.str(g)) + "; ";
  }
  void flag(const std::string& what, bool ok) {
    ++computed;
    if (ok) return;
    ++bad;
    if (witness.size() < 4000) witness += what + "; ";
  }
  report::Check check(std::string id, std::string claim, const report::Stopwatch& sw) const {
    auto c = report::identity_check(std::move(id), std::move(claim), bad == 0,
                                    bad == 0 ? std::to_string(computed) + " identities hold exactly"
                                             : std::to_string(bad) + " of " + std::to_string(computed) +
                                                   " fail: " + witness);
    c.elapsed_ms = sw.ms();
    return c;
  }
};

std::vector<std::array<std::size_t, 3>> ordered_triples(std::size_t n) {
  std::vector<std::array<std::size_t, 3>> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) out.push_back({i, j, k});
  return out;
}

std::string triple_label(const std::array<std::size_t, 3>& t) {
  return std::to_string(t[0] + 1) + std::to_string(t[1] + 1) + std::to_string(t[2] + 1);
}

std::string quad_label(std::size_t l) {
  return "c_" + std::to_string(l) + "_" + std::to_string(l - 2);
}

}  // namespace

template <class K>
PBWElement<K> manakov_operator(PbwEngine& eng, const ManakovIndex& idx, const MomentSpec& spec) {
  return symmetrize<K>(eng, rigid::manakov_integral<K>(eng.algebra(), idx, spec));
}

template <class K>
PBWElement<K> hamiltonian_operator(PbwEngine& eng, const MomentSpec& spec) {
  return symmetrize<K>(eng, rigid::hamiltonian<K>(eng.algebra(), spec));
}

template <class K>
PBWElement<K> c62_correction(PbwEngine& eng, const MomentSpec& spec) {
  const auto& g = eng.algebra();
  PBWElement<K> out(g.n());
  for (std::size_t a = 0; a < g.dim(); ++a) {
    auto [i, j] = g.pair(a);
    out.add_term(word::from_letters({a, a}), K(Rational(5, 12)) * lambda_sq<K>(spec, i) * lambda_sq<K>(spec, j));
  }
  return out;
}

template <class K>
PBWElement<K> modified_c62(PbwEngine& eng, const MomentSpec& spec) {
  if (eng.n() < 4) throw std::invalid_argument("the modified c_{6,2} needs n >= 4");
  return manakov_operator<K>(eng, {6, 2}, spec) + c62_correction<K>(eng, spec);
}

PBWElement<Rational> sym3(PbwEngine& eng, std::size_t i, std::size_t j, std::size_t k) {
  return sym_product(eng, {{i, j}, {j, k}, {k, i}});
}

template <class K>
QuadraticWeight<K> manakov_weight(std::size_t l, const MomentSpec& spec) {
  return [l, spec](std::size_t i, std::size_t j) { return rigid::manakov_coefficient<K>({l, 1}, {i, j}, spec); };
}

template <class K>
QuadraticWeight<K> hamiltonian_weight(const MomentSpec& spec) {
  return [spec](std::size_t i, std::size_t j) { return K(1) / (spec.lambda<K>(i) + spec.lambda<K>(j)); };
}

template <class K>
K obstruction_b(const QuadraticWeight<K>& a, std::size_t h, const MomentSpec& spec, std::size_t i, std::size_t j,
                std::size_t k) {
  return antisymmetrize<K>([&](std::size_t x, std::size_t y, std::size_t z) { return raw_obstruction(a, h, spec, x, y, z); },
                           i, j, k);
}

template <class K>
K obstruction_b(std::size_t l, std::size_t h, const MomentSpec& spec, std::size_t i, std::size_t j, std::size_t k) {
  return obstruction_b<K>(manakov_weight<K>(l, spec), h, spec, i, j, k);
}

template <class K>
K obstruction_b_closed(std::size_t l, std::size_t h, const MomentSpec& spec, std::size_t i, std::size_t j,
                       std::size_t k) {
  if (h == 5) return K(0);
  if (h != 6) throw std::invalid_argument("closed form known only for h = 5 and h = 6");
  const K si = lambda_sq<K>(spec, i), sj = lambda_sq<K>(spec, j), sk = lambda_sq<K>(spec, k);
  const std::size_t e = l - 1;
  return K(Rational(5, 6)) * (power(si, e) * (sj - sk) + power(sj, e) * (sk - si) + power(sk, e) * (si - sj));
}

template <class K>
K hamiltonian_obstruction_closed(const MomentSpec& spec, std::size_t i, std::size_t j, std::size_t k) {
  const K li = spec.lambda<K>(i), lj = spec.lambda<K>(j), lk = spec.lambda<K>(k);
  return K(Rational(-5, 6)) * (li * (lj * lj - lk * lk) + lj * (lk * lk - li * li) + lk * (li * li - lj * lj));
}

template <class K>
K alpha_obstruction(std::size_t l, const QuadraticWeight<K>& alpha, const MomentSpec& spec, std::size_t i,
                    std::size_t j, std::size_t k) {
  auto a = manakov_weight<K>(l, spec);
  return (alpha(j, k) - alpha(i, k)) * a(i, j) + (alpha(k, i) - alpha(j, i)) * a(j, k) +
         (alpha(i, j) - alpha(k, j)) * a(k, i);
}

template <class K>
PBWElement<K> sym3_expansion(PbwEngine& eng,
                             const std::function<K(std::size_t, std::size_t, std::size_t)>& coeff) {
  PBWElement<K> out(eng.n());
  for (const auto& t : ordered_triples(eng.n())) {
    K c = coeff(t[0], t[1], t[2]);
    if (is_zero(c)) continue;
    out += lift<K>(sym3(eng, t[0], t[1], t[2])) * c;
  }
  return out;
}

template <class K>
PBWElement<K> c51_correction_expansion(PbwEngine& eng, const MomentSpec& spec) {
  const std::size_t n = eng.n();
  PBWElement<K> out(n);
  for (std::size_t h = 0; h < n; ++h)
    for (std::size_t l = 0; l < n; ++l)
      for (std::size_t m = 0; m < n; ++m) {
        if (h == l || l == m) continue;
        PBWElement<Rational> inner = sym_product(eng, {{h, l}, {l, m}, {m, h}}) * Rational(5, 3);
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) inner += sym_product(eng, {{i, j}, {j, h}, {h, l}, {l, m}, {m, i}});
        K w = K(Rational(-5, 6)) * power(lambda_sq<K>(spec, l), 2) * lambda_sq<K>(spec, m);
        out += lift<K>(inner) * w;
      }
  return out;
}

namespace {

template <class K>
std::vector<std::pair<std::string, PBWElement<K>>> quadratic_family(PbwEngine& eng, const MomentSpec& spec) {
  std::vector<std::pair<std::string, PBWElement<K>>> out;
  for (std::size_t l = 2; l <= eng.n(); ++l) out.push_back({quad_label(l), manakov_operator<K>(eng, {l, 1}, spec)});
  return out;
}

template <class K>
std::vector<PBWElement<K>> generators(const son::SoAlgebra& g) {
  std::vector<PBWElement<K>> out;
  for (std::size_t a = 0; a < g.dim(); ++a) {
    auto [i, j] = g.pair(a);
    out.push_back(PBWElement<K>::generator(g, i, j));
  }
  return out;
}

// Commutator identities at one coefficient field.
template <class K>
void algebra_checks(PbwEngine& eng, const MomentSpec& spec, bool light, bool heavy, report::VerificationReport& rep) {
  const auto& g = eng.algebra();
  const std::size_t n = g.n();
  const auto hat_h = hamiltonian_operator<K>(eng, spec);
  const auto quads = quadratic_family<K>(eng, spec);
  const auto gens = generators<K>(g);
  std::optional<PBWElement<K>> c51, c62, big_c62;
  if (n >= 5) c51 = manakov_operator<K>(eng, {5, 2}, spec);
  if (n >= 6) {
    c62 = manakov_operator<K>(eng, {6, 2}, spec);
    big_c62 = *c62 + c62_correction<K>(eng, spec);
  }

  if (light) {
    {
      report::Stopwatch sw;
      Tally t;
      for (std::size_t k = 2; k <= n; k += 2) {
        auto c = manakov_operator<K>(eng, {k, k / 2}, spec);
        for (std::size_t a = 0; a < gens.size(); ++a) t.zero("[c_" + std::to_string(k) + "_0, P_" + g.label(a) + "]",
                                                              commutator(eng, c, gens[a]), g);
      }
      rep.add(t.check("casimir-operators/central", "symmetrized c_{k,0} commute with every generator", sw));
    }
    {
      report::Stopwatch sw;
      Tally t;
      for (std::size_t a = 0; a < quads.size(); ++a) {
        t.zero("[H, " + quads[a].first + "]", commutator(eng, hat_h, quads[a].second), g);
        for (std::size_t b = a + 1; b < quads.size(); ++b)
          t.zero("[" + quads[a].first + ", " + quads[b].first + "]", commutator(eng, quads[a].second, quads[b].second),
                 g);
      }
      rep.add(t.check("quadratic/commute", "[c_{l,l-2}, c_{h,h-2}] = 0 and [H, c_{h,h-2}] = 0", sw));
    }
    {
      report::Stopwatch sw;
      Tally t;
      auto beta = rigid::hamiltonian_combination<K>(g, spec);
      if (!beta) {
        t.flag("no combination of the classical quadratic integrals gives H", false);
      } else {
        PBWElement<K> sum(n);
        for (std::size_t a = 0; a < quads.size(); ++a) sum += quads[a].second * (*beta)[a];
        t.zero("H - sum beta_k c_{k,k-2}", hat_h - sum, g);
      }
      rep.add(t.check("hamiltonian-combination", "H = sum_k beta_k c_{k,k-2} with the classical weights", sw));
    }
    {
      report::Stopwatch sw;
      Tally t;
      for (std::size_t a = 0; a < gens.size(); ++a) {
        auto s = gens[a].principal_symbol();
        for (std::size_t b = 0; b < quads.size(); ++b) {
          auto lhs = commutator(eng, quads[b].second, gens[a]).principal_symbol();
          auto rhs = poisson::lie_poisson_bracket(g, quads[b].second.principal_symbol(), s);
          t.flag("symbol of [" + quads[b].first + ", P_" + g.label(a) + "]", lhs == rhs);
        }
      }
      rep.add(t.check("quadratic/symbols", "principal symbols of commutators are the Lie-Poisson brackets", sw));
    }
    for (std::size_t h = 5; h <= std::min<std::size_t>(n, 6); ++h) {
      const auto& ch = h == 5 ? *c51 : *c62;
      const std::string hl = h == 5 ? "c_5_1" : "c_6_2";
      report::Stopwatch sw;
      Tally general, closed;
      for (std::size_t l = 2; l <= n; ++l) {
        auto lhs = commutator(eng, quads[l - 2].second, ch);
        auto rhs = sym3_expansion<K>(
            eng, [&](std::size_t i, std::size_t j, std::size_t k) { return obstruction_b<K>(l, h, spec, i, j, k); });
        general.zero("[" + quads[l - 2].first + ", " + hl + "] + sum b Sym3", lhs + rhs, g);
        for (const auto& tr : ordered_triples(n))
          closed.flag("b^" + triple_label(tr) + "_{" + std::to_string(l) + "," + std::to_string(h) + "}",
                      obstruction_b<K>(l, h, spec, tr[0], tr[1], tr[2]) ==
                          obstruction_b_closed<K>(l, h, spec, tr[0], tr[1], tr[2]));
      }
      const std::string tag = "quadratic-vs-" + hl;
      rep.add(general.check(tag + "/expansion",
                            "[c_{l,l-2}, " + hl + "] = -sum_{i<j<k} b^[ijk] Sym3(P_ij, P_jk, P_ki) with b from the "
                            "general coefficient formula",
                            sw));
      rep.add(closed.check(tag + "/closed-form",
                           h == 5 ? "b^[ijk]_{l,5} = 0" : "b^[ijk]_{l,6} = (5/6)[l_i^{2(l-1)}(l_j^2 - l_k^2) + cyclic]",
                           sw));
    }
    if (c51) {
      report::Stopwatch sw;
      Tally t;
      t.zero("[H, c_5_1]", commutator(eng, hat_h, *c51), g);
      for (const auto& [label, q] : quads) t.zero("[" + label + ", c_5_1]", commutator(eng, q, *c51), g);
      rep.add(t.check("c51/quadratic", "[c_{l,l-2}, c_{5,1}] = 0 and [H, c_{5,1}] = 0", sw));
    }
    if (c62) {
      {
        report::Stopwatch sw;
        Tally t;
        auto lhs = commutator(eng, hat_h, *c62);
        // the obstruction vanishes when at most two moments differ
        if (spec.u() >= 3) t.flag("[H, c_6_2] is nonzero", !lhs.is_zero());
        auto rhs = sym3_expansion<K>(eng, [&](std::size_t i, std::size_t j, std::size_t k) {
          return hamiltonian_obstruction_closed<K>(spec, i, j, k);
        });
        t.zero("[H, c_6_2] + sum b Sym3", lhs + rhs, g);
        auto hw = hamiltonian_weight<K>(spec);
        for (const auto& tr : ordered_triples(n))
          t.flag("hamiltonian b^" + triple_label(tr) + " from the general formula",
                 -obstruction_b<K>(hw, 6, spec, tr[0], tr[1], tr[2]) ==
                     hamiltonian_obstruction_closed<K>(spec, tr[0], tr[1], tr[2]));
        rep.add(t.check("hamiltonian-vs-c_6_2",
                        "[H, c_{6,2}] = -sum_{i<j<k} b^{ijk} Sym3 with b^{ijk} = -(5/6)[l_i(l_j^2 - l_k^2) + cyclic]",
                        sw));
      }
      {
        report::Stopwatch sw;
        Tally t;
        QuadraticWeight<K> alpha = [&](std::size_t i, std::size_t j) {
          return K(Rational(5, 6)) * lambda_sq<K>(spec, i) * lambda_sq<K>(spec, j);
        };
        auto corr = c62_correction<K>(eng, spec);
        for (std::size_t l = 2; l <= n; ++l) {
          // -1/4 sum_{ij} alpha^{ij} P_ij^2 = -correction
          auto lhs = -commutator(eng, quads[l - 2].second, corr);
          auto rhs = sym3_expansion<K>(eng, [&](std::size_t i, std::size_t j, std::size_t k) {
            return alpha_obstruction<K>(l, alpha, spec, i, j, k);
          });
          t.zero("-1/4 sum alpha [" + quads[l - 2].first + ", P^2] + sum bbar Sym3", lhs + rhs, g);
          for (const auto& tr : ordered_triples(n))
            t.flag("bbar^" + triple_label(tr) + " = b^[ijk]_{" + std::to_string(l) + ",6}",
                   alpha_obstruction<K>(l, alpha, spec, tr[0], tr[1], tr[2]) ==
                       obstruction_b_closed<K>(l, 6, spec, tr[0], tr[1], tr[2]));
        }
        rep.add(t.check("alpha-correction",
                        "-1/4 sum alpha^{ij} [c_{l,l-2}, P_ij^2] = -sum bbar Sym3 and bbar = b^[ijk]_{l,6} for "
                        "alpha^{ij} = (5/6) l_i^2 l_j^2",
                        sw));
      }
      {
        report::Stopwatch sw;
        Tally t;
        auto corr = c62_correction<K>(eng, spec);
        t.flag("correction has " + std::to_string(corr.size()) + " summands", corr.size() == g.dim());
        t.flag("principal symbol of C_6_2 is c_6_2",
               big_c62->principal_symbol() == rigid::manakov_integral<K>(g, {6, 2}, spec));
        t.zero("[H, C_6_2]", commutator(eng, hat_h, *big_c62), g);
        for (const auto& [label, q] : quads) t.zero("[" + label + ", C_6_2]", commutator(eng, q, *big_c62), g);
        rep.add(t.check("modified-c_6_2/quadratic", "[H, C_{6,2}] = 0 and [c_{l,l-2}, C_{6,2}] = 0", sw));
      }
      {
        report::Stopwatch sw;
        Tally t;
        auto lhs = commutator(eng, *c51, c62_correction<K>(eng, spec));
        t.zero("(5/12) sum l_i^2 l_j^2 [c_5_1, P_ij^2] + expansion", lhs + c51_correction_expansion<K>(eng, spec), g);
        rep.add(t.check("c_5_1-vs-correction",
                        "(5/12) sum_{i<j} l_i^2 l_j^2 [c_{5,1}, P_ij^2] is the opposite of the Sym3 and Sym5 expansion", sw));
      }
    }
  }
  if (heavy && c62) {
    {
      report::Stopwatch sw;
      Tally t;
      t.zero("[c_5_1, C_6_2]", commutator(eng, *c51, *big_c62), g);
      rep.add(t.check("c51_C62_commute", "[c_{5,1}, C_{6,2}] = 0", sw));
    }
    {
      report::Stopwatch sw;
      Tally t;
      auto lhs = commutator(eng, *c51, *c62);
      if (spec.u() >= 3) t.flag("[c_5_1, c_6_2] is nonzero", !lhs.is_zero());
      t.zero("[c_5_1, c_6_2] - expansion", lhs - c51_correction_expansion<K>(eng, spec), g);
      rep.add(t.check("c_5_1-vs-c_6_2", "[c_{5,1}, c_{6,2}] equals the Sym3 and Sym5 expansion", sw));
    }
  }
}

// Symmetrized Z^lambda against the generators it must commute with, and the Manakov
// operators against the block momenta.
template <class K>
void z_checks(PbwEngine& eng, const MomentSpec& spec, report::VerificationReport& rep) {
  const auto& g = eng.algebra();
  report::Stopwatch sw;
  Tally t;
  auto gens = generators<K>(g);
  std::vector<std::size_t> block_pairs = spec.equal_pairs();
  for (const auto& z : rigid::z_lambda<K>(g, spec)) {
    auto op = symmetrize<K>(eng, z.poly);
    const bool full = z.label.find('(') == std::string::npos;
    for (std::size_t a = 0; a < g.dim(); ++a) {
      if (!full && std::find(block_pairs.begin(), block_pairs.end(), a) == block_pairs.end()) continue;
      t.zero("[" + z.label + ", P_" + g.label(a) + "]", commutator(eng, op, gens[a]), g);
    }
  }
  for (const auto& idx : rigid::manakov_indices(g.n())) {
    if (block_pairs.empty()) break;
    auto op = manakov_operator<K>(eng, idx, spec);
    for (std::size_t a : block_pairs) t.zero("[" + idx.label() + ", P_" + g.label(a) + "]", commutator(eng, op, gens[a]), g);
  }
  auto hat_h = hamiltonian_operator<K>(eng, spec);
  for (std::size_t a : block_pairs) t.zero("[H, P_" + g.label(a) + "]", commutator(eng, hat_h, gens[a]), g);
  rep.add(t.check("z-lambda/commute",
                  "full Casimir operators are central, block Casimirs, H and the Manakov operators commute with "
                  "the block momenta",
                  sw));
}

// Quantized integrable set at explicit moments: operators commute, their principal symbols
// are the classical functions, and those are independent.
void assembled_checks(PbwEngine& eng, const MomentSpec& spec, Sampler& sampler, report::VerificationReport& rep) {
  const auto& g = eng.algebra();
  const std::size_t n = g.n();
  report::Stopwatch sw;
  auto pt = poisson::sample_rigid_point(g, sampler);
  rigid::RigidBodySet set;
  try {
    set = rigid::assemble_integrable_set(g, spec, pt);
  } catch (const std::runtime_error& e) {
    rep.add(report::identity_check("assembled/commute", "the quantized integrable set commutes", false, e.what()));
    return;
  }
  auto quantize = [&](const poisson::RigidFunction<Rational>& f) {
    if (n == 6 && f.label == "c_6_2") return modified_c62<Rational>(eng, spec);
    return symmetrize<Rational>(eng, f.poly);
  };
  Tally commute, symbols;
  std::vector<std::pair<std::string, PBWElement<Rational>>> manakov, left_noncentral;
  std::size_t right = 0;
  for (const auto& f : set.manakov) manakov.push_back({f.label, quantize(f)});
  for (const auto& f : set.noncentral) {
    if (f.side == poisson::Side::Right) {
      ++right;
      continue;
    }
    left_noncentral.push_back({f.label, quantize(f)});
  }
  auto gens = generators<Rational>(g);
  for (const auto& z : set.z) {
    auto op = quantize(z);
    symbols.flag("symbol of " + z.label, op.principal_symbol() == z.poly);
    for (const auto& [label, f] : left_noncentral) commute.zero("[" + z.label + ", " + label + "]", commutator(eng, op, f), g);
  }
  for (std::size_t a = 0; a < manakov.size(); ++a) {
    symbols.flag("symbol of " + manakov[a].first, manakov[a].second.principal_symbol() == set.manakov[a].poly);
    for (std::size_t b = a + 1; b < manakov.size(); ++b)
      commute.zero("[" + manakov[a].first + ", " + manakov[b].first + "]",
                   commutator(eng, manakov[a].second, manakov[b].second), g);
    for (const auto& [label, f] : left_noncentral)
      commute.zero("[" + manakov[a].first + ", " + label + "]", commutator(eng, manakov[a].second, f), g);
  }
  std::vector<poisson::RigidFunction<Rational>> from_symbols;
  for (const auto& f : set.all()) from_symbols.push_back({f.side, f.poly, f.label});
  for (std::size_t a = 0; a < set.manakov.size(); ++a)
    from_symbols[set.z.size() + a].poly = manakov[a].second.principal_symbol();
  const std::size_t rank = poisson::jacobian_rank(g, from_symbols, pt);
  const std::size_t target = 2 * g.dim() - set.counts.kbar;
  symbols.flag("rank " + std::to_string(rank) + " of " + std::to_string(target), rank == target);
  auto c = commute.check("assembled/commute", "central operators of the quantized set commute with every left operator",
                         sw);
  c.witness += " (" + std::to_string(right) + " right momenta commute with all left operators)";
  rep.add(c);
  auto s = report::sampled_check("assembled/symbols",
                                 "principal symbols are the classical integrals and are functionally independent",
                                 symbols.bad == 0,
                                 symbols.bad == 0 ? std::to_string(symbols.computed) + " symbol checks hold"
                                                  : symbols.witness);
  s.elapsed_ms = sw.ms();
  rep.add(s);
}

// q = (n) and q = (1, n-1): H is a combination of the quadratic Casimir operators.
template <class K>
void reduced_checks(PbwEngine& eng, const MomentSpec& spec, report::VerificationReport& rep) {
  const auto& g = eng.algebra();
  report::Stopwatch sw;
  Tally t;
  std::vector<PBWElement<K>> quadratic;
  for (const auto& z : rigid::z_lambda<K>(g, spec))
    if (z.poly.total_degree() == 2) quadratic.push_back(symmetrize<K>(eng, z.poly));
  auto hat_h = hamiltonian_operator<K>(eng, spec);
  std::map<Word, std::size_t> rows;
  for (const auto& [w, c] : hat_h.terms()) rows.emplace(w, rows.size());
  for (const auto& z : quadratic)
    for (const auto& [w, c] : z.terms()) rows.emplace(w, rows.size());
  Matrix<K> m(rows.size(), quadratic.size());
  std::vector<K> rhs(rows.size(), K(0));
  for (const auto& [w, r] : rows) {
    for (std::size_t c = 0; c < quadratic.size(); ++c) m(r, c) = quadratic[c].coeff(w);
    rhs[r] = hat_h.coeff(w);
  }
  t.flag("H in the span of the quadratic Z operators", solve_linear(m, rhs).has_value());
  rep.add(t.check("reduced/hamiltonian-in-z", "H is a linear combination of the Z operators", sw));
}

std::string rational_list(const std::vector<Rational>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].str();
  return s;
}

// First sample uses block values 1..u; later ones are random.
std::vector<MomentSpec> sample_specs(const std::vector<std::size_t>& q, std::size_t count, Sampler& sampler) {
  std::vector<MomentSpec> out;
  std::vector<Rational> first;
  for (std::size_t b = 0; b < q.size(); ++b) first.push_back(Rational(static_cast<long>(b + 1)));
  out.push_back(MomentSpec::symbolic(q).specialize(first));
  while (out.size() < count) out.push_back(MomentSpec::sampled(q, sampler, 1000));
  return out;
}

template <class K>
void run_all(PbwEngine& eng, const MomentSpec& spec, bool light, bool heavy, bool reduced,
             report::VerificationReport& rep) {
  algebra_checks<K>(eng, spec, light, heavy, rep);
  if (!light) return;
  z_checks<K>(eng, spec, rep);
  if (reduced) reduced_checks<K>(eng, spec, rep);
}

}  // namespace

report::VerificationReport verify_quantum_rigid(const QuantumRigidConfig& cfg) {
  report::VerificationReport rep;
  Sampler sampler(cfg.seed);
  const std::size_t n = cfg.lambda.empty() ? cfg.n : cfg.lambda.size();
  if (n < 3 || n > 6) throw std::invalid_argument("the quantum rigid-body suite needs 3 <= n <= 6");
  std::vector<std::size_t> q = cfg.q.empty() ? std::vector<std::size_t>(n, 1) : cfg.q;
  if (cfg.lambda.empty() && std::accumulate(q.begin(), q.end(), std::size_t{0}) != n)
    throw std::invalid_argument("partition does not sum to n");
  PbwEngine eng(n);

  if (!cfg.lambda.empty()) {
    auto spec = MomentSpec::explicit_values(cfg.lambda);
    const auto& sq = spec.q();
    const bool reduced = sq.size() == 1 || (sq.size() == 2 && sq[0] == 1);
    run_all<Rational>(eng, spec, true, true, reduced, rep);
    assembled_checks(eng, spec, sampler, rep);
    for (auto& c : rep.checks) c.witness += " [lambda " + rational_list(cfg.lambda) + "]";
    rep.prefix_ids("quantum-rigid/n" + std::to_string(n) + "/lambda(" + rational_list(cfg.lambda) + ")");
    return rep;
  }

  const bool reduced = q.size() == 1 || (q.size() == 2 && q[0] == 1);
  const bool split = !cfg.mode && n >= cfg.sampled_from_n;
  const rigid::Mode mode = cfg.mode.value_or(rigid::Mode::Symbolic);
  auto samples = sample_specs(q, std::max<std::size_t>(cfg.samples, 1), sampler);
  if (mode == rigid::Mode::Symbolic) {
    auto spec = MomentSpec::symbolic(q);
    report::VerificationReport sym;
    run_all<RationalFunction>(eng, spec, true, !split, reduced, sym);
    for (auto& c : sym.checks) c.witness += " [symbolic " + spec.describe() + "]";
    rep.append(sym);
  }
  if (mode == rigid::Mode::Sampled || split) {
    for (std::size_t t = 0; t < samples.size(); ++t) {
      report::VerificationReport sub;
      run_all<Rational>(eng, samples[t], mode == rigid::Mode::Sampled, true, reduced, sub);
      for (auto& c : sub.checks) c.witness += " [" + samples[t].describe() + "]";
      sub.prefix_ids("sample" + std::to_string(t + 1));
      rep.append(sub);
    }
  }
  report::VerificationReport asm_rep;
  assembled_checks(eng, samples.front(), sampler, asm_rep);
  for (auto& c : asm_rep.checks) c.witness += " [" + samples.front().describe() + "]";
  rep.append(asm_rep);
  rep.prefix_ids("quantum-rigid/n" + std::to_string(n) + "/q" + rigid::partition_label(q));
  return rep;
}

#define QSYM_UEA_INSTANTIATE(K)                                                                                      \
  template PBWElement<K> manakov_operator<K>(PbwEngine&, const ManakovIndex&, const MomentSpec&);                   \
  template PBWElement<K> hamiltonian_operator<K>(PbwEngine&, const MomentSpec&);                                    \
  template PBWElement<K> c62_correction<K>(PbwEngine&, const MomentSpec&);                                          \
  template PBWElement<K> modified_c62<K>(PbwEngine&, const MomentSpec&);                                            \
  template QuadraticWeight<K> manakov_weight<K>(std::size_t, const MomentSpec&);                                    \
  template QuadraticWeight<K> hamiltonian_weight<K>(const MomentSpec&);                                             \
  template K obstruction_b<K>(const QuadraticWeight<K>&, std::size_t, const MomentSpec&, std::size_t, std::size_t, \
                              std::size_t);                                                                          \
  template K obstruction_b<K>(std::size_t, std::size_t, const MomentSpec&, std::size_t, std::size_t, std::size_t);  \
  template K obstruction_b_closed<K>(std::size_t, std::size_t, const MomentSpec&, std::size_t, std::size_t,         \
                                     std::size_t);                                                                   \
  template K hamiltonian_obstruction_closed<K>(const MomentSpec&, std::size_t, std::size_t, std::size_t);           \
  template K alpha_obstruction<K>(std::size_t, const QuadraticWeight<K>&, const MomentSpec&, std::size_t,           \
                                  std::size_t, std::size_t);                                                         \
  template PBWElement<K> sym3_expansion<K>(PbwEngine&, const std::function<K(std::size_t, std::size_t, std::size_t)>&); \
  template PBWElement<K> c51_correction_expansion<K>(PbwEngine&, const MomentSpec&);

QSYM_UEA_INSTANTIATE(Rational)
QSYM_UEA_INSTANTIATE(RationalFunction)

}  // namespace qsym::uea
