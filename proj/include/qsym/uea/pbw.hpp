#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qsym/core/exponent.hpp"
#include "qsym/core/multipoly.hpp"
#include "qsym/core/rational.hpp"
#include "qsym/poisson/lie_poisson.hpp"
#include "qsym/son/so_algebra.hpp"

namespace qsym::uea {

// Non-decreasing word in the generators of so(n), packed into 64 bits: the length in the
// top four bits, then up to twelve 5-bit letters (generator index + 1), first letter
// most significant. Numeric order is length first, then lexicographic.
using Word = std::uint64_t;

namespace word {
inline constexpr std::size_t kMaxLength = 12;
inline constexpr std::size_t kMaxGenerators = 31;

inline std::size_t length(Word w) { return static_cast<std::size_t>(w >> 60); }
inline std::size_t at(Word w, std::size_t t) { return static_cast<std::size_t>((w >> (55 - 5 * t)) & 31u) - 1; }
Word append(Word w, std::size_t letter);
// Requires a non-decreasing letter sequence.
Word from_letters(const std::vector<std::size_t>& letters);
std::vector<std::size_t> letters(Word w);
Word drop_last(Word w);
inline std::size_t last(Word w) { return at(w, length(w) - 1); }
}  // namespace word

// Integer linear combination of words.
using IntCombo = std::vector<std::pair<Word, long long>>;

enum class RewriteOrder { Leftmost, Rightmost };

// Normal ordering in U(so(n)) with memoized word products. Structure constants are +-1,
// so normal forms of words have integer coefficients. The side picks the constants of the
// left momenta or their negatives (right momenta); E -> -E maps one algebra onto the other.
// Not thread-safe; use one engine per thread.
class PbwEngine {
 public:
  explicit PbwEngine(std::size_t n, poisson::Side side = poisson::Side::Left);

  const son::SoAlgebra& algebra() const { return g_; }
  std::size_t n() const { return g_.n(); }
  poisson::Side side() const { return side_; }

  // Normal form of w * x for a sorted word w.
  const IntCombo& times_generator(Word w, std::size_t x);
  // Normal form of u * v for sorted words.
  IntCombo product(Word u, Word v);
  // Normal form of u v - v u; empty when the letters commute pairwise.
  IntCombo commutator(Word u, Word v);
  // Normal form of an arbitrary letter sequence by repeatedly rewriting one adjacent
  // inversion b a -> a b + [b, a]; the order chooses which inversion is rewritten.
  IntCombo normalize_letters(const std::vector<std::size_t>& letters, RewriteOrder order) const;
  // Average over all orderings of the letters of the monomial e.
  const std::vector<std::pair<Word, Rational>>& symmetrized_monomial(const Exponent& e);
  // Bit mask of the generators that fail to commute with some letter of w.
  std::uint32_t noncommuting_mask(Word w) const;
  std::uint32_t letter_mask(Word w) const;

 private:
  struct PairHash {
    std::size_t operator()(const std::pair<Word, std::size_t>& p) const {
      return std::hash<Word>()(p.first * 0x9E3779B97F4A7C15ull + p.second);
    }
  };

  // [E_a, E_b] with the side's sign applied.
  std::optional<son::SignedGen> bracket(std::size_t a, std::size_t b) const;

  son::SoAlgebra g_;
  poisson::Side side_;
  std::vector<std::uint32_t> noncommuting_;
  std::unordered_map<std::pair<Word, std::size_t>, IntCombo, PairHash> times_memo_;
  std::unordered_map<Exponent, std::vector<std::pair<Word, Rational>>, ExponentHash> sym_memo_;
};

// Element of U(so(n)) over K as a sum of PBW words. The word order is fixed by the
// pair order (1,2) < (1,3) < ... < (n-1,n).
template <class K>
class PBWElement {
 public:
  using TermMap = std::map<Word, K>;

  PBWElement() = default;
  explicit PBWElement(std::size_t n) : n_(n) {}

  static PBWElement constant(std::size_t n, const K& c) {
    PBWElement r(n);
    r.add_term(0, c);
    return r;
  }
  // P_ij for any i != j.
  static PBWElement generator(const son::SoAlgebra& g, std::size_t i, std::size_t j) {
    PBWElement r(g.n());
    auto s = g.signed_index(i, j);
    if (s) r.add_term(word::from_letters({s->index}), K(static_cast<long>(s->sign)));
    return r;
  }

  std::size_t n() const { return n_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  std::size_t degree() const { return terms_.empty() ? 0 : word::length(terms_.rbegin()->first); }
  K coeff(Word w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? K(0) : it->second;
  }

  void add_term(Word w, const K& c) {
    if (is_zero_coeff(c)) return;
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (is_zero_coeff(it->second)) terms_.erase(it);
    }
  }

  PBWElement operator-() const {
    PBWElement r(n_);
    for (const auto& [w, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), w, -c);
    return r;
  }
  PBWElement& operator+=(const PBWElement& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
  }
  PBWElement& operator-=(const PBWElement& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, -c);
    return *this;
  }
  PBWElement& operator*=(const K& s) {
    if (is_zero_coeff(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& [w, c] : terms_) c = c * s;
    return *this;
  }
  friend PBWElement operator+(PBWElement a, const PBWElement& b) { return a += b; }
  friend PBWElement operator-(PBWElement a, const PBWElement& b) { return a -= b; }
  friend PBWElement operator*(PBWElement a, const K& s) { return a *= s; }
  friend PBWElement operator*(const K& s, PBWElement a) { return a *= s; }
  friend bool operator==(const PBWElement& a, const PBWElement& b) { return a.terms_ == b.terms_; }

  // Part of exact degree d as a commutative polynomial in the momenta.
  poisson::LiePoissonPoly<K> homogeneous_symbol(std::size_t d) const;
  poisson::LiePoissonPoly<K> principal_symbol() const { return homogeneous_symbol(degree()); }

  // Degree-d part as an element.
  PBWElement homogeneous_part(std::size_t d) const {
    PBWElement r(n_);
    for (const auto& [w, c] : terms_)
      if (word::length(w) == d) r.terms_.emplace(w, c);
    return r;
  }

  std::string str(const son::SoAlgebra& g) const;

  TermMap& mutable_terms() { return terms_; }

 private:
  static bool is_zero_coeff(const K& c) {
    using qsym::is_zero;
    return is_zero(c);
  }

  std::size_t n_ = 0;
  TermMap terms_;
};

template <class K>
poisson::LiePoissonPoly<K> PBWElement<K>::homogeneous_symbol(std::size_t d) const {
  std::size_t dim = n_ * (n_ - 1) / 2;
  poisson::LiePoissonPoly<K> p(dim);
  for (const auto& [w, c] : terms_) {
    if (word::length(w) != d) continue;
    Exponent e;
    for (std::size_t t = 0; t < d; ++t) e.inc(word::at(w, t));
    p.add_term(e, c);
  }
  return p;
}

template <class K>
std::string PBWElement<K>::str(const son::SoAlgebra& g) const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (!first) s += " + ";
    first = false;
    s += "(" + to_string(it->second) + ")";
    for (std::size_t t = 0; t < word::length(it->first); ++t) s += "*P_" + g.label(word::at(it->first, t));
  }
  return s;
}

template <class K>
bool is_zero(const PBWElement<K>& a) {
  return a.is_zero();
}

// Accumulates sum_i c_i * combo_i into an element.
template <class K>
void accumulate(std::unordered_map<Word, K>& acc, const IntCombo& combo, const K& scale) {
  for (const auto& [w, m] : combo) {
    if (m == 0) continue;
    K t = scale * K(static_cast<long>(m));
    auto [it, inserted] = acc.try_emplace(w, t);
    if (!inserted) it->second += t;
  }
}

template <class K>
PBWElement<K> from_accumulator(std::size_t n, std::unordered_map<Word, K>& acc) {
  PBWElement<K> r(n);
  for (auto& [w, c] : acc)
    if (!is_zero(c)) r.mutable_terms().emplace(w, std::move(c));
  return r;
}

template <class K>
PBWElement<K> multiply(PbwEngine& eng, const PBWElement<K>& a, const PBWElement<K>& b) {
  std::unordered_map<Word, K> acc;
  for (const auto& [u, cu] : a.terms())
    for (const auto& [v, cv] : b.terms()) accumulate(acc, eng.product(u, v), cu * cv);
  return from_accumulator(a.n(), acc);
}

// ab - ba, skipping word pairs whose letters commute pairwise.
template <class K>
PBWElement<K> commutator(PbwEngine& eng, const PBWElement<K>& a, const PBWElement<K>& b) {
  std::unordered_map<Word, K> acc;
  std::vector<std::uint32_t> bmask;
  bmask.reserve(b.size());
  for (const auto& [v, cv] : b.terms()) bmask.push_back(eng.letter_mask(v));
  for (const auto& [u, cu] : a.terms()) {
    const std::uint32_t um = eng.noncommuting_mask(u);
    std::size_t t = 0;
    for (const auto& [v, cv] : b.terms()) {
      if (um & bmask[t++]) accumulate(acc, eng.commutator(u, v), cu * cv);
    }
  }
  return from_accumulator(a.n(), acc);
}

// Weyl-type symmetrization: each monomial goes to the average of all orderings of its
// factors.
template <class K>
PBWElement<K> symmetrize(PbwEngine& eng, const poisson::LiePoissonPoly<K>& f) {
  std::unordered_map<Word, K> acc;
  for (const auto& [e, c] : f.terms())
    for (const auto& [w, q] : eng.symmetrized_monomial(e)) {
      K t = c * K(q);
      auto [it, inserted] = acc.try_emplace(w, t);
      if (!inserted) it->second += t;
    }
  return from_accumulator(eng.n(), acc);
}

// (1/k!) sum over orderings of the given factors, each a signed generator P_ij.
PBWElement<Rational> sym_product(PbwEngine& eng, const std::vector<std::pair<std::size_t, std::size_t>>& factors);

template <class K>
PBWElement<K> lift(const PBWElement<Rational>& a) {
  PBWElement<K> r(a.n());
  for (const auto& [w, c] : a.terms()) r.mutable_terms().emplace(w, K(c));
  return r;
}

}  // namespace qsym::uea
