#include "qsym/uea/pbw.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace qsym::uea {

namespace word {

Word append(Word w, std::size_t letter) {
  const std::size_t len = length(w);
  if (len >= kMaxLength) throw std::length_error("PBW word longer than 12 letters");
  if (letter >= kMaxGenerators) throw std::out_of_range("PBW letter out of range");
  w &= (Word(1) << 60) - 1;
  w |= Word(letter + 1) << (55 - 5 * len);
  return w | (Word(len + 1) << 60);
}

Word from_letters(const std::vector<std::size_t>& letters) {
  Word w = 0;
  for (std::size_t t = 0; t < letters.size(); ++t) {
    if (t > 0 && letters[t] < letters[t - 1]) throw std::invalid_argument("PBW word letters must be non-decreasing");
    w = append(w, letters[t]);
  }
  return w;
}

std::vector<std::size_t> letters(Word w) {
  std::vector<std::size_t> out(length(w));
  for (std::size_t t = 0; t < out.size(); ++t) out[t] = at(w, t);
  return out;
}

Word drop_last(Word w) {
  const std::size_t len = length(w);
  if (len == 0) throw std::logic_error("drop_last on the empty word");
  w &= ~(Word(31) << (55 - 5 * (len - 1)));
  w &= (Word(1) << 60) - 1;
  return w | (Word(len - 1) << 60);
}

}  // namespace word

namespace {

long long checked_mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("PBW coefficient overflow");
  return r;
}

long long checked_add(long long a, long long b) {
  long long r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("PBW coefficient overflow");
  return r;
}

void add_scaled(std::unordered_map<Word, long long>& acc, const IntCombo& combo, long long scale) {
  for (const auto& [w, c] : combo) {
    auto& slot = acc[w];
    slot = checked_add(slot, checked_mul(c, scale));
  }
}

IntCombo to_combo(const std::unordered_map<Word, long long>& acc) {
  IntCombo out;
  out.reserve(acc.size());
  for (const auto& [w, c] : acc)
    if (c != 0) out.emplace_back(w, c);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

PbwEngine::PbwEngine(std::size_t n, poisson::Side side) : g_(n), side_(side) {
  if (g_.dim() > word::kMaxGenerators) throw std::invalid_argument("PBW engine supports n <= 8");
  noncommuting_.assign(g_.dim(), 0);
  for (std::size_t a = 0; a < g_.dim(); ++a)
    for (std::size_t b = 0; b < g_.dim(); ++b)
      if (!g_.commute(a, b)) noncommuting_[a] |= std::uint32_t(1) << b;
}

std::optional<son::SignedGen> PbwEngine::bracket(std::size_t a, std::size_t b) const {
  auto br = g_.bracket(a, b);
  if (br && side_ == poisson::Side::Right) br->sign = -br->sign;
  return br;
}

std::uint32_t PbwEngine::noncommuting_mask(Word w) const {
  std::uint32_t m = 0;
  for (std::size_t t = 0; t < word::length(w); ++t) m |= noncommuting_[word::at(w, t)];
  return m;
}

std::uint32_t PbwEngine::letter_mask(Word w) const {
  std::uint32_t m = 0;
  for (std::size_t t = 0; t < word::length(w); ++t) m |= std::uint32_t(1) << word::at(w, t);
  return m;
}

const IntCombo& PbwEngine::times_generator(Word w, std::size_t x) {
  const auto key = std::make_pair(w, x);
  if (auto it = times_memo_.find(key); it != times_memo_.end()) return it->second;
  IntCombo result;
  if (word::length(w) == 0 || word::last(w) <= x) {
    result.emplace_back(word::append(w, x), 1);
  } else {
    // w' y x = (w' x) y + w' [y, x]
    const Word head = word::drop_last(w);
    const std::size_t y = word::last(w);
    std::unordered_map<Word, long long> acc;
    const IntCombo head_x = times_generator(head, x);
    for (const auto& [t, c] : head_x) add_scaled(acc, times_generator(t, y), c);
    if (auto br = bracket(y, x)) add_scaled(acc, times_generator(head, br->index), br->sign);
    result = to_combo(acc);
  }
  return times_memo_.emplace(key, std::move(result)).first->second;
}

IntCombo PbwEngine::product(Word u, Word v) {
  std::unordered_map<Word, long long> cur{{u, 1}};
  for (std::size_t t = 0; t < word::length(v); ++t) {
    const std::size_t x = word::at(v, t);
    std::unordered_map<Word, long long> next;
    for (const auto& [w, c] : cur)
      if (c != 0) add_scaled(next, times_generator(w, x), c);
    cur = std::move(next);
  }
  return to_combo(cur);
}

IntCombo PbwEngine::commutator(Word u, Word v) {
  if ((noncommuting_mask(u) & letter_mask(v)) == 0) return {};
  std::unordered_map<Word, long long> acc;
  add_scaled(acc, product(u, v), 1);
  add_scaled(acc, product(v, u), -1);
  return to_combo(acc);
}

IntCombo PbwEngine::normalize_letters(const std::vector<std::size_t>& letters, RewriteOrder order) const {
  std::map<std::vector<std::size_t>, long long> pending{{letters, 1}};
  std::unordered_map<Word, long long> done;
  while (!pending.empty()) {
    auto node = pending.extract(pending.begin());
    const auto& s = node.key();
    const long long c = node.mapped();
    if (c == 0) continue;
    std::size_t pos = s.size();
    for (std::size_t t = 0; t + 1 < s.size(); ++t) {
      if (s[t] > s[t + 1]) {
        pos = t;
        if (order == RewriteOrder::Leftmost) break;
      }
    }
    if (pos == s.size()) {
      auto& slot = done[word::from_letters(s)];
      slot = checked_add(slot, c);
      continue;
    }
    // b a -> a b + [b, a]
    std::vector<std::size_t> swapped = s;
    std::swap(swapped[pos], swapped[pos + 1]);
    auto& slot = pending[swapped];
    slot = checked_add(slot, c);
    if (auto br = bracket(s[pos], s[pos + 1])) {
      std::vector<std::size_t> merged(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(pos));
      merged.push_back(br->index);
      merged.insert(merged.end(), s.begin() + static_cast<std::ptrdiff_t>(pos + 2), s.end());
      auto& m = pending[merged];
      m = checked_add(m, checked_mul(c, br->sign));
    }
  }
  return to_combo(done);
}

const std::vector<std::pair<Word, Rational>>& PbwEngine::symmetrized_monomial(const Exponent& e) {
  if (auto it = sym_memo_.find(e); it != sym_memo_.end()) return it->second;
  std::vector<std::size_t> letters;
  for (std::size_t a = 0; a < g_.dim(); ++a)
    for (unsigned m = 0; m < e[a]; ++m) letters.push_back(a);
  if (letters.size() > word::kMaxLength) throw std::length_error("monomial too long to symmetrize");
  std::unordered_map<Word, long long> acc;
  long long orderings = 0;
  do {
    std::unordered_map<Word, long long> cur{{0, 1}};
    for (std::size_t x : letters) {
      std::unordered_map<Word, long long> next;
      for (const auto& [w, c] : cur) add_scaled(next, times_generator(w, x), c);
      cur = std::move(next);
    }
    for (const auto& [w, c] : cur) {
      auto& slot = acc[w];
      slot = checked_add(slot, c);
    }
    ++orderings;
  } while (std::next_permutation(letters.begin(), letters.end()));
  std::vector<std::pair<Word, Rational>> out;
  for (const auto& [w, c] : to_combo(acc)) out.emplace_back(w, Rational(static_cast<long>(c)) / Rational(static_cast<long>(orderings)));
  return sym_memo_.emplace(e, std::move(out)).first->second;
}

PBWElement<Rational> sym_product(PbwEngine& eng, const std::vector<std::pair<std::size_t, std::size_t>>& factors) {
  const auto& g = eng.algebra();
  Exponent e;
  long sign = 1;
  for (const auto& [i, j] : factors) {
    auto s = g.signed_index(i, j);
    if (!s) return PBWElement<Rational>(g.n());
    sign *= s->sign;
    e.inc(s->index);
  }
  PBWElement<Rational> r(g.n());
  for (const auto& [w, q] : eng.symmetrized_monomial(e)) r.add_term(w, q * Rational(sign));
  return r;
}

}  // namespace qsym::uea
