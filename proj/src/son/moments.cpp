#include "qsym/son/moments.hpp"

#include <algorithm>
#include <sstream>

namespace qsym::son {

MomentSpec MomentSpec::explicit_values(std::vector<Rational> values) {
  if (values.size() < 2) throw std::invalid_argument("need at least two moments");
  for (const auto& v : values)
    if (v.sign() <= 0) throw std::invalid_argument("moments must be positive");
  MomentSpec s;
  s.block_of_.assign(values.size(), 0);
  std::vector<Rational> seen;
  for (std::size_t i = 0; i < values.size(); ++i) {
    auto it = std::find(seen.begin(), seen.end(), values[i]);
    if (it == seen.end()) {
      s.block_of_[i] = seen.size();
      seen.push_back(values[i]);
    } else {
      s.block_of_[i] = static_cast<std::size_t>(it - seen.begin());
    }
  }
  s.values_ = std::move(values);
  s.finalize_blocks();
  return s;
}

MomentSpec MomentSpec::symbolic(std::vector<std::size_t> partition) {
  if (partition.empty()) throw std::invalid_argument("empty partition");
  std::sort(partition.begin(), partition.end());
  MomentSpec s;
  for (std::size_t b = 0; b < partition.size(); ++b) {
    if (partition[b] == 0) throw std::invalid_argument("partition parts must be positive");
    for (std::size_t k = 0; k < partition[b]; ++k) s.block_of_.push_back(b);
  }
  if (s.block_of_.size() < 2) throw std::invalid_argument("need n >= 2");
  s.finalize_blocks();
  return s;
}

MomentSpec MomentSpec::sampled(std::vector<std::size_t> partition, Sampler& sampler, long bound) {
  MomentSpec sym = symbolic(std::move(partition));
  return sym.specialize(sampler.distinct_positive(sym.u(), bound));
}

void MomentSpec::finalize_blocks() {
  std::size_t u = 0;
  for (std::size_t b : block_of_) u = std::max(u, b + 1);
  q_.assign(u, 0);
  for (std::size_t b : block_of_) ++q_[b];
  std::sort(q_.begin(), q_.end());
}

const std::vector<Rational>& MomentSpec::values() const {
  if (!values_) throw std::logic_error("moments are symbolic");
  return *values_;
}

std::size_t MomentSpec::d() const {
  return static_cast<std::size_t>(std::count_if(q_.begin(), q_.end(), [](std::size_t x) { return x % 2 == 1; }));
}

std::vector<std::size_t> MomentSpec::block_members(std::size_t b) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n(); ++i)
    if (block_of_[i] == b) out.push_back(i);
  return out;
}

std::vector<std::size_t> MomentSpec::equal_pairs() const {
  std::vector<std::size_t> out;
  std::size_t idx = 0;
  for (std::size_t i = 0; i < n(); ++i)
    for (std::size_t j = i + 1; j < n(); ++j, ++idx)
      if (block_of_[i] == block_of_[j]) out.push_back(idx);
  return out;
}

MomentSpec MomentSpec::specialize(const std::vector<Rational>& block_values) const {
  if (!is_symbolic()) return *this;
  if (block_values.size() != u()) throw std::invalid_argument("one value per block required");
  std::vector<Rational> v(n());
  for (std::size_t i = 0; i < n(); ++i) v[i] = block_values[block_of_[i]];
  for (std::size_t a = 0; a < block_values.size(); ++a)
    for (std::size_t b = a + 1; b < block_values.size(); ++b)
      if (block_values[a] == block_values[b]) throw std::invalid_argument("block values must be distinct");
  MomentSpec s = explicit_values(std::move(v));
  return s;
}

std::string MomentSpec::describe() const {
  std::ostringstream os;
  if (values_) {
    os << "lambda=(";
    for (std::size_t i = 0; i < n(); ++i) os << (i ? "," : "") << (*values_)[i].str();
    os << ")";
  } else {
    os << "q=(";
    for (std::size_t i = 0; i < q_.size(); ++i) os << (i ? "," : "") << q_[i];
    os << ") symbolic";
  }
  return os.str();
}

}  // namespace qsym::son
