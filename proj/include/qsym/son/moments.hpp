#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "qsym/core/ratfunc.hpp"
#include "qsym/core/sampler.hpp"

namespace qsym::son {

// Moments of inertia lambda_1..lambda_n, either explicit positive rationals or symbolic
// values constant on the blocks of a partition q of n.
class MomentSpec {
 public:
  static MomentSpec explicit_values(std::vector<Rational> values);
  // Blocks are laid out contiguously in ascending block size; block b carries variable mu_b.
  static MomentSpec symbolic(std::vector<std::size_t> partition);
  // Partition q with sampled distinct positive block values.
  static MomentSpec sampled(std::vector<std::size_t> partition, Sampler& sampler, long bound);

  std::size_t n() const { return block_of_.size(); }
  bool is_symbolic() const { return !values_.has_value(); }
  const std::vector<Rational>& values() const;

  // Sorted partition q (ascending), number of parts u and number of odd parts d.
  const std::vector<std::size_t>& q() const { return q_; }
  std::size_t u() const { return q_.size(); }
  std::size_t d() const;
  std::size_t block(std::size_t i) const { return block_of_[i]; }
  std::vector<std::size_t> block_members(std::size_t b) const;
  bool distinct() const { return u() == n(); }

  // Pairs (i, j), i < j, with equal moments, as pair indices in lexicographic order.
  std::vector<std::size_t> equal_pairs() const;

  // Number of variables of the coefficient field (0 for explicit moments).
  std::size_t symbol_count() const { return is_symbolic() ? u() : 0; }

  template <class K>
  K lambda(std::size_t i) const {
    if (values_) return K((*values_)[i]);
    if constexpr (std::is_same_v<K, RationalFunction>) {
      return RationalFunction::variable(u(), block_of_[i]);
    } else {
      throw std::logic_error("symbolic moments need rational-function coefficients");
    }
  }

  // Explicit values obtained by substituting block values for the symbols.
  MomentSpec specialize(const std::vector<Rational>& block_values) const;

  std::string describe() const;

 private:
  MomentSpec() = default;
  void finalize_blocks();

  std::optional<std::vector<Rational>> values_;
  std::vector<std::size_t> block_of_;
  std::vector<std::size_t> q_;
};

}  // namespace qsym::son
