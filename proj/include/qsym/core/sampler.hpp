#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "qsym/core/rational.hpp"

namespace qsym {

inline constexpr long kDefaultSampleBound = 1000000;
inline constexpr int kMaxResamples = 8;

// Seeded source of random rationals. The seed fully determines the sequence.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

  // num / den with num in [-bound, bound], den in [1, bound].
  Rational rational(long bound = kDefaultSampleBound) {
    return Rational(Integer(integer(-bound, bound)), Integer(integer(1, bound)));
  }
  Rational nonzero_rational(long bound = kDefaultSampleBound) {
    Rational r;
    do r = rational(bound);
    while (r.is_zero());
    return r;
  }
  Rational positive_rational(long bound) {
    return Rational(Integer(integer(1, bound)), Integer(integer(1, bound)));
  }
  std::vector<Rational> rationals(std::size_t count, long bound = kDefaultSampleBound) {
    std::vector<Rational> v;
    v.reserve(count);
    for (std::size_t i = 0; i < count; ++i) v.push_back(rational(bound));
    return v;
  }
  // Pairwise distinct positive rationals.
  std::vector<Rational> distinct_positive(std::size_t count, long bound) {
    std::vector<Rational> v;
    while (v.size() < count) {
      Rational c = positive_rational(bound);
      bool fresh = true;
      for (const auto& x : v) fresh = fresh && !(x == c);
      if (fresh) v.push_back(c);
    }
    return v;
  }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace qsym
