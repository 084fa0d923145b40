#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <functional>
#include <stdexcept>

namespace qsym {

inline constexpr std::size_t kMaxVars = 32;

// Dense exponent vector with a cached total degree. Ordered graded-lexicographically,
// variable 0 being the most significant.
struct Exponent {
  std::array<std::uint8_t, kMaxVars> e{};
  std::uint16_t total = 0;

  static Exponent unit(std::size_t i) {
    Exponent x;
    x.e[i] = 1;
    x.total = 1;
    return x;
  }

  std::uint8_t operator[](std::size_t i) const { return e[i]; }

  void set(std::size_t i, unsigned v) {
    if (v > 255) throw std::overflow_error("exponent exceeds 255");
    total = static_cast<std::uint16_t>(total - e[i] + v);
    e[i] = static_cast<std::uint8_t>(v);
  }
  void inc(std::size_t i, unsigned by = 1) { set(i, e[i] + by); }
  void dec(std::size_t i) { set(i, e[i] - 1u); }

  Exponent operator+(const Exponent& o) const {
    Exponent r;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
      unsigned s = unsigned(e[i]) + o.e[i];
      if (s > 255) throw std::overflow_error("exponent exceeds 255");
      r.e[i] = static_cast<std::uint8_t>(s);
    }
    r.total = static_cast<std::uint16_t>(total + o.total);
    return r;
  }

  // Component-wise this >= o.
  bool divisible_by(const Exponent& o) const {
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (e[i] < o.e[i]) return false;
    return true;
  }

  Exponent operator-(const Exponent& o) const {
    Exponent r;
    for (std::size_t i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<std::uint8_t>(e[i] - o.e[i]);
    r.total = static_cast<std::uint16_t>(total - o.total);
    return r;
  }

  bool is_zero() const { return total == 0; }

  friend bool operator==(const Exponent& a, const Exponent& b) {
    return a.total == b.total && a.e == b.e;
  }
  friend std::strong_ordering operator<=>(const Exponent& a, const Exponent& b) {
    if (a.total != b.total) return a.total <=> b.total;
    int c = std::memcmp(a.e.data(), b.e.data(), kMaxVars);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
};

struct ExponentHash {
  std::size_t operator()(const Exponent& x) const {
    std::uint64_t w[4];
    std::memcpy(w, x.e.data(), sizeof(w));
    std::uint64_t h = w[0] * 0x9E3779B97F4A7C15ull;
    h ^= (w[1] + 0x632BE59BD9B4E019ull) * 0xBF58476D1CE4E5B9ull;
    h ^= (w[2] + (h << 6)) * 0x94D049BB133111EBull;
    h ^= (w[3] + (h >> 3)) * 0x9E3779B97F4A7C15ull;
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

}  // namespace qsym
