#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>

#include "pfister/errors.hpp"
#include "pfister/variables.hpp"

namespace pfister {

/// Exponent vector packed one byte per variable, eight variables per word.
/// Exponents are limited to 127 so that word-wise addition can detect overflow.
class Monomial {
 public:
  static constexpr std::size_t kWords = (kMaxVariables + 7) / 8;
  static constexpr unsigned kMaxExponent = 127;

  Monomial() = default;

  static Monomial variable(std::size_t v, unsigned exponent = 1) {
    Monomial m;
    m.set_exponent(v, exponent);
    return m;
  }

  unsigned exponent(std::size_t v) const {
    return static_cast<unsigned>((words_[v / 8] >> (8 * (v % 8))) & 0xFFu);
  }

  void set_exponent(std::size_t v, unsigned e) {
    if (e > kMaxExponent) throw DomainError("monomial exponent overflow");
    const unsigned old = exponent(v);
    const unsigned shift = 8 * (v % 8);
    words_[v / 8] = (words_[v / 8] & ~(std::uint64_t{0xFF} << shift)) | (std::uint64_t{e} << shift);
    degree_ = degree_ - old + e;
  }

  unsigned degree() const { return degree_; }
  bool is_one() const { return degree_ == 0; }

  /// True when every exponent of *this is at most the matching exponent of m.
  bool divides(const Monomial& m) const {
    if (degree_ > m.degree_) return false;
    for (std::size_t i = 0; i < kWords; ++i) {
      if ((((m.words_[i] | kHigh) - words_[i]) & kHigh) != kHigh) return false;
    }
    return true;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r;
    std::uint64_t high = 0;
    for (std::size_t i = 0; i < kWords; ++i) {
      r.words_[i] = a.words_[i] + b.words_[i];
      high |= r.words_[i];
    }
    if (high & kHigh) throw DomainError("monomial exponent overflow");
    r.degree_ = a.degree_ + b.degree_;
    return r;
  }

  /// Quotient; requires b.divides(a).
  friend Monomial operator/(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (std::size_t i = 0; i < kWords; ++i) r.words_[i] = a.words_[i] - b.words_[i];
    r.degree_ = a.degree_ - b.degree_;
    return r;
  }

  friend Monomial gcd(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (std::size_t v = 0; v < kMaxVariables; ++v) {
      const unsigned e = std::min(a.exponent(v), b.exponent(v));
      if (e) r.set_exponent(v, e);
    }
    return r;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.degree_ == b.degree_ && a.words_ == b.words_;
  }

  /// Graded lexicographic order; among equal degrees the variable with the
  /// larger table index is the most significant.
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
    if (a.degree_ != b.degree_) return a.degree_ <=> b.degree_;
    for (std::size_t i = kWords; i-- > 0;) {
      if (a.words_[i] != b.words_[i]) return a.words_[i] <=> b.words_[i];
    }
    return std::strong_ordering::equal;
  }

  std::size_t hash() const {
    std::uint64_t h = degree_;
    for (std::uint64_t w : words_) h = (h ^ w) * 0x100000001B3ull + (h >> 29);
    return static_cast<std::size_t>(h);
  }

 private:
  static constexpr std::uint64_t kHigh = 0x8080808080808080ull;
  std::array<std::uint64_t, kWords> words_{};
  unsigned degree_ = 0;
};

}  // namespace pfister

template <>
struct std::hash<pfister::Monomial> {
  std::size_t operator()(const pfister::Monomial& m) const noexcept { return m.hash(); }
};
