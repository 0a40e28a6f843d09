#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "pfister/errors.hpp"
#include "pfister/variables.hpp"

namespace pfister {

/// 2^61 - 1, the default verification prime.
inline constexpr std::uint64_t kMersenne61 = (std::uint64_t{1} << 61) - 1;

namespace mod {

__extension__ using u128 = unsigned __int128;
__extension__ using i128 = __int128;

inline std::uint64_t add(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  const u128 s = static_cast<u128>(a) + b;
  return static_cast<std::uint64_t>(s >= p ? s - p : s);
}

inline std::uint64_t sub(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return a >= b ? a - b : a + (p - b);
}

inline std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % p);
}

std::uint64_t pow(std::uint64_t base, std::uint64_t e, std::uint64_t p);

/// Inverse of a nonzero residue; throws PoleError on zero.
std::uint64_t inverse(std::uint64_t a, std::uint64_t p);

/// Deterministic Miller-Rabin for all 64-bit inputs.
bool is_prime(std::uint64_t n);

/// Throws UsageError unless p is an odd prime greater than 2^30.
void require_verification_prime(std::uint64_t p);

}  // namespace mod

/// Total-degree bounds of some numerator/denominator representation of a
/// value computed by a straight-line program. Saturates at UINT64_MAX.
struct DegreeBound {
  std::uint64_t num = 0;
  std::uint64_t den = 0;
};

inline std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  return __builtin_add_overflow(a, b, &r) ? std::numeric_limits<std::uint64_t>::max() : r;
}

/// Residue in Z/pZ that also carries degree bounds for a numerator/denominator
/// representation N/D of the rational function it is the image of. The bound
/// feeds the Schwartz-Zippel failure estimate.
///
/// D is kept as a product of tracked factors so that sums can use a common
/// multiple instead of the product of both denominators:
///  * a monomial in the parameters a_1..a_k (exponents per parameter),
///  * Pfister block values pfister(l)(X_{o+1}, ..., X_{o+2^l}) with 2^l | o,
///  * an anonymous remainder that is never shared (its degrees just add).
/// Values that are themselves a parameter monomial (up to a constant), or a
/// block value, remember that, so inverting them yields a shareable factor.
class ModScalar {
 public:
  /// Blocks of level 1..kMaxFold inside X_1..X_{2^kMaxFold}.
  static constexpr std::size_t kBlockSlots = (std::size_t{1} << kMaxFold) - 1;

  ModScalar() = default;
  /// A value with numerator degree at most `num_degree` over an anonymous
  /// denominator of degree at most `den_degree`.
  ModScalar(std::uint64_t value, std::uint64_t prime, std::uint64_t num_degree = 0, std::uint64_t den_degree = 0)
      : value_(value % prime), prime_(prime), num_(num_degree), den_(den_degree), anonymous_den_(den_degree) {}

  /// The parameter a_i (1-based) as a tracked monomial.
  static ModScalar parameter(std::uint64_t value, std::uint64_t prime, unsigned i);

  /// Slot of the block value of the given level at X offset, if it has one.
  static std::optional<std::size_t> block_slot(unsigned level, unsigned offset);

  std::uint64_t value() const { return value_; }
  std::uint64_t prime() const { return prime_; }
  bool is_zero() const { return value_ == 0; }
  DegreeBound degree() const { return {num_, den_}; }

  /// Marks a denominator-free value as the block value in `slot`.
  ModScalar as_block(std::size_t slot) const;

  /// Multiplicative inverse; throws PoleError at a zero residue.
  ModScalar inverse() const;

  ModScalar operator-() const {
    ModScalar r = *this;
    r.value_ = mod::sub(0, value_, prime_);
    r.block_ = 0;
    return r;
  }
  friend ModScalar operator+(const ModScalar& a, const ModScalar& b) {
    return combine(a, b, mod::add(a.value_, b.value_, a.prime_));
  }
  friend ModScalar operator-(const ModScalar& a, const ModScalar& b) {
    return combine(a, b, mod::sub(a.value_, b.value_, a.prime_));
  }
  friend ModScalar operator*(const ModScalar& a, const ModScalar& b);
  ModScalar& operator+=(const ModScalar& o) { return *this = *this + o; }
  ModScalar& operator-=(const ModScalar& o) { return *this = *this - o; }
  ModScalar& operator*=(const ModScalar& o) { return *this = *this * o; }

 private:
  // constants count as monomials with all exponents zero
  bool monomial_like() const { return is_param_monomial_ || (num_ == 0 && den_ == 0); }
  static ModScalar combine(const ModScalar& a, const ModScalar& b, std::uint64_t value);

  std::uint64_t value_ = 0;
  std::uint64_t prime_ = 1;
  std::uint64_t num_ = 0;
  std::uint64_t den_ = 0;  // total degree of D
  std::uint64_t anonymous_den_ = 0;
  bool is_param_monomial_ = false;
  std::uint8_t block_ = 0;  // 1 + slot when the value is exactly a block value
  std::array<std::uint16_t, kMaxFold> param_den_{};
  std::array<std::uint16_t, kMaxFold> param_mono_{};
  std::array<std::uint16_t, kBlockSlots> block_den_{};
};

/// A point of (Z/pZ)^k assigning one residue to each variable of a table.
struct ModularPoint {
  std::uint64_t prime = kMersenne61;
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> values;  // indexed by VariableTable position
};

/// Deterministic point generator.
///
/// Contract: the point for (sample k, attempt r) comes from a std::mt19937_64
/// seeded with splitmix64(seed + 0x9E3779B97F4A7C15 * (128 k + r + 1)); each
/// residue is the first 64-bit output below floor(2^64 / p) * p, reduced mod p,
/// drawn in table order. Both generators are fixed algorithms, so points are
/// stable across platforms and releases.
class PointSampler {
 public:
  PointSampler(std::size_t variables, std::uint64_t prime, std::uint64_t seed);
  ModularPoint draw(std::uint64_t sample, unsigned attempt) const;

 private:
  std::size_t variables_;
  std::uint64_t prime_;
  std::uint64_t seed_;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Resample cap per sample index before a run reports failure.
inline constexpr unsigned kResampleCap = 100;

/// Probability that a nonzero identity of the given degree survives `samples`
/// independent points: (d / (p - d_den))^samples, with d_den the pole degree.
/// Returned as a base-10 logarithm.
double log10_schwartz_zippel_bound(const DegreeBound& worst, std::uint64_t prime, unsigned samples);

}  // namespace pfister
