#include "pfister/modular.hpp"

#include <cmath>
#include <random>

namespace pfister {
namespace mod {

std::uint64_t pow(std::uint64_t base, std::uint64_t e, std::uint64_t p) {
  std::uint64_t result = 1 % p;
  base %= p;
  while (e) {
    if (e & 1) result = mul(result, base, p);
    base = mul(base, base, p);
    e >>= 1;
  }
  return result;
}

std::uint64_t inverse(std::uint64_t a, std::uint64_t p) {
  a %= p;
  if (a == 0) throw PoleError("inverse of zero residue");
  // extended Euclid on signed 128-bit to stay clear of overflow
  i128 t = 0, new_t = 1;
  i128 r = p, new_r = a;
  while (new_r != 0) {
    const i128 q = r / new_r;
    const i128 tmp_t = t - q * new_t;
    t = new_t;
    new_t = tmp_t;
    const i128 tmp_r = r - q * new_r;
    r = new_r;
    new_r = tmp_r;
  }
  if (r != 1) throw PoleError("residue not invertible: modulus is not prime");
  if (t < 0) t += p;
  return static_cast<std::uint64_t>(t);
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t small : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % small == 0) return n == small;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = pow(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned i = 1; i < s; ++i) {
      x = mul(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

void require_verification_prime(std::uint64_t p) {
  if (p <= (std::uint64_t{1} << 30)) {
    throw UsageError("modular prime must exceed 2^30, got " + std::to_string(p));
  }
  if (!is_prime(p)) throw UsageError(std::to_string(p) + " is not prime");
}

}  // namespace mod

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

PointSampler::PointSampler(std::size_t variables, std::uint64_t prime, std::uint64_t seed)
    : variables_(variables), prime_(prime), seed_(seed) {
  mod::require_verification_prime(prime);
}

ModularPoint PointSampler::draw(std::uint64_t sample, unsigned attempt) const {
  const std::uint64_t stream = 128 * sample + attempt + 1;
  std::mt19937_64 engine(splitmix64(seed_ + 0x9E3779B97F4A7C15ull * stream));
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() / prime_ * prime_;
  ModularPoint point;
  point.prime = prime_;
  point.seed = seed_;
  point.values.reserve(variables_);
  for (std::size_t v = 0; v < variables_; ++v) {
    std::uint64_t draw;
    do {
      draw = engine();
    } while (draw >= limit);
    point.values.push_back(draw % prime_);
  }
  return point;
}

namespace {

// total degree of pfister(level) at a block: a_1...a_level X^2
std::uint64_t block_degree(std::size_t slot) {
  unsigned level = 1;
  std::size_t first = 0;
  for (std::size_t count = std::size_t{1} << (kMaxFold - 1); slot >= first + count; count >>= 1) {
    first += count;
    ++level;
  }
  return level + 2;
}

const std::array<std::uint64_t, ModScalar::kBlockSlots>& block_degrees() {
  static const auto table = [] {
    std::array<std::uint64_t, ModScalar::kBlockSlots> t{};
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = block_degree(i);
    return t;
  }();
  return table;
}

// Clamps on overflow and flags it; the caller then gives up on the bound.
std::uint16_t add_exponents(std::uint16_t a, std::uint16_t b, bool& overflow) {
  const unsigned s = unsigned{a} + b;
  if (s > std::numeric_limits<std::uint16_t>::max()) {
    overflow = true;
    return std::numeric_limits<std::uint16_t>::max();
  }
  return static_cast<std::uint16_t>(s);
}

}  // namespace

ModScalar ModScalar::parameter(std::uint64_t value, std::uint64_t prime, unsigned i) {
  if (i < 1 || i > kMaxFold) throw UsageError("parameter index out of range");
  ModScalar r(value, prime, 1);
  r.is_param_monomial_ = true;
  r.param_mono_[i - 1] = 1;
  return r;
}

std::optional<std::size_t> ModScalar::block_slot(unsigned level, unsigned offset) {
  if (level < 1 || level > kMaxFold) return std::nullopt;
  const unsigned width = 1u << level;
  if (offset % width != 0 || offset + width > (1u << kMaxFold)) return std::nullopt;
  std::size_t first = 0;
  for (unsigned l = 1; l < level; ++l) first += std::size_t{1} << (kMaxFold - l);
  return first + offset / width;
}

ModScalar ModScalar::as_block(std::size_t slot) const {
  if (slot >= kBlockSlots || den_ != 0) throw InternalError("only denominator-free values can be block values");
  ModScalar r = *this;
  r.block_ = static_cast<std::uint8_t>(slot + 1);
  return r;
}

ModScalar ModScalar::combine(const ModScalar& a, const ModScalar& b, std::uint64_t value) {
  ModScalar r(value, a.prime_);
  if (a.den_ == 0 && b.den_ == 0) {
    r.num_ = std::max(a.num_, b.num_);
    return r;
  }
  // common denominator L: max exponents on shared factors, product otherwise
  std::uint64_t dl = 0;
  for (std::size_t i = 0; i < kMaxFold; ++i) {
    r.param_den_[i] = std::max(a.param_den_[i], b.param_den_[i]);
    dl += r.param_den_[i];
  }
  const auto& deg = block_degrees();
  for (std::size_t k = 0; k < kBlockSlots; ++k) {
    r.block_den_[k] = std::max(a.block_den_[k], b.block_den_[k]);
    dl += r.block_den_[k] * deg[k];
  }
  r.anonymous_den_ = saturating_add(a.anonymous_den_, b.anonymous_den_);
  dl = saturating_add(dl, r.anonymous_den_);
  r.den_ = dl;
  r.num_ = std::max(saturating_add(a.num_, dl - std::min(dl, a.den_)), saturating_add(b.num_, dl - std::min(dl, b.den_)));
  return r;
}

ModScalar operator*(const ModScalar& a, const ModScalar& b) {
  ModScalar r(mod::mul(a.value_, b.value_, a.prime_), a.prime_, saturating_add(a.num_, b.num_));
  bool overflow = false;
  if (a.den_ != 0 || b.den_ != 0) {
    r.den_ = saturating_add(a.den_, b.den_);
    r.anonymous_den_ = saturating_add(a.anonymous_den_, b.anonymous_den_);
    for (std::size_t i = 0; i < kMaxFold; ++i) r.param_den_[i] = add_exponents(a.param_den_[i], b.param_den_[i], overflow);
    for (std::size_t k = 0; k < ModScalar::kBlockSlots; ++k) {
      r.block_den_[k] = add_exponents(a.block_den_[k], b.block_den_[k], overflow);
    }
  }
  if (a.monomial_like() && b.monomial_like()) {
    r.is_param_monomial_ = true;
    for (std::size_t i = 0; i < kMaxFold; ++i) r.param_mono_[i] = add_exponents(a.param_mono_[i], b.param_mono_[i], overflow);
  }
  if (overflow) {
    r.is_param_monomial_ = false;
    r.anonymous_den_ = r.den_ = std::numeric_limits<std::uint64_t>::max();
  }
  return r;
}

ModScalar ModScalar::inverse() const {
  ModScalar r(mod::inverse(value_, prime_), prime_, den_);
  if (monomial_like()) {
    r.param_den_ = param_mono_;
    r.den_ = num_;
  } else if (block_ != 0) {
    r.block_den_[block_ - 1] = 1;
    r.den_ = block_degrees()[block_ - 1];
  } else {
    r.anonymous_den_ = r.den_ = num_;
  }
  return r;
}

double log10_schwartz_zippel_bound(const DegreeBound& worst, std::uint64_t prime, unsigned samples) {
  if (samples == 0 || worst.den >= prime) return 0.0;
  if (worst.num == 0) return -std::numeric_limits<double>::infinity();
  const double per_sample = static_cast<double>(worst.num) / static_cast<double>(prime - worst.den);
  return std::min(0.0, samples * std::log10(per_sample));
}

}  // namespace pfister
