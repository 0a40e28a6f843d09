#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pfister/modular.hpp"
#include "pfister/sparse_poly.hpp"

namespace pfister {

struct DenFactor {
  SparsePoly poly;  // non-constant, leading coefficient 1
  unsigned multiplicity = 1;
};

/// Known irreducible building blocks of denominators. New denominators are
/// split by trial division against the pool so that later cancellation can
/// find them factor by factor.
class FactorPool {
 public:
  FactorPool() = default;
  explicit FactorPool(std::vector<SparsePoly> factors);

  std::span<const SparsePoly> factors() const { return factors_; }

 private:
  std::vector<SparsePoly> factors_;
};

/// Element of the rational function field: num / prod(factor^multiplicity).
///
/// No general multivariate gcd is ever computed. Normalization cancels a
/// denominator factor whenever it divides the numerator exactly; equality is
/// decided by cross-multiplication.
class Fraction {
 public:
  explicit Fraction(SparsePoly num);
  /// Builds num / den and normalizes. Throws DomainError when den is zero.
  static Fraction quotient(const SparsePoly& num, const SparsePoly& den, const FactorPool* pool = nullptr);
  static Fraction constant(TablePtr table, const Rational& c);

  const SparsePoly& num() const { return num_; }
  const std::vector<DenFactor>& den() const { return den_; }
  const TablePtr& table() const { return num_.table(); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.empty(); }
  /// Expanded denominator polynomial.
  SparsePoly den_product() const;
  /// Total degree of the numerator and of the expanded denominator.
  DegreeBound degree() const;

  Fraction operator-() const;
  friend Fraction operator+(const Fraction& x, const Fraction& y);
  friend Fraction operator-(const Fraction& x, const Fraction& y);
  friend Fraction operator*(const Fraction& x, const Fraction& y);
  Fraction& operator+=(const Fraction& y) { return *this = *this + y; }
  Fraction& operator-=(const Fraction& y) { return *this = *this - y; }
  Fraction& operator*=(const Fraction& y) { return *this = *this * y; }

  /// Multiplicative inverse; throws DomainError for zero. The old numerator
  /// is split against the pool before it becomes a denominator.
  Fraction inverse(const FactorPool* pool = nullptr) const;

  Fraction shift_variables(int offset) const;

  /// Residue at a point; PoleError when a denominator factor vanishes there.
  std::uint64_t eval_mod(const ModularPoint& point) const;
  /// Same residue together with the numerator/denominator degree bound.
  ModScalar eval_scalar(const ModularPoint& point) const;

  std::string to_string() const;
  std::string to_latex() const;
  std::string den_to_string() const;
  std::string den_to_latex() const;

 private:
  Fraction(SparsePoly num, std::vector<DenFactor> den);
  void normalize();

  SparsePoly num_;
  std::vector<DenFactor> den_;
};

Fraction frac_add(const Fraction& x, const Fraction& y);
Fraction frac_mul(const Fraction& x, const Fraction& y);
Fraction frac_inv(const Fraction& x, const FactorPool* pool = nullptr);
/// x and y represent the same element: num_x * den_y == num_y * den_x after
/// clearing to the least common factor multiple.
bool frac_eq(const Fraction& x, const Fraction& y);
std::uint64_t eval_mod_p(const Fraction& x, const ModularPoint& point);

/// Least common multiple of the denominators of xs, as a factor list.
std::vector<DenFactor> common_denominator(std::span<const Fraction> xs);
/// Numerator of x over `den`, which must be a multiple of x's denominator.
SparsePoly numerator_over(const Fraction& x, const std::vector<DenFactor>& den);

}  // namespace pfister
