#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pfister/modular.hpp"
#include "pfister/monomial.hpp"
#include "pfister/rational.hpp"
#include "pfister/variables.hpp"

namespace pfister {

struct Term {
  Monomial mono;
  Rational coeff;
};

/// Multivariate polynomial over Q in the variables of one VariableTable.
///
/// Terms are stored in ascending graded-lexicographic order with no zero
/// coefficients, so equality is coefficient-exact and structural.
class SparsePoly {
 public:
  explicit SparsePoly(TablePtr table);

  static SparsePoly constant(TablePtr table, const Rational& c);
  static SparsePoly variable(TablePtr table, std::size_t index, unsigned exponent = 1);
  /// Canonicalizes: sorts, merges duplicate monomials and drops zeros.
  static SparsePoly from_terms(TablePtr table, std::vector<Term> terms);
  /// Parses sums of products such as "X1^2 - 3/2*a1*X2^2 + 7".
  static SparsePoly parse(TablePtr table, std::string_view text);

  const TablePtr& table() const { return table_; }
  std::span<const Term> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  /// Value of a constant polynomial, nullopt otherwise.
  std::optional<Rational> constant_value() const;
  bool is_monomial() const { return terms_.size() == 1; }
  unsigned degree() const { return terms_.empty() ? 0 : terms_.back().mono.degree(); }
  /// Largest term in the term order. Requires a nonzero polynomial.
  const Term& leading() const { return terms_.back(); }
  const Term& trailing() const { return terms_.front(); }

  SparsePoly operator-() const;
  SparsePoly scaled(const Rational& c) const;
  SparsePoly times_monomial(const Monomial& m, const Rational& c) const;

  friend SparsePoly operator+(const SparsePoly& p, const SparsePoly& q);
  friend SparsePoly operator-(const SparsePoly& p, const SparsePoly& q);
  friend SparsePoly operator*(const SparsePoly& p, const SparsePoly& q);
  SparsePoly& operator+=(const SparsePoly& q) { return *this = *this + q; }
  SparsePoly& operator*=(const SparsePoly& q) { return *this = *this * q; }
  SparsePoly pow(unsigned e) const;

  friend bool operator==(const SparsePoly& p, const SparsePoly& q);

  /// q with p = d * q when d divides p exactly, nullopt otherwise.
  /// Throws DomainError when d is zero.
  std::optional<SparsePoly> exact_div(const SparsePoly& d) const;

  /// Replaces every X_j by X_{j+offset}; parameters are untouched.
  SparsePoly shift_variables(int offset) const;

  /// gcd of all term monomials (1 for the zero polynomial).
  Monomial monomial_content() const;
  /// Divides every term by m; requires m to divide each monomial.
  SparsePoly divide_monomial(const Monomial& m) const;

  /// Image at a modular point. Coefficient denominators divisible by p raise PoleError.
  std::uint64_t eval_mod(const ModularPoint& point) const;

  std::string to_string() const;
  std::string to_latex() const;

  /// Deterministic total order used to canonicalize factor lists.
  friend bool canonical_less(const SparsePoly& p, const SparsePoly& q);

 private:
  SparsePoly(TablePtr table, std::vector<Term> sorted_terms);
  void require_same_table(const SparsePoly& other) const;

  TablePtr table_;
  std::vector<Term> terms_;
};

SparsePoly poly_add(const SparsePoly& p, const SparsePoly& q);
SparsePoly poly_mul(const SparsePoly& p, const SparsePoly& q);
std::optional<SparsePoly> poly_exact_div(const SparsePoly& p, const SparsePoly& d);
SparsePoly shift_variables(const SparsePoly& p, int offset);

}  // namespace pfister
