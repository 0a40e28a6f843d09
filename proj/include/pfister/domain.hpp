#pragma once

#include <concepts>
#include <cstdint>
#include <memory>
#include <string>

#include "pfister/fraction.hpp"
#include "pfister/modular.hpp"

namespace pfister {

/// Scalar field the algebraic constructions run over. Two models exist: the
/// symbolic function field (Fraction) and its image at a modular point
/// (ModScalar). Running the same construction in both is what makes
/// modular verification a faithful specialization of the symbolic one.
template <class D>
concept ScalarDomain = requires(const D d, const typename D::Scalar s, unsigned i, long k) {
  { d.constant(k) } -> std::same_as<typename D::Scalar>;
  { d.param(i) } -> std::same_as<typename D::Scalar>;
  { d.indeterminate(i) } -> std::same_as<typename D::Scalar>;
  { d.shifted(i) } -> std::same_as<D>;
  { d.inverse(s) } -> std::same_as<typename D::Scalar>;
  { d.equal(s, s) } -> std::same_as<bool>;
  { d.is_exact_zero(s) } -> std::same_as<bool>;
  { d.render(s) } -> std::same_as<std::string>;
  { s + s } -> std::same_as<typename D::Scalar>;
  { s - s } -> std::same_as<typename D::Scalar>;
  { s * s } -> std::same_as<typename D::Scalar>;
  { -s } -> std::same_as<typename D::Scalar>;
};

/// The rational function field Q(a_1..a_n)(X_1..X_m).
class SymbolicDomain {
 public:
  using Scalar = Fraction;

  SymbolicDomain(TablePtr table, std::shared_ptr<const FactorPool> pool, unsigned x_offset = 0)
      : table_(std::move(table)), pool_(std::move(pool)), x_offset_(x_offset) {}

  /// Domain for an n-fold construction with the standard denominator pool.
  static SymbolicDomain for_fold(unsigned n, unsigned fresh = 0);

  const TablePtr& table() const { return table_; }
  const FactorPool* pool() const { return pool_.get(); }
  unsigned x_offset() const { return x_offset_; }

  Fraction constant(long k) const { return Fraction::constant(table_, Rational(k)); }
  Fraction param(unsigned i) const {
    return Fraction(SparsePoly::variable(table_, table_->param_index(i)));
  }
  Fraction indeterminate(unsigned j) const {
    return Fraction(SparsePoly::variable(table_, table_->x_index(j + x_offset_)));
  }
  SymbolicDomain shifted(unsigned offset) const { return {table_, pool_, x_offset_ + offset}; }
  Fraction inverse(const Fraction& s) const { return s.inverse(pool_.get()); }
  bool equal(const Fraction& a, const Fraction& b) const { return frac_eq(a, b); }
  bool is_exact_zero(const Fraction& s) const { return s.is_zero(); }
  std::string render(const Fraction& s) const { return s.to_string(); }

 private:
  TablePtr table_;
  std::shared_ptr<const FactorPool> pool_;
  unsigned x_offset_;
};

/// Records the worst degree bound seen by identity checks at one point.
struct DegreeTracker {
  DegreeBound worst;
  void observe(const DegreeBound& d) {
    worst.num = std::max(worst.num, d.num);
    worst.den = std::max(worst.den, d.den);
  }
};

/// Z/pZ at a fixed point: a_i and X_j are the residues the point assigns.
/// equal() also records the degree of the difference for the failure bound.
class ModularDomain {
 public:
  using Scalar = ModScalar;

  ModularDomain(std::shared_ptr<const ModularPoint> point, unsigned params, unsigned indeterminates,
                std::shared_ptr<DegreeTracker> tracker, unsigned x_offset = 0)
      : point_(std::move(point)),
        params_(params),
        indeterminates_(indeterminates),
        tracker_(std::move(tracker)),
        x_offset_(x_offset) {}

  std::uint64_t prime() const { return point_->prime; }
  const ModularPoint& point() const { return *point_; }
  const std::shared_ptr<DegreeTracker>& tracker() const { return tracker_; }

  ModScalar constant(long k) const {
    const std::uint64_t p = prime();
    const std::uint64_t mag = static_cast<std::uint64_t>(k < 0 ? -k : k) % p;
    return ModScalar(k < 0 ? mod::sub(0, mag, p) : mag, p);
  }
  ModScalar param(unsigned i) const {
    if (i < 1 || i > params_) throw UsageError("parameter index out of range");
    return ModScalar::parameter(point_->values[i - 1], prime(), i);
  }
  ModScalar indeterminate(unsigned j) const {
    if (j < 1 || j + x_offset_ > indeterminates_) throw UsageError("indeterminate index out of range");
    return ModScalar(point_->values[params_ + j + x_offset_ - 1], prime(), 1);
  }
  /// Same point without degree recording, for checks outside the reported bound.
  ModularDomain untracked() const { return {point_, params_, indeterminates_, nullptr, x_offset_}; }
  ModularDomain shifted(unsigned offset) const {
    return {point_, params_, indeterminates_, tracker_, x_offset_ + offset};
  }
  ModScalar inverse(const ModScalar& s) const { return s.inverse(); }
  /// Tags the value of the level-fold Pfister form on X_{offset+1}.. so that
  /// every denominator built from it is recognised as the same factor.
  ModScalar name_block(const ModScalar& s, unsigned level, unsigned offset) const {
    const auto slot = ModScalar::block_slot(level, offset + x_offset_);
    return slot ? s.as_block(*slot) : s;
  }
  bool equal(const ModScalar& a, const ModScalar& b) const {
    const ModScalar diff = a - b;
    if (tracker_) tracker_->observe(diff.degree());
    return diff.is_zero();
  }
  bool is_exact_zero(const ModScalar&) const { return false; }
  std::string render(const ModScalar& s) const { return std::to_string(s.value()) + " (mod p)"; }

 private:
  std::shared_ptr<const ModularPoint> point_;
  unsigned params_;
  unsigned indeterminates_;
  std::shared_ptr<DegreeTracker> tracker_;
  unsigned x_offset_;
};

static_assert(ScalarDomain<SymbolicDomain>);
static_assert(ScalarDomain<ModularDomain>);

}  // namespace pfister
