#include "pfister/fraction.hpp"

#include <algorithm>

#include "pfister/errors.hpp"

namespace pfister {
namespace {

bool same_poly(const SparsePoly& a, const SparsePoly& b) {
  return a.size() == b.size() && a == b;
}

void sort_factors(std::vector<DenFactor>& factors) {
  std::sort(factors.begin(), factors.end(),
            [](const DenFactor& a, const DenFactor& b) { return canonical_less(a.poly, b.poly); });
}

// Union of two sorted factor lists; multiplicities are added or maxed.
std::vector<DenFactor> merge_factors(const std::vector<DenFactor>& a, const std::vector<DenFactor>& b,
                                     bool add) {
  std::vector<DenFactor> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && canonical_less(a[i].poly, b[j].poly))) {
      out.push_back(a[i++]);
    } else if (i == a.size() || canonical_less(b[j].poly, a[i].poly)) {
      out.push_back(b[j++]);
    } else {
      const unsigned m = add ? a[i].multiplicity + b[j].multiplicity
                             : std::max(a[i].multiplicity, b[j].multiplicity);
      out.push_back(DenFactor{a[i].poly, m});
      ++i;
      ++j;
    }
  }
  return out;
}

unsigned multiplicity_of(const std::vector<DenFactor>& list, const SparsePoly& f) {
  for (const DenFactor& d : list) {
    if (same_poly(d.poly, f)) return d.multiplicity;
  }
  return 0;
}

// num * lcm / den where lcm is a multiple of den.
SparsePoly lift_to(const SparsePoly& num, const std::vector<DenFactor>& den,
                   const std::vector<DenFactor>& lcm) {
  SparsePoly out = num;
  for (const DenFactor& f : lcm) {
    const unsigned missing = f.multiplicity - multiplicity_of(den, f.poly);
    if (missing) out = out * f.poly.pow(missing);
  }
  return out;
}

// Cancels factors of den against num; returns the reduced numerator.
SparsePoly cancel_into(SparsePoly num, std::vector<DenFactor>& den) {
  for (DenFactor& f : den) {
    while (f.multiplicity > 0 && !num.is_zero()) {
      auto q = num.exact_div(f.poly);
      if (!q) break;
      num = std::move(*q);
      --f.multiplicity;
    }
  }
  std::erase_if(den, [](const DenFactor& f) { return f.multiplicity == 0; });
  return num;
}

// Splits a nonzero polynomial into scalar * monomial variables * pool factors * rest.
std::pair<Rational, std::vector<DenFactor>> split_polynomial(const SparsePoly& poly, const FactorPool* pool) {
  const Rational lc = poly.leading().coeff;
  SparsePoly rest = poly.scaled(Rational(1) / lc);
  std::vector<DenFactor> factors;
  const Monomial content = rest.monomial_content();
  if (!content.is_one()) {
    for (std::size_t v = 0; v < poly.table()->size(); ++v) {
      const unsigned e = content.exponent(v);
      if (e) factors.push_back(DenFactor{SparsePoly::variable(poly.table(), v), e});
    }
    rest = rest.divide_monomial(content);
  }
  if (pool) {
    for (const SparsePoly& q : pool->factors()) {
      if (rest.is_constant()) break;
      unsigned m = 0;
      while (!rest.is_constant()) {
        auto quotient = rest.exact_div(q);
        if (!quotient) break;
        rest = std::move(*quotient);
        ++m;
      }
      if (m) factors.push_back(DenFactor{q, m});
    }
  }
  Rational scalar = lc;
  if (rest.is_constant()) {
    scalar *= *rest.constant_value();
  } else {
    factors.push_back(DenFactor{std::move(rest), 1});
  }
  sort_factors(factors);
  std::vector<DenFactor> merged;
  for (DenFactor& f : factors) {
    if (!merged.empty() && same_poly(merged.back().poly, f.poly)) {
      merged.back().multiplicity += f.multiplicity;
    } else {
      merged.push_back(std::move(f));
    }
  }
  return {scalar, std::move(merged)};
}

}  // namespace

FactorPool::FactorPool(std::vector<SparsePoly> factors) {
  for (SparsePoly& f : factors) {
    if (f.is_constant()) throw UsageError("factor pool entries must be non-constant");
    const Rational lc = f.leading().coeff;
    SparsePoly monic = f.scaled(Rational(1) / lc);
    const bool duplicate = std::any_of(factors_.begin(), factors_.end(),
                                       [&](const SparsePoly& g) { return same_poly(g, monic); });
    if (!duplicate) factors_.push_back(std::move(monic));
  }
}

Fraction::Fraction(SparsePoly num) : num_(std::move(num)) {}

Fraction::Fraction(SparsePoly num, std::vector<DenFactor> den) : num_(std::move(num)), den_(std::move(den)) {
  normalize();
}

Fraction Fraction::constant(TablePtr table, const Rational& c) {
  return Fraction(SparsePoly::constant(std::move(table), c));
}

Fraction Fraction::quotient(const SparsePoly& num, const SparsePoly& den, const FactorPool* pool) {
  if (den.is_zero()) throw DomainError("fraction with zero denominator");
  auto [scalar, factors] = split_polynomial(den, pool);
  return Fraction(num.scaled(Rational(1) / scalar), std::move(factors));
}

void Fraction::normalize() {
  if (num_.is_zero()) {
    den_.clear();
    return;
  }
  num_ = cancel_into(std::move(num_), den_);
}

SparsePoly Fraction::den_product() const {
  SparsePoly out = SparsePoly::constant(table(), Rational(1));
  for (const DenFactor& f : den_) out = out * f.poly.pow(f.multiplicity);
  return out;
}

DegreeBound Fraction::degree() const {
  DegreeBound d{num_.degree(), 0};
  for (const DenFactor& f : den_) d.den += std::uint64_t{f.multiplicity} * f.poly.degree();
  return d;
}

Fraction Fraction::operator-() const {
  Fraction out(*this);
  out.num_ = -num_;
  return out;
}

Fraction operator+(const Fraction& x, const Fraction& y) {
  if (x.is_zero()) return y;
  if (y.is_zero()) return x;
  if (x.den_.empty() && y.den_.empty()) return Fraction(x.num_ + y.num_);
  std::vector<DenFactor> lcm = merge_factors(x.den_, y.den_, /*add=*/false);
  SparsePoly num = lift_to(x.num_, x.den_, lcm) + lift_to(y.num_, y.den_, lcm);
  return Fraction(std::move(num), std::move(lcm));
}

Fraction operator-(const Fraction& x, const Fraction& y) { return x + (-y); }

Fraction operator*(const Fraction& x, const Fraction& y) {
  if (x.is_zero() || y.is_zero()) return Fraction(SparsePoly(x.table()));
  if (x.den_.empty() && y.den_.empty()) return Fraction(x.num_ * y.num_);
  std::vector<DenFactor> dx = x.den_;
  std::vector<DenFactor> dy = y.den_;
  SparsePoly nx = cancel_into(x.num_, dy);
  SparsePoly ny = cancel_into(y.num_, dx);
  return Fraction(nx * ny, merge_factors(dx, dy, /*add=*/true));
}

Fraction Fraction::inverse(const FactorPool* pool) const {
  if (is_zero()) throw DomainError("inverse of the zero fraction");
  auto [scalar, factors] = split_polynomial(num_, pool);
  return Fraction(den_product().scaled(Rational(1) / scalar), std::move(factors));
}

Fraction Fraction::shift_variables(int offset) const {
  std::vector<DenFactor> den;
  den.reserve(den_.size());
  for (const DenFactor& f : den_) den.push_back(DenFactor{f.poly.shift_variables(offset), f.multiplicity});
  sort_factors(den);
  Fraction out(num_.shift_variables(offset));
  out.den_ = std::move(den);
  return out;
}

std::uint64_t Fraction::eval_mod(const ModularPoint& point) const {
  const std::uint64_t p = point.prime;
  std::uint64_t den = 1;
  for (const DenFactor& f : den_) {
    const std::uint64_t v = f.poly.eval_mod(point);
    if (v == 0) throw PoleError("denominator factor vanishes at the sampled point");
    den = mod::mul(den, mod::pow(v, f.multiplicity, p), p);
  }
  return mod::mul(num_.eval_mod(point), mod::inverse(den, p), p);
}

ModScalar Fraction::eval_scalar(const ModularPoint& point) const {
  const DegreeBound d = degree();
  return ModScalar(eval_mod(point), point.prime, d.num, d.den);
}

std::string Fraction::den_to_string() const {
  std::string out;
  for (const DenFactor& f : den_) {
    if (!out.empty()) out += "*";
    out += f.poly.is_monomial() && f.multiplicity == 1 ? f.poly.to_string() : "(" + f.poly.to_string() + ")";
    if (f.multiplicity > 1) out += "^" + std::to_string(f.multiplicity);
  }
  return out;
}

std::string Fraction::den_to_latex() const {
  std::string out;
  for (const DenFactor& f : den_) {
    const bool wrap = den_.size() > 1 || f.multiplicity > 1;
    std::string piece = wrap && !f.poly.is_monomial() ? "\\left(" + f.poly.to_latex() + "\\right)" : f.poly.to_latex();
    if (f.multiplicity > 1) piece += "^{" + std::to_string(f.multiplicity) + "}";
    out += piece;
  }
  return out;
}

std::string Fraction::to_string() const {
  if (den_.empty()) return num_.to_string();
  const std::string num = num_.is_monomial() ? num_.to_string() : "(" + num_.to_string() + ")";
  return num + "/" + (den_.size() == 1 && den_[0].multiplicity == 1 ? den_to_string() : "(" + den_to_string() + ")");
}

std::string Fraction::to_latex() const {
  if (den_.empty()) return num_.to_latex();
  return "\\frac{" + num_.to_latex() + "}{" + den_to_latex() + "}";
}

Fraction frac_add(const Fraction& x, const Fraction& y) { return x + y; }
Fraction frac_mul(const Fraction& x, const Fraction& y) { return x * y; }
Fraction frac_inv(const Fraction& x, const FactorPool* pool) { return x.inverse(pool); }

bool frac_eq(const Fraction& x, const Fraction& y) {
  const auto& dx = x.den();
  const auto& dy = y.den();
  bool same_den = dx.size() == dy.size();
  for (std::size_t i = 0; same_den && i < dx.size(); ++i) {
    same_den = dx[i].multiplicity == dy[i].multiplicity && same_poly(dx[i].poly, dy[i].poly);
  }
  if (same_den) return x.num() == y.num();
  const std::vector<DenFactor> lcm = merge_factors(dx, dy, /*add=*/false);
  return lift_to(x.num(), dx, lcm) == lift_to(y.num(), dy, lcm);
}

std::uint64_t eval_mod_p(const Fraction& x, const ModularPoint& point) { return x.eval_mod(point); }

std::vector<DenFactor> common_denominator(std::span<const Fraction> xs) {
  std::vector<DenFactor> lcm;
  for (const Fraction& x : xs) lcm = merge_factors(lcm, x.den(), /*add=*/false);
  return lcm;
}

SparsePoly numerator_over(const Fraction& x, const std::vector<DenFactor>& den) {
  for (const DenFactor& f : x.den()) {
    if (multiplicity_of(den, f.poly) < f.multiplicity) throw UsageError("denominator is not a common multiple");
  }
  return lift_to(x.num(), x.den(), den);
}

}  // namespace pfister
