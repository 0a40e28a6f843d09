#pragma once

#include <bit>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pfister/domain.hpp"
#include "pfister/errors.hpp"
#include "pfister/quadratic_forms.hpp"
#include "pfister/report.hpp"
#include "pfister/sampling.hpp"

namespace pfister {

/// Element of the tower algebra L = L_1 (x) ... (x) L_n, stored in the tensor
/// basis g_S = prod_{i in S} g_i. Index = subset bitmask (bit i-1 <-> g_i).
template <class S>
struct TowerElement {
  std::vector<S> coeffs;

  std::size_t dimension() const { return coeffs.size(); }
  const S& operator[](unsigned mask) const { return coeffs.at(mask); }
  S& operator[](unsigned mask) { return coeffs.at(mask); }
};

/// Commutative K-algebra generated by g_1..g_n with g_i^2 = -a_i r_i, where
/// r_1 = 1 and r_i = psi_hat(i-1) / psi(i-1). The quadratic form omega is the
/// tensor product of the norm forms of K(g_i)/K; in the tensor basis its Gram
/// matrix is diag(Gamma_S) with Gamma_S = prod_{i in S} a_i r_i.
template <ScalarDomain D>
class TowerAlgebra {
 public:
  using Scalar = typename D::Scalar;
  using Element = TowerElement<Scalar>;

  TowerAlgebra(D dom, unsigned n) : dom_(std::move(dom)), n_(n) {
    if (n < 1 || n > kMaxFold) throw UsageError("tower fold count out of range");
    r_.push_back(dom_.constant(1));
    for (unsigned i = 2; i <= n; ++i) {
      const unsigned half = 1u << (i - 2);
      const Scalar lower = pfister_value(dom_, i - 1, 0);
      const Scalar upper = pfister_value(dom_, i - 1, 2 * half);
      r_.push_back(upper * dom_.inverse(lower));
    }
    const std::size_t dim = dimension();
    square_product_.reserve(dim);
    gamma_.reserve(dim);
    for (unsigned mask = 0; mask < dim; ++mask) {
      Scalar prod = dom_.constant(1);
      for (unsigned i = 1; i <= n; ++i) {
        if ((mask >> (i - 1)) & 1u) prod = prod * generator_square(i);
      }
      gamma_.push_back(std::popcount(mask) % 2 ? -prod : prod);
      square_product_.push_back(std::move(prod));
    }
  }

  const D& domain() const { return dom_; }
  unsigned fold() const { return n_; }
  std::size_t dimension() const { return std::size_t{1} << n_; }

  /// r_i (1-based).
  const Scalar& r(unsigned i) const { return r_.at(check_index(i) - 1); }
  /// g_i^2 = -a_i r_i.
  Scalar generator_square(unsigned i) const { return -(dom_.param(check_index(i)) * r(i)); }
  /// omega(g_S) = prod_{i in S} a_i r_i.
  const Scalar& gamma(unsigned mask) const { return gamma_.at(mask); }

  Element zero() const { return Element{std::vector<Scalar>(dimension(), dom_.constant(0))}; }
  Element scalar(const Scalar& s) const {
    Element e = zero();
    e[0] = s;
    return e;
  }
  Element one() const { return scalar(dom_.constant(1)); }
  Element basis_element(unsigned mask) const {
    if (mask >= dimension()) throw UsageError("subset mask outside the tower");
    Element e = zero();
    e[mask] = dom_.constant(1);
    return e;
  }
  Element generator(unsigned i) const { return basis_element(1u << (check_index(i) - 1)); }

  Element add(const Element& x, const Element& y) const {
    require(x);
    require(y);
    Element z = x;
    for (std::size_t s = 0; s < z.dimension(); ++s) z.coeffs[s] = x.coeffs[s] + y.coeffs[s];
    return z;
  }
  Element sub(const Element& x, const Element& y) const {
    require(x);
    require(y);
    Element z = x;
    for (std::size_t s = 0; s < z.dimension(); ++s) z.coeffs[s] = x.coeffs[s] - y.coeffs[s];
    return z;
  }
  Element scale(const Scalar& c, const Element& x) const {
    require(x);
    Element z = x;
    for (Scalar& s : z.coeffs) {
      if (!dom_.is_exact_zero(s)) s = c * s;
    }
    return z;
  }

  /// g_S g_T = (prod_{i in S and T} g_i^2) g_{S xor T}, extended bilinearly.
  Element mul(const Element& x, const Element& y) const {
    require(x);
    require(y);
    const unsigned dim = static_cast<unsigned>(dimension());
    Element z = zero();
    for (unsigned s = 0; s < dim; ++s) {
      if (dom_.is_exact_zero(x.coeffs[s])) continue;
      for (unsigned t = 0; t < dim; ++t) {
        if (dom_.is_exact_zero(y.coeffs[t])) continue;
        Scalar term = x.coeffs[s] * y.coeffs[t];
        if (s & t) term = term * square_product_[s & t];
        z.coeffs[s ^ t] = z.coeffs[s ^ t] + term;
      }
    }
    return z;
  }

  /// The automorphism g_i -> -g_i.
  Element conj(unsigned i, const Element& x) const {
    return conj_mask(1u << (check_index(i) - 1), x);
  }

  /// Composite of conj(i) over every i in `flips`.
  Element conj_mask(unsigned flips, const Element& x) const {
    require(x);
    Element z = x;
    for (unsigned s = 0; s < z.dimension(); ++s) {
      if (std::popcount(s & flips) % 2) z.coeffs[s] = -z.coeffs[s];
    }
    return z;
  }

  /// Product of all 2^n conjugates. The product is fixed by every conj(i),
  /// so it must be a scalar; that is asserted and the scalar returned.
  Scalar galois_norm(const Element& x) const { return conjugate_data(x).second; }

  /// x^{-1} = (product of the non-identity conjugates) / galois_norm(x),
  /// post-checked by x x^{-1} = 1.
  Element invert(const Element& x) const {
    auto [cofactor, norm] = conjugate_data(x);
    if (dom_.is_exact_zero(norm)) throw DomainError("element has zero norm and is not invertible");
    Element inv = scale(dom_.inverse(norm), cofactor);
    if (!equal(mul(x, inv), one())) throw InternalError("inverse failed its round-trip check");
    return inv;
  }

  /// B(x, y) = sum_S x_S y_S Gamma_S.
  Scalar bilinear(const Element& x, const Element& y) const {
    require(x);
    require(y);
    Scalar sum = dom_.constant(0);
    for (unsigned s = 0; s < x.dimension(); ++s) {
      if (dom_.is_exact_zero(x.coeffs[s]) || dom_.is_exact_zero(y.coeffs[s])) continue;
      sum = sum + x.coeffs[s] * y.coeffs[s] * gamma_[s];
    }
    return sum;
  }

  Scalar omega(const Element& x) const { return bilinear(x, x); }

  /// X_1 + X_2 g_1 for i = 1, and 1 + g_i for i >= 2.
  Element theta_factor(unsigned i) const {
    check_index(i);
    if (i == 1) {
      Element e = zero();
      e[0] = dom_.indeterminate(1);
      e[1] = dom_.indeterminate(2);
      return e;
    }
    return add(one(), generator(i));
  }

  /// theta_factor(1) * ... * theta_factor(m).
  Element theta(unsigned m) const {
    check_index(m);
    Element t = theta_factor(1);
    for (unsigned i = 2; i <= m; ++i) t = mul(t, theta_factor(i));
    return t;
  }

  bool equal(const Element& x, const Element& y) const {
    require(x);
    require(y);
    for (std::size_t s = 0; s < x.dimension(); ++s) {
      if (!dom_.equal(x.coeffs[s], y.coeffs[s])) return false;
    }
    return true;
  }

  /// Zero-pads an element of a lower-fold tower with the same generators.
  Element embed(const Element& lower) const {
    if (lower.dimension() > dimension()) throw UsageError("cannot embed a larger tower element");
    Element e = zero();
    for (std::size_t s = 0; s < lower.dimension(); ++s) e.coeffs[s] = lower.coeffs[s];
    return e;
  }

 private:
  unsigned check_index(unsigned i) const {
    if (i < 1 || i > n_) {
      throw UsageError("generator index " + std::to_string(i) + " outside 1.." + std::to_string(n_));
    }
    return i;
  }

  void require(const Element& x) const {
    if (x.dimension() != dimension()) {
      throw UsageError("tower element of dimension " + std::to_string(x.dimension()) +
                       " used in an algebra of dimension " + std::to_string(dimension()));
    }
  }

  std::pair<Element, Scalar> conjugate_data(const Element& x) const {
    require(x);
    Element cofactor = one();
    for (unsigned flips = 1; flips < dimension(); ++flips) cofactor = mul(cofactor, conj_mask(flips, x));
    const Element norm = mul(cofactor, x);
    const Scalar zero_scalar = dom_.constant(0);
    for (unsigned s = 1; s < norm.dimension(); ++s) {
      if (!dom_.equal(norm.coeffs[s], zero_scalar)) {
        throw InternalError("conjugate product is not a scalar (coefficient of g_S, S = " + std::to_string(s) + ")");
      }
    }
    return {std::move(cofactor), norm.coeffs[0]};
  }

  D dom_;
  unsigned n_;
  std::vector<Scalar> r_;
  std::vector<Scalar> square_product_;  // prod_{i in mask} g_i^2
  std::vector<Scalar> gamma_;
};

/// Norms N_i(theta_i) = theta_i * conj(i, theta_i) and their product.
template <class S>
struct NormReport {
  std::vector<S> factor_norms;
  S product;
  S target;
  std::vector<IdentityCheck> checks;
};

/// Verifies prod_{i<=m} N_i(theta_i) = psi(m), and N_i(theta_i) = psi(i) / psi(i-1) for i >= 2.
template <ScalarDomain D>
NormReport<typename D::Scalar> norm_product(const TowerAlgebra<D>& alg, unsigned m) {
  if (m < 1 || m > alg.fold()) throw UsageError("norm_product level out of range");
  const D& dom = alg.domain();
  NormReport<typename D::Scalar> report{{}, dom.constant(1), pfister_value(dom, m), {}};
  const auto zero = dom.constant(0);
  for (unsigned i = 1; i <= m; ++i) {
    const auto factor = alg.theta_factor(i);
    const auto prod = alg.mul(factor, alg.conj(i, factor));
    for (unsigned s = 1; s < prod.dimension(); ++s) {
      if (!dom.equal(prod[s], zero)) throw InternalError("factor norm is not a scalar");
    }
    report.factor_norms.push_back(prod[0]);
    report.product = report.product * prod[0];
    if (i >= 2) {
      const auto ratio = pfister_value(dom, i) * dom.inverse(pfister_value(dom, i - 1));
      const bool ok = dom.equal(prod[0], ratio);
      report.checks.push_back(
          {"norm_telescoping_" + std::to_string(i), "N_" + std::to_string(i) + "(Theta_" + std::to_string(i) +
                                                         ") = psi_" + std::to_string(i) + " / psi_" +
                                                         std::to_string(i - 1),
           ok, ok ? std::nullopt : std::optional<std::string>("N_" + std::to_string(i) + " = " + dom.render(prod[0])),
           std::nullopt});
    }
  }
  const bool ok = dom.equal(report.product, report.target);
  report.checks.insert(report.checks.begin(),
                       IdentityCheck{"norm_product_" + std::to_string(m),
                                     "prod_{i<=" + std::to_string(m) + "} N_i(Theta_i) = psi_" + std::to_string(m),
                                     ok,
                                     ok ? std::nullopt
                                        : std::optional<std::string>("product = " + dom.render(report.product)),
                                     std::nullopt});
  return report;
}

struct ScalingResult {
  std::size_t pairs_checked = 0;
  std::size_t pairs_failed = 0;
  std::optional<std::string> counterexample;
  bool passed() const { return pairs_failed == 0; }
};

/// B(mult g_S, mult g_T) = scale B(g_S, g_T) for all S, T subsets of {1..m}.
/// By bilinearity this is the statement B(mult h, mult l) = scale B(h, l) on
/// the whole subalgebra generated by g_1..g_m.
template <ScalarDomain D>
ScalingResult check_scaling(const TowerAlgebra<D>& alg, const typename TowerAlgebra<D>::Element& multiplier,
                            const typename D::Scalar& scale, unsigned m) {
  if (m < 1 || m > alg.fold()) throw UsageError("scaling level out of range");
  const D& dom = alg.domain();
  const unsigned count = 1u << m;
  std::vector<typename TowerAlgebra<D>::Element> images;
  images.reserve(count);
  for (unsigned s = 0; s < count; ++s) images.push_back(alg.mul(multiplier, alg.basis_element(s)));
  ScalingResult result;
  for (unsigned s = 0; s < count; ++s) {
    for (unsigned t = 0; t < count; ++t) {
      ++result.pairs_checked;
      const auto lhs = alg.bilinear(images[s], images[t]);
      const auto rhs = s == t ? scale * alg.gamma(s) : dom.constant(0);
      if (dom.equal(lhs, rhs)) continue;
      ++result.pairs_failed;
      if (!result.counterexample) {
        result.counterexample = "pair (S=" + std::to_string(s) + ", T=" + std::to_string(t) +
                                "): B(theta g_S, theta g_T) = " + dom.render(lhs) + ", expected " + dom.render(rhs);
      }
    }
  }
  return result;
}

// Symbolic and modular entry points. Each returns verdicts for the report.

/// Norm telescoping at levels 1..m of an n-fold tower.
Report verify_norm_product(unsigned n, unsigned m, Mode mode, const ModularOptions& options = {});

/// B(Theta^(m) h, Theta^(m) l) = psi(m) B(h, l) over all 4^m tensor-basis pairs.
Report verify_scaling(unsigned n, unsigned m, Mode mode, const ModularOptions& options = {});

/// Exhibits x with omega(x x) != omega(x)^2 (x = g_1 + g_2 at n = 2) at sampled points.
Report verify_omega_not_multiplicative(const ModularOptions& options = {});

}  // namespace pfister
