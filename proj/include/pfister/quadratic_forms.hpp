#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pfister/domain.hpp"
#include "pfister/fraction.hpp"
#include "pfister/matrix.hpp"
#include "pfister/sampling.hpp"

namespace pfister {

/// Coordinates of a vector with respect to some ordered basis.
using CoordinateVector = std::vector<Fraction>;

/// Diagonal quadratic form <c_1, ..., c_d> over the function field.
class DiagonalForm {
 public:
  explicit DiagonalForm(std::vector<Fraction> coeffs);

  std::size_t dimension() const { return coeffs_.size(); }
  const std::vector<Fraction>& coeffs() const { return coeffs_; }
  const Fraction& operator[](std::size_t i) const { return coeffs_.at(i); }

 private:
  std::vector<Fraction> coeffs_;
};

/// Symmetric matrix of the polar bilinear form.
class GramMatrix {
 public:
  explicit GramMatrix(Matrix<Fraction> entries);
  static GramMatrix of(const DiagonalForm& form);

  std::size_t dimension() const { return entries_.rows(); }
  const Matrix<Fraction>& entries() const { return entries_; }
  bool is_symmetric() const;

 private:
  Matrix<Fraction> entries_;
};

/// Entry (i, j) of the result sits at index i + dim(f) * j, so the first
/// factor varies fastest (binary-counter order for Pfister forms).
DiagonalForm tensor(const DiagonalForm& f, const DiagonalForm& g);

/// <1, a_1> (x) ... (x) <1, a_n>; the entry at subset mask S is prod_{i in S} a_i.
DiagonalForm pfister(const TablePtr& table, unsigned n);

/// sum_i c_i v_i^2.
Fraction evaluate(const DiagonalForm& f, const CoordinateVector& v);

/// psi(i) = pfister(i) evaluated at X_1..X_{2^i}; psi(0) = 1.
Fraction psi(const TablePtr& table, unsigned i);
/// psi(i) with every X_j replaced by X_{j + 2^i}; psi_hat(0) = 1.
Fraction psi_hat(const TablePtr& table, unsigned i);

/// Every block value pfister(j)(X_{b+1..b+2^j}) that fits in the table.
/// These are the only non-monomial denominators the tower construction produces.
FactorPool standard_factor_pool(const TablePtr& table);

/// prod_{i in mask} a_i in the domain.
template <ScalarDomain D>
typename D::Scalar pfister_entry(const D& dom, unsigned mask) {
  auto out = dom.constant(1);
  for (unsigned i = 0; mask >> i; ++i) {
    if ((mask >> i) & 1u) out = out * dom.param(i + 1);
  }
  return out;
}

/// The level-fold Pfister form at X_{offset+1}, ..., X_{offset+2^level}.
template <ScalarDomain D>
typename D::Scalar pfister_value(const D& dom, unsigned level, unsigned offset = 0) {
  auto sum = dom.constant(0);
  for (unsigned mask = 0; mask < (1u << level); ++mask) {
    const auto x = dom.indeterminate(offset + mask + 1);
    sum = sum + pfister_entry(dom, mask) * x * x;
  }
  if constexpr (requires { dom.name_block(sum, level, offset); }) {
    return dom.name_block(sum, level, offset);
  } else {
    return sum;
  }
}

/// Diagonal Gram entries of the n-fold Pfister form.
template <ScalarDomain D>
std::vector<typename D::Scalar> pfister_gram(const D& dom, unsigned n) {
  std::vector<typename D::Scalar> g;
  g.reserve(std::size_t{1} << n);
  for (unsigned mask = 0; mask < (1u << n); ++mask) g.push_back(pfister_entry(dom, mask));
  return g;
}

struct EntryLocation {
  std::size_t row = 0;
  std::size_t col = 0;
};

/// T^T G T - c G, the residual of the congruence law.
template <ScalarDomain D>
Matrix<typename D::Scalar> congruence_residual(const D& dom, const Matrix<typename D::Scalar>& t,
                                               const Matrix<typename D::Scalar>& gram,
                                               const typename D::Scalar& c) {
  if (!t.square() || !gram.square() || t.rows() != gram.rows()) {
    throw UsageError("congruence check needs square matrices of equal dimension");
  }
  const std::size_t d = t.rows();
  Matrix<typename D::Scalar> gt = multiply(dom, gram, t);
  Matrix<typename D::Scalar> out(d, d, dom.constant(0));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i; j < d; ++j) {
      auto acc = dom.constant(0);
      for (std::size_t k = 0; k < d; ++k) {
        if (dom.is_exact_zero(t(k, i)) || dom.is_exact_zero(gt(k, j))) continue;
        acc = acc + t(k, i) * gt(k, j);
      }
      acc = acc - c * gram(i, j);
      out(i, j) = acc;
      out(j, i) = acc;
    }
  }
  return out;
}

/// First entry (upper triangle, row-major) where T^T G T != c G.
template <ScalarDomain D>
std::optional<EntryLocation> congruence_violation(const D& dom, const Matrix<typename D::Scalar>& t,
                                                  const Matrix<typename D::Scalar>& gram,
                                                  const typename D::Scalar& c) {
  const auto residual = congruence_residual(dom, t, gram, c);
  const auto zero = dom.constant(0);
  for (std::size_t i = 0; i < residual.rows(); ++i)
    for (std::size_t j = i; j < residual.cols(); ++j)
      if (!dom.equal(residual(i, j), zero)) return EntryLocation{i, j};
  return std::nullopt;
}

/// Explains a congruence failure by a single perturbed entry of T, if one
/// fits: T = T_true + delta e_r e_c^T makes residual row c equal to
/// delta G_rr T_r. (off the diagonal) and residual (c, c) equal to
/// delta G_rr (2 T_rc - delta). Needs diagonal G.
template <ScalarDomain D>
std::optional<EntryLocation> locate_single_entry_fault(const D& dom, const Matrix<typename D::Scalar>& t,
                                                       const Matrix<typename D::Scalar>& gram,
                                                       const typename D::Scalar& c) {
  const auto residual = congruence_residual(dom, t, gram, c);
  const auto zero = dom.constant(0);
  const std::size_t d = t.rows();
  for (std::size_t col = 0; col < d; ++col) {
    if (dom.equal(residual(col, col), zero)) continue;
    // every violated entry must lie in row/column `col`
    bool confined = true;
    for (std::size_t i = 0; i < d && confined; ++i)
      for (std::size_t j = i; j < d && confined; ++j)
        if (i != col && j != col && !dom.equal(residual(i, j), zero)) confined = false;
    if (!confined) continue;
    for (std::size_t row = 0; row < d; ++row) {
      std::optional<typename D::Scalar> delta;
      bool consistent = true;
      for (std::size_t j = 0; j < d && consistent; ++j) {
        if (j == col) continue;
        const auto scaled = gram(row, row) * t(row, j);
        if (dom.equal(scaled, zero)) {
          consistent = dom.equal(residual(col, j), zero);
          continue;
        }
        if (!delta) delta = residual(col, j) * dom.inverse(scaled);
        consistent = dom.equal(residual(col, j), *delta * scaled);
      }
      if (!consistent || !delta) continue;
      const auto two = dom.constant(2);
      if (dom.equal(residual(col, col), *delta * gram(row, row) * (two * t(row, col) - *delta))) {
        return EntryLocation{row, col};
      }
    }
  }
  return std::nullopt;
}

struct SimilarityReport {
  bool passed = false;
  Mode mode = Mode::symbolic;
  std::optional<EntryLocation> violation;      // entry of T^T G T - c G
  std::optional<EntryLocation> suspect_entry;  // single entry of T explaining it
  std::optional<std::string> counterexample;
  std::optional<SamplingSummary> sampling;
};

/// Checks T^T G T = c G. Symbolic mode decides every entry with frac_eq;
/// modular mode evaluates the entries at sampled points.
SimilarityReport verify_similarity(const Matrix<Fraction>& t, const GramMatrix& gram, const Fraction& c,
                                   Mode mode, const ModularOptions& options = {});

/// phi(T Y) - c phi(Y) for fresh variables Y, expanded as a single fraction;
/// zero exactly when the congruence law holds for diagonal phi.
Fraction similarity_defect_in_fresh_variables(const Matrix<Fraction>& t, const DiagonalForm& phi,
                                              const Fraction& c);

}  // namespace pfister
