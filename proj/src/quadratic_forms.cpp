#include "pfister/quadratic_forms.hpp"

#include "pfister/errors.hpp"

namespace pfister {

DiagonalForm::DiagonalForm(std::vector<Fraction> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw UsageError("a diagonal form needs at least one entry");
  for (const Fraction& c : coeffs_) {
    if (c.is_zero()) throw UsageError("diagonal form entries must be nonzero");
  }
}

GramMatrix::GramMatrix(Matrix<Fraction> entries) : entries_(std::move(entries)) {
  if (!entries_.square()) throw UsageError("Gram matrix must be square");
}

GramMatrix GramMatrix::of(const DiagonalForm& form) {
  const std::size_t d = form.dimension();
  Matrix<Fraction> m(d, d, Fraction(SparsePoly(form[0].table())));
  for (std::size_t i = 0; i < d; ++i) m(i, i) = form[i];
  return GramMatrix(std::move(m));
}

bool GramMatrix::is_symmetric() const {
  for (std::size_t i = 0; i < entries_.rows(); ++i)
    for (std::size_t j = i + 1; j < entries_.cols(); ++j)
      if (!frac_eq(entries_(i, j), entries_(j, i))) return false;
  return true;
}

DiagonalForm tensor(const DiagonalForm& f, const DiagonalForm& g) {
  std::vector<Fraction> out;
  out.reserve(f.dimension() * g.dimension());
  for (std::size_t j = 0; j < g.dimension(); ++j)
    for (std::size_t i = 0; i < f.dimension(); ++i) out.push_back(f[i] * g[j]);
  return DiagonalForm(std::move(out));
}

DiagonalForm pfister(const TablePtr& table, unsigned n) {
  if (n < 1 || n > table->params()) {
    throw UsageError("pfister(n) needs 1 <= n <= " + std::to_string(table->params()));
  }
  const Fraction one = Fraction::constant(table, Rational(1));
  DiagonalForm form({one});
  for (unsigned i = 1; i <= n; ++i) {
    const Fraction a(SparsePoly::variable(table, table->param_index(i)));
    form = tensor(form, DiagonalForm({one, a}));
  }
  return form;
}

Fraction evaluate(const DiagonalForm& f, const CoordinateVector& v) {
  if (v.size() != f.dimension()) {
    throw UsageError("vector of length " + std::to_string(v.size()) + " against a form of dimension " +
                     std::to_string(f.dimension()));
  }
  Fraction sum(SparsePoly(f[0].table()));
  for (std::size_t i = 0; i < v.size(); ++i) sum += f[i] * v[i] * v[i];
  return sum;
}

Fraction psi(const TablePtr& table, unsigned i) {
  if (i == 0) return Fraction::constant(table, Rational(1));
  if (i > table->params()) throw UsageError("psi level " + std::to_string(i) + " out of range");
  CoordinateVector x;
  for (unsigned j = 1; j <= (1u << i); ++j) x.emplace_back(SparsePoly::variable(table, table->x_index(j)));
  return evaluate(pfister(table, i), x);
}

Fraction psi_hat(const TablePtr& table, unsigned i) {
  if (i == 0) return Fraction::constant(table, Rational(1));
  return psi(table, i).shift_variables(static_cast<int>(1u << i));
}

FactorPool standard_factor_pool(const TablePtr& table) {
  const SymbolicDomain bare(table, nullptr);
  std::vector<SparsePoly> blocks;
  for (unsigned level = 1; level <= table->params(); ++level) {
    const unsigned width = 1u << level;
    for (unsigned offset = 0; offset + width <= table->indeterminates(); offset += width) {
      blocks.push_back(pfister_value(bare, level, offset).num());
    }
  }
  return FactorPool(std::move(blocks));
}

SymbolicDomain SymbolicDomain::for_fold(unsigned n, unsigned fresh) {
  TablePtr table = VariableTable::for_fold(n, fresh);
  auto pool = std::make_shared<const FactorPool>(standard_factor_pool(table));
  return SymbolicDomain(std::move(table), std::move(pool));
}

SimilarityReport verify_similarity(const Matrix<Fraction>& t, const GramMatrix& gram, const Fraction& c,
                                   Mode mode, const ModularOptions& options) {
  if (!t.square() || t.rows() != gram.dimension()) {
    throw UsageError("similarity check: T is " + std::to_string(t.rows()) + "x" + std::to_string(t.cols()) +
                     ", Gram matrix has dimension " + std::to_string(gram.dimension()));
  }
  SimilarityReport report;
  report.mode = mode;
  const TablePtr& table = c.table();
  if (mode == Mode::symbolic) {
    const SymbolicDomain dom(table, nullptr);
    report.violation = congruence_violation(dom, t, gram.entries(), c);
    report.passed = !report.violation;
    if (report.violation) {
      report.suspect_entry = locate_single_entry_fault(dom, t, gram.entries(), c);
      report.counterexample = "T^T G T differs from c G at entry (" + std::to_string(report.violation->row + 1) +
                              "," + std::to_string(report.violation->col + 1) + ")";
    }
    return report;
  }

  mod::require_verification_prime(options.prime);
  std::optional<EntryLocation> first_violation;
  std::optional<EntryLocation> suspect;
  const auto outcome = run_sampled(
      table->params(), table->indeterminates(), table->fresh(), options,
      [&](const ModularDomain& dom) -> std::optional<std::string> {
        const ModularPoint& pt = dom.point();
        const auto eval = [&](const Fraction& f) { return f.eval_scalar(pt); };
        const auto tm = t.map(eval);
        const auto gm = gram.entries().map(eval);
        const auto cm = eval(c);
        const auto bad = congruence_violation(dom, tm, gm, cm);
        if (!bad) return std::nullopt;
        first_violation = bad;
        suspect = locate_single_entry_fault(dom, tm, gm, cm);
        return "T^T G T differs from c G at entry (" + std::to_string(bad->row + 1) + "," +
               std::to_string(bad->col + 1) + ")";
      });
  report.passed = outcome.passed;
  report.sampling = outcome.summary;
  report.counterexample = outcome.counterexample;
  report.violation = first_violation;
  report.suspect_entry = suspect;
  return report;
}

Fraction similarity_defect_in_fresh_variables(const Matrix<Fraction>& t, const DiagonalForm& phi,
                                              const Fraction& c) {
  const TablePtr& table = c.table();
  const std::size_t d = t.rows();
  if (!t.square() || d != phi.dimension()) throw UsageError("dimension mismatch in similarity defect");
  if (table->fresh() < d) throw UsageError("table lacks fresh variables Y1..Y" + std::to_string(d));
  CoordinateVector y;
  for (unsigned j = 1; j <= d; ++j) y.emplace_back(SparsePoly::variable(table, table->y_index(j)));
  CoordinateVector ty;
  for (std::size_t i = 0; i < d; ++i) {
    Fraction acc{SparsePoly(table)};
    for (std::size_t j = 0; j < d; ++j) {
      if (!t(i, j).is_zero()) acc += t(i, j) * y[j];
    }
    ty.push_back(std::move(acc));
  }
  return evaluate(phi, ty) - c * evaluate(phi, y);
}

}  // namespace pfister
