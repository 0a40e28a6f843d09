#include "pfister/pfister_matrix.hpp"

#include <chrono>

namespace pfister {
namespace {

void check_symbolic_fold(unsigned n) {
  if (n < 1 || n > kMaxSymbolicMatrixFold) {
    throw UsageError("symbolic matrix construction supports n in 1.." + std::to_string(kMaxSymbolicMatrixFold) +
                     "; use modular mode for larger n");
  }
}

void check_fold(unsigned n) {
  if (n < 1 || n > kMaxFold) throw UsageError("n must lie in 1.." + std::to_string(kMaxFold));
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

std::string entry_name(std::size_t row, std::size_t col) {
  return "T(" + std::to_string(row + 1) + "," + std::to_string(col + 1) + ")";
}

template <ScalarDomain D>
void apply_fault(const D& dom, Matrix<typename D::Scalar>& t, const std::optional<MatrixFault>& fault) {
  if (!fault) return;
  if (fault->row >= t.rows() || fault->col >= t.cols()) throw UsageError("fault position outside the matrix");
  t(fault->row, fault->col) = t(fault->row, fault->col) + dom.constant(fault->delta);
}

template <ScalarDomain D>
std::string describe_violation(const D& dom, const Matrix<typename D::Scalar>& t,
                               const Matrix<typename D::Scalar>& gram, const typename D::Scalar& c,
                               const EntryLocation& bad) {
  std::string out = "T^T G T differs from psi G at (" + std::to_string(bad.row + 1) + "," +
                    std::to_string(bad.col + 1) + ")";
  if (const auto suspect = locate_single_entry_fault(dom, t, gram, c)) {
    out += "; explained by a single wrong entry " + entry_name(suspect->row, suspect->col);
  }
  return out;
}

std::string congruence_statement(unsigned n) {
  const std::string d = std::to_string(1u << n);
  return "T^T G T = psi_" + std::to_string(n) + " G, G = diag(prod_{i in S} a_i), T the " + d + "x" + d +
         " matrix of multiplication by Theta";
}

Matrix<ModScalar> diagonal_gram(const ModularDomain& dom, unsigned n) {
  const auto entries = pfister_gram(dom, n);
  Matrix<ModScalar> g(entries.size(), entries.size(), dom.constant(0));
  for (std::size_t i = 0; i < entries.size(); ++i) g(i, i) = entries[i];
  return g;
}

}  // namespace

PfisterConstruction<Fraction> pfister_matrix(unsigned n) {
  check_symbolic_fold(n);
  return build_pfister(SymbolicDomain::for_fold(n), n);
}

CorrectedBasis<Fraction> corrected_basis(unsigned n) { return pfister_matrix(n).basis; }

Report verify_strict_multiplicativity(unsigned n, Mode mode, const ModularOptions& options,
                                      std::optional<MatrixFault> fault) {
  check_fold(n);
  const auto start = std::chrono::steady_clock::now();
  const std::string name = "strict_multiplicativity_" + std::to_string(n);
  Report report;
  if (mode == Mode::symbolic) {
    check_symbolic_fold(n);
    const unsigned dim = 1u << n;
    const bool fresh_form = n <= 2;
    const SymbolicDomain dom = SymbolicDomain::for_fold(n, fresh_form ? dim : 0);
    auto built = build_pfister(dom, n);
    apply_fault(dom, built.t, fault);
    const TablePtr& table = dom.table();
    const DiagonalForm phi = pfister(table, n);
    const SimilarityReport sim = verify_similarity(built.t, GramMatrix::of(phi), built.scale, Mode::symbolic);
    std::optional<std::string> counter;
    if (sim.violation) {
      counter = describe_violation(dom, built.t, GramMatrix::of(phi).entries(), built.scale, *sim.violation);
    }
    report.add({name, congruence_statement(n), sim.passed, counter, std::nullopt});
    if (fresh_form) {
      const Fraction defect = similarity_defect_in_fresh_variables(built.t, phi, built.scale);
      const bool ok = defect.is_zero();
      report.add({"fresh_variable_form_" + std::to_string(n),
                  "phi(T Y) = psi_" + std::to_string(n) + " phi(Y) in fresh Y1..Y" + std::to_string(dim), ok,
                  ok ? std::nullopt : std::optional<std::string>("defect = " + defect.to_string()), std::nullopt});
      const bool agree = ok == sim.passed;
      report.add({"formulations_agree_" + std::to_string(n),
                  "the Gram congruence and the fresh-variable identity give the same verdict", agree,
                  agree ? std::nullopt : std::optional<std::string>("verdicts differ"), std::nullopt});
    }
  } else {
    mod::require_verification_prime(options.prime);
    const auto outcome =
        run_sampled(n, 1u << n, 0, options, [&](const ModularDomain& dom) -> std::optional<std::string> {
          std::optional<PfisterConstruction<ModScalar>> built_or;
          try {
            built_or = build_pfister(dom, n);
          } catch (const InternalError& e) {
            return std::string("construction: ") + e.what();
          }
          auto& built = *built_or;
          apply_fault(dom, built.t, fault);
          const auto gram = diagonal_gram(dom, n);
          if (const auto bad = congruence_violation(dom, built.t, gram, built.scale)) {
            return describe_violation(dom, built.t, gram, built.scale, *bad);
          }
          // smoke test only; kept out of the reported degree bound
          const ModularDomain plain = dom.untracked();
          const auto det = determinant(plain, built.t);
          auto power = plain.constant(1);
          for (unsigned k = 0; k < (1u << n); ++k) power = power * built.scale;
          if (!plain.equal(det * det, power)) return std::string("det(T)^2 differs from psi^(2^n)");
          return std::nullopt;
        });
    report.add(sampled_check(name, congruence_statement(n), outcome));
  }
  report.notes.push_back("isometry stated as psi_K = psi(X1..X_2^n) phi_K read as phi_K = psi(X1..X_2^n) phi_K");
  report.timings_ms.emplace_back(name, elapsed_ms(start));
  return report;
}

Report verify_gram_diagonal(unsigned n, Mode mode, const ModularOptions& options) {
  check_fold(n);
  const std::string name = "gram_diagonal_" + std::to_string(n);
  const std::string statement =
      "B(b_i, b_j) = 0 for i != j and omega(b_S) = prod_{i in S} a_i on the corrected basis";
  Report report;
  const auto check = [&](const auto& dom) -> std::optional<std::string> {
    try {
      const auto built = build_pfister(dom, n);
      const TowerAlgebra alg(dom, n);
      const auto& basis = built.basis.elements;
      for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i; j < basis.size(); ++j) {
          const auto expected = i == j ? pfister_entry(dom, static_cast<unsigned>(i)) : dom.constant(0);
          if (!dom.equal(alg.bilinear(basis[i], basis[j]), expected)) {
            return "B(b_" + std::to_string(i + 1) + ", b_" + std::to_string(j + 1) + ") is wrong";
          }
        }
    } catch (const InternalError& e) {
      return std::string(e.what());
    }
    return std::nullopt;
  };
  if (mode == Mode::symbolic) {
    check_symbolic_fold(n);
    const auto failure = check(SymbolicDomain::for_fold(n));
    report.add({name, statement, !failure, failure, std::nullopt});
  } else {
    mod::require_verification_prime(options.prime);
    report.add(sampled_check(name, statement, run_sampled(n, 1u << n, 0, options, check)));
  }
  return report;
}

Report verify_specialization(unsigned n, const ModularOptions& options) {
  check_symbolic_fold(n);
  mod::require_verification_prime(options.prime);
  const auto symbolic = pfister_matrix(n);
  Report report;
  const auto outcome =
      run_sampled(n, 1u << n, 0, options, [&](const ModularDomain& dom) -> std::optional<std::string> {
        const auto evaluated = symbolic.t.map([&](const Fraction& f) { return f.eval_scalar(dom.point()); });
        const auto direct = build_pfister(dom, n).t;
        if (const auto diff = first_difference(dom, evaluated, direct)) {
          return entry_name(diff->first, diff->second) + " differs between the two routes";
        }
        return std::nullopt;
      });
  report.add(sampled_check("specialization_" + std::to_string(n),
                           "T evaluated at a point = T built over Z/pZ at that point", outcome));
  return report;
}

const std::vector<PrintedEntry>& printed_matrix_n2() {
  static const std::vector<PrintedEntry> entries = [] {
    const std::string prefactor_den = "X1^2 + a1*X2^2";
    const std::string s11 = "X1^2*X3 + 2*a1*X1*X2*X4 - a1*X2^2*X3";
    const std::string s12 = "-2*a1*X1*X2*X3 - a1^2*X2^2*X4 + a1*X1^2*X4";
    const std::string s21 = "2*X1*X2*X3 - X1^2*X4 + a1*X2^2*X4";
    const std::string s22 = "X1^2*X3 - a1*X2^2*X3 + 2*a1*X1*X2*X4";
    const auto s_entry = [&](std::size_t r, std::size_t c, const std::string& body) {
      return PrintedEntry{r, c, "-a2 (" + body + ") / (" + prefactor_den + ")", "-a2", body, prefactor_den,
                          std::nullopt};
    };
    const auto plain = [](std::size_t r, std::size_t c, const std::string& text) {
      return PrintedEntry{r, c, text, "1", text, "1", std::nullopt};
    };
    std::vector<PrintedEntry> out;
    out.push_back(plain(1, 1, "X1"));
    out.push_back(PrintedEntry{1, 2, "-a X2", "1", "-a1*X2", "1", "printed entry -aX2 read as -a1X2"});
    out.push_back(s_entry(1, 3, s11));
    out.push_back(s_entry(1, 4, s12));
    out.push_back(plain(2, 1, "X2"));
    out.push_back(plain(2, 2, "X1"));
    out.push_back(s_entry(2, 3, s21));
    out.push_back(s_entry(2, 4, s22));
    out.push_back(plain(3, 1, "X3"));
    out.push_back(plain(3, 2, "-a1*X4"));
    out.push_back(plain(3, 3, "X1"));
    out.push_back(plain(3, 4, "-a1*X2"));
    out.push_back(plain(4, 1, "X4"));
    out.push_back(plain(4, 2, "X3"));
    out.push_back(plain(4, 3, "X2"));
    out.push_back(plain(4, 4, "X1"));
    return out;
  }();
  return entries;
}

std::size_t PaperCheck::matches() const {
  std::size_t k = 0;
  for (const EntryVerdict& v : entries) k += v.match ? 1 : 0;
  return k;
}

PaperCheck paper_example_n2(std::optional<MatrixFault> fault) {
  const auto start = std::chrono::steady_clock::now();
  const SymbolicDomain dom = SymbolicDomain::for_fold(2);
  auto built = build_pfister(dom, 2);
  apply_fault(dom, built.t, fault);
  const TablePtr& table = dom.table();
  PaperCheck out;
  std::string mismatches;
  for (const PrintedEntry& e : printed_matrix_n2()) {
    const Fraction expected = Fraction::quotient(SparsePoly::parse(table, e.factor) * SparsePoly::parse(table, e.numerator),
                                                 SparsePoly::parse(table, e.denominator), dom.pool());
    const Fraction& computed = built.t(e.row - 1, e.col - 1);
    EntryVerdict v{e, computed.to_string(), frac_eq(computed, expected)};
    if (!v.match) mismatches += (mismatches.empty() ? "" : ", ") + entry_name(e.row - 1, e.col - 1);
    out.entries.push_back(std::move(v));
  }
  const std::size_t total = out.entries.size();
  const std::size_t ok = out.matches();
  out.report.add({"printed_matrix_n2",
                  "the 4x4 matrix of multiplication by Theta = (X1 + X2 g1)(1 + g2) in the corrected basis equals "
                  "the printed T entry by entry, S block included",
                  ok == total,
                  ok == total ? std::nullopt
                              : std::optional<std::string>(std::to_string(ok) + "/" + std::to_string(total) +
                                                           " entries match; mismatched: " + mismatches),
                  std::nullopt});
  out.report.append(verify_norm_product(2, 2, Mode::symbolic));
  out.report.notes.insert(out.report.notes.begin(), "printed entry -aX2 read as -a1X2");
  out.report.timings_ms.emplace_back("paper_check", elapsed_ms(start));
  return out;
}

}  // namespace pfister
