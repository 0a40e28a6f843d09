#include "pfister/render.hpp"

#include <sstream>

#include "pfister/errors.hpp"

namespace pfister {
namespace {

std::string generator_word(unsigned mask, bool latex) {
  std::string out;
  for (unsigned i = 0; mask >> i; ++i) {
    if (!((mask >> i) & 1u)) continue;
    if (latex) {
      out += "g_{" + std::to_string(i + 1) + "}";
    } else {
      out += (out.empty() ? "g" : "*g") + std::to_string(i + 1);
    }
  }
  return out;
}

bool needs_parens(const Fraction& f) { return f.is_polynomial() && f.num().size() > 1; }

std::string element_render(const TowerElement<Fraction>& x, bool latex) {
  std::string out;
  for (unsigned s = 0; s < x.dimension(); ++s) {
    const Fraction& c = x[s];
    if (c.is_zero()) continue;
    std::string coeff = latex ? c.to_latex() : c.to_string();
    std::string piece;
    if (s == 0) {
      piece = coeff;
    } else if (c.is_polynomial() && c.num() == SparsePoly::constant(c.table(), Rational(1))) {
      piece = generator_word(s, latex);
    } else if (c.is_polynomial() && c.num() == SparsePoly::constant(c.table(), Rational(-1))) {
      piece = "-" + generator_word(s, latex);
    } else {
      if (needs_parens(c) || !c.is_polynomial()) {
        coeff = latex ? "\\left(" + coeff + "\\right)" : "(" + coeff + ")";
      }
      piece = coeff + (latex ? " " : "*") + generator_word(s, latex);
    }
    if (out.empty()) {
      out = piece;
    } else if (piece.starts_with("-")) {
      out += " - " + piece.substr(1);
    } else {
      out += " + " + piece;
    }
  }
  return out.empty() ? "0" : out;
}

// Top-right block factored as prefactor * block, when that is worthwhile.
struct FactoredBlock {
  Fraction prefactor;
  std::vector<std::vector<SparsePoly>> entries;
};

std::optional<FactoredBlock> factor_block(const Matrix<Fraction>& t) {
  const std::size_t d = t.rows();
  if (d < 4) return std::nullopt;
  const std::size_t h = d / 2;
  std::vector<Fraction> block;
  bool has_den = false;
  for (std::size_t i = 0; i < h; ++i)
    for (std::size_t j = h; j < d; ++j) {
      block.push_back(t(i, j));
      has_den = has_den || !t(i, j).is_polynomial();
    }
  if (!has_den) return std::nullopt;
  const TablePtr& table = t(0, 0).table();
  const auto den = common_denominator(block);
  std::vector<SparsePoly> nums;
  Monomial content;
  bool first = true;
  for (const Fraction& f : block) {
    nums.push_back(numerator_over(f, den));
    if (nums.back().is_zero()) continue;
    content = first ? nums.back().monomial_content() : gcd(content, nums.back().monomial_content());
    first = false;
  }
  if (first) return std::nullopt;
  // sign chosen so the (1,1) entry of the block leads with a positive coefficient
  Rational sign(1);
  for (const SparsePoly& p : nums) {
    if (p.is_zero()) continue;
    if (p.trailing().coeff.sign() < 0) sign = Rational(-1);
    break;
  }
  SparsePoly den_poly = SparsePoly::constant(table, Rational(1));
  for (const DenFactor& f : den) den_poly = den_poly * f.poly.pow(f.multiplicity);
  const SparsePoly pre_num = SparsePoly::constant(table, sign).times_monomial(content, Rational(1));
  FactoredBlock out{Fraction::quotient(pre_num, den_poly), {}};
  for (std::size_t i = 0; i < h; ++i) {
    out.entries.emplace_back();
    for (std::size_t j = 0; j < h; ++j) {
      const SparsePoly& p = nums[i * h + j];
      out.entries.back().push_back(p.is_zero() ? p : p.divide_monomial(content).scaled(sign));
    }
  }
  return out;
}

}  // namespace

nlohmann::ordered_json poly_to_json(const SparsePoly& p) {
  const VariableTable& tab = *p.table();
  nlohmann::ordered_json vars = nlohmann::ordered_json::array();
  for (std::size_t v = 0; v < tab.size(); ++v) vars.push_back(tab.name(v));
  nlohmann::ordered_json terms = nlohmann::ordered_json::array();
  for (const Term& t : p.terms()) {
    nlohmann::ordered_json exp = nlohmann::ordered_json::array();
    for (std::size_t v = 0; v < tab.size(); ++v) exp.push_back(t.mono.exponent(v));
    terms.push_back({{"exp", std::move(exp)},
                     {"num", t.coeff.numerator_string()},
                     {"den", t.coeff.denominator_string()}});
  }
  return {{"vars", std::move(vars)}, {"terms", std::move(terms)}};
}

SparsePoly poly_from_json(const TablePtr& table, const nlohmann::json& j) {
  const auto& vars = j.at("vars");
  if (vars.size() != table->size()) throw UsageError("polynomial JSON has a different variable list");
  for (std::size_t v = 0; v < table->size(); ++v) {
    if (vars[v].get<std::string>() != table->name(v)) throw UsageError("polynomial JSON variable order differs");
  }
  std::vector<Term> terms;
  for (const auto& t : j.at("terms")) {
    const auto& exp = t.at("exp");
    if (exp.size() != table->size()) throw UsageError("exponent vector has the wrong length");
    Monomial m;
    for (std::size_t v = 0; v < exp.size(); ++v) m.set_exponent(v, exp[v].get<unsigned>());
    const Rational c = Rational::parse(t.at("num").get<std::string>() + "/" + t.at("den").get<std::string>());
    terms.push_back({m, c});
  }
  return SparsePoly::from_terms(table, std::move(terms));
}

nlohmann::ordered_json form_to_json(const DiagonalForm& f) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const Fraction& c : f.coeffs()) out.push_back(c.to_string());
  return out;
}

nlohmann::ordered_json element_to_json(const TowerElement<Fraction>& x, unsigned n) {
  nlohmann::ordered_json coeffs = nlohmann::ordered_json::object();
  for (unsigned s = 0; s < x.dimension(); ++s) {
    if (!x[s].is_zero()) coeffs[std::to_string(s)] = x[s].to_string();
  }
  return {{"n", n}, {"coeffs", std::move(coeffs)}};
}

std::string element_to_text(const TowerElement<Fraction>& x) { return element_render(x, false); }
std::string element_to_latex(const TowerElement<Fraction>& x) { return element_render(x, true); }

nlohmann::ordered_json basis_to_json(const CorrectedBasis<Fraction>& basis, unsigned n) {
  nlohmann::ordered_json elements = nlohmann::ordered_json::array();
  for (const auto& b : basis.elements) elements.push_back(element_to_json(b, n));
  nlohmann::ordered_json omega = nlohmann::ordered_json::array();
  const SymbolicDomain dom(basis.elements.front()[0].table(), nullptr);
  for (unsigned s = 0; s < basis.elements.size(); ++s) omega.push_back(pfister_entry(dom, s).to_string());
  return {{"n", n}, {"elements", std::move(elements)}, {"omega", std::move(omega)}};
}

nlohmann::ordered_json matrix_to_json(const PfisterConstruction<Fraction>& c) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < c.t.rows(); ++i) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (std::size_t j = 0; j < c.t.cols(); ++j) row.push_back(c.t(i, j).to_string());
    rows.push_back(std::move(row));
  }
  return {{"n", c.n},
          {"dimension", c.t.rows()},
          {"scale", c.scale.to_string()},
          {"layout", "row-major; column j holds the coordinates of Theta * b_j"},
          {"entries", std::move(rows)},
          {"basis", basis_to_json(c.basis, c.n)}};
}

std::string matrix_to_text(const PfisterConstruction<Fraction>& c) {
  std::ostringstream os;
  for (std::size_t i = 0; i < c.t.rows(); ++i) {
    for (std::size_t j = 0; j < c.t.cols(); ++j) os << (j ? " | " : "") << c.t(i, j).to_string();
    os << "\n";
  }
  return os.str();
}

std::string matrix_to_latex(const PfisterConstruction<Fraction>& c) {
  const Matrix<Fraction>& t = c.t;
  const std::size_t d = t.rows();
  const auto block = factor_block(t);
  std::ostringstream os;
  os << "T = \\begin{pmatrix}\n";
  for (std::size_t i = 0; i < d; ++i) {
    os << "  ";
    for (std::size_t j = 0; j < d; ++j) {
      const bool in_block = block && i < d / 2 && j >= d / 2;
      if (in_block) {
        if (i == 0 && j == d / 2) os << " & \\multicolumn{" << d / 2 << "}{c}{S}";
        continue;
      }
      os << (j ? " & " : "") << t(i, j).to_latex();
    }
    os << (i + 1 < d ? " \\\\\n" : "\n");
  }
  os << "\\end{pmatrix}";
  if (block) {
    const std::size_t h = d / 2;
    os << ",\n\\qquad S = " << block->prefactor.to_latex() << "\n\\begin{pmatrix}\n";
    for (std::size_t i = 0; i < h; ++i) {
      os << "  ";
      for (std::size_t j = 0; j < h; ++j) os << (j ? " & " : "") << block->entries[i][j].to_latex();
      os << (i + 1 < h ? " \\\\\n" : "\n");
    }
    os << "\\end{pmatrix}";
  }
  os << "\n";
  return os.str();
}

}  // namespace pfister
