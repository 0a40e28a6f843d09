#pragma once

#include <string>

#include <json.hpp>

#include "pfister/pfister_matrix.hpp"
#include "pfister/quadratic_forms.hpp"
#include "pfister/tower.hpp"

namespace pfister {

/// {"vars": [...], "terms": [{"exp": [...], "num": "...", "den": "..."}]},
/// one exponent per table variable, coefficients as decimal strings.
nlohmann::ordered_json poly_to_json(const SparsePoly& p);
/// Inverse of poly_to_json; the variable list must match the table.
SparsePoly poly_from_json(const TablePtr& table, const nlohmann::json& j);

/// List of fraction strings.
nlohmann::ordered_json form_to_json(const DiagonalForm& f);

/// {"n": n, "coeffs": {"<subset bitmask>": fraction-string}}, zero coefficients omitted.
nlohmann::ordered_json element_to_json(const TowerElement<Fraction>& x, unsigned n);
/// Sum of coefficient * g_S in plain text or LaTeX.
std::string element_to_text(const TowerElement<Fraction>& x);
std::string element_to_latex(const TowerElement<Fraction>& x);

nlohmann::ordered_json basis_to_json(const CorrectedBasis<Fraction>& basis, unsigned n);

/// Row-major fraction strings with the scale and the basis it is written in.
nlohmann::ordered_json matrix_to_json(const PfisterConstruction<Fraction>& c);
/// One row per line, entries separated by " | ".
std::string matrix_to_text(const PfisterConstruction<Fraction>& c);
/// pmatrix; when the top-right block has denominators it is typeset as S with
/// its common prefactor (denominator, monomial and sign) pulled out.
std::string matrix_to_latex(const PfisterConstruction<Fraction>& c);

}  // namespace pfister
