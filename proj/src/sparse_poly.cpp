#include "pfister/sparse_poly.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "pfister/errors.hpp"

namespace pfister {
namespace {

bool term_less(const Term& a, const Term& b) { return a.mono < b.mono; }

// Merge two ascending term lists, combining equal monomials.
std::vector<Term> merge_add(std::vector<Term> a, std::vector<Term> b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const auto c = a[i].mono <=> b[j].mono;
    if (c < 0) {
      out.push_back(std::move(a[i++]));
    } else if (c > 0) {
      out.push_back(std::move(b[j++]));
    } else {
      a[i].coeff += b[j].coeff;
      if (!a[i].coeff.is_zero()) out.push_back(std::move(a[i]));
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) out.push_back(std::move(a[i]));
  for (; j < b.size(); ++j) out.push_back(std::move(b[j]));
  return out;
}

std::vector<Term> scale_terms(std::span<const Term> q, const Term& t) {
  std::vector<Term> out;
  out.reserve(q.size());
  for (const Term& s : q) out.push_back(Term{t.mono * s.mono, t.coeff * s.coeff});
  return out;
}

// p[lo, hi) * q as a balanced merge tree of monomial multiples.
std::vector<Term> mul_range(std::span<const Term> p, std::span<const Term> q) {
  if (p.size() == 1) return scale_terms(q, p[0]);
  const std::size_t mid = p.size() / 2;
  return merge_add(mul_range(p.subspan(0, mid), q), mul_range(p.subspan(mid), q));
}

std::string coefficient_prefix(const Rational& c, bool unit_monomial) {
  if (unit_monomial) return c.to_string();
  if (c.is_one()) return "";
  if (c == Rational(-1)) return "-";
  return c.to_string() + "*";
}

std::string join_signed(const std::vector<std::string>& parts) {
  if (parts.empty()) return "0";
  std::string out = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) {
    if (!parts[i].empty() && parts[i][0] == '-') {
      out += " - " + parts[i].substr(1);
    } else {
      out += " + " + parts[i];
    }
  }
  return out;
}

}  // namespace

SparsePoly::SparsePoly(TablePtr table) : table_(std::move(table)) {
  if (!table_) throw UsageError("polynomial requires a variable table");
}

SparsePoly::SparsePoly(TablePtr table, std::vector<Term> sorted_terms)
    : table_(std::move(table)), terms_(std::move(sorted_terms)) {}

SparsePoly SparsePoly::constant(TablePtr table, const Rational& c) {
  SparsePoly p(std::move(table));
  if (!c.is_zero()) p.terms_.push_back(Term{Monomial{}, c});
  return p;
}

SparsePoly SparsePoly::variable(TablePtr table, std::size_t index, unsigned exponent) {
  if (!table || index >= table->size()) throw UsageError("variable index outside the table");
  SparsePoly p(std::move(table));
  p.terms_.push_back(Term{Monomial::variable(index, exponent), Rational(1)});
  return p;
}

SparsePoly SparsePoly::from_terms(TablePtr table, std::vector<Term> terms) {
  SparsePoly p(std::move(table));
  std::sort(terms.begin(), terms.end(), term_less);
  for (Term& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coeff += t.coeff;
      if (p.terms_.back().coeff.is_zero()) p.terms_.pop_back();
    } else if (!t.coeff.is_zero()) {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

SparsePoly SparsePoly::parse(TablePtr table, std::string_view text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  }
  if (s.empty()) throw UsageError("empty polynomial text");
  std::vector<Term> terms;
  std::size_t pos = 0;
  while (pos < s.size()) {
    Rational sign(1);
    if (s[pos] == '+' || s[pos] == '-') {
      if (s[pos] == '-') sign = Rational(-1);
      ++pos;
    } else if (!terms.empty()) {
      throw UsageError("expected '+' or '-' in '" + s + "'");
    }
    std::size_t end = pos;
    while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
    const std::string body = s.substr(pos, end - pos);
    if (body.empty()) throw UsageError("empty term in '" + s + "'");
    Term term{Monomial{}, sign};
    std::size_t f = 0;
    while (f <= body.size()) {
      std::size_t star = body.find('*', f);
      if (star == std::string::npos) star = body.size();
      const std::string factor = body.substr(f, star - f);
      if (factor.empty()) throw UsageError("empty factor in '" + body + "'");
      if (std::isdigit(static_cast<unsigned char>(factor[0]))) {
        term.coeff *= Rational::parse(factor);
      } else {
        const std::size_t caret = factor.find('^');
        const std::string name = factor.substr(0, caret);
        const auto v = table->find(name);
        if (!v) throw UsageError("unknown variable '" + name + "'");
        unsigned e = 1;
        if (caret != std::string::npos) e = static_cast<unsigned>(std::stoul(factor.substr(caret + 1)));
        term.mono = term.mono * Monomial::variable(*v, e);
      }
      f = star + 1;
    }
    terms.push_back(std::move(term));
    pos = end;
  }
  return from_terms(std::move(table), std::move(terms));
}

std::optional<Rational> SparsePoly::constant_value() const {
  if (terms_.empty()) return Rational(0);
  if (terms_.size() == 1 && terms_[0].mono.is_one()) return terms_[0].coeff;
  return std::nullopt;
}

void SparsePoly::require_same_table(const SparsePoly& other) const {
  if (table_ != other.table_ && !(*table_ == *other.table_)) {
    throw UsageError("polynomials belong to different variable tables");
  }
}

SparsePoly SparsePoly::operator-() const {
  std::vector<Term> out(terms_);
  for (Term& t : out) t.coeff = -t.coeff;
  return SparsePoly(table_, std::move(out));
}

SparsePoly SparsePoly::scaled(const Rational& c) const {
  if (c.is_zero()) return SparsePoly(table_);
  std::vector<Term> out(terms_);
  for (Term& t : out) t.coeff *= c;
  return SparsePoly(table_, std::move(out));
}

SparsePoly SparsePoly::times_monomial(const Monomial& m, const Rational& c) const {
  if (c.is_zero()) return SparsePoly(table_);
  return SparsePoly(table_, scale_terms(terms_, Term{m, c}));
}

SparsePoly operator+(const SparsePoly& p, const SparsePoly& q) {
  p.require_same_table(q);
  return SparsePoly(p.table_, merge_add(p.terms_, q.terms_));
}

SparsePoly operator-(const SparsePoly& p, const SparsePoly& q) {
  p.require_same_table(q);
  return SparsePoly(p.table_, merge_add(p.terms_, (-q).terms_));
}

SparsePoly operator*(const SparsePoly& p, const SparsePoly& q) {
  p.require_same_table(q);
  if (p.is_zero() || q.is_zero()) return SparsePoly(p.table_);
  const bool p_smaller = p.terms_.size() <= q.terms_.size();
  const auto& outer = p_smaller ? p.terms_ : q.terms_;
  const auto& inner = p_smaller ? q.terms_ : p.terms_;
  return SparsePoly(p.table_, mul_range(outer, inner));
}

SparsePoly SparsePoly::pow(unsigned e) const {
  SparsePoly result = constant(table_, Rational(1));
  for (unsigned i = 0; i < e; ++i) result = result * *this;
  return result;
}

bool operator==(const SparsePoly& p, const SparsePoly& q) {
  p.require_same_table(q);
  if (p.terms_.size() != q.terms_.size()) return false;
  for (std::size_t i = 0; i < p.terms_.size(); ++i) {
    if (!(p.terms_[i].mono == q.terms_[i].mono) || !(p.terms_[i].coeff == q.terms_[i].coeff)) {
      return false;
    }
  }
  return true;
}

std::optional<SparsePoly> SparsePoly::exact_div(const SparsePoly& d) const {
  require_same_table(d);
  if (d.is_zero()) throw DomainError("exact division by the zero polynomial");
  if (is_zero()) return SparsePoly(table_);
  if (d.is_constant()) return scaled(Rational(1) / d.terms_[0].coeff);
  // Necessary conditions: extreme terms of p are products of extreme terms.
  if (d.degree() > degree()) return std::nullopt;
  if (!d.leading().mono.divides(leading().mono)) return std::nullopt;
  if (!d.trailing().mono.divides(trailing().mono)) return std::nullopt;

  std::map<Monomial, Rational> rem;
  for (const Term& t : terms_) rem.emplace_hint(rem.end(), t.mono, t.coeff);
  const Term& lead = d.leading();
  const Monomial& tail = d.trailing().mono;
  std::vector<Term> quotient;
  while (!rem.empty()) {
    const auto top = std::prev(rem.end());
    if (!lead.mono.divides(top->first) || !tail.divides(rem.begin()->first)) return std::nullopt;
    const Monomial qm = top->first / lead.mono;
    const Rational qc = top->second / lead.coeff;
    for (const Term& dt : d.terms_) {
      const Monomial m = qm * dt.mono;
      auto [it, inserted] = rem.try_emplace(m, -(qc * dt.coeff));
      if (!inserted) {
        it->second -= qc * dt.coeff;
        if (it->second.is_zero()) rem.erase(it);
      }
    }
    quotient.push_back(Term{qm, qc});
  }
  std::reverse(quotient.begin(), quotient.end());
  return SparsePoly(table_, std::move(quotient));
}

SparsePoly SparsePoly::shift_variables(int offset) const {
  if (offset == 0) return *this;
  const VariableTable& tab = *table_;
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const Term& t : terms_) {
    Monomial m;
    for (std::size_t v = 0; v < tab.size(); ++v) {
      const unsigned e = t.mono.exponent(v);
      if (e == 0) continue;
      if (!tab.is_x(v)) {
        m.set_exponent(v, e);
        continue;
      }
      const long j = static_cast<long>(v - tab.params()) + 1 + offset;
      if (j < 1 || j > static_cast<long>(tab.indeterminates())) {
        throw UsageError("shift by " + std::to_string(offset) + " moves " + tab.name(v) +
                         " outside the variable table");
      }
      m.set_exponent(tab.x_index(static_cast<unsigned>(j)), e);
    }
    out.push_back(Term{m, t.coeff});
  }
  return from_terms(table_, std::move(out));
}

Monomial SparsePoly::monomial_content() const {
  if (terms_.empty()) return Monomial{};
  Monomial g = terms_[0].mono;
  for (std::size_t i = 1; i < terms_.size() && !g.is_one(); ++i) g = gcd(g, terms_[i].mono);
  return g;
}

SparsePoly SparsePoly::divide_monomial(const Monomial& m) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const Term& t : terms_) {
    if (!m.divides(t.mono)) throw UsageError("monomial does not divide every term");
    out.push_back(Term{t.mono / m, t.coeff});
  }
  return SparsePoly(table_, std::move(out));
}

std::uint64_t SparsePoly::eval_mod(const ModularPoint& point) const {
  if (point.values.size() < table_->size()) throw UsageError("modular point is missing variables");
  const std::uint64_t p = point.prime;
  std::uint64_t acc = 0;
  for (const Term& t : terms_) {
    std::uint64_t v = t.coeff.residue(p);
    for (std::size_t var = 0; var < table_->size() && v != 0; ++var) {
      const unsigned e = t.mono.exponent(var);
      if (e) v = mod::mul(v, mod::pow(point.values[var], e, p), p);
    }
    acc = mod::add(acc, v, p);
  }
  return acc;
}

std::string SparsePoly::to_string() const {
  std::vector<std::string> parts;
  parts.reserve(terms_.size());
  for (const Term& t : terms_) {
    std::string mono;
    for (std::size_t v = 0; v < table_->size(); ++v) {
      const unsigned e = t.mono.exponent(v);
      if (e == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += table_->name(v);
      if (e > 1) mono += "^" + std::to_string(e);
    }
    parts.push_back(coefficient_prefix(t.coeff, t.mono.is_one()) + mono);
  }
  return join_signed(parts);
}

std::string SparsePoly::to_latex() const {
  std::vector<std::string> parts;
  for (const Term& t : terms_) {
    std::string mono;
    for (std::size_t v = 0; v < table_->size(); ++v) {
      const unsigned e = t.mono.exponent(v);
      if (e == 0) continue;
      mono += table_->latex_name(v);
      if (e > 1) mono += "^{" + std::to_string(e) + "}";
    }
    const Rational& c = t.coeff;
    std::string coeff;
    const bool negative = c.sign() < 0;
    const Rational mag = negative ? -c : c;
    if (t.mono.is_one() || !mag.is_one()) {
      coeff = mag.is_integer() ? mag.numerator_string()
                               : "\\frac{" + mag.numerator_string() + "}{" + mag.denominator_string() + "}";
    }
    parts.push_back((negative ? "-" : "") + coeff + mono);
  }
  return join_signed(parts);
}

bool canonical_less(const SparsePoly& p, const SparsePoly& q) {
  if (p.terms_.size() != q.terms_.size()) return p.terms_.size() < q.terms_.size();
  for (std::size_t i = p.terms_.size(); i-- > 0;) {
    const auto c = p.terms_[i].mono <=> q.terms_[i].mono;
    if (c != 0) return c < 0;
    if (!(p.terms_[i].coeff == q.terms_[i].coeff)) return p.terms_[i].coeff < q.terms_[i].coeff;
  }
  return false;
}

SparsePoly poly_add(const SparsePoly& p, const SparsePoly& q) { return p + q; }
SparsePoly poly_mul(const SparsePoly& p, const SparsePoly& q) { return p * q; }
std::optional<SparsePoly> poly_exact_div(const SparsePoly& p, const SparsePoly& d) {
  return p.exact_div(d);
}
SparsePoly shift_variables(const SparsePoly& p, int offset) { return p.shift_variables(offset); }

}  // namespace pfister
