#include "pfister/rational.hpp"

#include "pfister/errors.hpp"
#include "pfister/modular.hpp"

namespace pfister {

Rational::Rational(mpq_class value) : q_(std::move(value)) { q_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
  const std::string s(text);
  if (s.empty()) throw UsageError("empty rational literal");
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw UsageError("malformed rational literal '" + s + "'");
  if (q.get_den() == 0) throw UsageError("zero denominator in '" + s + "'");
  return Rational(std::move(q));
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw DomainError("rational division by zero");
  q_ /= o.q_;
  return *this;
}

std::uint64_t Rational::residue(std::uint64_t prime) const {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), q_.get_num_mpz_t(), prime);
  const std::uint64_t num = r.get_ui();
  mpz_fdiv_r_ui(r.get_mpz_t(), q_.get_den_mpz_t(), prime);
  const std::uint64_t den = r.get_ui();
  if (den == 0) throw PoleError("coefficient denominator vanishes modulo p");
  return mod::mul(num, mod::inverse(den, prime), prime);
}

}  // namespace pfister
