#include "onehit/rational.hpp"

#include <ostream>
#include <stdexcept>

namespace onehit {

Rational::Rational(std::int64_t value) : value_(static_cast<long>(value)) {}

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("Rational: zero denominator");
  value_ = mpq_class(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
  value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  const auto slash = s.find('/');
  try {
    mpz_class num(s.substr(0, slash), 10);
    mpz_class den(1);
    if (slash != std::string::npos) den = mpz_class(s.substr(slash + 1), 10);
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return Rational(std::move(q));
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("Rational: cannot parse '" + s + "'");
  }
}

std::string Rational::numerator() const { return value_.get_num().get_str(); }
std::string Rational::denominator() const { return value_.get_den().get_str(); }

std::string Rational::str() const {
  if (value_.get_den() == 1) return numerator();
  return numerator() + "/" + denominator();
}

Rational Rational::abs() const { return Rational(mpq_class(::abs(value_))); }

Rational& Rational::operator+=(const Rational& rhs) {
  value_ += rhs.value_;
  return *this;
}
Rational& Rational::operator-=(const Rational& rhs) {
  value_ -= rhs.value_;
  return *this;
}
Rational& Rational::operator*=(const Rational& rhs) {
  value_ *= rhs.value_;
  return *this;
}
Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw std::domain_error("Rational: division by zero");
  value_ /= rhs.value_;
  return *this;
}

Rational Rational::operator-() const { return Rational(mpq_class(-value_)); }

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

std::string rational_round(const Rational& x, int places) {
  if (places < 0) throw std::invalid_argument("rational_round: negative places");
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(places));
  const mpz_class num = ::abs(x.raw().get_num());
  const mpz_class& den = x.raw().get_den();
  // floor(|x| * 10^p + 1/2)
  mpz_class scaled = (2 * num * scale + den) / (2 * den);

  std::string digits = scaled.get_str();
  if (places > 0) {
    if (digits.size() <= static_cast<std::size_t>(places))
      digits.insert(0, static_cast<std::size_t>(places) + 1 - digits.size(), '0');
    digits.insert(digits.size() - static_cast<std::size_t>(places), ".");
  }
  if (x.sign() < 0 && scaled != 0) digits.insert(0, "-");
  return digits;
}

}  // namespace onehit
