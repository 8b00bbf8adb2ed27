#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace onehit {

// Exact rational in lowest terms with a positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t value);  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t num, std::int64_t den);
  explicit Rational(mpq_class value);

  // Parses "a", "-a" or "a/b".
  static Rational parse(std::string_view text);

  std::string numerator() const;
  std::string denominator() const;

  bool is_zero() const { return sgn(value_) == 0; }
  int sign() const { return sgn(value_); }
  double to_double() const { return value_.get_d(); }

  // "num/den", or "num" when the denominator is 1.
  std::string str() const;

  Rational abs() const;

  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
  Rational operator-() const;

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.value_, b.value_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  const mpq_class& raw() const { return value_; }

 private:
  mpq_class value_{0};
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

// Fixed-point decimal rendering, rounding half away from zero.
// Throws std::invalid_argument for negative places.
std::string rational_round(const Rational& x, int places);

}  // namespace onehit
