#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace boxcert {

/// Exact arbitrary-precision fraction, always in lowest terms with a positive
/// denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long v) : q_(v) {}                       // NOLINT(google-explicit-constructor)
  Rational(int v) : q_(static_cast<long>(v)) {}     // NOLINT(google-explicit-constructor)
  Rational(long num, long den);
  explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

  /// Parses "n", "-n" or "n/d" with decimal integers. Floats are rejected.
  static Rational parse(std::string_view text);

  std::string str() const;
  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }
  const mpq_class& raw() const { return q_; }
  double to_double() const { return q_.get_d(); }

  int sign() const { return sgn(q_); }
  bool is_zero() const { return sign() == 0; }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

  std::size_t hash() const;

 private:
  mpq_class q_;
};

class DivisionByZero : public std::domain_error {
 public:
  DivisionByZero() : std::domain_error("rational division by zero") {}
};

class RationalParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

}  // namespace boxcert

template <>
struct std::hash<boxcert::Rational> {
  std::size_t operator()(const boxcert::Rational& r) const noexcept { return r.hash(); }
};
