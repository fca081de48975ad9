#include "boxcert/rational.hpp"

#include <cctype>

namespace boxcert {

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

mpz_class parse_integer(std::string_view s) {
  if (s[0] == '+') s.remove_prefix(1);
  return mpz_class(std::string(s), 10);
}

}  // namespace

Rational::Rational(long num, long den) {
  if (den == 0) throw DivisionByZero();
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  const auto num = text.substr(0, slash);
  if (!is_integer_literal(num)) {
    throw RationalParseError("not a rational: '" + std::string(text) + "'");
  }
  if (slash == std::string_view::npos) return Rational(mpq_class(parse_integer(num)));

  const auto den = text.substr(slash + 1);
  if (!is_integer_literal(den) || den[0] == '-' || den[0] == '+') {
    throw RationalParseError("not a rational: '" + std::string(text) + "'");
  }
  const mpz_class d = parse_integer(den);
  if (d == 0) throw DivisionByZero();
  return Rational(mpq_class(parse_integer(num), d));
}

std::string Rational::str() const {
  if (q_.get_den() == 1) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw DivisionByZero();
  q_ /= o.q_;
  return *this;
}

std::size_t Rational::hash() const {
  return std::hash<std::string>{}(str());
}

}  // namespace boxcert
