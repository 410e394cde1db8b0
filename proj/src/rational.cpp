#include "graphon_ldp/rational.hpp"

#include <cctype>
#include <cmath>

#include "graphon_ldp/errors.hpp"

namespace gldp {

namespace {

bool is_integer_text(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

BigInt parse_integer(std::string_view s) {
  if (!is_integer_text(s))
    throw ValidationError("not an integer: '" + std::string(s) + "'");
  std::string digits(s[0] == '+' ? s.substr(1) : s);
  return BigInt(digits);
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

}  // namespace

Rational make_rational(std::string_view numerator, std::string_view denominator) {
  BigInt num = parse_integer(numerator);
  BigInt den = parse_integer(denominator);
  if (den == 0) throw ValidationError("zero denominator");
  return Rational(num, den);
}

Rational parse_rational(std::string_view text) {
  if (auto slash = text.find('/'); slash != std::string_view::npos)
    return make_rational(text.substr(0, slash), text.substr(slash + 1));
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    bool negative = !whole.empty() && whole[0] == '-';
    if (whole.empty() || whole == "-" || whole == "+")
      whole = "0";
    if (frac.empty() || !is_integer_text(frac) || frac[0] == '-' || frac[0] == '+')
      throw ValidationError("not a decimal: '" + std::string(text) + "'");
    BigInt scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    Rational value(parse_integer(whole));
    Rational part(BigInt(std::string(frac)), scale);
    return negative ? Rational(value - part) : Rational(value + part);
  }
  return Rational(parse_integer(text));
}

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw DomainError("non-finite value has no rational form");
  int exponent = 0;
  double mantissa = std::frexp(x, &exponent);
  // mantissa * 2^53 is an exact integer.
  auto scaled = static_cast<long long>(std::ldexp(mantissa, 53));
  Rational q{BigInt(scaled)};
  int shift = exponent - 53;
  BigInt two_pow = BigInt(1) << std::abs(shift);
  return shift >= 0 ? Rational(q * two_pow) : Rational(q / two_pow);
}

Rational round_to_grid(double x, const BigInt& base_denominator, int bits, Rounding mode) {
  BigInt scale = base_denominator << bits;
  Rational scaled = rational_from_double(x) * Rational(scale);
  const BigInt num = boost::multiprecision::numerator(scaled);
  const BigInt den = boost::multiprecision::denominator(scaled);
  BigInt down = floor_div(num, den);
  BigInt k = down;
  switch (mode) {
    case Rounding::Down:
      break;
    case Rounding::Up:
      if (Rational(down) != scaled) k = down + 1;
      break;
    case Rounding::Nearest:
      if (scaled - Rational(down) >= Rational(1, 2)) k = down + 1;
      break;
  }
  return Rational(k, scale);
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

std::string numerator_string(const Rational& q) {
  return boost::multiprecision::numerator(q).str();
}

std::string denominator_string(const Rational& q) {
  return boost::multiprecision::denominator(q).str();
}

std::string to_string(const Rational& q) {
  return numerator_string(q) + "/" + denominator_string(q);
}

}  // namespace gldp
