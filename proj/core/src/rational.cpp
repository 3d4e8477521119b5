#include "projdim/rational.hpp"

#include <cmath>
#include <cstdint>

#include "projdim/error.hpp"

namespace projdim {

namespace {

BigInt parse_integer(std::string_view text, std::string_view whole) {
  if (text.empty()) throw Error(Errc::validation, "empty integer in rational '" + std::string(whole) + "'");
  std::size_t pos = 0;
  bool negative = false;
  if (text[0] == '-' || text[0] == '+') {
    negative = text[0] == '-';
    pos = 1;
  }
  if (pos == text.size()) throw Error(Errc::validation, "malformed rational '" + std::string(whole) + "'");
  BigInt value = 0;
  for (; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (c < '0' || c > '9') throw Error(Errc::validation, "malformed rational '" + std::string(whole) + "'");
    value = value * 10 + (c - '0');
  }
  return negative ? BigInt(-value) : value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view t = trim(text);
  const auto slash = t.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(t, text));
  const BigInt num = parse_integer(trim(t.substr(0, slash)), text);
  const BigInt den = parse_integer(trim(t.substr(slash + 1)), text);
  if (den == 0) throw Error(Errc::validation, "zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

std::string to_string(const Rational& r) {
  const BigInt& num = boost::multiprecision::numerator(r);
  const BigInt& den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

double nearest_double(const BigInt& num, const BigInt& den) {
  if (num == 0) return 0.0;
  const bool negative = (num < 0) != (den < 0);
  const BigInt a = abs(num);
  const BigInt b = abs(den);
  const auto msb_a = static_cast<long>(boost::multiprecision::msb(a));
  const auto msb_b = static_cast<long>(boost::multiprecision::msb(b));

  if (msb_a < 53 && msb_b < 53) {
    // Both operands are exact doubles, so IEEE division rounds correctly.
    const double q = static_cast<double>(a.convert_to<std::uint64_t>()) /
                     static_cast<double>(b.convert_to<std::uint64_t>());
    return negative ? -q : q;
  }

  long k = 52 - (msb_a - msb_b);
  BigInt q;
  BigInt r;
  BigInt scaled_b;
  for (int attempt = 0; attempt < 2; ++attempt) {
    BigInt scaled_a = a;
    scaled_b = b;
    if (k >= 0) {
      scaled_a <<= static_cast<unsigned>(k);
    } else {
      scaled_b <<= static_cast<unsigned>(-k);
    }
    boost::multiprecision::divide_qr(scaled_a, scaled_b, q, r);
    if (boost::multiprecision::msb(q) >= 52) break;
    ++k;
  }
  const BigInt twice_r = r << 1;
  if (twice_r > scaled_b || (twice_r == scaled_b && bit_test(q, 0))) q += 1;
  const double mantissa = static_cast<double>(q.convert_to<std::uint64_t>());
  const double value = std::ldexp(mantissa, static_cast<int>(-k));
  return negative ? -value : value;
}

double nearest_double(const Rational& r) {
  return nearest_double(boost::multiprecision::numerator(r), boost::multiprecision::denominator(r));
}

}  // namespace projdim
