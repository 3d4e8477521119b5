#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace projdim {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Parses "p/q", "p" or "-p/q" (decimal integers, q != 0). Throws Error{validation}.
Rational parse_rational(std::string_view text);

// Canonical "p/q" (or "p" when q == 1).
std::string to_string(const Rational& r);

// Nearest double to num/den with ties to even. `den` must be nonzero.
double nearest_double(const BigInt& num, const BigInt& den);
double nearest_double(const Rational& r);

}  // namespace projdim
